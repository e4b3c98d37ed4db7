"""Rothe diagrams of permutations and the regions derived from them.

Cells use matrix convention: ``(row, col)`` with row 1 on top.  The
permutation matrix has its 1 in column ``j`` at row ``pi(j)``, so the diagram
is ``{(pi(j), i) : i < j, pi(i) > pi(j)}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple


class Cell(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``{1..n}`` in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if not images:
            raise ValueError("empty permutation")
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{list(images)} is not a bijection of 1..{len(images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    def inversions(self) -> int:
        p = self.images
        return sum(1 for j in range(len(p)) for i in range(j) if p[i] > p[j])


@dataclass(frozen=True)
class Diagram:
    n: int
    cells: frozenset[Cell] = field(default_factory=frozenset)

    def __post_init__(self):
        cells = frozenset(Cell(*c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        for r, c in cells:
            if not (1 <= r <= self.n and 1 <= c <= self.n):
                raise ValueError(f"cell {(r, c)} outside the {self.n}x{self.n} grid")

    def __contains__(self, cell) -> bool:
        return tuple(cell) in self.cells

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(sorted(self.cells))

    def __sub__(self, other: Diagram) -> Diagram:
        return Diagram(self.n, self.cells - other.cells)

    def rows(self) -> list[int]:
        return sorted({c.row for c in self.cells})

    def cols(self) -> list[int]:
        return sorted({c.col for c in self.cells})


class Regions(NamedTuple):
    nw: Diagram
    l: Diagram  # noqa: E741
    l_prime: Diagram


class HookComponent(NamedTuple):
    cells: frozenset[Cell]
    is_hook: bool
    corner: Cell | None


@dataclass(frozen=True)
class HookDecomposition:
    components: tuple[HookComponent, ...]

    @property
    def all_hooks(self) -> bool:
        return all(c.is_hook for c in self.components)


_TOKEN = re.compile(r"[\s,]+")


def parse_permutation(text: str) -> Permutation:
    """Parse ``"2 1 4 3"``, ``"[2,1,4,3]"`` or the compact ``"[2143]"``.

    The compact digit form is only used when there is a single multi-digit
    token, so it cannot express entries above 9.
    """
    body = text.strip()
    if body.startswith(("[", "(")) and body.endswith(("]", ")")):
        body = body[1:-1]
    tokens = [t for t in _TOKEN.split(body.strip()) if t]
    if not tokens:
        raise ValueError("empty permutation")
    if len(tokens) == 1 and len(tokens[0]) > 1 and tokens[0].isdigit():
        tokens = list(tokens[0])
    try:
        images = tuple(int(t) for t in tokens)
    except ValueError:
        raise ValueError(f"non-integer token in {text!r}") from None
    return Permutation(images)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def rothe_diagram(p: Permutation) -> Diagram:
    imgs = p.images
    cells = {
        Cell(imgs[j], i + 1)
        for j in range(p.n)
        for i in range(j)
        if imgs[i] > imgs[j]
    }
    return Diagram(p.n, frozenset(cells))


def dominant_piece(d: Diagram) -> Diagram:
    """Edge-connected component of ``d`` containing ``(1, 1)``."""
    if (1, 1) not in d:
        return Diagram(d.n)
    seen = {Cell(1, 1)}
    stack = [Cell(1, 1)]
    while stack:
        r, c = stack.pop()
        for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if nb in d.cells and nb not in seen:
                seen.add(Cell(*nb))
                stack.append(Cell(*nb))
    return Diagram(d.n, frozenset(seen))


def essential_set(d: Diagram) -> frozenset[Cell]:
    return frozenset(
        c for c in d.cells
        if (c.row + 1, c.col) not in d.cells and (c.row, c.col + 1) not in d.cells
    )


def north_west(d: Diagram) -> Diagram:
    # width of row r is the largest column among boxes at or below r
    cells = set()
    width = 0
    for r in range(d.n, 0, -1):
        width = max([width] + [c for rr, c in d.cells if rr == r])
        cells.update(Cell(r, c) for c in range(1, width + 1))
    return Diagram(d.n, frozenset(cells))


def regions(d: Diagram) -> Regions:
    nw = north_west(d)
    l = nw - dominant_piece(d)  # noqa: E741
    return Regions(nw, l, l - d)


def l_components(l: Diagram) -> list[frozenset[Cell]]:
    """Classes of cells linked by sharing a row or a column."""
    parent: dict[tuple[str, int], tuple[str, int]] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r, c in l.cells:
        a, b = find(("r", r)), find(("c", c))
        if a != b:
            parent[a] = b
    groups: dict[tuple[str, int], set[Cell]] = {}
    for cell in l.cells:
        groups.setdefault(find(("r", cell.row)), set()).add(cell)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def hook_corner(cells) -> Cell | None:
    if not cells:
        return None
    return min(cells)


def is_hook(cells) -> bool:
    corner = hook_corner(cells)
    if corner is None:
        return False
    return all(c.row == corner.row or c.col == corner.col for c in cells) and all(
        c.row >= corner.row and c.col >= corner.col for c in cells
    )


def hook_decomposition(p: Permutation) -> HookDecomposition:
    d = rothe_diagram(p)
    reg = regions(d)
    comps = []
    for comp in l_components(reg.l):
        cells = frozenset(comp & reg.l_prime.cells)
        comps.append(HookComponent(cells, is_hook(cells), hook_corner(cells)))
    return HookDecomposition(tuple(comps))


def is_toric(p: Permutation) -> tuple[bool, HookDecomposition]:
    hd = hook_decomposition(p)
    return hd.all_hooks, hd


def l_shape(l: Diagram) -> tuple[int, int, int]:
    """Occupied rows, occupied columns and component count of ``l``."""
    return len(l.rows()), len(l.cols()), len(l_components(l))


def dimension(p: Permutation) -> int:
    """Dimension of the non-free factor, ``|L'|``."""
    return len(regions(rothe_diagram(p)).l_prime)


def complexity(p: Permutation) -> int:
    reg = regions(rothe_diagram(p))
    if not reg.l:
        return 0
    m, n, k = l_shape(reg.l)
    return len(reg.l_prime) - (m + n - k)

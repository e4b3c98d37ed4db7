import sys

from toric_schubert.cli import main

sys.exit(main())

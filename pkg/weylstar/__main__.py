import sys

from weylstar.cli import main

sys.exit(main())

import sys

from gmewit.cli import main

sys.exit(main())

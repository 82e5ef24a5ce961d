import sys

from conewit.cli import main

sys.exit(main())

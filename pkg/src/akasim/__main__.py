import sys

from akasim.cli import main

sys.exit(main())

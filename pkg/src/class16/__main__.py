import sys

from class16.cli import main

sys.exit(main())

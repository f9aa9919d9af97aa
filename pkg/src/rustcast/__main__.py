import sys

from rustcast.cli import main

sys.exit(main())

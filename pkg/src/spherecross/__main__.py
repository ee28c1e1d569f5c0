import sys

from spherecross.cli import main

sys.exit(main())

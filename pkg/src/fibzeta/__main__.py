import sys

from fibzeta.cli import main

sys.exit(main())

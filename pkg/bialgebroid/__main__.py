import sys

from bialgebroid.main import main

sys.exit(main())

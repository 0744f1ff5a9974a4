import sys

from lcdisc.cli import main

sys.exit(main())

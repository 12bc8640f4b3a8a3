import sys

from sqfun_lab.cli import main

sys.exit(main())

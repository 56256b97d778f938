"""`python -m ssm2d`."""

import sys

from ssm2d.cli import main

sys.exit(main())

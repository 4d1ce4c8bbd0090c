import sys

from aggcorrect.io_cli.cli import main

sys.exit(main())

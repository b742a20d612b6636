"""Run the dpathsim CLI with ``python -m dpathsim``."""

import sys

from dpathsim.cli import main

if __name__ == "__main__":
    sys.exit(main())

import sys

from rhocompat.cli import main

if __name__ == "__main__":
    sys.exit(main())

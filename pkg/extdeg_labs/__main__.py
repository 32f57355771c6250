import sys

from extdeg_labs.cli.main import main


if __name__ == '__main__':
    sys.exit(main())

import sys

from src.controllers.command_controller import main


if __name__ == "__main__":
    sys.exit(main())

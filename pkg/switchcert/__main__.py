# FILE: switchcert/__main__.py

from switchcert.controllers.cli import main

if __name__ == "__main__":
    main()

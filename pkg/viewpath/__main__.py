"""Enable ``python -m viewpath`` as an alias for the ``viewpath`` CLI."""

from viewpath.cli import main

if __name__ == "__main__":
    main()

""" Main file for the audit tool, imports the command line's run function and
calls it immediately if this file has been run directly.
"""
import sys

from src.cli import run

# If running this file directly...
if __name__ == "__main__":
    # ...run the command and pass its exit code on
    sys.exit(run())

"""Legacy main.py entry point - use the 'mpj' command instead."""

from mpj_workbench.cli import cli_main

if __name__ == "__main__":
    cli_main()

#!/usr/bin/env python3
"""
CLI entry point for BitHilbert
Usage: python run.py <subcommand> [--n N] [--nx NX] [--seed SEED] [--format json|csv|text] [--out PATH]
"""

from app.cli import main


if __name__ == "__main__":
    main()

"""
Enables:  python -m mobile_gossip <command> [options]
"""
import sys

from mobile_gossip.cli import main

if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))

"""Allow ``python -m wcgkit``"""
import sys

from wcgkit.main import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))

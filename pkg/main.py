import sys
from typing import List, Optional

from cli.application import CliApplication

def main(argv: Optional[List[str]] = None) -> int:
    """Run the orthokey command line and return its exit status."""
    return CliApplication().run(argv)

if __name__ == "__main__":
    sys.exit(main())

from __future__ import annotations

import sys
from pathlib import Path

if __package__ in (None, ""):
    PACKAGE_ROOT = Path(__file__).resolve().parent
    sys.path.insert(0, str(PACKAGE_ROOT.parent))
    __package__ = "mdsc_ldpc"

    from mdsc_ldpc.cli import main  # type: ignore
else:
    from .cli import main


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main(sys.argv[1:]))

"""Build the native pairing shim and copy it next to this module.

    python -m udvs.backend.build [--source DIR]
"""

import argparse
import shutil
import subprocess
import sys
from pathlib import Path

from .native import _LIBNAME


def main(argv=None) -> int:
    here = Path(__file__).resolve().parent
    parser = argparse.ArgumentParser(prog="python -m udvs.backend.build")
    parser.add_argument("--source", type=Path, default=here.parents[2] / "native",
                        help="directory holding the shim's Cargo.toml")
    parser.add_argument("--offline", action="store_true")
    args = parser.parse_args(argv)
    if not (args.source / "Cargo.toml").is_file():
        print(f"no Cargo.toml under {args.source}", file=sys.stderr)
        return 2
    cmd = ["cargo", "build", "--release"] + (["--offline"] if args.offline else [])
    subprocess.run(cmd, cwd=args.source, check=True)
    built = args.source / "target" / "release" / _LIBNAME
    shutil.copy2(built, here / _LIBNAME)
    print(here / _LIBNAME)
    return 0


if __name__ == "__main__":
    sys.exit(main())

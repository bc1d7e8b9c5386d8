#!/usr/bin/env python3
"""Regenerate the packaged pattern data files from the catalog builders."""

from pathlib import Path

from chartbench import catalog
from chartbench.patterns import validate_pattern


def main() -> None:
    dest = Path(__file__).resolve().parents[1] / "src" / "chartbench" / "catalog_data"
    bad = 0
    for pid, p in sorted(catalog.build_all().items()):
        problems = validate_pattern(p)
        if problems:
            bad += 1
            print(f"INVALID {pid}: {problems}")
    written = catalog.generate(dest)
    print(f"wrote {len(written)} patterns to {dest}")
    if bad:
        raise SystemExit(f"{bad} patterns failed pseudo-mode validation")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Regenerate the golden reference CSVs under golden/.

Only needed when the grid layout changes; the acceptance suite compares
`streamsub tables` output byte-for-byte against these files.
"""

import pathlib

from streamsub.tables import emit_table

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "golden"

FILES = {2: "table2_p0.csv", 3: "table3.csv", 4: "table4.csv"}


def main():
    GOLDEN.mkdir(exist_ok=True)
    for which, name in FILES.items():
        path = GOLDEN / name
        path.write_text(emit_table(which), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()

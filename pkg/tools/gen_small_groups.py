"""Regenerate src/orderbij/data/small/*.csv from the group constructors."""

from pathlib import Path

from orderbij.catalog import write_small_group_data

if __name__ == "__main__":
    target = Path(__file__).resolve().parent.parent / "src" / "orderbij" / "data" / "small"
    for p in write_small_group_data(target):
        print(p.name)

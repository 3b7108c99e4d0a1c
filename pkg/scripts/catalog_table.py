"""Print the catalog's (e, b, phi(b), a) table over the default parameter grid.

    python scripts/catalog_table.py [--family NAME] [--csv]
"""
import argparse
import csv
import sys

from ramdepth import catalog


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=sorted(catalog.FAMILIES))
    ap.add_argument("--csv", action="store_true", help="write CSV instead of an aligned table")
    args = ap.parse_args(argv)

    rows = []
    for entry in catalog.iter_default_entries():
        if args.family and entry.label.split("(")[0] != args.family:
            continue
        rep = catalog.verify_entry(entry)
        q = catalog.compute_quantities(entry.filtration)
        rows.append([entry.label] + [str(q[k]) for k in catalog.QUANTITIES]
                    + ["ok" if rep.ok else "MISMATCH", "; ".join(rep.notices)])

    header = ["entry", *catalog.QUANTITIES, "verdict", "notice"]
    if args.csv:
        w = csv.writer(sys.stdout)
        w.writerow(header)
        w.writerows(rows)
        return 0
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header) - 1)]
    for r in [header] + rows:
        print("  ".join(c.ljust(wd) for c, wd in zip(r, widths)), r[-1])
    return 0 if all(r[-2] == "ok" for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())

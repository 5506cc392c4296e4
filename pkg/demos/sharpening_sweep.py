"""Sharpen table entries by walking down the plateaus of the level.

Starting from the prior builtin table, each r gets a descending walk: probe
a level, note the largest extraction product, and jump just below the level
at which that product stops fitting. Improved entries feed the next r.
"""
from oblit import builtin_table, sharpen_all


def main():
    table = builtin_table("prior")
    print("before:", {r: table.entry(r) for r in range(4, 9)})

    final, reports = sharpen_all(4, 8, table)
    for report in reports:
        print()
        print(f"r = {report.r} ({report.status})")
        print("  level | f bound | largest product | candidate")
        for p in report.probes:
            print(f"  {p.level} | {p.f_bound} | {p.largest_product} | {p.candidate}")
        print(f"  best: H({report.r}) <= {report.best_bound}")

    print()
    print("after: ", {r: final.entry(r) for r in range(4, 9)})


if __name__ == "__main__":
    main()

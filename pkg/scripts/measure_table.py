"""Print the exact (a_i, b_i) measure table with certified rational
bounds on theta.

Usage: python3 scripts/measure_table.py [levels] [k-spec]
"""

import sys

sys.path.insert(0, "src")

from pathcat.cli import parse_cf, _k_from_stream
from pathcat.measure import measure_table_json


def main() -> None:
    levels = int(sys.argv[1]) if len(sys.argv) > 1 else 12
    spec = sys.argv[2] if len(sys.argv) > 2 else "0,(1)"
    k = _k_from_stream(parse_cf(spec))
    rows = measure_table_json(k, levels)
    print(f"{'i':>3}  {'a_i':>14}  {'b_i':>14}  {'~a_i':>12}  {'~b_i':>12}")
    for r in rows:
        a, b = r["a"], r["b"]
        print(f"{r['i']:3d}  {a['x']:>6}t{a['y']:+d}".ljust(24)
              + f"{b['x']:>6}t{b['y']:+d}".ljust(18)
              + f"{r['a_float']:>12.8f}  {r['b_float']:>12.8f}")
    print(f"theta in [{rows[-1]['bound_lo']}, {rows[-1]['bound_hi']}]")


if __name__ == "__main__":
    main()

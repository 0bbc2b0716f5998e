"""Build the Q_n partitions for a k-sequence, verify them against the
symbolic point oracle, and print exact cell measures.

Usage: python3 scripts/partition_report.py [n] [k-spec]
    k-spec like "1,(1)" (prefix entries, parenthesized period)
"""

import sys

sys.path.insert(0, "src")

from pathcat.cli import parse_cf, _k_from_stream
from pathcat.boundary import partition_Q, verify_partition
from pathcat.measure import ThetaContext, mu_basic, verify_additivity


def main() -> None:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    spec = sys.argv[2] if len(sys.argv) > 2 else "(1)"
    k = _k_from_stream(parse_cf(spec))
    ctx = ThetaContext(k)
    for level in range(1, n + 1):
        q = partition_Q(level, k)
        res = 3 * level + 4
        ok = verify_partition(q, res, k)
        rep = verify_additivity(q, k, ctx)
        print(f"{q.label}: {len(q.cells)} cells, oracle "
              f"{'ok' if ok else 'FAILED'} at resolution {res}, "
              f"total measure {rep.total!r} "
              f"({'ok' if rep.ok else 'FAILED'})")
        if level <= 2:
            for cell in q.cells:
                v = mu_basic(cell, k, ctx)
                print(f"    {cell!r}: {v!r} (~{v.to_float():.6f})")


if __name__ == "__main__":
    main()

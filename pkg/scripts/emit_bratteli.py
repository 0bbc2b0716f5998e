"""Emit DOT files for the k-chain and its simple-CF companion and print
the equivalence verdict.

Usage: python3 scripts/emit_bratteli.py [levels] [k-spec] [outdir]
"""

import pathlib
import sys

sys.path.insert(0, "src")

from pathcat.cli import parse_cf, _k_from_stream
from pathcat.bratteli import chain_effros_shen, chain_from_k, emit, \
    equivalent
from pathcat.cf_order import theta_from_k


def main() -> None:
    levels = int(sys.argv[1]) if len(sys.argv) > 1 else 12
    spec = sys.argv[2] if len(sys.argv) > 2 else "0,(1)"
    outdir = pathlib.Path(sys.argv[3] if len(sys.argv) > 3 else ".")
    k = _k_from_stream(parse_cf(spec))
    d1 = chain_from_k(k, levels)
    d2 = chain_effros_shen(theta_from_k(k), levels)
    (outdir / "chain_k.dot").write_text(emit(d1, "dot"))
    (outdir / "chain_cf.dot").write_text(emit(d2, "dot"))
    print("k-chain dims:   ", d1.levels[:6], "...")
    print("simple-CF dims: ", d2.levels[:6], "...")
    print("equivalent:", equivalent(d1, d2))
    print(f"wrote {outdir / 'chain_k.dot'} and {outdir / 'chain_cf.dot'}")


if __name__ == "__main__":
    main()

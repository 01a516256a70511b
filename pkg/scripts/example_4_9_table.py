"""Table of the rigid family that is near-isomorphic but not isomorphic to its Mult.

Prints one row per (k, p): the primes q_i, the numerators s_i, and the
verdicts under both settings of the -1 flag.

    python scripts/example_4_9_table.py --k 2 3 4 5 --p 5 7 11 13
"""

import argparse

from acdmult.deciders import near_iso, self_mult_iso
from acdmult.generators import ConstructionFailure, example_4_9
from acdmult.mult_structure import mult_of


def row(k, p, include_minus_one):
    try:
        G = example_4_9(k, p, include_minus_one=include_minus_one)
    except ConstructionFailure:
        return None
    q = [c.type.p_inf[0] for c in G.components]
    s = [c.s for c in G.components]
    smi = self_mult_iso(G, include_minus_one=include_minus_one).result
    return q, s, smi, near_iso(G, mult_of(G)).result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--p", type=int, nargs="+", default=[5, 7, 11, 13])
    args = ap.parse_args()
    print(f"{'k':>2} {'p':>3}  {'-1':<8} {'q':<28} {'s':<22} self_mult_iso near_iso")
    for k in args.k:
        for p in args.p:
            for flag in (True, False):
                label = "include" if flag else "exclude"
                r = row(k, p, flag)
                if r is None:
                    print(f"{k:>2} {p:>3}  {label:<8} construction fails (no s2 with s2^2 != ±1)")
                    continue
                q, s, smi, ni = r
                print(f"{k:>2} {p:>3}  {label:<8} {str(q):<28} {str(s):<22} {str(smi):<13} {ni}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Desk-scale verification of the extremal families.

Builds each named family, solves it exactly (or via the decision procedure
when the oracle would be too slow), and prints the achieved optimum next to
the family's predicted ceiling.

Usage:
    python scripts/bounds_report.py [--max-ring K] [--max-bed I]
"""

import argparse
import time
from fractions import Fraction

from maxleaf.generators import flowerbed, g7, necklace_ring, q3
from maxleaf.graphs import n_ge3
from maxleaf.potential import greedy_spanning_tree
from maxleaf.solver import exact_max_leaves, fpt_decide


def fmt(frac: Fraction) -> str:
    return str(frac) if frac.denominator != 1 else str(frac.numerator)


def solve_exact(name, g, expected):
    t0 = time.time()
    best, _ = exact_max_leaves(g)
    greedy, _ = greedy_spanning_tree(g)
    print(
        f"{name:<18} n={g.n:<4} optimum={best:<3} expected={expected:<3} "
        f"greedy={len([v for v in _iter_leaf(greedy)]):<3} ({time.time()-t0:.2f}s)"
    )
    return best == expected


def _iter_leaf(edges):
    deg = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return [x for x, d in deg.items() if d == 1]


def solve_threshold(name, g, expected):
    t0 = time.time()
    yes = fpt_decide(g, expected).is_yes
    no = not fpt_decide(g, expected + 1).is_yes
    print(
        f"{name:<18} n={g.n:<4} optimum={expected if yes and no else '?':<3} "
        f"k={expected}:{'YES' if yes else 'NO'} k={expected+1}:{'NO' if no else 'YES'} "
        f"({time.time()-t0:.1f}s)"
    )
    return yes and no


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-ring", type=int, default=4)
    ap.add_argument("--max-bed", type=int, default=2)
    args = ap.parse_args()

    ok = True
    print("== tight families ==")
    ok &= solve_exact("g7", g7(), 4)
    ok &= solve_exact("q3", q3(), 4)
    for k in range(2, args.max_ring + 1):
        ok &= solve_exact(f"necklace-ring({k})", necklace_ring(k), k + 2)
    print("\n== flowerbeds (ceiling 4n/13 + 2) ==")
    for i in range(2, args.max_bed + 1):
        ok &= solve_threshold(f"flowerbed({i})", flowerbed(i), 4 * i + 2)
    print("\nall bounds confirmed" if ok else "\nBOUND MISMATCH — investigate")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())

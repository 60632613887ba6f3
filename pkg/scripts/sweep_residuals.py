#!/usr/bin/env python3
"""Fine sweep of the period multiple: residual amplitude and drive cost vs n.

Writes one CSV row per multiple; the residual dips to zero exactly at integer
multiples and the envelope between integers shrinks as the move stretches.
"""

import argparse

from flexmove import sweep_n


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--L", type=float, default=0.41)
    parser.add_argument("--k", type=float, default=5.78)
    parser.add_argument("--mass", type=float, default=0.09)
    parser.add_argument("--n-from", type=float, default=1.2)
    parser.add_argument("--n-to", type=float, default=10.5)
    parser.add_argument("--step", type=float, default=0.01)
    parser.add_argument("--out", default="sweep.csv")
    args = parser.parse_args()

    result = sweep_n(L=args.L, k=args.k, m=args.mass,
                     n_from=args.n_from, n_to=args.n_to, step=args.step)
    result.write_csv(args.out)
    quiescent = [row.n for row in result.rows if row.quiescent]
    print(f"wrote {len(result)} rows to {args.out}; quiescent multiples: {quiescent}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

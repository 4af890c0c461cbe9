"""Fuzz mirror antisymmetry, reflection and move invariance on random grids.

Usage: python scripts/fuzz_structural.py [--grids 100] [--max-n 6] [--seed 0]
"""

import argparse
import json

from annular_floer.verification import VerifyConfig, check_structural


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grids", type=int, default=100)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--moves", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = VerifyConfig(max_grid=args.max_n, seed=args.seed, fuzz_grids=args.grids,
                       moves_per_grid=args.moves)
    result = check_structural(cfg)
    print(json.dumps(result.to_json(), indent=2, sort_keys=True))
    raise SystemExit(0 if result.passed else 2)


if __name__ == "__main__":
    main()

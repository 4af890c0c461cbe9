"""Print the top invariant, eta and the band-rank bound for a list of braids.

Usage: python scripts/invariant_table.py [--max-strands N] [--max-length L]
Enumerates every braid word up to the given size and writes one JSON
object per line.
"""

import argparse
import itertools
import json

from annular_floer.annular_invariant import pl_function
from annular_floer.braid_lab import band_rank_lower_bound
from annular_floer.braids import BraidWord
from annular_floer.grid_core import from_braid
from annular_floer.rational import fmt
from annular_floer.transverse_refinement import eta


def rows(max_strands: int, max_length: int):
    for n in range(1, max_strands + 1):
        gens = [g for i in range(1, n) for g in (i, -i)]
        for length in range(max_length + 1 if gens else 1):
            for letters in itertools.product(gens, repeat=length):
                w = BraidWord(n, letters)
                f = pl_function(from_braid(w))
                e = eta(w)
                yield {
                    "word": w.text(), "strands": n,
                    "top": f.to_json()["breakpoints"],
                    "eta": fmt(e.value) if e.finite else "inf",
                    "band_rank_at_least": fmt(band_rank_lower_bound(w, f).bound),
                }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-strands", type=int, default=2)
    ap.add_argument("--max-length", type=int, default=3)
    args = ap.parse_args()
    for row in rows(args.max_strands, args.max_length):
        print(json.dumps(row, sort_keys=True))


if __name__ == "__main__":
    main()

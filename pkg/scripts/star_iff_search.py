"""Search for Hom-Lie instances where the star conditions and the
direct GD check disagree.

The compatibility step of the star argument uses a symmetry of
[f([x,y]), αz] that is not among the listed conditions, so a disagreement
is conceivable.  This draws instances with diagonal and general α (f always
commuting with α) and reports any mismatch together with the two verdict
tallies.

Usage: python3 scripts/star_iff_search.py [--count 400] [--seed 0]
"""
import argparse
import random
from collections import Counter

from halg.constructions import star_constructions
from halg.properties import random_star_instance
from halg.specfile import dump_spec, spec_from_algebra


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=400)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally = Counter()
    mismatches = []
    for n in range(args.count):
        L = random_star_instance(rng)
        r = star_constructions(L)
        for cand in (r.star, r.star_prime):
            tally[(cand.name, cand.conditions.verdict, cand.direct.verdict)] += 1
            if not cand.consistent:
                mismatches.append((n, cand.name, L))
    for (name, cond, direct), k in sorted(tally.items()):
        print(f"{name:10s} conditions={cond:4s} direct={direct:4s}  {k}")
    print(f"\n{len(mismatches)} mismatches in {args.count} instances")
    for n, name, L in mismatches[:3]:
        print(f"\ninstance {n} ({name}):")
        print(dump_spec(spec_from_algebra(L, f"star-mismatch-{n}")))


if __name__ == "__main__":
    main()

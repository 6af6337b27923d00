"""Show the variety's generators and check they Poisson-commute.

The critical points of the master function, swept over all translations z,
fill a subvariety of the phase space with coordinates (z, p).  Its ideal is
generated by linear relations among momenta (first kind) and relations tying
momenta to the discriminant forms (second kind).  All pairwise Poisson
brackets of the generators vanish identically — printed here as an exact,
symbolic fact, not a numerical one.
"""

import random

from critvar import build_relations, euler_relation, involution_suite, random_generic


def main():
    spec = random_generic(4, 2, random.Random(7))
    rels = build_relations(spec)

    iset = next(iter(rels.first))
    jset = next(iter(rels.second))
    print("a generator of the first kind:")
    print(f"  F_{iset} = {rels.first[iset].to_text()}")
    print("one of the second kind:")
    print(f"  F_{jset} = {rels.second[jset].to_text()}")
    print("and the Euler relation:")
    print(f"  {euler_relation(spec).to_text()}")

    reports = involution_suite(spec)
    bad = [r for r in reports if not r.ok]
    print(f"\nPoisson brackets checked: {len(reports)}, nonzero: {len(bad)}")
    kinds = {}
    for r in reports:
        kinds[r.pair_class] = kinds.get(r.pair_class, 0) + 1
    for kind, count in sorted(kinds.items()):
        print(f"  {kind}: {count} pairs, all brackets are the zero polynomial")


if __name__ == "__main__":
    main()

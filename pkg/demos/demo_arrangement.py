"""Walk through the basic data of a translated arrangement.

Four lines in the plane: the two axes, the diagonal, and an anti-diagonal,
each carrying a weight.  Prints the minors that certify genericity, the
discriminant forms whose zero loci are the degenerate translations, and the
momenta of a point off the arrangement.
"""

from fractions import Fraction

from critvar import ArrangementSpec, k_subsets, rat_str

F = Fraction


def main():
    b = ((F(1), F(0)), (F(0), F(1)), (F(1), F(1)), (F(1), F(-1)))
    a = (F(1), F(2), F(1), F(1))
    spec = ArrangementSpec(4, 2, b, a)
    print(f"{spec.n} hyperplanes in C^{spec.k}, weights {[rat_str(x) for x in a]}")

    print("\nk x k minors (all nonzero, so the family is generic):")
    for iset in k_subsets(spec.n, spec.k):
        print(f"  d_{iset} = {rat_str(spec.plucker(iset))}")

    print("\ndiscriminant forms in the translation z:")
    for jset in k_subsets(spec.n, spec.k + 1):
        print(f"  f_{jset}(z) = {spec.discriminant_form(jset).to_text()}")
    print(f"their span has rank {spec.span_rank()} = n - k")

    z = (F(0), F(0), F(1), F(2))
    t = (F(1), F(5))
    print(f"\nat z = {[rat_str(x) for x in z]}, t = {[rat_str(x) for x in t]}:")
    print(f"  hyperplane values f_j = {[rat_str(v) for v in spec.hyperplane_values(z, t)]}")
    print(f"  momenta a_j / f_j    = {[rat_str(v) for v in spec.momenta(z, t)]}")
    print(f"  z off the discriminant: {spec.is_off_discriminant(z)}")


if __name__ == "__main__":
    main()

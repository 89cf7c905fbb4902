"""Ideal arithmetic: products, colons, saturation, Hilbert data."""

import random

from cremona.ideals import Ideal, minors
from cremona.rings import FormMatrix, PolyRing, QQ

from oracles import power_gens, random_homogeneous_ideal, span_dimension

R2 = PolyRing(("x0", "x1"), QQ)
R3 = PolyRing(("x0", "x1", "x2"), QQ)


def ideal(ring, *texts):
    return Ideal(ring, tuple(ring.parse(t) for t in texts))


class TestBasics:
    def test_power(self):
        I = ideal(R2, "x0", "x1")
        sq = I.power(2)
        expect = ideal(R2, "x0^2", "x0*x1", "x1^2")
        assert sq == expect

    def test_power_matches_brute_products(self):
        rng = random.Random(5)
        for _ in range(5):
            ring, gens = random_homogeneous_ideal(rng.randint(2, 3), rng,
                                                  max_gens=3, max_deg=2)
            I = Ideal(ring, gens)
            assert I.power(2) == Ideal(ring, power_gens(gens, 2))

    def test_sum_and_product(self):
        I = ideal(R2, "x0")
        J = ideal(R2, "x1")
        assert (I + J) == ideal(R2, "x0", "x1")
        assert (I * J) == ideal(R2, "x0*x1")

    def test_contains_ideal(self):
        I = ideal(R2, "x0", "x1")
        J = ideal(R2, "x0^2", "x0*x1")
        assert I.contains_ideal(J)
        assert not J.contains_ideal(I)

    def test_unit_and_zero(self):
        assert ideal(R2, "1").is_unit()
        assert Ideal(R2, ()).is_zero()
        assert not ideal(R2, "x0").is_unit()


class TestColonAndIntersection:
    def test_quotient(self):
        I = ideal(R2, "x0*x1")
        assert I.quotient(ideal(R2, "x0")) == ideal(R2, "x1")

    def test_intersect(self):
        assert (ideal(R2, "x0").intersect(ideal(R2, "x1"))
                == ideal(R2, "x0*x1"))

    def test_saturate_reaches_unit(self):
        I = ideal(R2, "x0^2", "x0*x1")
        sat, steps = I.saturate(ideal(R2, "x0"))
        assert sat.is_unit()
        assert steps == 2

    def test_saturate_strips_primary_part(self):
        I = ideal(R3, "x0^2*x2", "x0^2*x1")
        sat, _ = I.saturate(ideal(R3, "x1", "x2"))
        assert sat == ideal(R3, "x0^2")


class TestMinimalGenerators:
    def test_prunes_redundant(self):
        I = ideal(R2, "x0^2", "x0^2+x1^2", "x1^2", "x0^3")
        mins = I.minimal_generators()
        assert [str(p) for p in mins] == ["x0^2", "x0^2 + x1^2"]

    def test_span_dimensions_agree(self):
        rng = random.Random(9)
        for _ in range(5):
            ring, gens = random_homogeneous_ideal(rng.randint(2, 3), rng)
            mins = Ideal(ring, gens).minimal_generators()
            for d in range(1, 6):
                assert (span_dimension(ring, gens, d)
                        == span_dimension(ring, mins, d))


class TestHilbert:
    def test_hypersurface(self):
        h = ideal(R2, "x0^2", "x0*x1").hilbert()
        assert h.numerator == (1, 0, -2, 1)
        assert (h.dim, h.codim, h.multiplicity) == (1, 1, 1)

    def test_complete_intersection(self):
        h = ideal(R2, "x0^2", "x1^3").hilbert()
        assert (h.dim, h.codim, h.multiplicity) == (0, 2, 6)

    def test_unit_sentinel(self):
        h = ideal(R2, "1").hilbert()
        assert (h.dim, h.codim, h.multiplicity) == (-1, 3, 0)

    def test_codimension_non_homogeneous(self):
        I = ideal(R3, "x0 - 1", "x1 - x0^2")
        assert I.codimension() == 2


class TestMinors:
    def test_two_by_two(self):
        x0, x1 = R2.gens
        m = FormMatrix(R2, [[x0, x1], [x1, x0]])
        I = minors(m, 2)
        assert I == ideal(R2, "x0^2 - x1^2")


class TestRadicalMembership:
    def test_detects_nilpotent_class(self):
        I = ideal(R2, "x0^2")
        assert I.radical_contains(R2.parse("x0"))
        assert not I.radical_contains(R2.parse("x1"))

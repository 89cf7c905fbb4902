"""Template family, Sylvester chains, and the plane quartic appendix."""

import random

import pytest

from cremona.families import (DegenerateTemplate, TemplateMatrix,
                              appendix_construct, signed_minors,
                              sylvester_chain, sylvester_form,
                              template_ideal)
from cremona.fixtures import alberich_matrix
from cremona.maps import plane_composition_oracle
from cremona.rings import FormMatrix, PolyRing, QQ

R3 = PolyRing(("x0", "x1", "x2"), QQ)
SQUAREFREE = [(1, 1, 0), (1, 0, 1), (0, 1, 1)]


def random_syzygy_matrix(seed):
    rng = random.Random(seed)
    rows = []
    for _i in range(3):
        rows.append([R3.from_terms([(m, rng.randint(-3, 3))
                                    for m in SQUAREFREE])
                     for _j in range(2)])
    return FormMatrix(R3, rows)


class TestSignedMinors:
    def test_annihilates_columns(self):
        T = template_ideal(3, 2, seed=0)
        mat = T.template.matrix
        v = signed_minors(mat)
        for j in range(mat.ncols):
            acc = R3.zero
            for i in range(mat.nrows):
                acc = acc + v[i] * mat[i, j]
            assert not acc

    def test_shape_checked(self):
        with pytest.raises(ValueError):
            signed_minors(FormMatrix(R3, ((R3.parse("x0"), R3.parse("x1")),
                                          (R3.parse("x1"), R3.parse("x2")))))


class TestTemplateMatrix:
    def test_degree_validation(self):
        R2v = PolyRing(("x0", "x1"), QQ)
        with pytest.raises(ValueError):
            TemplateMatrix(FormMatrix(R2v, [[R2v.parse("x0"), R2v.parse("x1")],
                                            [R2v.parse("x1"), R2v.parse("x0")],
                                            [R2v.parse("x0"), R2v.parse("x1")]]),
                           2)

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            template_ideal(1, 1)
        with pytest.raises(ValueError):
            template_ideal(3, 0)


class TestNumerology:
    @pytest.mark.parametrize("r,mult,edeg", [(1, 6, 3), (2, 11, 5),
                                             (3, 18, 7)])
    def test_seed_seven(self, r, mult, edeg):
        T = template_ideal(3, r, seed=7)
        d = T.diagnostics()
        assert d["codimension"] == 2
        assert d["multiplicity"] == mult == T.expected_multiplicity()
        assert d["edeg"] == edeg == 2 * r + 1

    def test_degenerate_draw_raises(self):
        zero_rows = [["0", "0", "0"]] * 4
        with pytest.raises(DegenerateTemplate):
            template_ideal(3, 1, entries=zero_rows, ring=R3)


class TestInverses:
    def test_r1_three_representatives(self):
        T = template_ideal(3, 1, seed=7)
        invs = T.inverses()
        assert len(invs) == 3
        spec = T.map_spec()
        for data in invs:
            assert data.degree == 2
            assert data.factor.homogeneous_degree() == 5
            assert plane_composition_oracle(spec, data.inverse)

    def test_r2_single_representative(self):
        T = template_ideal(3, 2, seed=7)
        invs = T.inverses()
        assert len(invs) == 1
        assert invs[0].factor.homogeneous_degree() == 7


class TestSylvesterForm:
    def test_coordinate_identity(self):
        x0, x1, x2 = R3.gens
        assert str(sylvester_form(x0, x1, x2, ("x0", "x1", "x2"))) == "1"

    def test_shared_factor_kills_determinant(self):
        x0, x1, x2 = R3.gens
        assert not sylvester_form(x0 * x0, x0 * x1, x0 * x2,
                                  ("x0", "x1", "x2"))

    def test_sequential_extraction(self):
        x0, x1, x2 = R3.gens
        assert str(sylvester_form(x0 * x0 + x1 * x2, x1, x2,
                                  (x0, x1, x2))) == "x0"

    def test_content_failure(self):
        R4 = PolyRing(("x0", "x1", "x2", "x3"), QQ)
        h = R4.parse("x3^2")
        x1, x2 = R4.var("x1"), R4.var("x2")
        with pytest.raises(ValueError, match="content"):
            sylvester_form(h, x1, x2, ("x0", "x1", "x2"))

    def test_needs_distinct_variables(self):
        x0, x1, x2 = R3.gens
        with pytest.raises(ValueError):
            sylvester_form(x0, x1, x2, ("x0", "x0", "x1"))


class TestSylvesterChain:
    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_bidegree_ladder(self, r):
        T = template_ideal(3, r, seed=7)
        ch = sylvester_chain(T)
        assert ch.bidegrees == tuple((r - i, 2 * i + 1)
                                     for i in range(1, r + 1))

    def test_chain_generates_rees(self):
        ch = sylvester_chain(template_ideal(3, 2, seed=7))
        assert ch.conjecture_equal


class TestAppendix:
    def test_alberich_verdicts(self):
        A = appendix_construct(alberich_matrix())
        assert A.verdicts == {
            "pure_power_free": True,
            "sym_match": True,
            "eq3": True,
            "eq4": True,
            "q_nonzero": True,
            "codim_b": 2,
            "rees_match": True,
            "codim_phi_prime": 2,
            "inverse_gcd_one": True,
            "inverse_ok": True,
            "inverse_degree": 4,
        }

    def test_alberich_inverse_composes(self):
        A = appendix_construct(alberich_matrix())
        from cremona.maps import RationalMapSpec
        spec = RationalMapSpec(A.base.ring, A.base.gens)
        assert plane_composition_oracle(spec, A.inverse)

    def test_determinant_identities_generic(self):
        checked = 0
        for seed in range(30):
            try:
                A = appendix_construct(random_syzygy_matrix(seed))
            except ValueError:
                continue
            v = A.verdicts
            assert v["sym_match"] and v["eq3"] and v["eq4"], seed
            checked += 1
        assert checked >= 20

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            appendix_construct(FormMatrix(R3, ((R3.parse("x0*x1"),),
                                               (R3.parse("x0*x2"),),
                                               (R3.parse("x1*x2"),))))

    def test_pure_power_rejected(self):
        rows = [[R3.parse("x0^2"), R3.parse("x0*x1")],
                [R3.parse("x0*x1"), R3.parse("x1*x2")],
                [R3.parse("x0*x2"), R3.parse("x1*x2")]]
        with pytest.raises(ValueError, match="pure power"):
            appendix_construct(FormMatrix(R3, rows))

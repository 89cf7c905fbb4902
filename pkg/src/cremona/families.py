"""The two structured families: template matrices and the plane quartic
construction.

A template matrix has n-1 columns of linear forms and a last column of
degree-r forms; the signed maximal minors cut a codimension-2 ideal
defining a map onto a hypersurface, and Sylvester forms of the linear
relations build Rees-ideal elements of prescribed bidegrees.  The plane
construction assembles, from a 3x2 syzygy matrix of quadrics without
pure-power terms, the 4x3 matrix whose maximal minors present the graph
of a quartic map together with its inverse.
"""

from __future__ import annotations

import random

from .ideals import Ideal, minors as minor_ideal
from .maps import (InverseData, RationalMapSpec, _poly_gcd_list,
                   inversion_factor)
from .rees import rees_ideal
from .rings import (FormMatrix, NotDivisibleError, PolyRing, Polynomial, QQ,
                    transfer)

__all__ = ["AppendixData", "DegenerateTemplate", "SylvesterChain",
           "TemplateInstance", "TemplateMatrix", "appendix_construct",
           "signed_minors", "sylvester_chain", "sylvester_form",
           "template_ideal"]


class DegenerateTemplate(ValueError):
    """A drawn instance fell out of general position; redraw with a new
    seed."""


def signed_minors(mat):
    """Row-deleted maximal minors with alternating signs.

    For an (m+1) x m matrix the returned vector annihilates every
    column, so it lists Hilbert-Burch generators in the order matching
    the rows.
    """
    m = mat.ncols
    if mat.nrows != m + 1:
        raise ValueError("need one more row than columns")
    out = []
    for i in range(mat.nrows):
        rows = tuple(mat.row(k) for k in range(mat.nrows) if k != i)
        d = FormMatrix(mat.ring, rows).det()
        out.append(-d if i % 2 else d)
    return tuple(out)


class TemplateMatrix:
    """(n+1) x n matrix over k[x_0..x_{n-1}]: n-1 linear columns, then
    one column of degree-r forms."""

    __slots__ = ("n", "r", "ring", "matrix")

    def __init__(self, matrix, r):
        ring = matrix.ring
        n = matrix.ncols
        if n < 2 or matrix.nrows != n + 1:
            raise ValueError("template must be (n+1) x n with n >= 2")
        if ring.nvars != n:
            raise ValueError("template needs as many variables as columns")
        if r < 1:
            raise ValueError("last-column degree must be positive")
        for i in range(n + 1):
            for j in range(n):
                e = matrix[i, j]
                want = r if j == n - 1 else 1
                if e and e.homogeneous_degree() != want:
                    raise ValueError("entry (%d, %d) has degree %d, want %d"
                                     % (i, j, e.homogeneous_degree(), want))
        self.n = n
        self.r = r
        self.ring = ring
        self.matrix = matrix

    def linear_part(self):
        rows = tuple(tuple(self.matrix[i, j] for j in range(self.n - 1))
                     for i in range(self.n + 1))
        return FormMatrix(self.ring, rows)

    def power_column(self):
        return self.matrix.column(self.n - 1)

    def forms(self):
        return signed_minors(self.matrix)

    def ideal(self):
        return Ideal(self.ring, self.forms())

    def __repr__(self):
        return "TemplateMatrix(n=%d, r=%d over %s)" % (self.n, self.r,
                                                       self.ring)


def _template_ring(n, field):
    return PolyRing(tuple("x%d" % i for i in range(n)), field)


def _draw_template(n, r, rng, ring):
    lin_monos = [tuple(1 if k == j else 0 for k in range(n))
                 for j in range(n)]
    pow_monos = list(ring.monomials_of_degree(r))
    rows = []
    for _i in range(n + 1):
        row = []
        for _j in range(n - 1):
            row.append(ring.from_terms(
                [(m, rng.randint(-5, 5)) for m in lin_monos]))
        row.append(ring.from_terms(
            [(m, rng.randint(-5, 5)) for m in pow_monos]))
        rows.append(row)
    return FormMatrix(ring, rows)


class TemplateInstance:
    """A template matrix with its minor ideal and lazily computed
    numerology."""

    __slots__ = ("template", "ideal", "seed", "_rees", "_inverses")

    def __init__(self, template, seed=None):
        self.template = template
        self.ideal = template.ideal()
        self.seed = seed
        self._rees = None
        self._inverses = None

    @property
    def n(self):
        return self.template.n

    @property
    def r(self):
        return self.template.r

    @property
    def ring(self):
        return self.template.ring

    def codimension(self):
        return self.ideal.codimension()

    def multiplicity(self):
        return self.ideal.hilbert().multiplicity

    def expected_multiplicity(self):
        n, r = self.n, self.r
        return r * r + (n - 1) * r + n * (n - 1) // 2

    def rees(self):
        if self._rees is None:
            self._rees = rees_ideal(self.ideal)
        return self._rees

    def edeg(self):
        """Degree of the implicit equation of the image hypersurface."""
        image = self.rees().image_ideal()
        mins = image.minimal_generators()
        if len(mins) != 1:
            raise DegenerateTemplate("image is not a hypersurface")
        return mins[0].homogeneous_degree()

    def map_spec(self):
        return RationalMapSpec(self.ring, self.ideal.gens)

    def inverses(self):
        """Degree-2 inverse representatives from the x-linear relations.

        Each pair of linear columns gives a 2 x 3 coefficient matrix
        over k[y] whose row cross product is a candidate; candidates are
        validated by the composition check.  r = 1 yields three pairs,
        r >= 2 just one.
        """
        if self._inverses is not None:
            return self._inverses
        if self.n != 3:
            raise ValueError("inverse extraction implemented for n = 3")
        P = self.rees()
        yring = PolyRing(P.ynames, self.ring.field)
        cols = [0, 1, 2] if self.r == 1 else [0, 1]
        spec = self.map_spec()
        found = []
        for a in range(len(cols)):
            for b in range(a + 1, len(cols)):
                theta = [self._ycoeff_row(cols[a], yring),
                         self._ycoeff_row(cols[b], yring)]
                g = _cross(theta[0], theta[1])
                if all(not gi for gi in g):
                    raise DegenerateTemplate("vanishing coefficient matrix")
                try:
                    d = inversion_factor(spec, g)
                except ValueError:
                    raise DegenerateTemplate(
                        "composition check failed for a column pair")
                inv = self.ring.field.inv(d.leading_coefficient())
                found.append(InverseData(tuple(gi * inv for gi in g),
                                         d * inv, 2, yring, P))
        self._inverses = tuple(found)
        return self._inverses

    def _ycoeff_row(self, col, yring):
        # row j of the matrix: sum_i coeff(entry[i][col], x_j) * y_i
        n = self.n
        terms = [[] for _ in range(n)]
        for i in range(n + 1):
            e = self.template.matrix[i, col]
            if not e:
                continue
            ymono = tuple(1 if k == i else 0 for k in range(n + 1))
            for exps, c in e.items():
                j = exps.index(1)
                terms[j].append((ymono, c))
        return tuple(yring.from_terms(t) for t in terms)

    def diagnostics(self):
        out = {"codimension": self.codimension(),
               "multiplicity": self.multiplicity(),
               "expected_multiplicity": self.expected_multiplicity()}
        if self.n == 3:
            out["edeg"] = self.edeg()
        return out

    def __repr__(self):
        return ("TemplateInstance(n=%d, r=%d, seed=%r)"
                % (self.n, self.r, self.seed))


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def template_ideal(n, r, seed=None, entries=None, ring=None, field=QQ):
    """Draw or assemble a template instance; degenerate draws raise
    DegenerateTemplate so the caller can reseed.

    entries overrides the random draw with explicit rows (polynomials
    or parseable strings over the given ring).
    """
    if n < 2 or r < 1:
        raise ValueError("need n >= 2 and r >= 1")
    if entries is not None:
        if ring is None:
            ring = _template_ring(n, field)
        rows = [[ring.parse(e) if isinstance(e, str) else e for e in row]
                for row in entries]
        mat = FormMatrix(ring, rows)
    else:
        if ring is None:
            ring = _template_ring(n, field)
        mat = _draw_template(n, r, random.Random(seed), ring)
    inst = TemplateInstance(TemplateMatrix(mat, r), seed)
    if inst.codimension() < 2:
        raise DegenerateTemplate("codimension below 2 (seed %r)" % (seed,))
    return inst


# -- Sylvester chains -------------------------------------------------


def sylvester_form(h1, h2, h3, wrt):
    """Determinant of the coefficient matrix writing three forms as
    combinations of three variables.

    Extraction is sequential: terms divisible by the first variable are
    collected and divided out, then the second on the remainder; the
    last variable must divide the rest exactly (content check).
    """
    forms = (h1, h2, h3)
    ring = h1.ring
    names = [w if isinstance(w, str) else w.ring.names[_var_index(w)]
             for w in wrt]
    if len(names) != 3 or len(set(names)) != 3:
        raise ValueError("need three distinct variables")
    positions = [ring.index(nm) for nm in names]
    rows = []
    for h in forms:
        if not isinstance(h, Polynomial) or h.ring != ring:
            raise ValueError("forms from a different ring")
        rem = h
        row = []
        for k, pos in enumerate(positions):
            v = ring.gens[pos]
            if k == len(positions) - 1:
                if not rem:
                    row.append(ring.zero)
                    break
                try:
                    row.append(rem.exact_divide(v))
                except NotDivisibleError:
                    raise ValueError(
                        "content check failed: %s is not in (%s)"
                        % (h, ", ".join(names)))
                break
            part = ring.from_terms({e: c for e, c in rem.items()
                                    if e[pos] > 0})
            row.append(part.exact_divide(v) if part else ring.zero)
            rem = rem - part
        rows.append(row)
    return FormMatrix(ring, rows).det()


def _var_index(p):
    items = list(p.items())
    if len(items) != 1:
        raise ValueError("not a variable")
    exps, _c = items[0]
    if sum(exps) != 1:
        raise ValueError("not a variable")
    return exps.index(1)


class SylvesterChain:
    """Sylvester forms f_1..f_r generated from the linear relations of a
    template presentation; f_i has bidegree (r-i, 2i+1)."""

    __slots__ = ("presentation", "l1", "l2", "f0", "forms", "bidegrees",
                 "conjecture_equal")

    def __init__(self, presentation, l1, l2, f0, forms, bidegrees,
                 conjecture_equal):
        self.presentation = presentation
        self.l1 = l1
        self.l2 = l2
        self.f0 = f0
        self.forms = forms
        self.bidegrees = bidegrees
        self.conjecture_equal = conjecture_equal

    def __repr__(self):
        return ("SylvesterChain(%d forms, bidegrees %s, equality %s)"
                % (len(self.forms), list(self.bidegrees),
                   self.conjecture_equal))


def sylvester_chain(T, presentation=None):
    """Build the chain for a template (matrix or instance) and verify
    each form against the eliminated Rees ideal.

    Requires the 2-minors of the linear part to be irrelevant-primary;
    records whether the linear relations plus the chain already give the
    whole Rees ideal.
    """
    if isinstance(T, TemplateInstance):
        if presentation is None:
            presentation = T.rees()
        T = T.template
    if T.n != 3:
        raise ValueError("chains are defined over three variables")
    lin = Ideal(T.ring, T.linear_part().minors(2))
    if lin.codimension() != 3:
        raise ValueError("standing assumption fails: 2-minors of the "
                         "linear part are not irrelevant-primary")
    if presentation is None:
        presentation = rees_ideal(T.ideal())
    P = presentation
    amb = P.ambient
    ys = [amb.var(nm) for nm in P.ynames]
    cols = []
    for j in range(3):
        acc = amb.zero
        for i in range(4):
            e = T.matrix[i, j]
            if e:
                acc = acc + ys[i] * transfer(e, amb)
        cols.append(acc)
    l1, l2, f0 = cols
    if not l1 or not l2 or not f0:
        raise DegenerateTemplate("vanishing linear relation")
    gb = P.ideal.groebner()
    forms = []
    bidegrees = []
    prev = f0
    for _i in range(1, T.r + 1):
        fi = sylvester_form(l1, l2, prev, P.xnames)
        if not fi:
            raise DegenerateTemplate("chain degenerated to zero")
        if not gb.contains(fi):
            raise RuntimeError("chain form fell outside the Rees ideal")
        forms.append(fi)
        bidegrees.append(fi.block_degrees())
        prev = fi
    conj = Ideal(amb, (l1, l2, f0) + tuple(forms)) == P.ideal
    return SylvesterChain(P, l1, l2, f0, tuple(forms), tuple(bidegrees),
                          conj)


# -- the plane quartic construction -----------------------------------


_SQUAREFREE2 = {(1, 1, 0): 0, (1, 0, 1): 1, (0, 1, 1): 2}


class AppendixData:
    """The 4x3 matrix built from a 3x2 syzygy matrix of quadrics, its
    four maximal minors, the three quadrics from the top rows, and the
    verdicts tying them to the Rees ideal and the inverse map."""

    __slots__ = ("syzygy_matrix", "base", "presentation", "b_matrix",
                 "deltas", "quadrics", "phi_prime", "inverse", "factor",
                 "verdicts")

    def __init__(self, syzygy_matrix, base, presentation, b_matrix, deltas,
                 quadrics, phi_prime, inverse, factor, verdicts):
        self.syzygy_matrix = syzygy_matrix
        self.base = base
        self.presentation = presentation
        self.b_matrix = b_matrix
        self.deltas = deltas
        self.quadrics = quadrics
        self.phi_prime = phi_prime
        self.inverse = inverse
        self.factor = factor
        self.verdicts = verdicts

    def __repr__(self):
        return "AppendixData(verdicts %s)" % (self.verdicts,)


def appendix_construct(phi):
    """Run the plane quartic construction on a 3x2 syzygy matrix.

    Entries must be quadrics with no pure-power term; the rows pair with
    the signed minors, so the matrix columns are genuine syzygies.  A
    vanishing quadric q_i is recorded (never raised) since it would
    contradict the construction.
    """
    ring = phi.ring
    if phi.nrows != 3 or phi.ncols != 2:
        raise ValueError("need a 3 x 2 matrix")
    if ring.nvars != 3:
        raise ValueError("need three variables")
    coeffs = [[[ring.field.coerce(0)] * 3 for _j in range(2)]
              for _i in range(3)]
    for i in range(3):
        for j in range(2):
            e = phi[i, j]
            if not e:
                continue
            if not e.is_homogeneous() or e.homogeneous_degree() != 2:
                raise ValueError("entry (%d, %d) is not a quadric" % (i, j))
            for exps, c in e.items():
                slot = _SQUAREFREE2.get(exps)
                if slot is None:
                    raise ValueError("pure power term in entry (%d, %d)"
                                     % (i, j))
                coeffs[i][j][slot] = c
    base_forms = signed_minors(phi)
    if any(not f for f in base_forms):
        raise ValueError("degenerate syzygy matrix: vanishing maximal minor")
    spec = RationalMapSpec(ring, base_forms)
    base = Ideal(ring, base_forms)
    P = rees_ideal(base)
    amb = P.ambient
    ys = [amb.var(nm) for nm in P.ynames]
    xs = [amb.var(nm) for nm in P.xnames]
    # rows 1..2 of B: the y-linear coefficient forms of the two columns
    yforms = []
    for j in range(2):
        row = []
        for slot in range(3):
            acc = amb.zero
            for i in range(3):
                c = coeffs[i][j][slot]
                if c:
                    acc = acc + ys[i] * amb.const(c)
            row.append(acc)
        yforms.append(row)
    (a1, b1, c1), (a2, b2, c2) = yforms
    brows = (tuple(yforms[0]), tuple(yforms[1]),
             (-xs[2], xs[1], amb.zero), (-xs[2], amb.zero, xs[0]))
    bmat = FormMatrix(amb, brows)
    deltas = []
    for i in range(4):
        rows = tuple(brows[k] for k in range(4) if k != i)
        deltas.append(FormMatrix(amb, rows).det())
    d1, d2, d3, d4 = deltas
    sym = [amb.zero, amb.zero]
    for j in range(2):
        for i in range(3):
            e = phi[i, j]
            if e:
                sym[j] = sym[j] + ys[i] * transfer(e, amb)
    q1 = b1 * c2 - b2 * c1
    q2 = a1 * c2 - a2 * c1
    q3 = a1 * b2 - a2 * b1
    verdicts = {
        "pure_power_free": True,
        "sym_match": d2 == sym[0] and d1 == sym[1],
        "eq3": b2 * d2 - b1 * d1 == d3 * xs[1],
        "eq4": c2 * d2 - c1 * d1 == -(d4 * xs[0]),
        "q_nonzero": bool(q1) and bool(q2) and bool(q3),
    }
    i3b = Ideal(amb, tuple(deltas))
    verdicts["codim_b"] = i3b.codimension()
    verdicts["rees_match"] = i3b == P.ideal
    yring = PolyRing(P.ynames, ring.field)
    qy = [transfer(q, yring) if q else yring.zero for q in (q1, q2, q3)]
    phi_prime = FormMatrix(yring, ((qy[2], yring.zero),
                                   (yring.zero, -qy[1]),
                                   (-qy[0], -qy[0])))
    inverse = None
    factor = None
    if verdicts["q_nonzero"]:
        verdicts["codim_phi_prime"] = minor_ideal(phi_prime,
                                                  2).codimension()
        g = signed_minors(phi_prime)
        verdicts["inverse_gcd_one"] = _poly_gcd_list(
            [gi for gi in g if gi]).degree() == 0
        try:
            d = inversion_factor(spec, g)
        except ValueError:
            verdicts["inverse_ok"] = False
        else:
            scale = ring.field.inv(d.leading_coefficient())
            inverse = tuple(gi * scale for gi in g)
            factor = d * scale
            verdicts["inverse_ok"] = True
            verdicts["inverse_degree"] = max(
                gi.homogeneous_degree() for gi in inverse if gi)
    else:
        verdicts["codim_phi_prime"] = None
        verdicts["inverse_gcd_one"] = False
        verdicts["inverse_ok"] = False
    return AppendixData(phi, base, P, bmat, tuple(deltas),
                        tuple(qy), phi_prime, inverse, factor, verdicts)

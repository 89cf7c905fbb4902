"""Slow independent oracles that the fast code paths are checked against.

Everything here sticks to degreewise exact linear algebra and explicit
products, avoiding the Groebner engine entirely, so agreement between
the two routes is meaningful.
"""

import itertools
import random

from cremona.linalg import Echelon
from cremona.rings import PolyRing, QQ


def span_dimension(ring, polys, deg):
    """Dimension of the degree-deg slice of the ideal the polys generate."""
    ech = Echelon(ring.field)
    for p in polys:
        if not p:
            continue
        d = p.homogeneous_degree()
        if d > deg:
            continue
        for m in ring.monomials_of_degree(deg - d):
            ech.insert(dict((p * ring.monomial(m)).items()))
    return len(ech)


def homogeneous_member(ring, gens, p):
    """Whether homogeneous p lies in the homogeneous ideal the gens span.

    Membership of a homogeneous element is a single-degree linear
    question, so one echelon pass settles it.
    """
    if not p:
        return True
    d = p.homogeneous_degree()
    ech = Echelon(ring.field)
    for g in gens:
        if not g:
            continue
        dg = g.homogeneous_degree()
        if dg > d:
            continue
        for m in ring.monomials_of_degree(d - dg):
            ech.insert(dict((g * ring.monomial(m)).items()))
    return ech.contains(dict(p.items()))


def random_form(ring, deg, rng, sparsity=0.6):
    """Random homogeneous form with small integer coefficients."""
    terms = []
    for m in ring.monomials_of_degree(deg):
        if rng.random() < sparsity:
            c = rng.randint(-4, 4)
            if c:
                terms.append((m, c))
    if not terms:
        m = rng.choice(list(ring.monomials_of_degree(deg)))
        terms.append((m, rng.randint(1, 4)))
    return ring.from_terms(terms)


def random_homogeneous_ideal(nvars, rng, max_gens=4, max_deg=4):
    """Seeded homogeneous ideal over up to three variables."""
    names = tuple("x%d" % k for k in range(nvars))
    ring = PolyRing(names, QQ)
    gens = tuple(random_form(ring, rng.randint(1, max_deg), rng)
                 for _ in range(rng.randint(1, max_gens)))
    return ring, gens


def power_gens(gens, k):
    """All k-fold products of the generators, the textbook power."""
    return tuple(_prod(combo) for combo
                 in itertools.combinations_with_replacement(gens, k))


def _prod(polys):
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return out

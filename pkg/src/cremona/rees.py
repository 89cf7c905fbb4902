"""Rees algebra presentations by elimination.

The presentation ideal of the Rees algebra of a base ideal lives in
k[x, y] with one y-variable per generator.  Its x-linear part packs into
the Jacobian dual matrix, whose syzygies drive inverse extraction.
Weighted extra generators give presentations of larger subalgebras of
R[t].
"""

from __future__ import annotations

from .groebner import eliminate
from .ideals import Ideal
from .rings import FormMatrix, PolyRing, Polynomial, transfer

__all__ = ["JacobianDual", "ReesPresentation", "jacobian_dual",
           "rees_ideal", "subalgebra_presentation"]


def _fresh_block(taken, bases, count, start=0):
    for base in bases:
        names = tuple("%s%d" % (base, i + start) for i in range(count))
        if all(n not in taken for n in names):
            return names
    k = 0
    while True:
        names = tuple("%s_%d_%d" % (bases[0], k, i + start)
                      for i in range(count))
        if all(n not in taken for n in names):
            return names
        k += 1


def _uniform_degree(gens):
    degs = set()
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("mixed generator degrees")
        degs.add(g.homogeneous_degree())
    if len(degs) != 1:
        raise ValueError("mixed generator degrees")
    return degs.pop()


class ReesPresentation:
    """Bigraded presentation ideal of the Rees algebra of a base ideal."""

    __slots__ = ("source", "ambient", "ideal", "xnames", "ynames",
                 "generators", "bidegrees", "_image")

    def __init__(self, source, ambient, ideal, xnames, ynames):
        self.source = source
        self.ambient = ambient
        self.ideal = ideal
        self.xnames = xnames
        self.ynames = ynames
        self.generators = ideal.gens
        self.bidegrees = tuple(g.block_degrees() for g in ideal.gens)
        self._image = None

    def image_ideal(self):
        """The y-only part of the ideal; zero exactly for dominant maps."""
        if self._image is None:
            sub, polys = eliminate(list(self.ideal.gens),
                                   list(self.xnames), ring=self.ambient)
            self._image = Ideal(sub, polys)
        return self._image

    def __repr__(self):
        return ("ReesPresentation(%d gens, bidegrees %s)"
                % (len(self.generators), sorted(set(self.bidegrees))))


class JacobianDual:
    """Coefficient matrix of the x-linear part of a Rees presentation.

    Row r lists, per x-variable, the y-form coefficient inside the r-th
    x-linear generator, so that generator equals sum(x_i * row[i]).
    """

    __slots__ = ("matrix", "generators", "presentation")

    def __init__(self, matrix, generators, presentation):
        self.matrix = matrix
        self.generators = generators
        self.presentation = presentation

    def __repr__(self):
        return ("JacobianDual(%d x %d over %s)"
                % (self.matrix.nrows, self.matrix.ncols, self.matrix.ring))


def rees_ideal(I):
    """Presentation ideal of the Rees algebra, minimal bigraded generators.

    Eliminates t from (y_i - t*f_i); generators come back sorted by total
    degree, then x-degree.
    """
    ring = I.ring
    gens = I.gens
    if not gens:
        raise ValueError("need a nonzero ideal")
    _uniform_degree(gens)
    xnames = ring.names
    taken = set(xnames)
    ynames = _fresh_block(taken, ("y", "Y", "v"), len(gens))
    tname = _fresh_block(taken | set(ynames), ("t", "s", "u"), 1)[0]
    work = PolyRing((tname,) + xnames + ynames, ring.field,
                    blocks=((tname,), xnames, ynames))
    t = work.var(tname)
    rel = [work.var(yn) - t * transfer(f, work)
           for yn, f in zip(ynames, gens)]
    sub, polys = eliminate(rel, [tname], ring=work)
    mins = Ideal(sub, polys).minimal_generators()
    keyed = []
    for i, g in enumerate(mins):
        a, b = g.block_degrees()
        keyed.append(((a + b, a, b, i), g))
    keyed.sort(key=lambda kv: kv[0])
    ordered = tuple(g for _, g in keyed)
    return ReesPresentation(I, sub, Ideal(sub, ordered), xnames, ynames)


def jacobian_dual(P):
    """Matrix of y-form coefficients of the x-linear generators."""
    ring = P.ambient
    yring = PolyRing(P.ynames, ring.field)
    xindex = {n: i for i, n in enumerate(P.xnames)}
    yindex = {n: i for i, n in enumerate(P.ynames)}
    rows = []
    used = []
    for g, (a, _b) in zip(P.generators, P.bidegrees):
        if a != 1:
            continue
        row = [{} for _ in P.xnames]
        for exps, c in g.items():
            xi = None
            yexp = [0] * len(P.ynames)
            for pos, e in enumerate(exps):
                if not e:
                    continue
                name = ring.names[pos]
                if name in xindex:
                    xi = xindex[name]
                else:
                    yexp[yindex[name]] = e
            row[xi][tuple(yexp)] = c
        rows.append([yring.from_terms(r) for r in row])
        used.append(g)
    if not rows:
        raise ValueError("no x-linear generators; Jacobian dual undefined")
    return JacobianDual(FormMatrix(yring, rows), tuple(used), P)


def subalgebra_presentation(I, extra=()):
    """Kernel of k[x, y, z] -> k[x, t] with y_i -> f_i*t, z_j -> F_j*t^w_j.

    extra lists pairs (F, w); with no extras this presents the plain Rees
    algebra.  Generators are not minimalized (weighted z-variables break
    the standard grading) but come back in a deterministic order.
    """
    ring = I.ring
    gens = I.gens
    if not gens:
        raise ValueError("need a nonzero ideal")
    _uniform_degree(gens)
    extras = tuple(extra)
    for F, w in extras:
        if not isinstance(w, int) or w < 1:
            raise ValueError("weights must be positive integers")
        if (not isinstance(F, Polynomial) or F.ring != ring or not F
                or not F.is_homogeneous()):
            raise ValueError("extra generators must be nonzero forms")
    xnames = ring.names
    taken = set(xnames)
    ynames = _fresh_block(taken, ("y", "Y", "v"), len(gens))
    taken |= set(ynames)
    znames = ()
    if extras:
        znames = _fresh_block(taken, ("z", "Z", "u"), len(extras), start=1)
        taken |= set(znames)
    tname = _fresh_block(taken, ("t", "s", "w"), 1)[0]
    blocks = ((tname,), xnames, ynames)
    if znames:
        blocks = blocks + (znames,)
    work = PolyRing((tname,) + xnames + ynames + znames, ring.field,
                    blocks=blocks)
    t = work.var(tname)
    rel = [work.var(yn) - t * transfer(f, work)
           for yn, f in zip(ynames, gens)]
    for zn, (F, w) in zip(znames, extras):
        rel.append(work.var(zn) - t ** w * transfer(F, work))
    sub, polys = eliminate(rel, [tname], ring=work)
    return Ideal(sub, polys)

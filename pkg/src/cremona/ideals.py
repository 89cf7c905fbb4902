"""Ideal arithmetic on top of the Groebner layer.

Powers, colon quotients, intersections, saturations with stabilization
exponents, graded minimal generators, minor ideals, Hilbert series data
and radical membership.  All computations are exact and deterministic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .groebner import check_deadline, eliminate, groebner_basis
from .linalg import Echelon
from .rings import MonomialOrder, PolyRing, Polynomial, transfer

__all__ = ["HilbertData", "Ideal", "minors"]


def _fresh_name(ring, base):
    if base not in ring.names:
        return base
    k = 0
    while "%s%d" % (base, k) in ring.names:
        k += 1
    return "%s%d" % (base, k)


def _extended_ring(ring, name):
    blocks = ((name,),) + ring.blocks
    return PolyRing((name,) + ring.names, ring.field, blocks=blocks)


class HilbertData:
    """Hilbert series of R/I as numerator/(1-t)^n plus derived numbers."""

    __slots__ = ("numerator", "dim", "codim", "multiplicity")

    def __init__(self, numerator, dim, codim, multiplicity):
        self.numerator = tuple(numerator)
        self.dim = dim
        self.codim = codim
        self.multiplicity = multiplicity

    def __repr__(self):
        return ("HilbertData(dim=%d, codim=%d, multiplicity=%d)"
                % (self.dim, self.codim, self.multiplicity))

    def __eq__(self, other):
        return (isinstance(other, HilbertData)
                and self.numerator == other.numerator
                and self.dim == other.dim and self.codim == other.codim
                and self.multiplicity == other.multiplicity)


class Ideal:
    """Ideal of a polynomial ring; generators keep their given order."""

    __slots__ = ("ring", "gens", "_cache")

    def __init__(self, ring, gens=()):
        kept = []
        for g in gens:
            if not isinstance(g, Polynomial) or g.ring != ring:
                raise ValueError("generator from a different ring")
            if g:
                kept.append(g)
        self.ring = ring
        self.gens = tuple(kept)
        self._cache = {}

    # -- basics --------------------------------------------------------

    def groebner(self, order=None):
        key = order if order is not None else MonomialOrder.grevlex()
        gb = self._cache.get(key)
        if gb is None:
            gb = groebner_basis(list(self.gens), order=key, ring=self.ring)
            self._cache[key] = gb
        return gb

    def contains(self, f):
        return self.groebner().contains(f)

    def contains_ideal(self, other):
        gb = self.groebner()
        return all(gb.contains(g) for g in other.gens)

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return self.groebner().contains(self.ring.one)

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            return NotImplemented
        if self.gens == other.gens:
            return True
        return self.groebner().polys == other.groebner().polys

    def __repr__(self):
        return "Ideal(%s; %d gens)" % (self.ring, len(self.gens))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Ideal(self.ring, tuple(other * g for g in self.gens))
        self._check(other)
        prods = tuple(a * b for a in self.gens for b in other.gens)
        out = Ideal(self.ring, prods)
        if out.is_homogeneous():
            return Ideal(self.ring, out.minimal_generators())
        return out

    __rmul__ = __mul__

    def power(self, ell):
        if not isinstance(ell, int) or ell < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if ell == 0:
            return Ideal(self.ring, (self.ring.one,))
        if ell == 1:
            return self
        prods = tuple(
            _product(c) for c in
            itertools.combinations_with_replacement(self.gens, ell))
        out = Ideal(self.ring, prods)
        if out.is_homogeneous():
            return Ideal(self.ring, out.minimal_generators())
        return out

    def _check(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            raise ValueError("ideals live in different rings")

    # -- quotients and intersections -----------------------------------

    def intersect(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring, ())
        ring = self.ring
        w = _fresh_name(ring, "_w")
        aux = _extended_ring(ring, w)
        tw = aux.var(w)
        one = aux.one
        gens = [tw * transfer(f, aux) for f in self.gens]
        gens += [(one - tw) * transfer(f, aux) for f in other.gens]
        _sub, out = eliminate(gens, [w], ring=aux)
        return Ideal(ring, tuple(transfer(p, ring) for p in out))

    def quotient(self, other):
        """Colon ideal self : other for an ideal or a single polynomial."""
        ring = self.ring
        if isinstance(other, Polynomial):
            if other.ring != ring:
                raise ValueError("polynomial from a different ring")
            if not other:
                return Ideal(ring, (ring.one,))
            inter = self.intersect(Ideal(ring, (other,)))
            quots = tuple(g.exact_divide(other).normalized()
                          for g in inter.gens)
            return Ideal(ring, quots)
        self._check(other)
        acc = None
        for f in other.gens:
            check_deadline()
            q = self.quotient(f)
            acc = q if acc is None else acc.intersect(q)
        if acc is None:
            return Ideal(ring, (ring.one,))
        return acc

    def saturate(self, other):
        """Stable value of self : other^s and the smallest such s."""
        cur = self
        s = 0
        while True:
            check_deadline()
            nxt = cur.quotient(other)
            if cur.contains_ideal(nxt):
                return cur, s
            cur = nxt
            s += 1

    def eliminate(self, drop):
        """Image of the ideal in the subring without the drop variables."""
        sub, out = eliminate(list(self.gens), drop, ring=self.ring)
        return Ideal(sub, out)

    # -- graded structure ----------------------------------------------

    def minimal_generators(self):
        """Minimal homogeneous generators, ascending degree, stable order."""
        gens = [g.normalized() for g in self.gens]
        if not gens:
            return ()
        if any(not g.is_homogeneous() for g in gens):
            raise ValueError("minimal generators need a homogeneous ideal")
        ring = self.ring
        field = ring.field
        by_degree = {}
        for g in gens:
            by_degree.setdefault(g.homogeneous_degree(), []).append(g)
        mins = []
        for d in sorted(by_degree):
            check_deadline()
            ech = Echelon(field)
            for g0 in mins:
                d0 = g0.homogeneous_degree()
                for mexp in ring.monomials_of_degree(d - d0):
                    mono = ring.monomial(mexp)
                    ech.insert(dict((g0 * mono).items()))
            for g in by_degree[d]:
                if ech.insert(dict(g.items())) is not None:
                    mins.append(g)
        return tuple(mins)

    def hilbert(self):
        """Hilbert series data of R/I from the leading-term ideal."""
        ring = self.ring
        n = ring.nvars
        if any(not g.is_homogeneous() for g in self.gens):
            raise ValueError("Hilbert series needs a homogeneous ideal")
        leads = self.groebner().leads
        if any(sum(e) == 0 for e in leads):
            return HilbertData((), -1, n + 1, 0)
        num, codim, mult = _series_data(leads)
        numer = tuple(num.get(d, 0) for d in range(max(num) + 1)) if num else ()
        return HilbertData(numer, n - codim, codim, mult)

    def codimension(self):
        """Codimension via the leading-term ideal; no homogeneity needed."""
        leads = self.groebner().leads
        if any(sum(e) == 0 for e in leads):
            return self.ring.nvars + 1
        return _series_data(leads)[1]

    def radical_contains(self, f):
        """Whether some power of f lies in the ideal."""
        ring = self.ring
        if not isinstance(f, Polynomial) or f.ring != ring:
            raise ValueError("polynomial from a different ring")
        if not f:
            return True
        if self.is_zero():
            return False
        w = _fresh_name(ring, "_w")
        aux = _extended_ring(ring, w)
        gens = [transfer(g, aux) for g in self.gens]
        gens.append(aux.one - aux.var(w) * transfer(f, aux))
        gb = groebner_basis(gens, ring=aux)
        return gb.contains(aux.one)


def _product(polys):
    acc = polys[0]
    for p in polys[1:]:
        acc = acc * p
    return acc


def minors(mat, k):
    """Ideal of k x k minors of a form matrix, minimalized."""
    vals = mat.minors(k)
    out = Ideal(mat.ring, tuple(vals))
    if out.is_homogeneous() and out.gens:
        return Ideal(mat.ring, out.minimal_generators())
    return out


def _series_data(leads):
    """Numerator, (1-t)-multiplicity and residual value for a lead set."""
    num = _hilbert_numerator(tuple(leads), {}) if leads else {0: 1}
    codim = 0
    q = dict(num)
    while q and not sum(q.values()):
        nq = {}
        acc = 0
        for d in range(max(q) + 1):
            acc += q.get(d, 0)
            if acc:
                nq[d] = acc
        q = nq
        codim += 1
    mult = sum(q.values()) if q else 0
    return num, codim, mult


def _monomial_min(gens):
    out = []
    for e in sorted(gens, key=lambda m: (sum(m), m)):
        if not any(all(x <= y for x, y in zip(m, e)) for m in out):
            out.append(e)
    return tuple(sorted(out))


def _hilbert_numerator(gens, cache):
    """Numerator of the Hilbert series of R/(monomial ideal) over (1-t)^n."""
    gens = _monomial_min(gens)
    hit = cache.get(gens)
    if hit is not None:
        return hit
    if not gens:
        res = {0: 1}
    elif any(sum(e) == 0 for e in gens):
        res = {}
    else:
        mixed = [e for e in gens if sum(1 for x in e if x) > 1]
        if not mixed:
            res = {0: 1}
            for e in gens:
                a = sum(e)
                nxt = dict(res)
                for d, c in res.items():
                    v = nxt.get(d + a, 0) - c
                    if v:
                        nxt[d + a] = v
                    elif d + a in nxt:
                        del nxt[d + a]
                res = nxt
        else:
            counts = {}
            for e in mixed:
                for i, x in enumerate(e):
                    if x:
                        counts[i] = counts.get(i, 0) + 1
            piv = max(counts, key=lambda i: (counts[i], -i))
            colon = []
            for e in gens:
                if e[piv]:
                    m = list(e)
                    m[piv] -= 1
                    colon.append(tuple(m))
                else:
                    colon.append(e)
            plus = [e for e in gens if not e[piv]]
            plus.append(tuple(1 if i == piv else 0 for i in range(len(e))))
            res = dict(_hilbert_numerator(tuple(plus), cache))
            for d, c in _hilbert_numerator(tuple(colon), cache).items():
                v = res.get(d + 1, 0) + c
                if v:
                    res[d + 1] = v
                elif d + 1 in res:
                    del res[d + 1]
    cache[gens] = res
    return res

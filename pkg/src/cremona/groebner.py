"""Buchberger engine on packed integer monomials.

A monomial is stored as one integer whose numeric comparison agrees with
the term order: per-order fields (degrees, complemented or plain
exponents) are laid out most significant first, each 24 bits wide with a
guard bit.  Multiplication then becomes integer addition up to a
constant and divisibility a two-mask borrow test, so the reduction loop
never touches exponent tuples.  Coefficients stay exact: fraction-free
integers over QQ, residues over Fp.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
import time
import weakref
from fractions import Fraction
from math import gcd

from .linalg import Echelon
from .rings import MonomialOrder, PolyRing, Polynomial, transfer

__all__ = [
    "DeadlineExceeded",
    "GroebnerBasis",
    "PackedOrder",
    "check_deadline",
    "deadline",
    "eliminate",
    "groebner_basis",
    "live_bases",
    "syzygies",
]

_W = 24
_GUARD = 1 << (_W - 1)
_MAXF = _GUARD - 1


class DeadlineExceeded(RuntimeError):
    """Raised when a computation runs past its cooperative deadline."""


_DEADLINE = contextvars.ContextVar("cremona_deadline", default=None)


@contextlib.contextmanager
def deadline(seconds):
    """Run the enclosed block under a wall clock budget in seconds."""
    limit = time.monotonic() + seconds if seconds else None
    token = _DEADLINE.set(limit)
    try:
        yield
    finally:
        _DEADLINE.reset(token)


def check_deadline():
    limit = _DEADLINE.get()
    if limit is not None and time.monotonic() > limit:
        raise DeadlineExceeded("computation exceeded its time budget")


class PackedOrder:
    """A monomial order compiled to packed integer keys for one ring."""

    __slots__ = ("ring", "order", "fields", "dfields", "mulc", "down", "up",
                 "guards", "key0")

    def __init__(self, ring, order):
        n = ring.nvars
        raw = []
        kind = order.kind
        if kind == "grevlex":
            raw.append(("deg", tuple(range(n))))
            raw.extend(("comp", i) for i in range(n - 1, -1, -1))
        elif kind == "lex":
            raw.extend(("plain", i) for i in range(n))
        elif kind == "block":
            seen = []
            for group in order.data:
                idx = tuple(ring.index(v) for v in group)
                seen.extend(idx)
                raw.append(("deg", idx))
                raw.extend(("comp", i) for i in reversed(idx))
            if sorted(seen) != list(range(n)):
                raise ValueError("block order must cover the ring variables")
        elif kind == "weighted":
            weights, tie = order.data
            if len(weights) != n:
                raise ValueError("weight vector length mismatch")
            if any(w <= 0 for w in weights):
                raise ValueError("weights must be positive")
            raw.append(("wdeg", tuple(weights)))
            if tie.kind == "grevlex":
                raw.append(("deg", tuple(range(n))))
                raw.extend(("comp", i) for i in range(n - 1, -1, -1))
            elif tie.kind == "lex":
                raw.extend(("plain", i) for i in range(n))
            else:
                raise ValueError("unsupported weighted tiebreak %r" % tie.kind)
        else:
            raise ValueError("unknown order kind %r" % kind)
        covered = sorted(p for k, p in raw if k in ("comp", "plain"))
        if covered != list(range(n)):
            raise ValueError("order does not determine every exponent")
        nf = len(raw)
        fields = tuple((k, _W * (nf - 1 - i), p) for i, (k, p) in enumerate(raw))
        self.ring = ring
        self.order = order
        self.fields = fields
        self.dfields = tuple(f for f in fields if f[0] in ("comp", "plain"))
        mulc = down = up = guards = 0
        for k, shift, _p in fields:
            guards |= _GUARD << shift
            if k == "comp":
                mulc |= _MAXF << shift
                up |= _MAXF << shift
            else:
                down |= _MAXF << shift
        self.mulc = mulc
        self.down = down
        self.up = up
        self.guards = guards
        self.key0 = self.encode((0,) * n)

    def encode(self, exps):
        acc = 0
        for kind, shift, payload in self.fields:
            if kind == "comp":
                v = _MAXF - exps[payload]
            elif kind == "plain":
                v = exps[payload]
            elif kind == "deg":
                v = 0
                for i in payload:
                    v += exps[i]
            else:
                v = 0
                for w, x in zip(payload, exps):
                    v += w * x
            acc |= v << shift
        return acc

    def decode(self, key):
        e = [0] * self.ring.nvars
        for kind, shift, payload in self.dfields:
            v = (key >> shift) & _MAXF
            e[payload] = _MAXF - v if kind == "comp" else v
        return tuple(e)

    def divides(self, kb, ka):
        """Whether the monomial of kb divides the monomial of ka."""
        x = (ka & self.down) | (kb & self.up)
        y = (kb & self.down) | (ka & self.up)
        g = self.guards
        return ((x | g) - y) & g == g

    def lcm(self, ka, kb):
        ea = self.decode(ka)
        eb = self.decode(kb)
        return self.encode(tuple(x if x > y else y for x, y in zip(ea, eb)))

    def tdeg(self, key):
        return sum(self.decode(key))


class _Elt:
    __slots__ = ("key", "terms", "lc", "tdeg", "sugar", "alive", "idx")

    def __init__(self, key, terms, lc, tdeg, sugar, idx):
        self.key = key
        self.terms = terms
        self.lc = lc
        self.tdeg = tdeg
        self.sugar = sugar
        self.alive = True
        self.idx = idx


def _engine_in(po, poly):
    """Convert to packed integer terms; returns (terms, scale) with
    poly == scale * terms (scale a Fraction over QQ, a residue over Fp)."""
    enc = po.encode
    p = po.ring.field.characteristic
    if p:
        terms = {}
        for e, c in poly.items():
            if c % p:
                terms[enc(e)] = c % p
        if not terms:
            return {}, 1
        lead = max(terms)
        lc = terms[lead]
        if lc != 1:
            inv = pow(lc, -1, p)
            terms = {k: v * inv % p for k, v in terms.items()}
        return terms, lc
    terms = {enc(e): c for e, c in poly.items()}
    if not terms:
        return {}, Fraction(0)
    den = 1
    for c in terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    num = 0
    for c in terms.values():
        num = gcd(num, c.numerator * (den // c.denominator))
    sign = -1 if terms[max(terms)] < 0 else 1
    out = {k: sign * c.numerator * (den // c.denominator) // num
           for k, c in terms.items()}
    return out, Fraction(sign * num, den)


def _normalize(terms, p):
    """Scale to the canonical representative: monic over Fp, primitive
    integer with positive lead over QQ.  Mutates nothing; returns dict."""
    lead = max(terms)
    if p:
        lc = terms[lead]
        if lc == 1:
            return dict(terms)
        inv = pow(lc, -1, p)
        return {k: v * inv % p for k, v in terms.items()}
    g = 0
    for v in terms.values():
        g = gcd(g, v)
    if terms[lead] < 0:
        g = -g
    if g == 1:
        return dict(terms)
    return {k: v // g for k, v in terms.items()}


def _reduce(fterms, basis, po, p, early=False):
    """Full normal form of fterms against basis (ascending lead keys).

    Mutates fterms to empty.  Returns (out, snum, sden) so the exact
    remainder is (snum/sden) * out over QQ (snum = sden = 1 over Fp), or
    None in early mode as soon as the remainder is known to be nonzero.
    """
    down = po.down
    up = po.up
    guards = po.guards
    out = {}
    snum = sden = 1
    heap = [-k for k in fterms]
    heapq.heapify(heap)
    steps = 0
    while heap:
        k = -heapq.heappop(heap)
        c = fterms.get(k)
        if c is None:
            continue
        g = None
        for cand in basis:
            ck = cand.key
            if ck > k:
                break
            x = (k & down) | (ck & up)
            y = (ck & down) | (k & up)
            if ((x | guards) - y) & guards == guards:
                g = cand
                break
        if g is None:
            if early:
                return None
            del fterms[k]
            out[k] = c
            continue
        if p:
            off = k - g.key
            for kk, cc in g.terms.items():
                nk = kk + off
                v = fterms.get(nk)
                if v is None:
                    nv = -c * cc % p
                    if nv:
                        fterms[nk] = nv
                        heapq.heappush(heap, -nk)
                else:
                    nv = (v - c * cc) % p
                    if nv:
                        fterms[nk] = nv
                    else:
                        del fterms[nk]
        else:
            glc = g.lc
            cg = gcd(c if c > 0 else -c, glc)
            a = glc // cg
            b = c // cg
            if a != 1:
                for kk in fterms:
                    fterms[kk] *= a
                for kk in out:
                    out[kk] *= a
                sden *= a
            off = k - g.key
            for kk, cc in g.terms.items():
                nk = kk + off
                v = fterms.get(nk)
                if v is None:
                    fterms[nk] = -b * cc
                    heapq.heappush(heap, -nk)
                else:
                    nv = v - b * cc
                    if nv:
                        fterms[nk] = nv
                    else:
                        del fterms[nk]
        steps += 1
        if not steps & 255:
            check_deadline()
            if not p:
                g0 = 0
                for v in fterms.values():
                    g0 = gcd(g0, v)
                    if g0 == 1:
                        break
                if g0 > 1:
                    for v in out.values():
                        g0 = gcd(g0, v)
                        if g0 == 1:
                            break
                if g0 > 1:
                    for kk in fterms:
                        fterms[kk] //= g0
                    for kk in out:
                        out[kk] //= g0
                    snum *= g0
    return out, snum, sden


def _buchberger(ring, polys, po):
    p = ring.field.characteristic
    elts = []
    live = []
    dirty = [True]
    pairs = {}
    heap = []
    lcmf = po.lcm

    def view():
        if dirty[0]:
            live[:] = sorted((g for g in elts if g.alive), key=lambda g: g.key)
            dirty[0] = False
        return live

    def update(hidx):
        h = elts[hidx]
        lmh = h.key
        cand = []
        for g in elts:
            if g.idx != hidx and g.alive:
                cand.append((lcmf(lmh, g.key), g.idx))
        cand.sort()
        kept = []
        for pos, (lk, gi) in enumerate(cand):
            cop = lk == lmh + elts[gi].key - po.mulc
            if not cop:
                drop = any(po.divides(l2, lk) for l2, _g, _c in kept)
                if not drop:
                    drop = any(po.divides(l2, lk) for l2, _g in cand[pos + 1:])
                if drop:
                    continue
            kept.append((lk, gi, cop))
        for key, (sug, lk) in list(pairs.items()):
            if po.divides(lmh, lk):
                i, j = key
                if lcmf(elts[i].key, lmh) != lk and lcmf(lmh, elts[j].key) != lk:
                    del pairs[key]
        for lk, gi, cop in kept:
            if cop:
                continue
            g = elts[gi]
            dl = po.tdeg(lk)
            sug = max(g.sugar + dl - g.tdeg, h.sugar + dl - h.tdeg)
            pairs[(gi, hidx)] = (sug, lk)
            heapq.heappush(heap, (sug, lk, gi, hidx))
        for g in elts:
            if g.alive and g.idx != hidx and po.divides(lmh, g.key):
                g.alive = False
        dirty[0] = True

    def add(terms, sugar):
        terms = _normalize(terms, p)
        key = max(terms)
        idx = len(elts)
        elts.append(_Elt(key, terms, terms[key], po.tdeg(key), sugar, idx))
        dirty[0] = True
        update(idx)

    seeds = []
    for f in polys:
        terms, _sc = _engine_in(po, f)
        if terms:
            seeds.append((max(terms), terms, f.degree()))
    seeds.sort(key=lambda s: s[0])
    for _lead, terms, deg in seeds:
        red = _reduce(dict(terms), view(), po, p)
        out = red[0]
        if out:
            add(out, deg)

    while heap:
        sug, lk, i, j = heapq.heappop(heap)
        if pairs.get((i, j)) != (sug, lk):
            continue
        del pairs[(i, j)]
        check_deadline()
        gi = elts[i]
        gj = elts[j]
        offi = lk - gi.key
        offj = lk - gj.key
        s = {}
        if p:
            for kk, cc in gi.terms.items():
                s[kk + offi] = cc
            for kk, cc in gj.terms.items():
                nk = kk + offj
                nv = (s.get(nk, 0) - cc) % p
                if nv:
                    s[nk] = nv
                elif nk in s:
                    del s[nk]
        else:
            cg = gcd(gi.lc, gj.lc)
            a = gj.lc // cg
            b = gi.lc // cg
            for kk, cc in gi.terms.items():
                s[kk + offi] = a * cc
            for kk, cc in gj.terms.items():
                nk = kk + offj
                nv = s.get(nk, 0) - b * cc
                if nv:
                    s[nk] = nv
                elif nk in s:
                    del s[nk]
        if not s:
            continue
        red = _reduce(s, view(), po, p)
        out = red[0]
        if out:
            add(out, sug)

    final = sorted((g for g in elts if g.alive), key=lambda g: g.key)
    reduced = []
    for g in final:
        others = [h for h in final if h is not g]
        red = _reduce(dict(g.terms), others, po, p)
        reduced.append(_normalize(red[0], p))
    return reduced


# every basis still referenced somewhere; lets audits certify whatever
# a session is actually relying on
_LIVE_BASES = weakref.WeakSet()


def live_bases():
    """Snapshot of all GroebnerBasis objects currently alive."""
    return tuple(_LIVE_BASES)


class GroebnerBasis:
    """Reduced Groebner basis supporting exact normal forms."""

    __slots__ = ("ring", "order", "source", "polys", "_po", "_elts",
                 "_leads", "__weakref__")

    def __init__(self, ring, order, source, po, term_dicts):
        _LIVE_BASES.add(self)
        self.ring = ring
        self.order = order
        self.source = tuple(source)
        self._po = po
        elts = []
        polys = []
        p = ring.field.characteristic
        for idx, terms in enumerate(term_dicts):
            key = max(terms)
            elts.append(_Elt(key, terms, terms[key], po.tdeg(key), 0, idx))
            if p:
                coeffs = {po.decode(k): v for k, v in terms.items()}
            else:
                coeffs = {po.decode(k): Fraction(v) for k, v in terms.items()}
            polys.append(Polynomial(ring, coeffs))
        self._elts = elts
        self.polys = tuple(polys)
        self._leads = tuple(po.decode(g.key) for g in elts)

    @property
    def leads(self):
        """Leading exponent vectors, ascending in the basis order."""
        return self._leads

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def normal_form(self, f):
        if not isinstance(f, Polynomial) or f.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        if not f or not self._elts:
            return f
        po = self._po
        p = self.ring.field.characteristic
        terms, scale = _engine_in(po, f)
        out, snum, sden = _reduce(terms, self._elts, po, p)
        if not out:
            return self.ring.zero
        if p:
            return Polynomial(self.ring,
                              {po.decode(k): v * scale % p
                               for k, v in out.items() if v * scale % p})
        sc = scale * Fraction(snum, sden)
        return Polynomial(self.ring, {po.decode(k): v * sc for k, v in out.items()})

    def contains(self, f):
        if not isinstance(f, Polynomial) or f.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        if not f:
            return True
        if not self._elts:
            return False
        po = self._po
        terms, _scale = _engine_in(po, f)
        red = _reduce(terms, self._elts, po, self.ring.field.characteristic,
                      early=True)
        return red is not None

    def certify(self):
        """Re-check the Buchberger criterion and source membership."""
        po = self._po
        p = self.ring.field.characteristic
        elts = self._elts
        for i in range(len(elts)):
            for j in range(i + 1, len(elts)):
                check_deadline()
                gi, gj = elts[i], elts[j]
                lk = po.lcm(gi.key, gj.key)
                offi = lk - gi.key
                offj = lk - gj.key
                s = {}
                if p:
                    for kk, cc in gi.terms.items():
                        s[kk + offi] = cc
                    for kk, cc in gj.terms.items():
                        nk = kk + offj
                        nv = (s.get(nk, 0) - cc) % p
                        if nv:
                            s[nk] = nv
                        elif nk in s:
                            del s[nk]
                else:
                    cg = gcd(gi.lc, gj.lc)
                    a = gj.lc // cg
                    b = gi.lc // cg
                    for kk, cc in gi.terms.items():
                        s[kk + offi] = a * cc
                    for kk, cc in gj.terms.items():
                        nk = kk + offj
                        nv = s.get(nk, 0) - b * cc
                        if nv:
                            s[nk] = nv
                        elif nk in s:
                            del s[nk]
                if s and _reduce(s, elts, po, p, early=True) is None:
                    return False
        return all(self.contains(f) for f in self.source)


def groebner_basis(gens, order=None, ring=None):
    """Reduced Groebner basis of the given generators."""
    gens = [g for g in gens]
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generating set")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    if order is None:
        order = MonomialOrder.grevlex()
    po = PackedOrder(ring, order)
    nonzero = [g for g in gens if g]
    dicts = _buchberger(ring, nonzero, po) if nonzero else []
    return GroebnerBasis(ring, order, gens, po, dicts)


def eliminate(gens, drop, ring=None):
    """Intersect the ideal with the subring omitting the drop variables.

    Returns (subring, generators): a Groebner basis of the elimination
    ideal transferred into the subring, sorted by its default order.
    """
    gens = [g for g in gens]
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generating set")
        ring = gens[0].ring
    dropset = set(drop)
    for nm in dropset:
        ring.index(nm)
    keep = tuple(nm for nm in ring.names if nm not in dropset)
    if not keep:
        raise ValueError("cannot eliminate every variable")
    if len(keep) == ring.nvars:
        raise ValueError("nothing to eliminate")
    first = tuple(nm for nm in ring.names if nm in dropset)
    order = MonomialOrder.block(first, keep)
    gb = groebner_basis(gens, order=order, ring=ring)
    blocks = tuple(tuple(nm for nm in b if nm not in dropset)
                   for b in ring.blocks)
    blocks = tuple(b for b in blocks if b)
    sub = PolyRing(keep, ring.field, blocks=blocks or None)
    keepset = set(keep)
    out = [transfer(g, sub) for g in gb.polys
           if all(nm in keepset for nm in g.support())]
    out.sort(key=lambda f: sub._defkey(f.leading_monomial()))
    return sub, tuple(out)


# -- module Groebner bases and syzygies --------------------------------


def _column_shifts(mat):
    """Column degree shifts making every entry graded; raises otherwise."""
    if mat.col_degrees is not None:
        return list(mat.col_degrees)
    r, c = mat.nrows, mat.ncols
    degs = {}
    for i in range(r):
        for j in range(c):
            e = mat[i, j]
            if e:
                degs[(i, j)] = e.homogeneous_degree()
    rho = [None] * r
    delta = [None] * c
    for seed in range(r):
        if rho[seed] is not None or not any((seed, j) in degs for j in range(c)):
            continue
        rho[seed] = 0
        queue = [("r", seed)]
        while queue:
            kind, a = queue.pop()
            if kind == "r":
                for j in range(c):
                    d = degs.get((a, j))
                    if d is None:
                        continue
                    want = rho[a] + d
                    if delta[j] is None:
                        delta[j] = want
                        queue.append(("c", j))
                    elif delta[j] != want:
                        raise ValueError("matrix is not graded")
            else:
                for i in range(r):
                    d = degs.get((i, a))
                    if d is None:
                        continue
                    want = delta[a] - d
                    if rho[i] is None:
                        rho[i] = want
                        queue.append(("r", i))
                    elif rho[i] != want:
                        raise ValueError("matrix is not graded")
    for j in range(c):
        if delta[j] is None:
            delta[j] = 0
    return delta


def _module_gb(vecs, po, p, field):
    """Buchberger for submodules of a free module, position over term."""
    mk = lambda m: (-m[0], m[1])
    elts = []
    leads = []
    pairs = []

    def reduce_full(v):
        out = {}
        while v:
            m = max(v, key=mk)
            comp, k = m
            red = -1
            for i, (lc2, lk) in enumerate(leads):
                if lc2 == comp and po.divides(lk, k):
                    red = i
                    break
            if red < 0:
                out[m] = v.pop(m)
                continue
            cf = v[m]
            off = k - leads[red][1]
            for (c2, k2), c3 in elts[red].items():
                tgt = (c2, k2 + off)
                nv = v.get(tgt, 0) - cf * c3
                if p:
                    nv %= p
                if nv:
                    v[tgt] = nv
                elif tgt in v:
                    del v[tgt]
        return out

    def add(v):
        m = max(v, key=mk)
        inv = field.inv(v[m])
        if p:
            v = {kk: vv * inv % p for kk, vv in v.items()}
        else:
            v = {kk: vv * inv for kk, vv in v.items()}
        idx = len(elts)
        for i, (lc2, lk) in enumerate(leads):
            if lc2 == m[0]:
                heapq.heappush(pairs, ((-m[0], po.lcm(lk, m[1])), i, idx))
        elts.append(v)
        leads.append(m)

    for v in vecs:
        red = reduce_full(dict(v))
        if red:
            add(red)
    while pairs:
        _prio, i, j = heapq.heappop(pairs)
        check_deadline()
        (ci, ki), (cj, kj) = leads[i], leads[j]
        lk = po.lcm(ki, kj)
        offi = lk - ki
        offj = lk - kj
        s = {}
        for (c2, k2), cf in elts[i].items():
            s[(c2, k2 + offi)] = cf
        for (c2, k2), cf in elts[j].items():
            tgt = (c2, k2 + offj)
            nv = s.get(tgt, 0) - cf
            if p:
                nv %= p
            if nv:
                s[tgt] = nv
            elif tgt in s:
                del s[tgt]
        s = reduce_full(s)
        if s:
            add(s)
    return elts


def _flatten(w):
    out = {}
    for j, poly in enumerate(w):
        for e, cf in poly.items():
            out[(j, e)] = cf
    return out


def syzygies(mat):
    """Minimal generating syzygies of the columns of mat.

    Returns a matrix S with mat @ S = 0 whose columns generate the whole
    column relation module, listed by ascending degree.  The matrix must
    be graded (consistent row and column shifts).
    """
    from .rings import FormMatrix

    ring = mat.ring
    field = ring.field
    p = field.characteristic
    po = PackedOrder(ring, MonomialOrder.grevlex())
    r, c = mat.nrows, mat.ncols
    delta = _column_shifts(mat)
    vecs = []
    for j in range(c):
        v = {}
        for i in range(r):
            for e, cf in mat[i, j].items():
                v[(i, po.encode(e))] = cf
        v[(r + j, po.key0)] = field.coerce(1)
        vecs.append(v)
    gb = _module_gb(vecs, po, p, field)
    graded = []
    for v in gb:
        if not all(comp >= r for comp, _k in v):
            continue
        w = [ring.zero] * c
        for (comp, k), cf in v.items():
            w[comp - r] = w[comp - r] + ring.monomial(po.decode(k), cf)
        degs = {delta[j] + w[j].homogeneous_degree() for j in range(c) if w[j]}
        if len(degs) != 1:
            raise ValueError("syzygy grading inconsistent")
        graded.append((degs.pop(), w))
    graded.sort(key=lambda t: t[0])
    mins = []
    for s in sorted({d for d, _w in graded}):
        check_deadline()
        ech = Echelon(field)
        for s0, w0 in mins:
            if s0 >= s:
                continue
            for mexp in ring.monomials_of_degree(s - s0):
                mono = ring.monomial(mexp)
                ech.insert(_flatten([wj * mono for wj in w0]))
        for d, w in graded:
            if d == s and ech.insert(_flatten(w)) is not None:
                mins.append((s, w))
    columns = [_normalize_column(ring, w) for _s, w in mins]
    entries = [[col[j] for col in columns] for j in range(c)]
    if not columns:
        entries = [[] for _ in range(c)]
    return FormMatrix(ring, entries)


def _normalize_column(ring, w):
    """Scale a vector of forms by one scalar to a canonical representative."""
    p = ring.field.characteristic
    first = next(f for f in w if f)
    if p:
        inv = pow(first.leading_coefficient(), -1, p)
        return [f * inv for f in w]
    den = 1
    num = 0
    for f in w:
        for _e, c in f.items():
            den = den * c.denominator // gcd(den, c.denominator)
    for f in w:
        for _e, c in f.items():
            num = gcd(num, c.numerator * (den // c.denominator))
    scale = Fraction(den, num)
    if first.leading_coefficient() < 0:
        scale = -scale
    return [f * scale for f in w]

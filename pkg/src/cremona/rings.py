"""Exact multivariate polynomial rings over QQ and prime fields.

Coefficient arithmetic is exact: Fraction over the rationals, reduced
residues over Fp.  Polynomials are immutable dict-backed values with a
canonical text form (terms descending in the ring's default grevlex
order, explicit '*' and '^', rationals printed as a/b) so that equal
values print identically and printed values parse back.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction

__all__ = [
    "Field", "QQ", "GF", "MonomialOrder", "PolyRing", "Polynomial",
    "FormMatrix", "NotDivisibleError", "ParseError", "poly_sqrt", "transfer",
]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _is_prime(n):
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """The rationals (characteristic 0) or a prime field Fp."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic=0):
        if characteristic and not _is_prime(characteristic):
            raise ValueError("characteristic must be zero or prime")
        self.characteristic = characteristic

    def coerce(self, value):
        p = self.characteristic
        if p:
            if isinstance(value, int):
                return value % p
            value = Fraction(value)
            return value.numerator * pow(value.denominator, -1, p) % p
        return Fraction(value)

    def inv(self, c):
        p = self.characteristic
        return pow(c, -1, p) if p else 1 / c

    @property
    def label(self):
        p = self.characteristic
        return "Fp(%d)" % p if p else "QQ"

    def __eq__(self, other):
        return isinstance(other, Field) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return self.label


QQ = Field(0)


def GF(p):
    """Prime field of characteristic p."""
    return Field(p)


class MonomialOrder:
    """Term order description: lex, grevlex, weighted, or block elimination.

    Orders are specified by variable names so the same order value can be
    compiled against any ring containing those variables.
    """

    __slots__ = ("kind", "data")

    def __init__(self, kind, data=()):
        self.kind = kind
        self.data = data

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def block(cls, *name_groups):
        """Product order eliminating earlier groups, grevlex inside each."""
        return cls("block", tuple(tuple(g) for g in name_groups))

    @classmethod
    def weighted(cls, weights, tiebreak=None):
        """Compare by total weight first, then by the tiebreak order."""
        tb = tiebreak if tiebreak is not None else cls.grevlex()
        return cls("weighted", (tuple(weights), tb))

    def key_function(self, ring):
        """Return a python-level sort key on exponent tuples (oracle path)."""
        n = ring.nvars
        if self.kind == "grevlex":
            rng = range(n - 1, -1, -1)
            return lambda e: (sum(e),) + tuple(-e[i] for i in rng)
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "block":
            groups = [tuple(ring.index(v) for v in g) for g in self.data]
            seen = [i for g in groups for i in g]
            if sorted(seen) != list(range(n)):
                raise ValueError("block order must cover the ring variables")

            def key(e, groups=groups):
                out = []
                for g in groups:
                    out.append(sum(e[i] for i in g))
                    out.extend(-e[i] for i in reversed(g))
                return tuple(out)

            return key
        if self.kind == "weighted":
            weights, tb = self.data
            if len(weights) != n:
                raise ValueError("weight vector length mismatch")
            if any(w <= 0 for w in weights):
                raise ValueError("weights must be positive")
            tbkey = tb.key_function(ring)
            return lambda e: (sum(w * x for w, x in zip(weights, e)),) + tbkey(e)
        raise ValueError("unknown order kind %r" % self.kind)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and self.kind == other.kind and self.data == other.data)

    def __hash__(self):
        return hash((self.kind, self.data))

    def __repr__(self):
        return "MonomialOrder(%s)" % self.kind


class NotDivisibleError(ArithmeticError):
    pass


class ParseError(ValueError):
    pass


class PolyRing:
    """Polynomial ring k[names] with an optional block structure.

    Blocks partition the variables into consecutive groups and give the
    multigraded degree used for bidegrees; they do not affect arithmetic
    or the default (grevlex) term order.
    """

    __slots__ = ("field", "names", "blocks", "_index", "_gens", "_defkey")

    def __init__(self, names, field=QQ, blocks=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        for nm in names:
            if not _NAME_RE.match(nm):
                raise ValueError("bad variable name %r" % nm)
        if blocks is None:
            blocks = (names,)
        blocks = tuple(tuple(b) for b in blocks)
        if tuple(v for b in blocks for v in b) != names:
            raise ValueError("blocks must partition the variables in order")
        self.field = field
        self.names = names
        self.blocks = blocks
        self._index = {nm: i for i, nm in enumerate(names)}
        self._gens = None
        self._defkey = MonomialOrder.grevlex().key_function(self)

    @property
    def nvars(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("no variable %r in %r" % (name, self)) from None

    @property
    def gens(self):
        if self._gens is None:
            one = self.field.coerce(1)
            gens = []
            for i in range(self.nvars):
                e = [0] * self.nvars
                e[i] = 1
                gens.append(Polynomial(self, {tuple(e): one}))
            self._gens = tuple(gens)
        return self._gens

    def var(self, name):
        return self.gens[self.index(name)]

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field.coerce(c)
        if not c:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent vector")
        c = self.field.coerce(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def from_terms(self, terms):
        out = {}
        for exps, c in terms.items() if isinstance(terms, dict) else terms:
            c = self.field.coerce(c)
            if c:
                exps = tuple(exps)
                prev = out.get(exps)
                c = c + prev if prev is not None else c
                if self.field.characteristic:
                    c %= self.field.characteristic
                if c:
                    out[exps] = c
                elif exps in out:
                    del out[exps]
        return Polynomial(self, out)

    def monomials_of_degree(self, d):
        """Yield all exponent vectors of total degree d."""
        n = self.nvars
        if n == 0:
            if d == 0:
                yield ()
            return
        for bars in itertools.combinations(range(d + n - 1), n - 1):
            prev, out = -1, []
            for b in bars:
                out.append(b - prev - 1)
                prev = b
            out.append(d + n - 1 - prev - 1)
            yield tuple(out)

    def block_of(self, name):
        for bi, b in enumerate(self.blocks):
            if name in b:
                return bi
        raise KeyError(name)

    def parse(self, text):
        return _parse_poly(self, text)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.names == other.names and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.field, self.names, self.blocks))

    def __repr__(self):
        return "%s[%s]" % (self.field.label, ",".join(self.names))


class Polynomial:
    """Immutable exact polynomial; do not mutate the term dict."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self._t = terms
        self._hash = None

    # -- inspection ----------------------------------------------------

    def items(self):
        return self._t.items()

    def coefficient(self, exps):
        return self._t.get(tuple(exps), self.ring.field.coerce(0))

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self._t:
            return None
        return max(sum(e) for e in self._t)

    def degree_in(self, name):
        if not self._t:
            return None
        i = self.ring.index(name)
        return max(e[i] for e in self._t)

    def is_homogeneous(self):
        if not self._t:
            return True
        degs = {sum(e) for e in self._t}
        return len(degs) == 1

    def homogeneous_degree(self):
        if not self._t:
            raise ValueError("zero polynomial has no homogeneous degree")
        degs = {sum(e) for e in self._t}
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def block_degrees(self):
        """Per-block degrees; requires homogeneity in every block."""
        ring = self.ring
        if not self._t:
            raise ValueError("zero polynomial has no bidegree")
        spans = []
        pos = 0
        for b in ring.blocks:
            spans.append(range(pos, pos + len(b)))
            pos += len(b)
        out = []
        for span in spans:
            degs = {sum(e[i] for i in span) for e in self._t}
            if len(degs) != 1:
                raise ValueError("polynomial is not multihomogeneous")
            out.append(degs.pop())
        return tuple(out)

    def support(self):
        """Names of variables occurring with positive exponent."""
        ring = self.ring
        seen = set()
        for e in self._t:
            for i, x in enumerate(e):
                if x:
                    seen.add(i)
        return tuple(ring.names[i] for i in sorted(seen))

    def sorted_terms(self, order=None):
        """Terms as (exps, coeff) pairs, descending in the given order."""
        key = self.ring._defkey if order is None else order.key_function(self.ring)
        return sorted(self._t.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order=None):
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring._defkey if order is None else order.key_function(self.ring)
        return max(self._t, key=key)

    def leading_coefficient(self, order=None):
        return self._t[self.leading_monomial(order)]

    def constant_term(self):
        return self.coefficient((0,) * self.ring.nvars)

    # -- arithmetic ----------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        p = self.ring.field.characteristic
        out = dict(self._t)
        for e, c in other._t.items():
            v = out.get(e)
            v = c if v is None else v + c
            if p:
                v %= p
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        if p:
            return Polynomial(self.ring, {e: (p - c) % p for e, c in self._t.items()})
        return Polynomial(self.ring, {e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        p = self.ring.field.characteristic
        a, b = self._t, other._t
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e)
                c = ca * cb
                v = c if v is None else v + c
                if p:
                    v %= p
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.ring.field.coerce(other)
            if not c:
                raise ZeroDivisionError
            return self * self.ring.const(self.ring.field.inv(c))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._t.items())))
        return self._hash

    # -- structured operations ----------------------------------------

    def substitute(self, images, ring=None):
        """Apply xi -> images[xi]; every occurring variable needs an image."""
        target = ring
        coerced = {}
        for name, img in images.items():
            self.ring.index(name)
            if isinstance(img, Polynomial):
                if target is None:
                    target = img.ring
                elif img.ring != target:
                    raise ValueError("images live in different rings")
            coerced[name] = img
        if target is None:
            target = self.ring
        for name in self.support():
            if name not in coerced:
                raise ValueError("missing image for variable %r" % name)
        imgs = {}
        for name, img in coerced.items():
            imgs[self.ring.index(name)] = (
                img if isinstance(img, Polynomial) else target.const(img))
        pw = {i: {0: target.one} for i in imgs}
        out = target.zero
        for e, c in self._t.items():
            term = target.const(c)
            for i, x in enumerate(e):
                if not x:
                    continue
                cache = pw[i]
                if x not in cache:
                    top = max(cache)
                    acc = cache[top]
                    while top < x:
                        acc = acc * imgs[i]
                        top += 1
                        cache[top] = acc
                term = term * cache[x]
            out = out + term
        return out

    def exact_divide(self, divisor):
        """Quotient self/divisor; raises NotDivisibleError when inexact."""
        if not isinstance(divisor, Polynomial) or divisor.ring != self.ring:
            divisor = self._coerce_other(divisor)
        if not divisor:
            raise ZeroDivisionError
        ring = self.ring
        p = ring.field.characteristic
        key = ring._defkey
        dlm = divisor.leading_monomial()
        dlc = divisor.leading_coefficient()
        dinv = ring.field.inv(dlc)
        rem = dict(self._t)
        quot = {}
        while rem:
            lm = max(rem, key=key)
            me = tuple(a - b for a, b in zip(lm, dlm))
            if any(x < 0 for x in me):
                raise NotDivisibleError("division is not exact")
            c = rem[lm] * dinv
            if p:
                c %= p
            quot[me] = c
            for e, dc in divisor._t.items():
                ne = tuple(a + b for a, b in zip(me, e))
                v = rem.get(ne, 0) - c * dc
                if p:
                    v %= p
                if v:
                    rem[ne] = v
                elif ne in rem:
                    del rem[ne]
        return Polynomial(ring, quot)

    def monomial_content(self):
        """Exponent vector of the largest monomial dividing every term."""
        if not self._t:
            raise ValueError("zero polynomial has no monomial content")
        it = iter(self._t)
        acc = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < acc[i]:
                    acc[i] = x
            if not any(acc):
                break
        return tuple(acc)

    def normalized(self):
        """Canonical scalar multiple: content-free with positive leading
        coefficient over QQ, monic over Fp."""
        if not self._t:
            return self
        ring = self.ring
        p = ring.field.characteristic
        lc = self.leading_coefficient()
        if p:
            if lc == 1:
                return self
            inv = pow(lc, -1, p)
            return Polynomial(ring, {e: c * inv % p for e, c in self._t.items()})
        den = 1
        for c in self._t.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = 0
        for c in self._t.values():
            num = math.gcd(num, c.numerator * (den // c.denominator))
        scale = Fraction(den, num)
        if lc < 0:
            scale = -scale
        if scale == 1:
            return self
        return Polynomial(ring, {e: c * scale for e, c in self._t.items()})

    # -- printing ------------------------------------------------------

    def __str__(self):
        if not self._t:
            return "0"
        ring = self.ring
        parts = []
        for exps, c in self.sorted_terms():
            neg = c < 0
            mag = -c if neg else c
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(ring.names[i])
                elif e > 1:
                    factors.append("%s^%d" % (ring.names[i], e))
            if not factors or mag != 1:
                factors.insert(0, str(mag))
            parts.append(("-" if neg else "+", "*".join(factors)))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += (" - " if sign == "-" else " + ") + body
        return text

    def __repr__(self):
        return str(self)


def transfer(poly, target):
    """Move a polynomial into another ring matching variables by name.

    Every variable occurring in poly must exist in the target ring.
    """
    ring = poly.ring
    if ring == target:
        return poly
    if ring.field != target.field:
        raise ValueError("rings have different coefficient fields")
    pos = []
    for nm in ring.names:
        pos.append(target._index.get(nm, -1))
    n = target.nvars
    out = {}
    for e, c in poly.items():
        ne = [0] * n
        for i, x in enumerate(e):
            if x:
                if pos[i] < 0:
                    raise ValueError("variable %r missing in target ring"
                                     % ring.names[i])
                ne[pos[i]] = x
        out[tuple(ne)] = c
    return Polynomial(target, out)


def poly_sqrt(f):
    """Exact square root of a polynomial, or None if f is not a square."""
    if not f:
        return f
    ring = f.ring
    if ring.field.characteristic:
        raise ValueError("square roots are only computed over QQ")
    lm = f.leading_monomial()
    if any(e % 2 for e in lm):
        return None
    lc = f.leading_coefficient()
    if lc < 0:
        return None
    num, den = _frac_isqrt(lc.numerator), _frac_isqrt(lc.denominator)
    if num is None or den is None:
        return None
    half_lm = tuple(e // 2 for e in lm)
    root = ring.monomial(half_lm, Fraction(num, den))
    key = ring._defkey
    while True:
        rem = f - root * root
        if not rem:
            return root
        rlm = rem.leading_monomial()
        me = tuple(a - b for a, b in zip(rlm, half_lm))
        if any(x < 0 for x in me) or key(half_lm) <= key(me):
            return None
        root = root + ring.monomial(
            me, rem.coefficient(rlm) * Fraction(den, 2 * num))


def _frac_isqrt(n):
    r = math.isqrt(n)
    return r if r * r == n else None


class FormMatrix:
    """Matrix of homogeneous forms (zero entries allowed).

    When col_degrees is given, entry (i, j) must be zero or homogeneous
    of degree col_degrees[j].
    """

    __slots__ = ("ring", "entries", "col_degrees")

    def __init__(self, ring, entries, col_degrees=None):
        rows = tuple(tuple(self._coerce(ring, e) for e in row) for row in entries)
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        for row in rows:
            for e in row:
                if e and not e.is_homogeneous():
                    raise ValueError("matrix entries must be homogeneous")
        if col_degrees is not None:
            col_degrees = tuple(col_degrees)
            if len(col_degrees) != width:
                raise ValueError("col_degrees length mismatch")
            for row in rows:
                for j, e in enumerate(row):
                    if e and e.homogeneous_degree() != col_degrees[j]:
                        raise ValueError("entry degree differs from declared"
                                         " column degree")
        self.ring = ring
        self.entries = rows
        self.col_degrees = col_degrees

    @staticmethod
    def _coerce(ring, e):
        if isinstance(e, Polynomial):
            if e.ring != ring:
                raise ValueError("entry from a different ring")
            return e
        return ring.const(e)

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.entries[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self):
        return FormMatrix(self.ring, tuple(zip(*self.entries)))

    def __matmul__(self, other):
        if not isinstance(other, FormMatrix) or other.ring != self.ring:
            raise ValueError("can only multiply matrices over the same ring")
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = self.ring.zero
                for k in range(self.ncols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return FormMatrix(self.ring, out)

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return _det(self.ring, self.entries)

    def minors(self, k):
        """All k x k minors, rows and columns in ascending index order."""
        if k < 1 or k > min(self.nrows, self.ncols):
            raise ValueError("bad minor size")
        out = []
        for ri in itertools.combinations(range(self.nrows), k):
            for ci in itertools.combinations(range(self.ncols), k):
                sub = tuple(tuple(self.entries[i][j] for j in ci) for i in ri)
                out.append(_det(self.ring, sub))
        return out

    def map(self, fn):
        return FormMatrix(self.ring, tuple(tuple(fn(e) for e in row)
                                           for row in self.entries))

    def __eq__(self, other):
        return (isinstance(other, FormMatrix) and self.ring == other.ring
                and self.entries == other.entries)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return "[%s]" % body


def _det(ring, rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = ring.zero
    rest = rows[1:]
    for j in range(n):
        if not rows[0][j]:
            continue
        sub = tuple(tuple(r[k] for k in range(n) if k != j) for r in rest)
        term = rows[0][j] * _det(ring, sub)
        acc = acc - term if j % 2 else acc + term
    return acc


# -- expression parser ------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif sym.strip():
            out.append(("sym", sym))
    out.append(("end", None))
    return out


class _ExprParser:
    def __init__(self, ring, tokens):
        self.ring = ring
        self.toks = tokens
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect_sym(self, sym):
        kind, val = self.next()
        if kind != "sym" or val != sym:
            raise ParseError("expected %r" % sym)

    def parse_expr(self):
        sign = 1
        kind, val = self.peek()
        if kind == "sym" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        acc = self.parse_term() * sign
        while True:
            kind, val = self.peek()
            if kind == "sym" and val in "+-":
                self.next()
                term = self.parse_term()
                acc = acc - term if val == "-" else acc + term
            else:
                return acc

    def parse_term(self):
        acc = self.parse_factor()
        while True:
            kind, val = self.peek()
            if kind == "sym" and val == "*":
                self.next()
                acc = acc * self.parse_factor()
            else:
                return acc

    def parse_factor(self):
        base = self.parse_base()
        kind, val = self.peek()
        if kind == "sym" and val == "^":
            self.next()
            kind, val = self.next()
            if kind != "num":
                raise ParseError("exponent must be an integer literal")
            return base ** val
        return base

    def parse_base(self):
        kind, val = self.next()
        if kind == "num":
            k2, v2 = self.peek()
            if k2 == "sym" and v2 == "/":
                self.next()
                k3, v3 = self.next()
                if k3 != "num":
                    raise ParseError("expected integer denominator")
                return self.ring.const(Fraction(val, v3))
            return self.ring.const(val)
        if kind == "name":
            try:
                return self.ring.var(val)
            except KeyError:
                raise ParseError("unknown variable %r" % val) from None
        if kind == "sym" and val == "(":
            inner = self.parse_expr()
            self.expect_sym(")")
            return inner
        if kind == "sym" and val == "-":
            return -self.parse_factor()
        raise ParseError("unexpected token %r" % (val,))


def _parse_poly(ring, text):
    parser = _ExprParser(ring, _tokenize(text))
    value = parser.parse_expr()
    kind, _ = parser.peek()
    if kind != "end":
        raise ParseError("trailing input in %r" % text)
    return value

"""Symbolic powers and the expected form of the symbolic Rees algebra.

Symbolic powers are computed as saturations of ordinary powers against a
configurable target (the irrelevant ideal by default, a user ideal or a
single user element otherwise).  On top of the resulting filtration sit
the condition diagnostics, fresh and essential generator detection, the
expected-form check and presentations of the two-generator symbolic
algebra.
"""

from __future__ import annotations

from .groebner import check_deadline
from .ideals import Ideal
from .rees import _fresh_block, rees_ideal
from .rings import PolyRing, Polynomial, transfer

__all__ = ["ConditionVerdict", "ExpectedFormResult", "SaturationTarget",
           "SymbolicFiltration", "SymbolicReport", "condition_i",
           "depth_positive", "essential_generators", "expected_form_check",
           "grade_two_check", "symbolic_power", "symbolic_presentation",
           "symbolic_report"]

DEFAULT_LMAX = 4


class SaturationTarget:
    """What ordinary powers get saturated against."""

    __slots__ = ("kind", "payload")

    def __init__(self, kind, payload=None):
        if kind not in ("irrelevant-ideal", "user-ideal", "user-element"):
            raise ValueError("unknown target kind %r" % kind)
        self.kind = kind
        self.payload = payload

    @classmethod
    def irrelevant(cls):
        return cls("irrelevant-ideal")

    @classmethod
    def ideal(cls, J):
        if not isinstance(J, Ideal) or J.is_zero() or J.is_unit():
            raise ValueError("target must be a nonzero proper ideal")
        return cls("user-ideal", J)

    @classmethod
    def element(cls, f):
        if (not isinstance(f, Polynomial) or not f
                or not f.is_homogeneous() or f.homogeneous_degree() < 1):
            raise ValueError("target element must be a nonconstant form")
        return cls("user-element", f)

    def saturand(self, ring):
        if self.kind == "irrelevant-ideal":
            return Ideal(ring, ring.gens)
        if self.kind == "user-ideal":
            if self.payload.ring != ring:
                raise ValueError("target ideal from a different ring")
            return self.payload
        if self.payload.ring != ring:
            raise ValueError("target element from a different ring")
        return self.payload

    def __repr__(self):
        return "SaturationTarget(%s)" % self.kind


class SymbolicFiltration:
    """Levels of the symbolic filtration of a base ideal, cached.

    A user-element target is screened at construction: the element must
    be a nonzerodivisor modulo the saturated base ideal.
    """

    __slots__ = ("base", "target", "_powers", "_levels", "_mins")

    def __init__(self, base, target=None):
        if not isinstance(base, Ideal) or base.is_zero() or base.is_unit():
            raise ValueError("base must be a nonzero proper ideal")
        if not base.is_homogeneous():
            raise ValueError("base must be homogeneous")
        self.base = base
        self.target = target if target is not None else SaturationTarget.irrelevant()
        self._powers = {1: base}
        self._levels = {}
        self._mins = {}
        if self.target.kind == "user-element":
            f = self.target.saturand(base.ring)
            sat, _ = base.saturate(Ideal(base.ring, base.ring.gens))
            if sat.quotient(f) != sat:
                raise ValueError(
                    "target element is a zerodivisor on the saturated base")

    def power(self, ell):
        got = self._powers.get(ell)
        if got is None:
            got = self.base.power(ell)
            self._powers[ell] = got
        return got

    def level(self, ell):
        """The saturated power at level ell."""
        if ell < 1:
            raise ValueError("levels start at 1")
        got = self._levels.get(ell)
        if got is None:
            got, _ = self.power(ell).saturate(
                self.target.saturand(self.base.ring))
            self._levels[ell] = got
        return got

    def minimal(self, ell):
        got = self._mins.get(ell)
        if got is None:
            got = self.level(ell).minimal_generators()
            self._mins[ell] = got
        return got

    def _survivors(self, ell, base):
        """Minimal module generators of level/base: sweep the level's
        minimal generators by ascending degree, keeping those not yet
        absorbed into base plus the earlier survivors."""
        span = base
        out = []
        for g in sorted(self.minimal(ell),
                        key=lambda p: p.homogeneous_degree()):
            check_deadline()
            if not span.contains(g):
                out.append(g)
                span = span + Ideal(self.base.ring, (g,))
        return tuple(out)

    def fresh(self, ell):
        """Minimal module generators of level/power."""
        return self._survivors(ell, self.power(ell))

    def essential(self, ell):
        """Minimal module generators of the level modulo all products of
        complementary lower levels."""
        ring = self.base.ring
        acc = Ideal(ring, ())
        for s in range(1, ell):
            check_deadline()
            prod = Ideal(ring, self.minimal(s)) * Ideal(
                ring, self.minimal(ell - s))
            acc = acc + prod
        return self._survivors(ell, acc)


def symbolic_power(I, ell, target=None):
    """Saturation of the ell-th power against the target."""
    if ell < 1:
        raise ValueError("levels start at 1")
    return SymbolicFiltration(I, target).level(ell)


class ConditionVerdict:
    """Per-level status of the quotient level/power: ZERO, PRIMARY or
    FAILS with a witness variable outside the annihilator's radical."""

    __slots__ = ("level", "verdict", "witness")

    def __init__(self, level, verdict, witness=None):
        self.level = level
        self.verdict = verdict
        self.witness = witness

    def __repr__(self):
        if self.witness is not None:
            return ("ConditionVerdict(%d, %s, witness=%s)"
                    % (self.level, self.verdict, self.witness))
        return "ConditionVerdict(%d, %s)" % (self.level, self.verdict)

    def __eq__(self, other):
        return (isinstance(other, ConditionVerdict)
                and (self.level, self.verdict, self.witness)
                == (other.level, other.verdict, other.witness))


def condition_i(I, lmax, target=None, filtration=None):
    """Whether each level/power quotient is zero or irrelevant-primary."""
    if lmax < 1:
        raise ValueError("lmax must be at least 1")
    F = filtration if filtration is not None else SymbolicFiltration(I, target)
    out = []
    for ell in range(1, lmax + 1):
        check_deadline()
        power = F.power(ell)
        level = F.level(ell)
        if power.contains_ideal(level):
            out.append(ConditionVerdict(ell, "ZERO"))
            continue
        ann = power.quotient(level)
        witness = None
        for x in I.ring.gens:
            if not ann.radical_contains(x):
                witness = str(x)
                break
        if witness is None:
            out.append(ConditionVerdict(ell, "PRIMARY"))
        else:
            out.append(ConditionVerdict(ell, "FAILS", witness))
    return tuple(out)


def depth_positive(I):
    """Whether the irrelevant ideal avoids the associated primes of R/I,
    via the colon identity I : m = I."""
    if I.is_unit():
        raise ValueError("need a proper ideal")
    if not I.is_homogeneous():
        raise ValueError("need a homogeneous ideal")
    m = Ideal(I.ring, I.ring.gens)
    return I.quotient(m) == I


def essential_generators(F, r):
    """Minimal level-r generators outside every product of lower levels."""
    if r < 1:
        raise ValueError("order must be at least 1")
    return F.essential(r)


class ExpectedFormResult:
    """Outcome of the expected-form check.

    precondition records whether the factor lies in the level-d' symbolic
    power; levels maps each checked level to a boolean (empty when the
    precondition failed).
    """

    __slots__ = ("precondition", "levels")

    def __init__(self, precondition, levels):
        self.precondition = precondition
        self.levels = dict(levels)

    def all_match(self):
        return self.precondition and all(self.levels.values())

    def __repr__(self):
        return ("ExpectedFormResult(precondition=%s, levels=%s)"
                % (self.precondition, self.levels))


def expected_form_check(I, D, dprime, lmax=DEFAULT_LMAX, target=None,
                        filtration=None):
    """Level-by-level test of level(ell) = sum_j D^j * power(ell - j*d')."""
    if dprime < 1:
        raise ValueError("the factor weight must be positive")
    F = filtration if filtration is not None else SymbolicFiltration(I, target)
    ring = I.ring
    if D.ring != ring or not D or not D.is_homogeneous():
        raise ValueError("factor must be a nonzero form of the base ring")
    if not F.level(dprime).contains(D):
        return ExpectedFormResult(False, {})
    levels = {}
    for ell in range(1, lmax + 1):
        check_deadline()
        rhs_gens = []
        j = 0
        dj = ring.one
        while j * dprime <= ell:
            rest = ell - j * dprime
            if rest == 0:
                rhs_gens.append(dj)
            else:
                rhs_gens.extend(dj * g for g in F.power(rest).gens)
            j += 1
            dj = dj * D
        rhs = Ideal(ring, tuple(rhs_gens))
        lvl = F.level(ell)
        levels[ell] = rhs.contains_ideal(lvl) and lvl.contains_ideal(rhs)
    return ExpectedFormResult(True, levels)


def symbolic_presentation(I, G):
    """The ideal (Rees presentation, {x_i*z - g_i(y)}) in k[x, y, z1].

    Ambient naming matches subalgebra_presentation(I, [(D, w)]) so the
    two routes can be compared by mutual membership.
    """
    P = rees_ideal(I)
    amb = P.ambient
    G = tuple(G)
    if len(G) != len(P.xnames):
        raise ValueError("inverse representative has the wrong length")
    zname = _fresh_block(set(amb.names), ("z", "Z", "u"), 1, start=1)[0]
    ring2 = PolyRing(amb.names + (zname,), amb.field,
                     blocks=amb.blocks + ((zname,),))
    z = ring2.var(zname)
    gens = [transfer(g, ring2) for g in P.ideal.gens]
    for xn, gi in zip(P.xnames, G):
        gens.append(ring2.var(xn) * z - transfer(gi, ring2))
    return Ideal(ring2, tuple(gens))


def grade_two_check(presentation, elements=None):
    """Grade >= 2 of the variable ideal on the presented quotient, via a
    supplied length-two regular sequence; None means not verified."""
    if elements is None:
        return None
    a, b = elements
    if presentation.quotient(a) != presentation:
        return False
    bigger = presentation + Ideal(presentation.ring, (a,))
    return bigger.quotient(b) == bigger


class SymbolicReport:
    """Immutable snapshot of a filtration study.

    levels holds per-level records (level ideal, minimal generators,
    fresh and essential generators); condition the per-level verdicts;
    expected the form check when a factor was supplied; factor_facts
    membership facts about the factor.
    """

    __slots__ = ("base", "target", "levels", "condition", "expected",
                 "factor_facts")

    def __init__(self, base, target, levels, condition, expected,
                 factor_facts):
        self.base = base
        self.target = target
        self.levels = levels
        self.condition = condition
        self.expected = expected
        self.factor_facts = factor_facts


def symbolic_report(I, lmax=DEFAULT_LMAX, target=None, factor=None,
                    weight=None):
    """Run the filtration study up to lmax and collect everything."""
    F = SymbolicFiltration(I, target)
    levels = []
    for ell in range(1, lmax + 1):
        levels.append({
            "level": ell,
            "ideal": F.level(ell),
            "minimal": F.minimal(ell),
            "fresh": F.fresh(ell),
            "essential": F.essential(ell),
        })
    condition = condition_i(I, lmax, filtration=F)
    expected = None
    facts = None
    if factor is not None:
        if weight is None:
            raise ValueError("a factor needs its weight")
        expected = expected_form_check(I, factor, weight, lmax,
                                       filtration=F)
        facts = {
            "in_symbolic": expected.precondition,
            "in_power": (weight <= lmax
                         and F.power(weight).contains(factor)),
            "essential": (weight <= lmax
                          and any(factor == g or factor.normalized()
                                  == g.normalized()
                                  for g in F.essential(weight))),
        }
    return SymbolicReport(I, F.target, tuple(levels), condition, expected,
                          facts)

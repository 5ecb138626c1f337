"""Normal forms and order-theoretic analysis of log-exp germs at +infinity.

A germ here is a finite rational-linear combination of *transmonomials*

    x^r0 * log(x)^r1 * log2(x)^r2 * ... * exp(P)

with exact rational exponents, where ``logk`` is the k-th compositional
iterate of log and P is a purely infinite germ (every transmonomial of P
tends to infinity).  This fragment is closed under addition, multiplication,
rational powers of single terms, exp of purely infinite elements, and
differentiation; dominance between two transmonomials is decided exactly by
recursing on their logarithms.
"""

from __future__ import annotations

import functools
import math
import cmath
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .errors import (
    DepthLimitExceeded,
    DomainError,
    NonHardyExpression,
    NotDecreasing,
    NotInFragment,
    NotIncreasing,
    Unclassifiable,
)

DEFAULT_EXP_DEPTH = 4

Q = Fraction


# ---------------------------------------------------------------------------
# data model


@dataclass(frozen=True)
class Transmono:
    """One transmonomial in normal form.

    ``powers`` maps iterate index to exponent: index 0 is x, index k >= 1 is
    the k-th log iterate.  Entries are sorted by index with nonzero exact
    exponents.  ``expart`` is the purely infinite argument of the exp factor,
    or None; it never contains a bare unit-power log iterate (those are
    folded into ``powers``, e.g. exp(2*log(x)) is stored as x^2).
    """

    powers: tuple[tuple[int, Fraction], ...] = ()
    expart: Optional["GermTerm"] = None

    def depth(self) -> int:
        return 0 if self.expart is None else 1 + self.expart.depth()

    def is_unit(self) -> bool:
        return not self.powers and self.expart is None

    def __str__(self) -> str:
        return mono_str(self)

    def __repr__(self) -> str:
        return f"Transmono({mono_str(self)})"


@dataclass(frozen=True)
class GermTerm:
    """A germ in normal form: nonzero rational coefficients on strictly
    decreasing transmonomials."""

    terms: tuple[tuple[Fraction, Transmono], ...] = ()

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def depth(self) -> int:
        return max((t.depth() for _, t in self.terms), default=0)

    def leading(self) -> tuple[Fraction, Transmono]:
        if not self.terms:
            raise NonHardyExpression("the zero germ has no leading term")
        return self.terms[0]

    def constant_value(self) -> Optional[Fraction]:
        """The rational value if this germ is constant, else None."""
        if not self.terms:
            return Q(0)
        if len(self.terms) == 1 and self.terms[0][1].is_unit():
            return self.terms[0][0]
        return None

    # -- ring operators -------------------------------------------------------

    def __add__(self, other: "GermTerm") -> "GermTerm":
        return g_add(self, other)

    def __sub__(self, other: "GermTerm") -> "GermTerm":
        return g_add(self, g_neg(other))

    def __neg__(self) -> "GermTerm":
        return g_neg(self)

    def __mul__(self, other) -> "GermTerm":
        if isinstance(other, GermTerm):
            return g_mul(self, other)
        return g_scale(self, Q(other))

    __rmul__ = __mul__

    def __pow__(self, q) -> "GermTerm":
        return g_pow(self, Q(q))

    def __str__(self) -> str:
        return germ_str(self)

    def __repr__(self) -> str:
        return f"GermTerm({germ_str(self)})"


UNIT_MONO = Transmono()
ZERO = GermTerm()
ONE = GermTerm(((Q(1), UNIT_MONO),))


def g_const(q) -> GermTerm:
    q = Q(q)
    return GermTerm(((q, UNIT_MONO),)) if q else ZERO


def g_x() -> GermTerm:
    return GermTerm(((Q(1), Transmono(((0, Q(1)),))),))


def g_logk(k: int) -> GermTerm:
    """The k-th log iterate as a germ (k = 0 gives x)."""
    if k < 0:
        raise NotInFragment("negative log iterates are exp iterates; build them via exp")
    if k == 0:
        return g_x()
    return GermTerm(((Q(1), Transmono(((k, Q(1)),))),))


def _mono_logk(k: int) -> Transmono:
    return Transmono(((k, Q(1)),))


# ---------------------------------------------------------------------------
# transmonomial order

_cmp_cache: dict[tuple[Transmono, Transmono], int] = {}
_cmp_lock = threading.Lock()


def mono_log(t: Transmono) -> GermTerm:
    """log of a transmonomial: a purely infinite germ (or zero for the unit)."""
    acc = t.expart if t.expart is not None else ZERO
    for k, r in t.powers:
        acc = g_add(acc, GermTerm(((r, _mono_logk(k + 1)),)))
    return acc


def _cmp_pure(a: Transmono, b: Transmono) -> int:
    # no exp parts: lexicographic on exponents, lowest iterate index dominates
    da = dict(a.powers)
    db = dict(b.powers)
    for k in sorted(set(da) | set(db)):
        ra = da.get(k, Q(0))
        rb = db.get(k, Q(0))
        if ra != rb:
            return 1 if ra > rb else -1
    return 0


def mono_cmp(a: Transmono, b: Transmono) -> int:
    """Trichotomous dominance order on transmonomials: 1 if a > b."""
    if a == b:
        return 0
    if a.expart is None and b.expart is None:
        return _cmp_pure(a, b)
    key = (a, b)
    hit = _cmp_cache.get(key)
    if hit is not None:
        return hit
    d = g_add(mono_log(a), g_neg(mono_log(b)))
    if d.is_zero():  # log is injective on canonical transmonomials
        res = 0
    else:
        res = 1 if d.terms[0][0] > 0 else -1
    with _cmp_lock:
        _cmp_cache[key] = res
        _cmp_cache[(b, a)] = -res
    return res


def mono_mul(a: Transmono, b: Transmono) -> Transmono:
    da = dict(a.powers)
    for k, r in b.powers:
        nr = da.get(k, Q(0)) + r
        if nr:
            da[k] = nr
        else:
            da.pop(k, None)
    if a.expart is None:
        ex = b.expart
    elif b.expart is None:
        ex = a.expart
    else:
        s = g_add(a.expart, b.expart)
        ex = None if s.is_zero() else s
    return Transmono(tuple(sorted(da.items())), ex)


def mono_pow(a: Transmono, q: Fraction) -> Transmono:
    if q == 0:
        return UNIT_MONO
    powers = tuple((k, r * q) for k, r in a.powers)
    ex = None
    if a.expart is not None:
        s = g_scale(a.expart, q)
        ex = None if s.is_zero() else s
    return Transmono(powers, ex)


def mono_inv(a: Transmono) -> Transmono:
    return mono_pow(a, Q(-1))


# ---------------------------------------------------------------------------
# germ ring


def _sorted_terms(acc: dict[Transmono, Fraction]) -> GermTerm:
    monos = [m for m, c in acc.items() if c]
    monos.sort(key=functools.cmp_to_key(mono_cmp), reverse=True)
    return GermTerm(tuple((acc[m], m) for m in monos))


def g_add(f: GermTerm, g: GermTerm) -> GermTerm:
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    out: list[tuple[Fraction, Transmono]] = []
    i = j = 0
    ft, gt = f.terms, g.terms
    while i < len(ft) and j < len(gt):
        c = mono_cmp(ft[i][1], gt[j][1])
        if c > 0:
            out.append(ft[i])
            i += 1
        elif c < 0:
            out.append(gt[j])
            j += 1
        else:
            s = ft[i][0] + gt[j][0]
            if s:
                out.append((s, ft[i][1]))
            i += 1
            j += 1
    out.extend(ft[i:])
    out.extend(gt[j:])
    return GermTerm(tuple(out))


def g_neg(f: GermTerm) -> GermTerm:
    return GermTerm(tuple((-c, m) for c, m in f.terms))


def g_scale(f: GermTerm, q: Fraction) -> GermTerm:
    q = Q(q)
    if not q:
        return ZERO
    return GermTerm(tuple((c * q, m) for c, m in f.terms))


def g_mul(f: GermTerm, g: GermTerm) -> GermTerm:
    acc: dict[Transmono, Fraction] = {}
    for cf, mf in f.terms:
        for cg, mg in g.terms:
            m = mono_mul(mf, mg)
            acc[m] = acc.get(m, Q(0)) + cf * cg
    return _sorted_terms(acc)


def _iroot(n: int, r: int) -> Optional[int]:
    """Exact r-th root of a nonnegative integer, or None."""
    if n in (0, 1):
        return n
    x = 1 << (n.bit_length() // r + 1)
    while True:  # Newton, integer, monotone from above
        y = ((r - 1) * x + n // x ** (r - 1)) // r
        if y >= x:
            break
        x = y
    return x if x**r == n else None


def exact_root(c: Fraction, q: Fraction) -> Optional[Fraction]:
    """c**q when the result is an exact rational, else None."""
    if q.denominator == 1:
        p = q.numerator
        return c**p if (c or p >= 0) else None
    if c == 0:
        return Q(0) if q > 0 else None
    r = q.denominator
    sign = 1
    num, den = c.numerator, c.denominator
    if num < 0:
        if r % 2 == 0:
            return None
        sign, num = -1, -num
    rn = _iroot(num, r)
    rd = _iroot(den, r)
    if rn is None or rd is None:
        return None
    return (sign * Q(rn, rd)) ** q.numerator


def g_pow(f: GermTerm, q: Fraction) -> GermTerm:
    q = Q(q)
    if q.denominator == 1:
        n = q.numerator
        if n == 0:
            if f.is_zero():
                raise NonHardyExpression("0^0 is undefined")
            return ONE
        if n > 0:
            acc = ONE
            base = f
            while n:
                if n & 1:
                    acc = g_mul(acc, base)
                n >>= 1
                if n:
                    base = g_mul(base, base)
            return acc
        # negative integer power: reciprocal needs a single term
        return g_pow(g_invert_term(f), Q(-n))
    if f.is_zero():
        raise NonHardyExpression("fractional power of the zero germ")
    if len(f.terms) > 1:
        raise NotInFragment("fractional power of a multi-term germ")
    c, m = f.terms[0]
    rc = exact_root(c, q)
    if rc is None:
        if c < 0 and q.denominator % 2 == 0:
            raise NonHardyExpression("even root of an eventually negative germ")
        raise NotInFragment(f"coefficient {c} has no exact rational power {q}")
    return GermTerm(((rc, mono_pow(m, q)),))


def g_invert_term(f: GermTerm) -> GermTerm:
    if f.is_zero():
        raise NonHardyExpression("division by the zero germ")
    if len(f.terms) > 1:
        raise NotInFragment("reciprocal of a multi-term germ")
    c, m = f.terms[0]
    return GermTerm(((1 / c, mono_inv(m)),))


def g_div(f: GermTerm, g: GermTerm) -> GermTerm:
    return g_mul(f, g_invert_term(g))


# ---------------------------------------------------------------------------
# exp / log


def is_purely_infinite(f: GermTerm) -> bool:
    """Every transmonomial of f is large (tends to infinity)."""
    return all(mono_cmp(m, UNIT_MONO) > 0 for _, m in f.terms)


def g_exp(f: GermTerm, max_depth: int = DEFAULT_EXP_DEPTH) -> GermTerm:
    if f.is_zero():
        return ONE
    if not is_purely_infinite(f):
        cv = f.constant_value()
        if cv is not None and cv != 0:
            raise NotInFragment(
                f"exp({cv}) is irrational; exp arguments must be purely infinite")
        raise NotInFragment(
            "exp of a germ with bounded or small part is outside the fragment")
    powers: dict[int, Fraction] = {}
    rest: list[tuple[Fraction, Transmono]] = []
    for c, m in f.terms:
        if m.expart is None and len(m.powers) == 1 and m.powers[0][1] == 1 \
                and m.powers[0][0] >= 1:
            powers[m.powers[0][0] - 1] = c  # exp(c*log_k) = log_{k-1}^c
        else:
            rest.append((c, m))
    ex = GermTerm(tuple(rest)) if rest else None
    mono = Transmono(tuple(sorted(powers.items())), ex)
    if mono.depth() > max_depth:
        raise DepthLimitExceeded(f"exp nesting exceeds depth {max_depth}")
    return GermTerm(((Q(1), mono),))


def g_log(f: GermTerm) -> GermTerm:
    if f.is_zero():
        raise NonHardyExpression("log of the zero germ")
    c, m = f.leading()
    if c < 0:
        raise NonHardyExpression("log of an eventually negative germ")
    if len(f.terms) > 1:
        raise NotInFragment(
            "log of a multi-term germ has no finite normal form in the fragment")
    if c != 1:
        raise NotInFragment(f"log({c}) is irrational; only unit coefficients admit log")
    return mono_log(m)


# ---------------------------------------------------------------------------
# signs, dominance, comparison


def sign(f: GermTerm) -> int:
    """Eventual sign at +infinity."""
    if f.is_zero():
        return 0
    return 1 if f.terms[0][0] > 0 else -1


def leading_mono(f: GermTerm) -> Transmono:
    return f.leading()[1]


def is_infinitely_increasing(f: GermTerm) -> bool:
    if f.is_zero():
        return False
    c, m = f.leading()
    return c > 0 and mono_cmp(m, UNIT_MONO) > 0


def is_small(f: GermTerm) -> bool:
    return f.is_zero() or mono_cmp(leading_mono(f), UNIT_MONO) < 0


@dataclass(frozen=True)
class ComparisonResult:
    """Dominance verdict: relation is '<<', '~' or '>>' for f against g."""

    relation: str
    same_archimedean_class: bool
    comparable: bool

    def __str__(self) -> str:
        names = {"<<": "precedes", "~": "asymp-equal", ">>": "dominates"}
        out = names[self.relation]
        if self.same_archimedean_class:
            out += " same-archimedean"
        if self.comparable:
            out += " comparable"
        return out


def _log_class_mono(m: Transmono) -> Optional[Transmono]:
    """Leading transmonomial of log|m|, or None for the unit monomial."""
    if m.is_unit():
        return None
    lg = mono_log(m)
    return leading_mono(lg)


def compare(f: GermTerm, g: GermTerm) -> ComparisonResult:
    """Trichotomous dominance comparison of nonzero germs.

    ``comparable`` follows the power-sandwich criterion: germs in the class
    of 1 are mutually comparable; otherwise both must be large or both small
    with asymptotically equivalent logarithms.
    """
    if f.is_zero() or g.is_zero():
        raise NonHardyExpression("compare requires nonzero germs")
    mf, mg = leading_mono(f), leading_mono(g)
    c = mono_cmp(mf, mg)
    relation = "~" if c == 0 else (">>" if c > 0 else "<<")
    same_class = c == 0
    uf, ug = mf.is_unit(), mg.is_unit()
    if uf or ug:
        comparable = uf and ug
    else:
        sf = mono_cmp(mf, UNIT_MONO)
        sg = mono_cmp(mg, UNIT_MONO)
        comparable = sf == sg and _log_class_mono(mf) == _log_class_mono(mg)
    return ComparisonResult(relation, same_class, comparable)


def same_archimedean_class(f: GermTerm, g: GermTerm) -> bool:
    return mono_cmp(leading_mono(f), leading_mono(g)) == 0


def germ_comparable(f: GermTerm, g: GermTerm) -> bool:
    return compare(f, g).comparable


# ---------------------------------------------------------------------------
# level and exponential height


def _mono_eh(m: Transmono) -> int:
    present = [0 if k == 0 else -k for k, _ in m.powers]
    if m.expart is not None:
        present.append(eh(m.expart) + 1)
    return max(present, default=0)


def eh(f: GermTerm) -> int:
    """Exponential height of the normal form (constants have height 0)."""
    if f.is_zero():
        return 0
    return max(_mono_eh(m) for _, m in f.terms)


def _mono_level(m: Transmono) -> int:
    # requires m > 1
    if m.expart is None:
        k, r = m.powers[0]
        if r <= 0:
            raise Unclassifiable(f"transmonomial {m} is not infinitely increasing")
        return -k
    lg = mono_log(m)
    c, lead = lg.leading()
    if c <= 0:
        raise Unclassifiable(f"transmonomial {m} is not infinitely increasing")
    return _mono_level(lead) + 1


def level(f: GermTerm) -> int:
    """Growth level of an infinitely increasing germ."""
    if not is_infinitely_increasing(f):
        raise Unclassifiable("level is defined for infinitely increasing germs only")
    return _mono_level(leading_mono(f))


def level_and_eh(f: GermTerm) -> tuple[int, int]:
    return level(f), eh(f)


def is_simple(f: GermTerm) -> bool:
    return level(f) == eh(f)


# ---------------------------------------------------------------------------
# admissibility and basis extraction


@dataclass(frozen=True)
class GeneratorCertificate:
    germ: GermTerm
    level: Optional[int]
    eh: int
    simple: bool
    class_rep: str  # leading transmonomial, printed


@dataclass
class AdmissibilityResult:
    ok: bool
    certificate: list[GeneratorCertificate]
    reasons: list[str]

    def __bool__(self) -> bool:
        return self.ok


def is_admissible(germs: Sequence[GermTerm]) -> AdmissibilityResult:
    """Simplicity plus pairwise distinct archimedean classes, with certificate.

    Raises NotDecreasing when the tuple strictly inverts the dominance order;
    germs in a shared archimedean class are reported through the certificate
    instead, since that is the interesting failure mode.
    """
    germs = list(germs)
    if not germs:
        raise NotDecreasing("empty generator tuple")
    reasons: list[str] = []
    cert: list[GeneratorCertificate] = []
    for f in germs:
        if not is_infinitely_increasing(f):
            reasons.append(f"{f} is not infinitely increasing")
            cert.append(GeneratorCertificate(f, None, eh(f), False, "?"))
            continue
        lv, h = level_and_eh(f)
        simple = lv == h
        if not simple:
            reasons.append(f"{f} is not simple: level {lv} != eh {h}")
        cert.append(GeneratorCertificate(f, lv, h, simple, mono_str(leading_mono(f))))
    for i in range(len(germs) - 1):
        a, b = germs[i], germs[i + 1]
        if a.is_zero() or b.is_zero():
            raise NotDecreasing("zero germ in generator tuple")
        if mono_cmp(leading_mono(a), leading_mono(b)) < 0:
            raise NotDecreasing(f"generator {i} precedes generator {i + 1}")
    for i in range(len(germs)):
        for j in range(i + 1, len(germs)):
            if not germs[i].is_zero() and not germs[j].is_zero() and \
                    same_archimedean_class(germs[i], germs[j]):
                reasons.append(
                    f"generators {i} and {j} share an archimedean class")
    return AdmissibilityResult(not reasons, cert, reasons)


def extract_basis(germs: Sequence[GermTerm]) -> list[GermTerm]:
    """Basis of the additive span with pairwise distinct archimedean classes.

    Recursive leading-multiple subtraction: pick the germ of maximal class,
    eliminate that class from the others, recurse on the remainders.
    """
    pool: list[GermTerm] = []
    for f in germs:
        if f.is_zero():
            continue
        if not is_purely_infinite(f) or not is_infinitely_increasing(f):
            raise NotInFragment(
                f"extract_basis requires purely infinite, infinitely increasing germs, got {f}")
        pool.append(f)
    basis: list[GermTerm] = []
    while pool:
        top = 0  # first element attaining the maximal archimedean class
        for i in range(1, len(pool)):
            if mono_cmp(leading_mono(pool[i]), leading_mono(pool[top])) > 0:
                top = i
        pivot = pool.pop(top)
        basis.append(pivot)
        pc, pm = pivot.leading()
        nxt: list[GermTerm] = []
        for f in pool:
            c, m = f.leading()
            if mono_cmp(m, pm) == 0:
                f = g_add(f, g_scale(pivot, -c / pc))
                if f.is_zero():
                    continue
                if sign(f) < 0:
                    f = g_neg(f)
            nxt.append(f)
        pool = nxt
    return basis


def express_in_basis(f: GermTerm, basis: Sequence[GermTerm]) -> Optional[list[Fraction]]:
    """Coordinates of f in the given basis, or None if f is outside the span."""
    coeffs = [Q(0)] * len(basis)
    rest = f
    while not rest.is_zero():
        c, m = rest.leading()
        for i, b in enumerate(basis):
            if mono_cmp(leading_mono(b), m) == 0:
                q = c / b.leading()[0]
                coeffs[i] += q
                rest = g_add(rest, g_scale(b, -q))
                break
        else:
            return None
    return coeffs


# ---------------------------------------------------------------------------
# numeric evaluation


def _logk_val(x: float, k: int) -> float:
    v = x
    for _ in range(k):
        if v <= 0:
            raise DomainError(f"log argument {v} <= 0 during iterate")
        v = math.log(v)
    return v


def eval_mono(m: Transmono, x: float) -> float:
    out = 1.0
    for k, r in m.powers:
        base = _logk_val(x, k)
        if base <= 0 and r.denominator != 1:
            raise DomainError(f"fractional power of nonpositive base {base}")
        if base == 0 and r < 0:
            raise DomainError("zero base with negative exponent")
        if base < 0:
            out *= math.copysign(abs(base) ** float(r), base if r.numerator % 2 else 1.0)
        else:
            out *= base ** float(r)
    if m.expart is not None:
        try:
            out *= math.exp(eval_germ(m.expart, x))
        except OverflowError:
            out = math.copysign(math.inf, out)
    return out


def eval_germ(f: GermTerm, x: float) -> float:
    return math.fsum(float(c) * eval_mono(m, x) for c, m in f.terms)


def _logk_cval(z: complex, k: int) -> complex:
    v = z
    for _ in range(k):
        if v == 0:
            raise DomainError("log of zero during iterate")
        v = cmath.log(v)
    return v


def eval_mono_complex(m: Transmono, z: complex) -> complex:
    out = 1 + 0j
    for k, r in m.powers:
        base = _logk_cval(z, k)
        if base == 0:
            raise DomainError("zero base")
        out *= cmath.exp(float(r) * cmath.log(base))
    if m.expart is not None:
        out *= cmath.exp(eval_germ_complex(m.expart, z))
    return out


def eval_germ_complex(f: GermTerm, z: complex) -> complex:
    return sum((complex(c) * eval_mono_complex(m, z) for c, m in f.terms), 0j)


# ---------------------------------------------------------------------------
# differentiation


def _dlog_factor(k: int) -> GermTerm:
    """(log_{k+1})' = 1/(x * log(x) * ... * logk(x)), the relative derivative
    of the iterate factor at index k."""
    powers = tuple((j, Q(-1)) for j in range(k + 1))
    return GermTerm(((Q(1), Transmono(powers)),))


def mono_dlog(m: Transmono) -> GermTerm:
    """(log m)' as a germ."""
    acc = ZERO
    for k, r in m.powers:
        acc = g_add(acc, g_scale(_dlog_factor(k), r))
    if m.expart is not None:
        acc = g_add(acc, derivative(m.expart))
    return acc


def derivative(f: GermTerm) -> GermTerm:
    """Exact d/dx; the fragment is closed under differentiation."""
    acc = ZERO
    for c, m in f.terms:
        acc = g_add(acc, g_scale(g_mul(GermTerm(((Q(1), m),)), mono_dlog(m)), c))
    return acc


# ---------------------------------------------------------------------------
# composition


@dataclass(frozen=True)
class InverseNode:
    """Opaque compositional inverse of an infinitely increasing germ."""

    germ: GermTerm

    @property
    def level(self) -> int:
        return -level(self.germ)

    def eval(self, y: float) -> float:
        return _invert_numeric(lambda t: eval_germ(self.germ, t), y)

    def __str__(self) -> str:
        return f"inverse({self.germ})"


@dataclass(frozen=True)
class ComposeNode:
    """Opaque composition f o g kept with exact level arithmetic."""

    outer: Union[GermTerm, "ComposeNode", InverseNode]
    inner: Union[GermTerm, "ComposeNode", InverseNode]

    @property
    def level(self) -> int:
        return node_level(self.outer) + node_level(self.inner)

    def eval(self, x: float) -> float:
        return node_eval(self.outer, node_eval(self.inner, x))

    def __str__(self) -> str:
        return f"({self.outer}) o ({self.inner})"


GermLike = Union[GermTerm, ComposeNode, InverseNode]


def node_level(g: GermLike) -> int:
    if isinstance(g, GermTerm):
        return level(g)
    return g.level


def node_eval(g: GermLike, x: float) -> float:
    if isinstance(g, GermTerm):
        return eval_germ(g, x)
    return g.eval(x)


def node_increasing(g: GermLike) -> bool:
    if isinstance(g, GermTerm):
        return is_infinitely_increasing(g)
    if isinstance(g, InverseNode):
        return True
    return node_increasing(g.outer) and node_increasing(g.inner)


def _invert_numeric(fn: Callable[[float], float], y: float,
                    iters: int = 200) -> float:
    lo = 1.0
    n = 0
    while True:
        try:
            if fn(lo) < y:
                break
        except (DomainError, OverflowError, ValueError):
            pass
        lo /= 2.0
        n += 1
        if n > iters:
            raise DomainError(f"could not bracket inverse at {y}")
    hi = max(2.0, 2.0 * lo)
    n = 0
    while fn(hi) < y:
        hi *= 2.0
        n += 1
        if n > iters:
            raise DomainError(f"could not bracket inverse at {y}")
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if fn(mid) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def inverse(g: GermLike) -> GermLike:
    """Compositional inverse; exact for log/exp iterates, opaque otherwise."""
    if isinstance(g, InverseNode):
        return g.germ
    if isinstance(g, GermTerm):
        if not is_infinitely_increasing(g):
            raise NotIncreasing(f"{g} is not infinitely increasing")
        # exact cases: powers of x, log iterates
        if len(g.terms) == 1:
            c, m = g.terms[0]
            if m.expart is None and len(m.powers) == 1:
                k, r = m.powers[0]
                if k == 0:
                    rc = exact_root(1 / c, 1 / r)
                    if rc is not None:
                        return GermTerm(((rc, Transmono(((0, 1 / r),)),),))
                elif r == 1 and c == 1:
                    inv = g_x()
                    try:
                        for _ in range(k):
                            inv = g_exp(inv)
                        return inv
                    except DepthLimitExceeded:
                        pass
        return InverseNode(g)
    return InverseNode_of_node(g)


def InverseNode_of_node(g) -> GermLike:
    if isinstance(g, ComposeNode):
        return ComposeNode(inverse(g.inner), inverse(g.outer))
    raise NotIncreasing("cannot invert this node")


def _log_iterate_of(g: GermTerm, k: int, logs: dict[int, GermTerm]) -> GermTerm:
    top = max(logs)
    while top < k:
        logs[top + 1] = g_log(logs[top])
        top += 1
    return logs[k]


def _subst_mono(m: Transmono, g: GermTerm, logs: dict[int, GermTerm],
                max_depth: int) -> GermTerm:
    out = ONE
    for k, r in m.powers:
        out = g_mul(out, g_pow(_log_iterate_of(g, k, logs), r))
    if m.expart is not None:
        out = g_mul(out, g_exp(compose_exact(m.expart, g, logs, max_depth), max_depth))
    return out


def compose_exact(f: GermTerm, g: GermTerm, logs: Optional[dict[int, GermTerm]] = None,
                  max_depth: int = DEFAULT_EXP_DEPTH) -> GermTerm:
    """Substitute x -> g in f, raising NotInFragment when the result has no
    finite normal form."""
    if logs is None:
        logs = {0: g}
    acc = ZERO
    for c, m in f.terms:
        acc = g_add(acc, g_scale(_subst_mono(m, g, logs, max_depth), c))
    return acc


def compose(f: GermLike, g: GermLike,
            max_depth: int = DEFAULT_EXP_DEPTH) -> GermLike:
    """f o g: normal form when it exists in the fragment, opaque node else.

    Opaque nodes carry exact level arithmetic and numeric evaluation;
    inverse nodes evaluate by monotone bisection.
    """
    if not node_increasing(g):
        raise NotIncreasing("right-composition germ must be infinitely increasing")
    if isinstance(f, GermTerm) and isinstance(g, GermTerm):
        try:
            return compose_exact(f, g, max_depth=max_depth)
        except (NotInFragment, DepthLimitExceeded, NonHardyExpression):
            return ComposeNode(f, g)
    return ComposeNode(f, g)


# ---------------------------------------------------------------------------
# printing


def _exp_str(r: Fraction) -> str:
    if r.denominator == 1 and r >= 0:
        return str(r.numerator)
    return f"({r})"


def _factor_name(k: int) -> str:
    if k == 0:
        return "x"
    if k == 1:
        return "log(x)"
    return f"log{k}(x)"


def mono_str(m: Transmono) -> str:
    factors = []
    for k, r in m.powers:
        name = _factor_name(k)
        factors.append(name if r == 1 else f"{name}^{_exp_str(r)}")
    if m.expart is not None:
        factors.append(f"exp({germ_str(m.expart)})")
    return "*".join(factors) if factors else "1"


def _coeff_prefix(c: Fraction, mono: Transmono) -> str:
    if mono.is_unit():
        return str(c)
    if c == 1:
        return mono_str(mono)
    if c == -1:
        return f"-{mono_str(mono)}"
    return f"{c}*{mono_str(mono)}"


def germ_str(f: GermTerm) -> str:
    if f.is_zero():
        return "0"
    parts = [_coeff_prefix(f.terms[0][0], f.terms[0][1])]
    for c, m in f.terms[1:]:
        if c < 0:
            parts.append(f" - {_coeff_prefix(-c, m)}")
        else:
            parts.append(f" + {_coeff_prefix(c, m)}")
    return "".join(parts)

"""Asymptotic scales: ordered monomial groups generated by exp(-f_i).

A Scale wraps a validated tuple of infinitely increasing germs f_0 > ... > f_k
in pairwise distinct archimedean classes.  Monomials are exponent vectors
relative to the scale: the vector a denotes exp(-(a_0 f_0 + ... + a_k f_k)),
so a lexicographically *larger* vector is a *smaller* monomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import germ as G
from .errors import NotAnAsymptoticScale, ScaleMismatch
from .germ import GermTerm, Q


@dataclass(frozen=True)
class Scale:
    generators: tuple[GermTerm, ...]
    classes: tuple[tuple[int, int], ...]  # contiguous [start, end) index ranges

    @property
    def arity(self) -> int:
        return len(self.generators)

    def unit(self) -> "Monomial":
        return Monomial(self, (Q(0),) * self.arity)

    def monomial(self, coords: Sequence) -> "Monomial":
        coords = tuple(Q(c) for c in coords)
        if len(coords) != self.arity:
            raise ScaleMismatch(
                f"expected {self.arity} exponents, got {len(coords)}")
        return Monomial(self, coords)

    def generator_monomial(self, i: int) -> "Monomial":
        coords = [Q(0)] * self.arity
        coords[i] = Q(1)
        return Monomial(self, tuple(coords))

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self) -> str:
        return f"Scale{self}"


@dataclass(frozen=True)
class Monomial:
    scale: Scale
    vector: tuple[Fraction, ...]

    def __mul__(self, other: "Monomial") -> "Monomial":
        _check_same(self, other)
        return Monomial(self.scale,
                        tuple(a + b for a, b in zip(self.vector, other.vector)))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        _check_same(self, other)
        return Monomial(self.scale,
                        tuple(a - b for a, b in zip(self.vector, other.vector)))

    def __pow__(self, q) -> "Monomial":
        q = Q(q)
        return Monomial(self.scale, tuple(a * q for a in self.vector))

    def inverse(self) -> "Monomial":
        return self ** -1

    def is_unit(self) -> bool:
        return all(a == 0 for a in self.vector)

    def is_small(self) -> bool:
        for a in self.vector:
            if a:
                return a > 0
        return False

    def to_germ(self) -> GermTerm:
        """The monomial as a germ, exp(-(sum of a_i f_i))."""
        acc = G.ZERO
        for a, f in zip(self.vector, self.scale.generators):
            acc = G.g_add(acc, G.g_scale(f, -a))
        return G.g_exp(acc, max_depth=64)

    def eval(self, x: float) -> float:
        s = 0.0
        for a, f in zip(self.vector, self.scale.generators):
            if a:
                s -= float(a) * G.eval_germ(f, x)
        try:
            return math.exp(s)
        except OverflowError:
            return math.inf

    def eval_complex(self, z: complex) -> complex:
        s = 0j
        for a, f in zip(self.vector, self.scale.generators):
            if a:
                s -= complex(a) * G.eval_germ_complex(f, z)
        return _cexp(s)

    def __str__(self) -> str:
        return "m[" + ",".join(str(a) for a in self.vector) + "]"

    def __repr__(self) -> str:
        return f"Monomial({self})"


def _cexp(z: complex) -> complex:
    import cmath
    try:
        return cmath.exp(z)
    except OverflowError:
        return complex(math.inf, math.inf)


def _check_same(m: Monomial, n: Monomial) -> None:
    if m.scale != n.scale:
        raise ScaleMismatch("monomials over different scales")


def monomial_cmp(m: Monomial, n: Monomial) -> int:
    """Total order: 1 when m > n.  The first nonzero coordinate of
    vector(m) - vector(n) being positive means the dominant generator gets a
    larger exponent, hence m is the *smaller* monomial."""
    _check_same(m, n)
    for a, b in zip(m.vector, n.vector):
        if a != b:
            return -1 if a > b else 1
    return 0


def _comparability_classes(gens: Sequence[GermTerm]) -> tuple[tuple[int, int], ...]:
    ranges = []
    start = 0
    for i in range(1, len(gens)):
        if not G.compare(gens[i - 1], gens[i]).comparable:
            ranges.append((start, i))
            start = i
    ranges.append((start, len(gens)))
    return tuple(ranges)


def make_scale(germs: Sequence[GermTerm]) -> Scale:
    """Validate a generator tuple into a Scale.

    Purely infinite inputs are first rewritten through basis extraction,
    which separates archimedean classes whenever the span allows it; the
    result must then pass the admissibility check.
    """
    germs = [g for g in germs]
    if not germs:
        raise NotAnAsymptoticScale("empty generator tuple")
    if all(not g.is_zero() and G.is_purely_infinite(g)
           and G.is_infinitely_increasing(g) for g in germs):
        gens = G.extract_basis(germs)
    else:
        gens = germs
    res = G.is_admissible(gens)
    if not res.ok:
        pair = None
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if G.same_archimedean_class(gens[i], gens[j]):
                    pair = (i, j)
                    break
            if pair:
                break
        raise NotAnAsymptoticScale(
            "; ".join(res.reasons), offending_pair=pair,
            certificate=res.certificate)
    return Scale(tuple(gens), _comparability_classes(gens))


def comparability_partition(s: Scale) -> list[tuple[int, int]]:
    """Contiguous index ranges of pairwise comparable generators."""
    return list(s.classes)


def project_class(s: Scale, j: int, m: Monomial) -> Monomial:
    """Zero out every exponent outside comparability class j."""
    if not 0 <= j < len(s.classes):
        raise IndexError(f"class index {j} out of range")
    lo, hi = s.classes[j]
    coords = tuple(a if lo <= i < hi else Q(0)
                   for i, a in enumerate(m.vector))
    return Monomial(s, coords)

"""Exponent-vector support skeletons and their enumeration streams.

A SupportUniverse is a superset certificate for the support of a series:
either an explicit finite set of vectors, or ``offset + monoid(gens)`` where
every generator is lexicographically positive.  Lex-positive generation is
exactly what keeps the induced monomial set reverse-well-ordered, so the
ascending-lex stream below enumerates candidate support points in strictly
decreasing monomial order.
"""

from __future__ import annotations

import heapq
import itertools
import threading
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

Q = Fraction
Vec = tuple[Fraction, ...]


def vzero(arity: int) -> Vec:
    return (Q(0),) * arity


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(u: Vec, q: Fraction) -> Vec:
    return tuple(a * q for a in u)


def vmin(u: Vec, v: Vec) -> Vec:
    return tuple(min(a, b) for a, b in zip(u, v))


def grade(u: Vec) -> Fraction:
    return sum(u, Q(0))


def lex_positive(u: Vec) -> bool:
    for a in u:
        if a:
            return a > 0
    return False


def leq_componentwise(u: Vec, v: Vec) -> bool:
    return all(a <= b for a, b in zip(u, v))


def is_nonnegative(u: Vec) -> bool:
    return all(a >= 0 for a in u)


class SupportUniverse:
    """offset + monoid(gens), or an explicit finite vector set."""

    def __init__(self, arity: int, *, offset: Optional[Vec] = None,
                 gens: Iterable[Vec] = (),
                 explicit: Optional[frozenset] = None):
        self.arity = arity
        self.explicit = explicit
        if explicit is not None:
            self.offset = vzero(arity)
            self.gens = frozenset()
            return
        self.offset = offset if offset is not None else vzero(arity)
        cleaned = set()
        for g in gens:
            if any(g):
                if not lex_positive(g):
                    raise ValueError(f"universe generator {g} is not lex-positive")
                cleaned.add(tuple(Q(a) for a in g))
        self.gens = frozenset(cleaned)

    # -- constructors --------------------------------------------------------

    @staticmethod
    def finite(arity: int, points: Iterable[Vec]) -> "SupportUniverse":
        return SupportUniverse(arity, explicit=frozenset(tuple(Q(a) for a in p)
                                                         for p in points))

    @staticmethod
    def generated(arity: int, gens: Iterable[Vec],
                  offset: Optional[Vec] = None) -> "SupportUniverse":
        return SupportUniverse(arity, offset=offset, gens=gens)

    # -- algebra ---------------------------------------------------------------

    def shifted(self, delta: Vec) -> "SupportUniverse":
        if self.explicit is not None:
            return SupportUniverse.finite(
                self.arity, (vadd(p, delta) for p in self.explicit))
        return SupportUniverse(self.arity, offset=vadd(self.offset, delta),
                               gens=self.gens)

    def union(self, other: "SupportUniverse") -> "SupportUniverse":
        if self.explicit is not None and other.explicit is not None:
            return SupportUniverse(self.arity,
                                   explicit=self.explicit | other.explicit)
        a, b = self._as_generated(), other._as_generated()
        off = vmin(a.offset, b.offset)
        gens = set(a.gens) | set(b.gens)
        for extra in (vsub(a.offset, off), vsub(b.offset, off)):
            if any(extra):
                gens.add(extra)
        return SupportUniverse(self.arity, offset=off, gens=gens)

    def sum(self, other: "SupportUniverse") -> "SupportUniverse":
        if self.explicit is not None and other.explicit is not None:
            pts = {vadd(p, q) for p in self.explicit for q in other.explicit}
            return SupportUniverse(self.arity, explicit=frozenset(pts))
        a, b = self._as_generated(), other._as_generated()
        return SupportUniverse(self.arity, offset=vadd(a.offset, b.offset),
                               gens=set(a.gens) | set(b.gens))

    def closure(self) -> "SupportUniverse":
        """Monoid closure: contains every finite sum of universe points."""
        if self.explicit is not None:
            gens = {p for p in self.explicit if any(p)}
            return SupportUniverse(self.arity, gens=gens)
        gens = set(self.gens)
        if any(self.offset):
            if not lex_positive(self.offset):
                raise ValueError("closure of a universe with non-lex-positive offset")
            gens.add(self.offset)
        return SupportUniverse(self.arity, gens=gens)

    def mapped(self, fn) -> "SupportUniverse":
        """Image under a linear map on exponent vectors."""
        new_arity = len(fn(vzero(self.arity)))
        if self.explicit is not None:
            return SupportUniverse.finite(new_arity,
                                          (fn(p) for p in self.explicit))
        off = fn(self.offset)
        gens = [fn(g) for g in self.gens]
        return SupportUniverse(new_arity, offset=off, gens=gens)

    def _as_generated(self) -> "SupportUniverse":
        if self.explicit is None:
            return self
        # explicit sets become offset+gens with the lex-least point as offset
        if not self.explicit:
            return SupportUniverse(self.arity)
        pts = sorted(self.explicit)
        off = pts[0]
        gens = [vsub(p, off) for p in pts[1:]]
        return SupportUniverse(self.arity, offset=off, gens=gens)

    # -- queries ----------------------------------------------------------------

    def occurring_coordinates(self) -> set[int]:
        out = set()
        if self.explicit is not None:
            for p in self.explicit:
                for i, a in enumerate(p):
                    if a:
                        out.add(i)
            return out
        for g in self.gens:
            for i, a in enumerate(g):
                if a:
                    out.add(i)
        for i, a in enumerate(self.offset):
            if a:
                out.add(i)
        return out

    def infinite_coordinates(self) -> set[int]:
        """Coordinates touched by some generator (directions of infinitude)."""
        out = set()
        for g in self.gens:
            for i, a in enumerate(g):
                if a:
                    out.add(i)
        return out

    def product_factors(self) -> Optional[list[object]]:
        """Per-coordinate factor structure when the universe is a product of
        single-coordinate sets: returns a list whose i-th entry is either a
        sorted list of exponents (finite factor) or the string 'omega'.
        None when the generators mix coordinates."""
        if self.explicit is not None:
            return None
        sets: list = [{self.offset[i]} for i in range(self.arity)]
        for g in self.gens:
            nz = [i for i, a in enumerate(g) if a]
            if len(nz) != 1:
                return None
            if g[nz[0]] < 0:
                return None
            sets[nz[0]] = "omega"
        return [s if s == "omega" else sorted(s) for s in sets]

    def contains(self, v: Vec) -> bool:
        if self.explicit is not None:
            return v in self.explicit
        return self._member(vsub(v, self.offset))

    def _member(self, target: Vec) -> bool:
        gens = sorted(self.gens)
        memo: dict[Vec, bool] = {}

        def solve(tau: Vec, idx_gens: tuple[Vec, ...]) -> bool:
            if not any(tau):
                return True
            key = (tau, len(idx_gens))
            if key in memo:
                return memo[key]
            ok = False
            # stratify by leading coordinate: generators whose first nonzero
            # coordinate is the first nonzero coordinate of tau or earlier
            lead = next((i for i, a in enumerate(tau) if a), None)
            if lead is None:
                return True
            if tau[lead] < 0:
                memo[key] = False
                return False
            for g in idx_gens:
                glead = next((i for i, a in enumerate(g) if a), None)
                if glead is None or glead > lead:
                    continue
                ok = solve(vsub(tau, g), idx_gens)
                if ok:
                    break
            memo[key] = ok
            return ok

        return solve(target, tuple(gens))

    # -- streams ----------------------------------------------------------------

    def lex_stream(self) -> Iterator[Vec]:
        """All universe points in strictly ascending lex order (decreasing
        monomial order), lazily."""
        if self.explicit is not None:
            yield from sorted(self.explicit)
            return
        heap = [self.offset]
        seen = {self.offset}
        gens = sorted(self.gens)
        while heap:
            v = heapq.heappop(heap)
            yield v
            for g in gens:
                w = vadd(v, g)
                if w not in seen:
                    seen.add(w)
                    heapq.heappush(heap, w)

    def graded_stream(self) -> Iterator[Vec]:
        """Points in ascending (total degree, lex) order.  Only valid when
        all generators are componentwise nonnegative."""
        if self.explicit is not None:
            yield from sorted(self.explicit, key=lambda p: (grade(p), p))
            return
        for g in self.gens:
            if not is_nonnegative(g):
                raise ValueError("graded enumeration needs nonnegative generators")
        heap = [(grade(self.offset), self.offset)]
        seen = {self.offset}
        gens = sorted(self.gens)
        while heap:
            _, v = heapq.heappop(heap)
            yield v
            for g in gens:
                w = vadd(v, g)
                if w not in seen:
                    seen.add(w)
                    heapq.heappush(heap, (grade(w), w))

    def box_points(self, bound: Vec) -> list[Vec]:
        """All universe points componentwise <= bound, sorted (grade, lex).
        Requires nonnegative generators."""
        if self.explicit is not None:
            pts = [p for p in self.explicit if leq_componentwise(p, bound)]
            return sorted(pts, key=lambda p: (grade(p), p))
        for g in self.gens:
            if not is_nonnegative(g):
                raise ValueError("box enumeration needs nonnegative generators")
        if not leq_componentwise(self.offset, bound):
            return []
        out = []
        stack = [self.offset]
        seen = {self.offset}
        gens = sorted(self.gens)
        while stack:
            v = stack.pop()
            out.append(v)
            for g in gens:
                w = vadd(v, g)
                if w not in seen and leq_componentwise(w, bound):
                    seen.add(w)
                    stack.append(w)
        return sorted(out, key=lambda p: (grade(p), p))

    def __repr__(self) -> str:
        if self.explicit is not None:
            return f"SupportUniverse(explicit={len(self.explicit)} pts)"
        return f"SupportUniverse(offset={self.offset}, gens={sorted(self.gens)})"


class MemoStream:
    """Thread-safe materialized prefix over a restartable stream factory."""

    def __init__(self, factory):
        self._factory = factory
        self._items: list = []
        self._iter = None
        self._done = False
        self._lock = threading.Lock()

    def get(self, i: int):
        with self._lock:
            while len(self._items) <= i and not self._done:
                self._pull()
        if i < len(self._items):
            return self._items[i]
        return None

    def _pull(self):
        if self._iter is None:
            self._iter = self._factory()
        try:
            self._items.append(next(self._iter))
        except StopIteration:
            self._done = True

    def prefix(self, n: int) -> list:
        with self._lock:
            while len(self._items) < n and not self._done:
                self._pull()
        return self._items[:n]

    def __iter__(self):
        i = 0
        while True:
            item = self.get(i)
            if item is None:
                return
            yield item
            i += 1

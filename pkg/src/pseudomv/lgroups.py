"""Computable lattice-ordered groups with designated strong units.

The catalogue covers the carriers needed to build group-interval algebras
at desk scale:

* scalar groups: the integers, the rationals, the dyadic rationals
  m/2ⁿ, and the groups H(p) = {i/pⁿ} of rationals whose denominators are
  powers of a fixed base p (two-divisible exactly when p is even);
* the rational Heisenberg group, triples (a, b, c) under
  (a,b,c)·(a',b',c') = (a+a', b+b', c+c'+ab'), ordered lexicographically —
  a concrete two-divisible nilpotent linearly ordered group;
* lexicographic and direct products;
* two float-backed semidirect products of the real line used by the
  counterexample algebras: the positive reals acting on ℝ by scaling, and
  ℝ acting on ℝ by exponential scaling.  These are quarantined behind
  ``exact = False`` and a comparison tolerance because their halving maps
  involve irrational square roots.

Exact carriers store :class:`fractions.Fraction` payloads and never hold
floats.  The Γ-construction turns the interval [0, u] of a unital group
into a pseudo MV-algebra via x ⊕ y = (x+y) ∧ u, x⁻ = u−x, x∼ = −x+u.
"""

from __future__ import annotations

import math
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any

from .core import (
    AlgebraError,
    BackendMismatch,
    PseudoMV,
    SamplerConfig,
    UnsupportedBackend,
)

__all__ = [
    "LGroup",
    "IntegerGroup",
    "RationalGroup",
    "DyadicGroup",
    "PowerDenominatorGroup",
    "HeisenbergGroup",
    "LexProduct",
    "DirectProductGroup",
    "ScalingSemidirect",
    "ExpSemidirect",
    "UnitalLGroup",
    "GammaPMV",
    "gamma",
    "group_ops",
    "halve",
    "in_center",
    "power_denominator_member",
    "primorial",
    "primorial_tower_member",
]


def _as_fraction(v: Any) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, Rational):
        return Fraction(v.numerator, v.denominator)
    raise BackendMismatch(f"exact payload expected, got {v!r}")


def _format_rational(q: Rational) -> str:
    q = _as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class LGroup(ABC):
    """A lattice-ordered group backend.

    ``cmp`` returns -1/0/1 for comparable pairs and None for incomparable
    ones (possible only on direct products).  Float-backed groups compare
    within ``tolerance``.
    """

    exact: bool = True
    tolerance: float = 0.0
    linear: bool = True
    abelian: bool = True
    dsl: str = "?"
    flat_arity: int = 1

    @abstractmethod
    def zero(self) -> Any: ...

    @abstractmethod
    def add(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def neg(self, a: Any) -> Any: ...

    @abstractmethod
    def cmp(self, a: Any, b: Any) -> int | None: ...

    @abstractmethod
    def validate(self, a: Any) -> None:
        """Raise BackendMismatch when the payload has the wrong shape."""

    def sub(self, a: Any, b: Any) -> Any:
        """a − b = a + (−b)."""
        return self.add(a, self.neg(b))

    def eq(self, a: Any, b: Any) -> bool:
        return self.cmp(a, b) == 0

    def leq(self, a: Any, b: Any) -> bool:
        c = self.cmp(a, b)
        return c is not None and c <= 0

    def lt(self, a: Any, b: Any) -> bool:
        c = self.cmp(a, b)
        return c is not None and c < 0

    def join(self, a: Any, b: Any) -> Any:
        c = self.cmp(a, b)
        if c is None:
            raise UnsupportedBackend("join of incomparable elements needs an override")
        return b if c < 0 else a

    def meet(self, a: Any, b: Any) -> Any:
        c = self.cmp(a, b)
        if c is None:
            raise UnsupportedBackend("meet of incomparable elements needs an override")
        return a if c < 0 else b

    def halve(self, a: Any) -> Any | None:
        """The unique b with b + b = a, or None when the carrier has none."""
        return None

    def center_has(self, a: Any) -> bool | None:
        """Exact center membership where decidable; None defers to sampling."""
        return True if self.abelian else None

    @abstractmethod
    def random_element(self, rng: random.Random, bound: int) -> Any:
        """An arbitrary small element (used by commutation/order probes)."""

    def sample_interval(self, rng: random.Random, unit: Any, bound: int) -> Any:
        """A seeded point of [0, unit]: coordinates of bounded denominator,
        clamped into the interval."""
        x = self.random_element(rng, bound)
        return self.meet(self.join(x, self.zero()), unit)

    def enumerate_interval(self, lo: Any, hi: Any) -> list | None:
        """The whole interval [lo, hi] when finite and enumerable, else None."""
        return None

    def flatten(self, a: Any) -> list:
        return [a]

    def from_flat(self, values: list) -> Any:
        if len(values) != 1:
            raise BackendMismatch(f"{self.dsl} element needs 1 coordinate, got {len(values)}")
        return self._coerce_scalar(values[0])

    def _coerce_scalar(self, v: Any) -> Any:
        return _as_fraction(v)

    def format_element(self, a: Any) -> str:
        flat = self.flatten(a)
        parts = []
        for v in flat:
            if isinstance(v, float):
                parts.append(format(v, ".12g"))
            else:
                parts.append(_format_rational(v))
        if len(parts) == 1:
            return parts[0]
        return "(" + ", ".join(parts) + ")"

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.dsl}>"


# ----------------------------------------------------------------------
# scalar groups
# ----------------------------------------------------------------------

class IntegerGroup(LGroup):
    dsl = "Z"

    def zero(self):
        return 0

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def cmp(self, a, b):
        return (a > b) - (a < b)

    def validate(self, a):
        if not isinstance(a, int):
            raise BackendMismatch(f"integer expected, got {a!r}")

    def halve(self, a):
        return a // 2 if a % 2 == 0 else None

    def random_element(self, rng, bound):
        return rng.randint(-8, 8)

    def sample_interval(self, rng, unit, bound):
        return rng.randint(0, unit)

    def enumerate_interval(self, lo, hi):
        return list(range(lo, hi + 1))


class _FractionGroup(LGroup):
    """Shared machinery for subgroups of the rationals."""

    def zero(self):
        return Fraction(0)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def cmp(self, a, b):
        return (a > b) - (a < b)

    def validate(self, a):
        if not isinstance(a, Rational):
            raise BackendMismatch(f"rational expected, got {a!r}")
        if not self.member(_as_fraction(a)):
            raise BackendMismatch(f"{a!r} lies outside {self.dsl}")

    def member(self, q: Fraction) -> bool:
        return True

    def halve(self, a):
        h = _as_fraction(a) / 2
        return h if self.member(h) else None

    def _denominator(self, rng: random.Random, bound: int) -> int:
        return rng.randint(1, max(1, bound))

    def random_element(self, rng, bound):
        d = self._denominator(rng, bound)
        return Fraction(rng.randint(-2 * d, 2 * d), d)

    def sample_interval(self, rng, unit, bound):
        d = self._denominator(rng, bound)
        hi = int(_as_fraction(unit) * d)
        q = Fraction(rng.randint(0, max(hi, 0)), d)
        return self.meet(q, unit)


class RationalGroup(_FractionGroup):
    dsl = "Q"


class DyadicGroup(_FractionGroup):
    """Rationals m/2ⁿ; two-divisible but not divisible."""

    dsl = "D"

    def member(self, q):
        d = q.denominator
        return d & (d - 1) == 0

    def _denominator(self, rng, bound):
        return 1 << rng.randint(0, max(0, bound.bit_length() - 1))


class PowerDenominatorGroup(_FractionGroup):
    """H(p) = {i/pⁿ : i ∈ ℤ, n ≥ 1}: denominators divide a power of p."""

    def __init__(self, base: int):
        if base < 1:
            raise ValueError("base must be a positive integer")
        self.base = base
        self.dsl = f"H({base})"

    @property
    def two_divisible(self) -> bool:
        return self.base % 2 == 0

    def member(self, q):
        return power_denominator_member(self.base, q)

    def _denominator(self, rng, bound):
        d = 1
        while d * self.base <= bound and rng.random() < 0.75:
            d *= self.base
        return d


def power_denominator_member(base: int, q: Rational) -> bool:
    """Decide q ∈ H(base), i.e. whether the reduced denominator of q divides
    some power of the base."""
    d = _as_fraction(q).denominator
    g = math.gcd(d, base)
    while g > 1:
        while d % g == 0:
            d //= g
        g = math.gcd(d, base)
    return d == 1


_FIRST_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def primorial(n: int) -> int:
    """Product of the first n+1 primes: 2, 6, 30, 210, ..."""
    if not 0 <= n < len(_FIRST_PRIMES):
        raise ValueError(f"n must be in [0, {len(_FIRST_PRIMES) - 1}]")
    out = 1
    for p in _FIRST_PRIMES[: n + 1]:
        out *= p
    return out


def primorial_tower_member(p: int, n: int, q: Rational) -> bool:
    """Membership in the n-th stage H(p) of the primorial tower
    H(2) ⊂ H(6) ⊂ H(30) ⊂ ⋯; requires p to be the product of the first
    n+1 primes."""
    if p != primorial(n):
        raise ValueError(f"{p} is not the product of the first {n + 1} primes")
    return power_denominator_member(p, q)


# ----------------------------------------------------------------------
# the rational Heisenberg group
# ----------------------------------------------------------------------

class HeisenbergGroup(LGroup):
    """Triples (a, b, c) of rationals with product
    (a,b,c)·(a',b',c') = (a+a', b+b', c+c'+ab'), ordered lexicographically.

    Conjugation fixes (a, b) and shifts c, so the lexicographic positive
    cone is invariant and the order is a group order.  Halving solves
    (x,y,z)² = (2x, 2y, 2z+xy) exactly over the rationals.
    """

    dsl = "heis"
    abelian = False
    flat_arity = 3

    def zero(self):
        return (Fraction(0), Fraction(0), Fraction(0))

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])

    def neg(self, a):
        return (-a[0], -a[1], -a[2] + a[0] * a[1])

    def cmp(self, a, b):
        if a == b:
            return 0
        return -1 if a < b else 1

    def validate(self, a):
        if not (isinstance(a, tuple) and len(a) == 3
                and all(isinstance(v, Rational) for v in a)):
            raise BackendMismatch(f"Heisenberg triple expected, got {a!r}")

    def halve(self, a):
        x, y = a[0] / 2, a[1] / 2
        return (x, y, (a[2] - a[0] * a[1] / 4) / 2)

    def center_has(self, a):
        return a[0] == 0 and a[1] == 0

    def random_element(self, rng, bound):
        d = 1 << rng.randint(0, 4)
        return tuple(Fraction(rng.randint(-2 * d, 2 * d), d) for _ in range(3))

    def flatten(self, a):
        return list(a)

    def from_flat(self, values):
        if len(values) != 3:
            raise BackendMismatch(f"heis element needs 3 coordinates, got {len(values)}")
        return tuple(_as_fraction(v) for v in values)


# ----------------------------------------------------------------------
# products
# ----------------------------------------------------------------------

class LexProduct(LGroup):
    """Componentwise group addition on H × G under the lexicographic order.

    This is a lattice order exactly when H is linearly ordered, which the
    constructor enforces.
    """

    def __init__(self, head: LGroup, tail: LGroup):
        if not head.linear:
            raise AlgebraError("lexicographic head factor must be linearly ordered")
        self.head = head
        self.tail = tail
        self.exact = head.exact and tail.exact
        self.tolerance = max(head.tolerance, tail.tolerance)
        self.linear = tail.linear
        self.abelian = head.abelian and tail.abelian
        self.dsl = f"lex({head.dsl},{tail.dsl})"
        self.flat_arity = head.flat_arity + tail.flat_arity

    def zero(self):
        return (self.head.zero(), self.tail.zero())

    def add(self, a, b):
        return (self.head.add(a[0], b[0]), self.tail.add(a[1], b[1]))

    def neg(self, a):
        return (self.head.neg(a[0]), self.tail.neg(a[1]))

    def cmp(self, a, b):
        c = self.head.cmp(a[0], b[0])
        if c != 0:
            return c
        return self.tail.cmp(a[1], b[1])

    def join(self, a, b):
        c = self.head.cmp(a[0], b[0])
        if c != 0:
            return b if c < 0 else a
        return (a[0], self.tail.join(a[1], b[1]))

    def meet(self, a, b):
        c = self.head.cmp(a[0], b[0])
        if c != 0:
            return a if c < 0 else b
        return (a[0], self.tail.meet(a[1], b[1]))

    def validate(self, a):
        if not (isinstance(a, tuple) and len(a) == 2):
            raise BackendMismatch(f"lex pair expected, got {a!r}")
        self.head.validate(a[0])
        self.tail.validate(a[1])

    def halve(self, a):
        h = self.head.halve(a[0])
        t = self.tail.halve(a[1])
        return None if h is None or t is None else (h, t)

    def center_has(self, a):
        h = self.head.center_has(a[0])
        t = self.tail.center_has(a[1])
        return None if h is None or t is None else h and t

    def random_element(self, rng, bound):
        return (self.head.random_element(rng, bound), self.tail.random_element(rng, bound))

    def sample_interval(self, rng, unit, bound):
        h = self.head.sample_interval(rng, unit[0], bound)
        t = self.tail.random_element(rng, bound)
        x = (h, t)
        return self.meet(self.join(x, self.zero()), unit)

    def flatten(self, a):
        return self.head.flatten(a[0]) + self.tail.flatten(a[1])

    def from_flat(self, values):
        k = self.head.flat_arity
        if len(values) != self.flat_arity:
            raise BackendMismatch(
                f"{self.dsl} element needs {self.flat_arity} coordinates, got {len(values)}")
        return (self.head.from_flat(values[:k]), self.tail.from_flat(values[k:]))


class DirectProductGroup(LGroup):
    """Componentwise group and order (not lexicographic)."""

    def __init__(self, left: LGroup, right: LGroup):
        self.left = left
        self.right = right
        self.exact = left.exact and right.exact
        self.tolerance = max(left.tolerance, right.tolerance)
        self.linear = False
        self.abelian = left.abelian and right.abelian
        self.dsl = f"prod({left.dsl},{right.dsl})"
        self.flat_arity = left.flat_arity + right.flat_arity

    def zero(self):
        return (self.left.zero(), self.right.zero())

    def add(self, a, b):
        return (self.left.add(a[0], b[0]), self.right.add(a[1], b[1]))

    def neg(self, a):
        return (self.left.neg(a[0]), self.right.neg(a[1]))

    def cmp(self, a, b):
        le = self.left.leq(a[0], b[0]) and self.right.leq(a[1], b[1])
        ge = self.left.leq(b[0], a[0]) and self.right.leq(b[1], a[1])
        if le and ge:
            return 0
        if le:
            return -1
        if ge:
            return 1
        return None

    def join(self, a, b):
        return (self.left.join(a[0], b[0]), self.right.join(a[1], b[1]))

    def meet(self, a, b):
        return (self.left.meet(a[0], b[0]), self.right.meet(a[1], b[1]))

    def validate(self, a):
        if not (isinstance(a, tuple) and len(a) == 2):
            raise BackendMismatch(f"product pair expected, got {a!r}")
        self.left.validate(a[0])
        self.right.validate(a[1])

    def halve(self, a):
        l = self.left.halve(a[0])
        r = self.right.halve(a[1])
        return None if l is None or r is None else (l, r)

    def center_has(self, a):
        l = self.left.center_has(a[0])
        r = self.right.center_has(a[1])
        return None if l is None or r is None else l and r

    def random_element(self, rng, bound):
        return (self.left.random_element(rng, bound), self.right.random_element(rng, bound))

    def sample_interval(self, rng, unit, bound):
        return (self.left.sample_interval(rng, unit[0], bound),
                self.right.sample_interval(rng, unit[1], bound))

    def enumerate_interval(self, lo, hi):
        ls = self.left.enumerate_interval(lo[0], hi[0])
        rs = self.right.enumerate_interval(lo[1], hi[1])
        if ls is None or rs is None:
            return None
        return [(a, b) for a in ls for b in rs]

    def flatten(self, a):
        return self.left.flatten(a[0]) + self.right.flatten(a[1])

    def from_flat(self, values):
        k = self.left.flat_arity
        if len(values) != self.flat_arity:
            raise BackendMismatch(
                f"{self.dsl} element needs {self.flat_arity} coordinates, got {len(values)}")
        return (self.left.from_flat(values[:k]), self.right.from_flat(values[k:]))


# ----------------------------------------------------------------------
# float-backed semidirect products
# ----------------------------------------------------------------------

class _FloatPairGroup(LGroup):
    """Lexicographically ordered pairs of floats with a comparison tolerance."""

    exact = False
    abelian = False
    flat_arity = 2

    def __init__(self, tolerance: float = 1e-9):
        self.tolerance = tolerance

    def cmp(self, a, b):
        if abs(a[0] - b[0]) > self.tolerance:
            return -1 if a[0] < b[0] else 1
        if abs(a[1] - b[1]) > self.tolerance:
            return -1 if a[1] < b[1] else 1
        return 0

    def validate(self, a):
        if not (isinstance(a, tuple) and len(a) == 2
                and all(isinstance(v, (int, float)) for v in a)):
            raise BackendMismatch(f"float pair expected, got {a!r}")

    def flatten(self, a):
        return [float(a[0]), float(a[1])]

    def from_flat(self, values):
        if len(values) != 2:
            raise BackendMismatch(f"{self.dsl} element needs 2 coordinates, got {len(values)}")
        return (float(values[0]), float(values[1]))

    def center_has(self, a):
        return self.eq(a, self.zero())


class ScalingSemidirect(_FloatPairGroup):
    """Positive reals (multiplicative) acting on ℝ by scaling:
    (h₁,g₁)·(h₂,g₂) = (h₁h₂, h₂g₁+g₂), inverse (1/h, −g/h).

    The identity is (1, 0); the conventional strong unit is (2, 0).
    """

    dsl = "semi_numeric"

    def zero(self):
        return (1.0, 0.0)

    def add(self, a, b):
        return (a[0] * b[0], b[0] * a[1] + b[1])

    def neg(self, a):
        return (1.0 / a[0], -a[1] / a[0])

    def validate(self, a):
        super().validate(a)
        if a[0] <= 0:
            raise BackendMismatch(f"first coordinate must be positive, got {a!r}")

    def halve(self, a):
        s = math.sqrt(a[0])
        return (s, a[1] / (s + 1.0))

    def random_element(self, rng, bound):
        return (math.exp(rng.uniform(-0.7, 0.7)), rng.uniform(-2.0, 2.0))

    def sample_interval(self, rng, unit, bound):
        x = (rng.uniform(1.0, unit[0]), rng.uniform(-1.0, 1.0))
        return self.meet(self.join(x, self.zero()), unit)


class ExpSemidirect(_FloatPairGroup):
    """ℝ acting on ℝ by exponential scaling:
    (x₁,y₁)+(x₂,y₂) = (x₁+x₂, e^{x₂}y₁+y₂), −(x,y) = (−x, −e^{−x}y)."""

    dsl = "exp_numeric"

    def zero(self):
        return (0.0, 0.0)

    def add(self, a, b):
        return (a[0] + b[0], math.exp(b[0]) * a[1] + b[1])

    def neg(self, a):
        return (-a[0], -math.exp(-a[0]) * a[1])

    def halve(self, a):
        return (a[0] / 2.0, a[1] / (math.exp(a[0] / 2.0) + 1.0))

    def random_element(self, rng, bound):
        return (rng.uniform(-0.7, 0.7), rng.uniform(-2.0, 2.0))

    def sample_interval(self, rng, unit, bound):
        x = (rng.uniform(0.0, unit[0]), rng.uniform(-1.0, 1.0))
        return self.meet(self.join(x, self.zero()), unit)


# ----------------------------------------------------------------------
# unital groups and the Γ-construction
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class UnitalLGroup:
    """A group with a designated strong unit u > 0."""

    group: LGroup
    unit: Any

    def __post_init__(self):
        self.group.validate(self.unit)
        if not self.group.lt(self.group.zero(), self.unit):
            raise AlgebraError("unit must be strictly positive")

    def dominated_by_unit_power(self, g: Any, max_doublings: int = 20) -> bool:
        """Strong-unit probe: g ≤ 2ᵏ·u for some k ≤ max_doublings."""
        acc = self.unit
        for _ in range(max_doublings + 1):
            if self.group.leq(g, acc):
                return True
            acc = self.group.add(acc, acc)
        return False


class GammaPMV(PseudoMV):
    """The pseudo MV-algebra on the interval [0, u] of a unital group."""

    backend = "gamma-interval"

    def __init__(self, unital: UnitalLGroup, sampler: SamplerConfig | None = None):
        super().__init__(sampler, unital.group.tolerance)
        self.unital = unital
        self.group = unital.group
        self.unit = unital.unit
        self._zero = self.group.zero()
        self._interval = self.group.enumerate_interval(self._zero, self.unit)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self.unit

    def oplus(self, x, y):
        return self.group.meet(self.group.add(x, y), self.unit)

    def neg(self, x):
        return self.group.sub(self.unit, x)

    def tilde(self, x):
        return self.group.add(self.group.neg(x), self.unit)

    def eq(self, x, y):
        return self.group.eq(x, y)

    def contains(self, x):
        try:
            self.group.validate(x)
        except BackendMismatch:
            return False
        return self.group.leq(self._zero, x) and self.group.leq(x, self.unit)

    def sample(self, rng):
        return self.group.sample_interval(rng, self.unit, self.sampler.denominator_bound)

    @property
    def enumerable(self):
        return self._interval is not None

    def elements(self):
        if self._interval is None:
            raise UnsupportedBackend(f"interval of {self.group.dsl} is not enumerable")
        return iter(self._interval)

    @property
    def size(self):
        return None if self._interval is None else len(self._interval)

    def format_element(self, x):
        return self.group.format_element(x)

    def describe(self):
        return {
            "backend": self.backend,
            "group": self.group.dsl,
            "unit": self.group.format_element(self.unit),
            "size": self.size,
            "exact": self.group.exact,
        }


def gamma(group: LGroup | UnitalLGroup, unit: Any = None,
          sampler: SamplerConfig | None = None) -> GammaPMV:
    """Build Γ(G, u).  Accepts a :class:`UnitalLGroup` or a group plus unit."""
    if isinstance(group, UnitalLGroup):
        if unit is not None:
            raise ValueError("unit given twice")
        return GammaPMV(group, sampler)
    return GammaPMV(UnitalLGroup(group, unit), sampler)


# ----------------------------------------------------------------------
# operation-style entry points
# ----------------------------------------------------------------------

def group_ops(g: LGroup, a: Any, b: Any) -> dict:
    """One-shot bundle of the basic group computations on a pair."""
    g.validate(a)
    g.validate(b)
    return {
        "add": g.add(a, b),
        "neg": g.neg(a),
        "join": g.join(a, b),
        "meet": g.meet(a, b),
        "cmp": g.cmp(a, b),
    }


def halve(g: LGroup, a: Any) -> Any | None:
    g.validate(a)
    return g.halve(a)


def in_center(g: LGroup, a: Any, budget: int = 256, seed: int = 0) -> bool:
    """Center membership: exact where the backend decides it, otherwise
    sampled commutation against ``budget`` random elements."""
    g.validate(a)
    exact = g.center_has(a)
    if exact is not None:
        return exact
    from .core import make_rng

    rng = make_rng(seed, "center", g.dsl)
    for _ in range(budget):
        b = g.random_element(rng, 64)
        if not g.eq(g.add(a, b), g.add(b, a)):
            return False
    return True

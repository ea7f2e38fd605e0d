"""Square roots on pseudo MV-algebras.

A map r : M → M is a *weak square root* when r(x) ⊙ r(x) = x (the square
law) and y ⊙ y ≤ x implies y ≤ r(x) (maximality).  It is a *square root*
when it is additionally compatible with both negations,
r(x⁻) = r(x) → r(0) and r(x∼) = r(x) ⇝ r(0), and *standard* when
r(x) ⊙ r(0) = r(0) ⊙ r(x).  A root is *strict* when r(0) = r(0)⁻.

The idempotent r(0)⁻ ⊙ r(0)⁻ governs a trichotomy: it is 1 exactly on
Boolean algebras (where r is the identity), 0 exactly on strict algebras,
and otherwise splits the algebra into a Boolean × strict direct product
along x ↦ (x ∧ u, x ∧ u⁻).

On group intervals Γ(G, u) with computable halving the roots have closed
forms: (x + u)/2 when u/2 is central, and ((x − u)/2) + u in general (a
weak root that need not respect the negations).  Closed-form evaluation
never falls back to brute force; selection is explicit in the API.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .core import (
    AlgebraError,
    CheckResult,
    IntervalPMV,
    ProductPMV,
    PseudoMV,
    UNDEFINED,
    UnsupportedBackend,
    make_rng,
)
from .finite import FinitePMV, brute_force_weak_sqrt
from .lgroups import GammaPMV, in_center

__all__ = [
    "SquareRootMap",
    "SquareRootReport",
    "Decomposition",
    "InducedInterval",
    "HalvingUnavailable",
    "NotCentral",
    "LadderError",
    "identity_map",
    "table_map",
    "product_map",
    "relative_map",
    "custom_map",
    "closed_form",
    "detect_square_root",
    "verify",
    "is_strict",
    "boolean_witness",
    "decompose",
    "induced_interval_algebra",
    "iterate",
    "odot_power",
    "power_check",
    "dyadic_ladder",
    "variety_identities",
    "square_root_properties",
    "PROPERTY_ITEMS",
    "WEAK_SAFE_ITEMS",
    "SKIPPED",
]


class HalvingUnavailable(AlgebraError):
    """The backing group cannot halve the elements a closed form needs."""


class NotCentral(AlgebraError):
    """The symmetric closed form needs u/2 in the group center."""


class LadderError(AlgebraError):
    """Halving-ladder construction left the interval or lost cyclicity."""


class SquareRootMap:
    """An evaluable candidate (weak) square root bound to an algebra.

    ``kind`` is one of: identity, table, closed-form-sym, closed-form-weak,
    mixed, product, relative, custom-numeric.
    """

    def __init__(self, algebra: PseudoMV, kind: str, fn: Callable[[Any], Any],
                 data: Any = None):
        self.algebra = algebra
        self.kind = kind
        self._fn = fn
        self.data = data

    def __call__(self, x: Any) -> Any:
        return self._fn(x)

    def __repr__(self) -> str:
        return f"<SquareRootMap {self.kind}>"


def identity_map(algebra: PseudoMV) -> SquareRootMap:
    return SquareRootMap(algebra, "identity", lambda x: x)


def table_map(algebra: FinitePMV, mapping: dict) -> SquareRootMap:
    table = dict(mapping)
    return SquareRootMap(algebra, "table", lambda x: table[x], data=table)


def product_map(algebra: ProductPMV, left: SquareRootMap, right: SquareRootMap) -> SquareRootMap:
    return SquareRootMap(algebra, "product",
                         lambda x: (left(x[0]), right(x[1])), data=(left, right))


def relative_map(root: SquareRootMap, top: Any, sub: IntervalPMV) -> SquareRootMap:
    """The induced root x ↦ r(x) ⊙ a on the interval [0, a] below an
    idempotent a."""
    parent = root.algebra
    return SquareRootMap(sub, "relative",
                         lambda x: parent.odot(root(x), top), data=top)


def custom_map(algebra: PseudoMV, fn: Callable[[Any], Any], data: Any = None) -> SquareRootMap:
    return SquareRootMap(algebra, "custom-numeric", fn, data=data)


def closed_form(algebra: GammaPMV, variant: str, witness: Any = None) -> SquareRootMap:
    """Group-arithmetic closed forms on Γ(G, u).

    * ``"sym"``  — r(x) = (x + u)/2; needs halving and u/2 central.
    * ``"weak"`` — r(x) = ((x − u)/2) + u; needs halving only.
    * ``"mixed"``— r(x) = (x ∧ w) ∨ ((x ∧ w⁻) + w⁻)/2 for an idempotent w.

    Results stay inside [0, u]; nothing is clamped.
    """
    if not isinstance(algebra, GammaPMV):
        raise UnsupportedBackend("closed forms need a group-interval backend")
    group, unit = algebra.group, algebra.unit
    half_unit = group.halve(unit)
    if half_unit is None:
        raise HalvingUnavailable(f"{group.dsl} cannot halve the unit")

    def halve_or_raise(g):
        h = group.halve(g)
        if h is None:
            raise HalvingUnavailable(f"{group.dsl} cannot halve {group.format_element(g)}")
        return h

    if variant == "sym":
        if not in_center(group, half_unit):
            raise NotCentral(f"u/2 = {group.format_element(half_unit)} is not central in {group.dsl}")
        return SquareRootMap(
            algebra, "closed-form-sym",
            lambda x: halve_or_raise(group.add(x, unit)))
    if variant == "weak":
        return SquareRootMap(
            algebra, "closed-form-weak",
            lambda x: group.add(halve_or_raise(group.sub(x, unit)), unit))
    if variant == "mixed":
        if witness is None or not algebra.is_boolean_element(witness):
            raise AlgebraError("mixed form needs an idempotent witness")
        neg_w = algebra.neg(witness)

        def mixed(x):
            boolean_part = algebra.meet(x, witness)
            strict_part = halve_or_raise(group.add(algebra.meet(x, neg_w), neg_w))
            return algebra.join(boolean_part, strict_part)

        return SquareRootMap(algebra, "mixed", mixed, data=witness)
    raise ValueError(f"unknown closed form variant {variant!r}")


def _evaluable_everywhere(algebra: PseudoMV, root: SquareRootMap, probes: int = 16) -> bool:
    """Closed forms can construct but still hit unhalvable points (整-valued
    carriers with an even unit); probe before trusting the map."""
    points = algebra.probe(budget=probes, seed=algebra.sampler.seed, label="root-probe")
    try:
        for x in points[:probes]:
            root(x)
    except HalvingUnavailable:
        return False
    return True


def detect_square_root(algebra: PseudoMV) -> tuple[SquareRootMap | None, str]:
    """Best-effort root construction: brute force on tables, closed forms
    on group intervals.  Returns (map or None, how)."""
    if isinstance(algebra, FinitePMV):
        search = brute_force_weak_sqrt(algebra)
        if search.found:
            return table_map(algebra, search.mapping), "brute-force"
        return None, f"none ({search.verdict} at x={algebra.format_element(search.failing)})"
    if isinstance(algebra, GammaPMV):
        candidates = []
        try:
            candidates.append((closed_form(algebra, "sym"), "closed-form-sym"))
        except NotCentral:
            pass
        except HalvingUnavailable as exc:
            return None, f"none ({exc})"
        try:
            candidates.append((closed_form(algebra, "weak"), "closed-form-weak"))
        except HalvingUnavailable as exc:
            return None, f"none ({exc})"
        for root, how in candidates:
            if _evaluable_everywhere(algebra, root):
                return root, how
        return None, "none (halving misses probed points)"
    return None, "none (no detection rule for this backend)"


# ----------------------------------------------------------------------
# verification
# ----------------------------------------------------------------------

@dataclass
class SquareRootReport:
    """Verdicts for the four defining laws plus the derived classification."""

    square: CheckResult
    maximality: CheckResult
    negation_compat: CheckResult
    standard: CheckResult
    strict: bool
    r0: Any
    witness_idempotent: Any | None
    classification: str
    residuum_cross: CheckResult | None = None

    @property
    def is_weak_square_root(self) -> bool:
        return self.square.passed and self.maximality.passed

    @property
    def is_square_root(self) -> bool:
        return self.is_weak_square_root and self.negation_compat.passed


def _pair_stream(algebra: PseudoMV, budget: int | None, seed: int | None, label: str):
    if algebra.enumerable:
        elems = list(algebra.elements())
        return [(x, y) for x in elems for y in elems]
    rng = make_rng(algebra.sampler.seed if seed is None else seed, label)
    n = algebra.sampler.sample_count if budget is None else budget
    return [(algebra.sample(rng), algebra.sample(rng)) for _ in range(n)]


def verify(algebra: PseudoMV, root: SquareRootMap, budget: int | None = None,
           seed: int | None = None) -> SquareRootReport:
    """Check the square law pointwise, maximality on (conditioned) pairs,
    negation compatibility through both defining equations plus the
    residuum cross-check r(x) ⊙ r(x⁻) ≤ r(0), and the standardness law."""
    eq, leq = algebra.eq, algebra.leq
    r0 = root(algebra.zero)
    elems = algebra.probe(budget, seed, "verify-elems")

    square = CheckResult("square")
    for x in elems:
        rx = root(x)
        square.count(eq(algebra.odot(rx, rx), x), (x,))

    maximality = CheckResult("maximality")
    if algebra.enumerable:
        for y in elems:
            yy = algebra.odot(y, y)
            for x in elems:
                if leq(yy, x):
                    maximality.count(leq(y, root(x)), (y, x))
    else:
        rng = make_rng(algebra.sampler.seed if seed is None else seed, "verify-max")
        n = algebra.sampler.sample_count if budget is None else budget
        for _ in range(n):
            y = algebra.sample(rng)
            x = algebra.join(algebra.odot(y, y), algebra.sample(rng))
            maximality.count(leq(y, root(x)), (y, x))

    negation = CheckResult("negation-compat")
    cross = CheckResult("residuum-cross")
    for x in elems:
        rx = root(x)
        left_ok = eq(root(algebra.neg(x)), algebra.arrow(rx, r0))
        right_ok = eq(root(algebra.tilde(x)), algebra.snake(rx, r0))
        negation.count(left_ok and right_ok, (x,))
        # sound direction only: the arrow equation forces the residuum
        # bound (r(x) ⊙ r(x⁻) = r(x) ∧ r(0) ≤ r(0)); the converse rests on
        # the residuation bound, which noncommutative carriers violate
        residuum_ok = leq(algebra.odot(rx, root(algebra.neg(x))), r0)
        cross.count(residuum_ok if left_ok else True, (x,))

    standard = CheckResult("standard")
    for x in elems:
        rx = root(x)
        standard.count(eq(algebra.odot(rx, r0), algebra.odot(r0, rx)), (x,))

    strict = eq(r0, algebra.neg(r0))
    witness = None
    if negation.passed:
        candidate = algebra.odot(algebra.neg(r0), algebra.neg(r0))
        if algebra.is_boolean_element(candidate):
            witness = candidate

    if not (square.passed and maximality.passed):
        classification = "not-a-square-root"
    elif not negation.passed:
        classification = "weak-only"
    elif witness is None:
        classification = "not-a-square-root"
    elif eq(witness, algebra.one):
        classification = "boolean"
    elif eq(witness, algebra.zero):
        classification = "strict"
    else:
        classification = "product"

    return SquareRootReport(
        square=square,
        maximality=maximality,
        negation_compat=negation,
        standard=standard,
        strict=strict,
        r0=r0,
        witness_idempotent=witness,
        classification=classification,
        residuum_cross=cross if square.passed and maximality.passed else None,
    )


def is_strict(algebra: PseudoMV, root: SquareRootMap) -> bool:
    """r(0) = r(0)⁻, cross-checked against r(0) = r(0)∼."""
    r0 = root(algebra.zero)
    primary = algebra.eq(r0, algebra.neg(r0))
    secondary = algebra.eq(r0, algebra.tilde(r0))
    if primary != secondary:
        raise AlgebraError("strictness disagrees between the two negations")
    return primary


def boolean_witness(algebra: PseudoMV, root: SquareRootMap) -> Any:
    """The idempotent u = r(0)⁻ ⊙ r(0)⁻ with u ∨ r(0) = r(0)⁻ = r(0)∼.

    On enumerable carriers u is additionally checked to be the unique
    idempotent with that join property.
    """
    r0 = root(algebra.zero)
    u = algebra.odot(algebra.neg(r0), algebra.neg(r0))
    if not algebra.is_boolean_element(u):
        raise AlgebraError("r(0)⁻ ⊙ r(0)⁻ is not idempotent; the map is not a square root")
    nr0 = algebra.neg(r0)
    if not algebra.eq(algebra.join(u, r0), nr0):
        raise AlgebraError("witness fails the join characterization u ∨ r(0) = r(0)⁻")
    if not algebra.eq(nr0, algebra.tilde(r0)):
        raise AlgebraError("r(0)⁻ and r(0)∼ disagree; the map is not a square root")
    if algebra.enumerable:
        for v in algebra.boolean_skeleton():
            if algebra.eq(algebra.join(v, r0), nr0) and not algebra.eq(v, u):
                raise AlgebraError(f"witness idempotent is not unique: {v!r}")
    return u


# ----------------------------------------------------------------------
# decomposition and the image algebra
# ----------------------------------------------------------------------

@dataclass
class Decomposition:
    classification: str
    witness: Any
    boolean_part: PseudoMV | None = None
    strict_part: PseudoMV | None = None
    iso: Callable[[Any], tuple] | None = None
    checks: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks.values())


def decompose(algebra: PseudoMV, root: SquareRootMap, budget: int | None = None,
              seed: int | None = None) -> Decomposition:
    """Split along the witness idempotent into Boolean × strict parts.

    Trivial witnesses (0 or 1) yield the bare classification.  A proper
    witness u yields the interval factors [0, u] and [0, u⁻] with their
    induced roots, and the map x ↦ (x ∧ u, x ∧ u⁻), which is verified to
    be a homomorphism on enumerated or sampled pairs.
    """
    u = boolean_witness(algebra, root)
    checks: dict[str, CheckResult] = {}
    elems = algebra.probe(budget, seed, "decompose-elems")

    if algebra.eq(u, algebra.one):
        res = CheckResult("all-idempotent")
        r0 = root(algebra.zero)
        res.count(algebra.eq(r0, algebra.zero), (algebra.zero,))
        for x in elems:
            res.count(algebra.is_boolean_element(x), (x,))
        checks["boolean"] = res
        return Decomposition("boolean", u, checks=checks)

    if algebra.eq(u, algebra.zero):
        res = CheckResult("strict")
        res.count(is_strict(algebra, root), (root(algebra.zero),))
        checks["strict"] = res
        return Decomposition("strict", u, checks=checks)

    v = algebra.neg(u)
    part_bool = IntervalPMV(algebra, u)
    part_strict = IntervalPMV(algebra, v)
    root_bool = relative_map(root, u, part_bool)
    root_strict = relative_map(root, v, part_strict)

    bool_check = CheckResult("boolean-part")
    bool_check.count(part_bool.eq(root_bool(part_bool.zero), part_bool.zero),
                     (part_bool.zero,))
    for x in elems:
        xb = part_bool.project(x)
        bool_check.count(part_bool.is_boolean_element(xb), (xb,))
    checks["boolean_part"] = bool_check

    strict_check = CheckResult("strict-part")
    s0 = root_strict(part_strict.zero)
    strict_check.count(part_strict.eq(s0, part_strict.neg(s0)), (s0,))
    for x in elems:
        xs = part_strict.project(x)
        rs = root_strict(xs)
        strict_check.count(part_strict.eq(part_strict.odot(rs, rs), xs), (xs,))
    checks["strict_part"] = strict_check

    def iso(x):
        return (algebra.meet(x, u), algebra.meet(x, v))

    target = ProductPMV(part_bool, part_strict)
    hom = CheckResult("iso-homomorphism")
    pairs = _pair_stream(algebra, budget, seed, "decompose-pairs")
    for x, y in pairs:
        ok = target.eq(iso(algebra.oplus(x, y)), target.oplus(iso(x), iso(y)))
        ok = ok and target.eq(iso(algebra.neg(x)), target.neg(iso(x)))
        ok = ok and target.eq(iso(algebra.tilde(x)), target.tilde(iso(x)))
        if target.eq(iso(x), iso(y)) and not algebra.eq(x, y):
            ok = False
        hom.count(ok, (x, y))
    hom.count(target.eq(iso(algebra.zero), target.zero), (algebra.zero,))
    hom.count(target.eq(iso(algebra.one), target.one), (algebra.one,))
    checks["iso"] = hom

    return Decomposition("product", u, part_bool, part_strict, iso, checks)


class ImagePMV(PseudoMV):
    """The algebra induced on the image interval [r(0), 1]:
    r(x) ⊞ r(y) = r(x ⊕ y), with negations a ↦ a⁻ ⊕ r(0) and a ↦ a∼ ⊕ r(0).

    Since a = r(a ⊙ a) for a ≥ r(0), the sum is computed without inverting
    r explicitly.
    """

    backend = "image-interval"

    def __init__(self, parent: PseudoMV, root: SquareRootMap):
        super().__init__(parent.sampler, parent.tolerance)
        self.parent = parent
        self.root = root
        self._r0 = root(parent.zero)

    @property
    def zero(self):
        return self._r0

    @property
    def one(self):
        return self.parent.one

    def oplus(self, a, b):
        p = self.parent
        return self.root(p.oplus(p.odot(a, a), p.odot(b, b)))

    def neg(self, a):
        return self.parent.oplus(self.parent.neg(a), self._r0)

    def tilde(self, a):
        return self.parent.oplus(self.parent.tilde(a), self._r0)

    def eq(self, a, b):
        return self.parent.eq(a, b)

    def contains(self, a):
        return self.parent.contains(a) and self.parent.leq(self._r0, a)

    def sample(self, rng):
        return self.root(self.parent.sample(rng))

    @property
    def enumerable(self):
        return self.parent.enumerable

    def elements(self):
        return iter([self.root(x) for x in self.parent.elements()])

    @property
    def size(self):
        return self.parent.size

    def format_element(self, a):
        return self.parent.format_element(a)

    def describe(self):
        return {"backend": self.backend,
                "floor": self.parent.format_element(self._r0),
                "parent": self.parent.describe()}


@dataclass
class InducedInterval:
    algebra: ImagePMV
    to_image: SquareRootMap
    checks: dict

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks.values())


def induced_interval_algebra(algebra: PseudoMV, root: SquareRootMap,
                             budget: int | None = None,
                             seed: int | None = None) -> InducedInterval:
    """Build the image algebra on [r(0), 1] and verify that x ↦ r(x) is an
    isomorphism onto it and that every point above r(0) is in the image."""
    image = ImagePMV(algebra, root)
    checks: dict[str, CheckResult] = {}

    iso = CheckResult("image-isomorphism")
    pairs = _pair_stream(algebra, budget, seed, "image-pairs")
    for x, y in pairs:
        fx, fy = root(x), root(y)
        ok = image.eq(root(algebra.oplus(x, y)), image.oplus(fx, fy))
        ok = ok and image.eq(root(algebra.neg(x)), image.neg(fx))
        ok = ok and image.eq(root(algebra.tilde(x)), image.tilde(fx))
        if image.eq(fx, fy) and not algebra.eq(x, y):
            ok = False
        iso.count(ok, (x, y))
    iso.count(image.eq(root(algebra.zero), image.zero), (algebra.zero,))
    iso.count(image.eq(root(algebra.one), image.one), (algebra.one,))
    checks["isomorphism"] = iso

    onto = CheckResult("image-covers-interval")
    r0 = image.zero
    for x in algebra.probe(budget, seed, "image-onto"):
        y = algebra.join(x, r0)
        onto.count(algebra.eq(root(algebra.odot(y, y)), y), (y,))
    checks["onto"] = onto

    axioms = image.check_axioms(budget, seed)
    for name, res in axioms.axioms.items():
        checks[f"axiom-{name}"] = res

    return InducedInterval(image, SquareRootMap(image, "custom-numeric", root), checks)


# ----------------------------------------------------------------------
# iterates, powers, the halving ladder
# ----------------------------------------------------------------------

def iterate(algebra: PseudoMV, root: SquareRootMap, x: Any, m: int) -> Any:
    if m < 0:
        raise ValueError("iterate count must be nonnegative")
    for _ in range(m):
        x = root(x)
    return x


def odot_power(algebra: PseudoMV, x: Any, two_exp: int) -> Any:
    """The 2ⁿ-fold ⊙-power by repeated squaring."""
    for _ in range(two_exp):
        x = algebra.odot(x, x)
    return x


def power_check(algebra: PseudoMV, root: SquareRootMap, x: Any, m: int, n: int) -> bool:
    """(rᵐ(x)) to the ⊙-power 2ⁿ equals r^(m−n)(x)."""
    if n > m:
        raise ValueError("power exponent must not exceed the iterate depth")
    lhs = odot_power(algebra, iterate(algebra, root, x, m), n)
    return algebra.eq(lhs, iterate(algebra, root, x, m - n))


def dyadic_ladder(algebra: GammaPMV, root: SquareRootMap, depth: int) -> list:
    """The elements u/2, u/4, ..., u/2^depth, built as r(u/2ᵏ) − u/2.

    Each rung is verified to be cyclic: its 2ᵏ-fold partial sum is defined
    at every step and lands on 1.  Requires a strict root on a
    group-interval backend; a rung escaping [0, u] raises LadderError.
    """
    if not isinstance(algebra, GammaPMV):
        raise UnsupportedBackend("the halving ladder needs a group-interval backend")
    if not 1 <= depth <= 20:
        raise ValueError("depth must be between 1 and 20")
    r0 = root(algebra.zero)
    if not algebra.eq(r0, algebra.neg(r0)):
        raise LadderError("root is not strict; the ladder needs r(0) = r(0)⁻")
    group = algebra.group
    rungs = [r0]
    for _ in range(depth - 1):
        nxt = group.add(root(rungs[-1]), group.neg(r0))
        if not algebra.contains(nxt):
            raise LadderError("ladder rung left the interval [0, u]")
        rungs.append(nxt)
    for k, a in enumerate(rungs, start=1):
        total = a
        for _ in range((1 << k) - 1):
            total = algebra.partial_add(total, a)
            if total is UNDEFINED:
                raise LadderError(f"partial sum of the 2^{k} rung became undefined")
        if not algebra.eq(total, algebra.one):
            raise LadderError(f"2^{k}-fold sum of rung {k} misses the top")
    return rungs


# ----------------------------------------------------------------------
# identity suites
# ----------------------------------------------------------------------

def variety_identities(algebra: PseudoMV, root: SquareRootMap,
                       budget: int | None = None, seed: int | None = None) -> dict:
    """The three equations axiomatizing square roots as an equational class:
    the square law, the join-absorption form of maximality, and negation
    compatibility.  Weak roots satisfy the first two only."""
    eq = algebra.eq
    r0 = root(algebra.zero)
    out = {
        "square": CheckResult("square"),
        "join_absorption": CheckResult("join_absorption"),
        "negation_compat": CheckResult("negation_compat"),
    }
    for x in algebra.probe(budget, seed, "variety-elems"):
        out["square"].count(eq(algebra.odot(root(x), root(x)), x), (x,))
        rx = root(x)
        ok = (eq(root(algebra.neg(x)), algebra.arrow(rx, r0))
              and eq(root(algebra.tilde(x)), algebra.snake(rx, r0)))
        out["negation_compat"].count(ok, (x,))
    for x, y in _pair_stream(algebra, budget, seed, "variety-pairs"):
        lhs = algebra.meet(root(algebra.join(algebra.odot(y, y), x)), y)
        out["join_absorption"].count(eq(lhs, y), (x, y))
    return out


SKIPPED = "skipped"

PROPERTY_ITEMS: tuple[str, ...] = (
    "bounds_and_commutation",      # 1
    "monotone",                    # 2
    "meet_below_mixed_products",   # 3
    "double_square",               # 4
    "self_negation_meets_below_r0",  # 5
    "idempotent_fixed_points",     # 6
    "preserves_meet",              # 7
    "residuation_bounds",          # 8
    "preserves_join",              # 9
    "product_upper_bound",         # 10
    "boolean_characterization",    # 11
    "domination_forces_order",     # 12
    "relative_roots",              # 13
    "sum_lower_bound",             # 14
    "iterated_powers",             # 15
)

WEAK_SAFE_ITEMS: tuple[str, ...] = PROPERTY_ITEMS[:8] + (
    "half_sum_upper_bound",
    "r0_attains_max_self_meet",
)

GATED_EXTRAS: tuple[str, ...] = (
    "double_oplus_shift",
    "negations_agree_at_r0",
)


def square_root_properties(algebra: PseudoMV, root: SquareRootMap,
                           budget: int | None = None, seed: int | None = None,
                           negation_compat: bool | None = None) -> dict:
    """The universally quantified consequence suite for a (weak) square root.

    Items that require negation compatibility are reported as ``"skipped"``
    when the map is weak-only; the first eight items and the bound extras
    hold for every weak root and are always checked.
    """
    eq, leq = algebra.eq, algebra.leq
    r0 = root(algebra.zero)
    elems = algebra.probe(budget, seed, "props-elems")
    pairs = _pair_stream(algebra, budget, seed, "props-pairs")

    if negation_compat is None:
        negation_compat = all(
            eq(root(algebra.neg(x)), algebra.arrow(root(x), r0))
            and eq(root(algebra.tilde(x)), algebra.snake(root(x), r0))
            for x in elems[: min(len(elems), 64)]
        )

    out: dict[str, Any] = {name: CheckResult(name)
                           for name in PROPERTY_ITEMS + WEAK_SAFE_ITEMS[8:] + GATED_EXTRAS}

    res = out["bounds_and_commutation"]
    res.count(eq(root(algebra.one), algebra.one), (algebra.one,))
    for x in elems:
        rx = root(x)
        ok = leq(x, algebra.join(x, r0)) and leq(algebra.join(x, r0), rx)
        ok = ok and leq(algebra.join(algebra.odot(rx, r0), algebra.odot(r0, rx)), x)
        ok = ok and eq(algebra.odot(rx, x), algebra.odot(x, rx))
        res.count(ok, (x,))

    res = out["monotone"]
    for x, s in pairs:
        y = algebra.join(x, s)
        res.count(leq(root(x), root(y)), (x, y))

    res = out["meet_below_mixed_products"]
    for x, y in pairs:
        m = algebra.meet(x, y)
        res.count(leq(m, algebra.odot(root(x), root(y)))
                  and leq(m, algebra.odot(root(y), root(x))), (x, y))
    if algebra.enumerable:
        for a in algebra.boolean_skeleton():
            if leq(a, r0):
                res.count(eq(a, algebra.zero), (a,))

    res = out["double_square"]
    for x in elems:
        sq = algebra.odot(x, x)
        rsq = root(sq)
        res.count(leq(x, rsq) and eq(algebra.odot(rsq, rsq), sq), (x,))

    res = out["self_negation_meets_below_r0"]
    for x in elems:
        lhs = algebra.join(algebra.meet(x, algebra.neg(x)),
                           algebra.meet(x, algebra.tilde(x)))
        res.count(leq(lhs, r0), (x,))

    res = out["idempotent_fixed_points"]
    for x in elems:
        rx = root(x)
        res.count(algebra.is_boolean_element(rx) == eq(rx, x), (x,))

    res = out["preserves_meet"]
    for x, y in pairs:
        res.count(eq(algebra.meet(root(x), root(y)), root(algebra.meet(x, y))), (x, y))

    res = out["residuation_bounds"]
    for x, y in pairs:
        ok = leq(algebra.arrow(root(x), root(y)), root(algebra.arrow(x, y)))
        ok = ok and leq(algebra.snake(root(x), root(y)), root(algebra.snake(x, y)))
        res.count(ok, (x, y))

    res = out["half_sum_upper_bound"]
    for x in elems:
        bound = algebra.meet(algebra.oplus(x, r0), algebra.oplus(r0, x))
        res.count(leq(root(x), bound), (x,))

    res = out["r0_attains_max_self_meet"]
    res.count(eq(algebra.meet(r0, algebra.neg(r0)), r0), (r0,))
    for x in elems:
        res.count(leq(algebra.meet(x, algebra.neg(x)), r0)
                  and leq(algebra.meet(x, algebra.tilde(x)), r0), (x,))

    if not negation_compat:
        for name in PROPERTY_ITEMS[8:] + GATED_EXTRAS:
            out[name] = SKIPPED
        return out

    res = out["preserves_join"]
    for x, y in pairs:
        res.count(eq(root(algebra.join(x, y)), algebra.join(root(x), root(y))), (x, y))

    res = out["product_upper_bound"]
    for x, y in pairs:
        ok = leq(root(algebra.odot(x, y)),
                 algebra.join(algebra.odot(root(x), root(y)), r0))
        ok = ok and eq(root(algebra.odot(x, x)),
                       algebra.join(algebra.odot(root(x), root(x)), r0))
        above = algebra.join(x, r0)
        ok = ok and eq(root(algebra.odot(above, above)), above)
        res.count(ok, (x, y))

    res = out["boolean_characterization"]
    w_left = algebra.odot(algebra.neg(r0), algebra.neg(r0))
    w_right = algebra.odot(algebra.tilde(r0), algebra.tilde(r0))
    res.count(algebra.is_boolean_element(w_left)
              and algebra.is_boolean_element(w_right)
              and eq(w_left, w_right), (r0,))
    for x in elems:
        rx = root(x)
        idem = algebra.is_boolean_element(x)
        left = eq(rx, algebra.oplus(x, r0))
        right = eq(rx, algebra.oplus(r0, x))
        ok = (idem == left == right) and leq(r0, rx)
        res.count(ok, (x,))

    res = out["domination_forces_order"]
    for x, y in pairs:
        dominated = leq(y, algebra.meet(algebra.odot(root(x), root(y)),
                                        algebra.odot(root(y), root(x))))
        res.count(leq(y, x) if dominated else True, (x, y))

    res = out["relative_roots"]
    if algebra.enumerable:
        idempotents = algebra.boolean_skeleton()
    else:
        idempotents = [algebra.zero, algebra.one]
        if algebra.is_boolean_element(w_left):
            idempotents.append(w_left)
    for a in idempotents:
        sub = IntervalPMV(algebra, a)
        rel = relative_map(root, a, sub)
        sub_elems = (list(sub.elements()) if sub.enumerable
                     else [sub.project(x) for x in elems[: max(1, len(elems) // 4)]])
        rel0 = rel(sub.zero)
        for x in sub_elems:
            rx = rel(x)
            ok = sub.eq(sub.odot(rx, rx), x)
            ok = ok and sub.eq(rel(sub.neg(x)), sub.arrow(rx, rel0))
            ok = ok and sub.eq(rel(sub.tilde(x)), sub.snake(rx, rel0))
            res.count(ok, (a, x))

    res = out["sum_lower_bound"]
    for x, y in pairs:
        lhs = algebra.oplus(algebra.odot(root(x), algebra.neg(r0)), root(y))
        res.count(leq(lhs, root(algebra.oplus(x, y))), (x, y))

    res = out["iterated_powers"]
    for x in elems:
        ok = (power_check(algebra, root, x, 1, 1)
              and power_check(algebra, root, x, 2, 1)
              and power_check(algebra, root, x, 2, 2))
        res.count(ok, (x,))

    res = out["double_oplus_shift"]
    for y in elems:
        ry = root(algebra.oplus(y, y))
        res.count(eq(ry, algebra.oplus(y, r0)) and eq(ry, algebra.oplus(r0, y)), (y,))

    res = out["negations_agree_at_r0"]
    res.count(eq(algebra.neg(r0), algebra.tilde(r0)), (r0,))

    return out

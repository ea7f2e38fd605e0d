"""Ideals, quotients, and atomicity for pseudo MV-algebras.

An ideal is a nonempty downward-closed ⊕-closed subset.  Normality is the
symmetric condition x ⊙ y⁻ ∈ I ⟺ y∼ ⊙ x ∈ I; normal ideals are exactly
the congruence kernels, so they support quotients x/I with the relation
x ≈ y ⟺ x ⊙ y⁻, y ⊙ x⁻ ∈ I.  Primality is checked through
x ⊙ y⁻ ∈ I or y ⊙ x⁻ ∈ I; a Boolean ideal contains every x ∧ x∼.

A square root descends along a normal ideal to the quotient, and a normal
ideal is invariant under the root exactly when it is Boolean.  An algebra
is representable when every polar a⊥ = {x : x ∧ a = 0} is a normal ideal.
Strong atomlessness is probed through the pointwise criterion: every
nonzero x admits 0 < y < x with y ∧ (x ⊙ y⁻) ≠ 0; on group intervals with
a strict root the canonical witness y = r(x⁻)∼ realizes the value x/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .core import AlgebraError, CheckResult, PseudoMV, make_rng
from .finite import FinitePMV, FiniteTable
from .roots import SquareRootMap, table_map, verify

__all__ = [
    "IdealHandle",
    "NotAnIdeal",
    "QuotientResult",
    "classify_ideal",
    "enumerate_ideals",
    "quotient",
    "is_r_invariant",
    "is_representable",
    "atoms",
    "strongly_atomless_witness",
    "strongly_atomless_scan",
    "IDEAL_CEILING",
]

IDEAL_CEILING = 12


class NotAnIdeal(AlgebraError):
    """The subset violates an ideal axiom; carries the failing pair."""

    def __init__(self, reason: str, witness: Any = None):
        self.witness = witness
        super().__init__(reason)


@dataclass(frozen=True)
class IdealHandle:
    """A verified ideal with recomputed flags (never trusted from input)."""

    algebra: FinitePMV
    members: frozenset
    is_normal: bool
    is_prime: bool
    is_boolean_ideal: bool
    is_proper: bool

    def __contains__(self, x) -> bool:
        return x in self.members

    def sorted_members(self) -> list:
        return sorted(self.members)


def classify_ideal(algebra: FinitePMV, subset) -> IdealHandle:
    """Verify the ideal axioms and compute the normal / prime / Boolean
    flags for a subset of a finite carrier."""
    members = frozenset(subset)
    if not members:
        raise NotAnIdeal("an ideal is nonempty")
    for s in members:
        if not algebra.contains(s):
            raise NotAnIdeal(f"{s!r} is not a carrier element", s)
    elems = list(algebra.elements())
    for s in members:
        for y in elems:
            if algebra.leq(y, s) and y not in members:
                raise NotAnIdeal("not downward closed", (y, s))
    for a in members:
        for b in members:
            if algebra.oplus(a, b) not in members:
                raise NotAnIdeal("not closed under ⊕", (a, b))

    normal = all(
        (algebra.odot(x, algebra.neg(y)) in members)
        == (algebra.odot(algebra.tilde(y), x) in members)
        for x in elems for y in elems
    )
    prime = all(
        algebra.odot(x, algebra.neg(y)) in members
        or algebra.odot(y, algebra.neg(x)) in members
        for x in elems for y in elems
    )
    boolean_ideal = all(
        algebra.meet(x, algebra.tilde(x)) in members for x in elems
    )
    return IdealHandle(
        algebra=algebra,
        members=members,
        is_normal=normal,
        is_prime=prime,
        is_boolean_ideal=boolean_ideal,
        is_proper=len(members) < algebra.size,
    )


def enumerate_ideals(algebra: FinitePMV) -> list[IdealHandle]:
    """All ideals of a small finite algebra by masked subset scan with
    downset pruning."""
    n = algebra.size
    if n > IDEAL_CEILING:
        raise ValueError(f"ideal enumeration ceiling is {IDEAL_CEILING} elements")
    elems = list(algebra.elements())
    down = [0] * n
    for x in elems:
        for y in elems:
            if algebra.leq(y, x):
                down[x] |= 1 << y
    op = algebra.table.oplus
    out = []
    zero_bit = 1 << algebra.zero
    for mask in range(1, 1 << n):
        if not mask & zero_bit:
            continue
        ok = True
        bits = [x for x in elems if mask >> x & 1]
        for x in bits:
            if mask & down[x] != down[x]:
                ok = False
                break
        if not ok:
            continue
        for a in bits:
            row = op[a]
            for b in bits:
                if not mask >> row[b] & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(classify_ideal(algebra, bits))
    return out


@dataclass
class QuotientResult:
    algebra: FinitePMV
    projection: tuple[int, ...]
    root: SquareRootMap | None
    checks: dict = field(default_factory=dict)

    def project(self, x: int) -> int:
        return self.projection[x]


def quotient(algebra: FinitePMV, ideal: IdealHandle,
             root: SquareRootMap | None = None) -> QuotientResult:
    """The quotient by a normal ideal, with the induced root when one is
    supplied.

    The induced root r(x)/I is checked to be well defined (equivalent
    inputs give equivalent outputs) and re-verified on the quotient.
    """
    if not ideal.is_normal:
        raise AlgebraError("quotients need a normal ideal")
    elems = list(algebra.elements())

    def equivalent(x, y):
        return (algebra.odot(x, algebra.neg(y)) in ideal.members
                and algebra.odot(y, algebra.neg(x)) in ideal.members)

    reps: list[int] = []
    proj: list[int] = []
    for x in elems:
        for ci, rep in enumerate(reps):
            if equivalent(x, rep):
                proj.append(ci)
                break
        else:
            proj.append(len(reps))
            reps.append(x)

    m = len(reps)
    table = FiniteTable(
        n=m,
        oplus=tuple(tuple(proj[algebra.oplus(a, b)] for b in reps) for a in reps),
        neg=tuple(proj[algebra.neg(a)] for a in reps),
        tilde=tuple(proj[algebra.tilde(a)] for a in reps),
        zero=proj[algebra.zero],
        one=proj[algebra.one],
    )
    labels = tuple(tuple(sorted(x for x in elems if proj[x] == ci)) for ci in range(m))
    quot = FinitePMV(table, labels=labels, sampler=algebra.sampler,
                     name=f"{algebra.name}/I").validated()

    checks: dict[str, CheckResult] = {}
    induced = None
    if root is not None:
        compat = CheckResult("root-respects-congruence")
        for x in elems:
            for y in elems:
                if equivalent(x, y):
                    compat.count(equivalent(root(x), root(y)), (x, y))
        checks["congruence"] = compat
        induced = table_map(quot, {proj[x]: proj[root(x)] for x in elems})
        report = verify(quot, induced)
        checks["square"] = report.square
        checks["maximality"] = report.maximality
        checks["negation_compat"] = report.negation_compat
    return QuotientResult(quot, tuple(proj), induced, checks)


def is_r_invariant(algebra: FinitePMV, ideal: IdealHandle, root: SquareRootMap) -> bool:
    """Whether r maps the ideal into itself.

    For normal ideals this must agree with the Boolean-ideal flag; a
    disagreement marks the map as not a square root (or a table bug) and
    raises.
    """
    invariant = all(root(x) in ideal.members for x in ideal.members)
    if ideal.is_normal and invariant != ideal.is_boolean_ideal:
        raise AlgebraError(
            "invariance under the root disagrees with the Boolean-ideal flag")
    return invariant


def is_representable(algebra: FinitePMV) -> bool:
    """Every polar a⊥ = {x : x ∧ a = 0} must be a normal ideal."""
    elems = list(algebra.elements())
    zero = algebra.zero
    for a in elems:
        polar = [x for x in elems if algebra.eq(algebra.meet(x, a), zero)]
        try:
            handle = classify_ideal(algebra, polar)
        except NotAnIdeal:
            return False
        if not handle.is_normal:
            return False
    return True


def atoms(algebra: FinitePMV) -> list:
    """Elements covering 0."""
    elems = list(algebra.elements())
    zero = algebra.zero
    out = []
    for x in elems:
        if algebra.eq(x, zero):
            continue
        if not any(algebra.lt(zero, y) and algebra.lt(y, x) for y in elems):
            out.append(x)
    return out


def strongly_atomless_witness(algebra: PseudoMV, x: Any,
                              budget: int | None = None,
                              root: SquareRootMap | None = None,
                              seed: int | None = None) -> tuple | None:
    """Find y with 0 < y < x and y ∧ (x ⊙ y⁻) ≠ 0, or None.

    Enumerable carriers are searched exhaustively.  Otherwise the
    canonical candidate y = r(x⁻)∼ from a strict root is tried first
    (its value is x/2), then seeded samples meet-projected below x.
    """
    if algebra.eq(x, algebra.zero):
        raise ValueError("the witness search needs a nonzero element")
    zero = algebra.zero

    def value_at(y):
        return algebra.meet(y, algebra.odot(x, algebra.neg(y)))

    def good(y):
        return (algebra.lt(zero, y) and algebra.lt(y, x)
                and not algebra.eq(value_at(y), zero))

    if algebra.enumerable:
        for y in algebra.elements():
            if good(y):
                return y, value_at(y)
        return None

    if root is not None:
        y = algebra.tilde(root(algebra.neg(x)))
        if good(y):
            return y, value_at(y)
    rng = make_rng(algebra.sampler.seed if seed is None else seed, "atomless", )
    n = algebra.sampler.sample_count if budget is None else budget
    for _ in range(n):
        y = algebra.meet(algebra.sample(rng), x)
        if good(y):
            return y, value_at(y)
    return None


def strongly_atomless_scan(algebra: PseudoMV, budget: int | None = None,
                           root: SquareRootMap | None = None,
                           seed: int | None = None) -> dict:
    """Summarize witness existence over the probed nonzero elements.

    The pointwise criterion characterizes strong atomlessness only on
    representable algebras; finite non-representable carriers report
    ``criterion-inapplicable`` instead of guessing.
    """
    if isinstance(algebra, FinitePMV) and not is_representable(algebra):
        return {"status": "criterion-inapplicable"}
    probed = 0
    missing = []
    for x in algebra.probe(budget, seed, "atomless-scan"):
        if algebra.eq(x, algebra.zero):
            continue
        probed += 1
        if strongly_atomless_witness(algebra, x, budget=64, root=root, seed=seed) is None:
            if len(missing) < CheckResult.MAX_WITNESSES:
                missing.append(x)
    status = "witnessed" if not missing else "counterexample"
    return {"status": status, "probed": probed, "missing": missing}

"""Table-backed finite pseudo MV-algebras.

Construction and validation of Cayley-style tables, the structured
catalogue (chains Γ(ℤ,n), Boolean algebras 2ᵏ, direct products, intervals
[0, a] below an idempotent), brute-force search for weak square roots, and
small-scale isomorphism checks.

The finite search deliberately ranges over the catalogue closure, not over
all magmas of a given size: raw table enumeration explodes and adds
nothing here, since every finite algebra of interest is a product of
chains up to isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterator

import numpy as np

from .core import (
    AlgebraError,
    BackendMismatch,
    AxiomReport,
    CheckResult,
    IntervalPMV,
    ProductPMV,
    PseudoMV,
    SamplerConfig,
)

__all__ = [
    "FiniteTable",
    "FinitePMV",
    "CatalogueSpec",
    "AxiomValidationError",
    "WeakSqrtSearch",
    "SearchRow",
    "tabulate",
    "build_catalogue",
    "chain",
    "boolean",
    "product",
    "interval",
    "brute_force_weak_sqrt",
    "check_negation_compat",
    "maximum_of",
    "search_square_rootable",
    "catalogue_closure",
    "find_isomorphism",
    "SEARCH_CEILING",
    "ISO_CEILING",
]

SEARCH_CEILING = 6
ISO_CEILING = 12


class AxiomValidationError(AlgebraError):
    """A finite table failed the exhaustive axiom check."""

    def __init__(self, report: AxiomReport):
        self.report = report
        super().__init__(f"axioms failed: {', '.join(report.failing)}")


@dataclass(frozen=True)
class FiniteTable:
    """Raw operation tables over the carrier {0, ..., n-1}."""

    n: int
    oplus: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    tilde: tuple[int, ...]
    zero: int
    one: int

    def __post_init__(self):
        n = self.n
        ok = (
            len(self.oplus) == n
            and all(len(row) == n for row in self.oplus)
            and len(self.neg) == n
            and len(self.tilde) == n
            and 0 <= self.zero < n
            and 0 <= self.one < n
        )
        if not ok:
            raise AlgebraError("table shapes inconsistent with carrier size")
        flat = [v for row in self.oplus for v in row]
        flat += list(self.neg) + list(self.tilde)
        if any(not (0 <= v < n) for v in flat):
            raise AlgebraError("table entry out of carrier range")


class FinitePMV(PseudoMV):
    """A finite algebra backed by a :class:`FiniteTable`.

    ``labels`` optionally names the carrier points (chain values, bitmasks,
    pairs); they are carried through products and intervals for reporting.
    """

    backend = "finite-table"

    def __init__(self, table: FiniteTable, labels: tuple | None = None,
                 sampler: SamplerConfig | None = None, name: str | None = None):
        super().__init__(sampler)
        self.table = table
        self.labels = tuple(labels) if labels is not None else tuple(range(table.n))
        if len(self.labels) != table.n:
            raise AlgebraError("label count must match carrier size")
        self.name = name or f"finite({table.n})"
        self._op = table.oplus
        self._neg = table.neg
        self._til = table.tilde

    # -- primitives ----------------------------------------------------

    @property
    def zero(self):
        return self.table.zero

    @property
    def one(self):
        return self.table.one

    def _idx(self, x):
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self.table.n:
            raise BackendMismatch(f"{x!r} is not an index into a {self.table.n}-element table")
        return x

    def oplus(self, x, y):
        return self._op[self._idx(x)][self._idx(y)]

    def neg(self, x):
        return self._neg[self._idx(x)]

    def tilde(self, x):
        return self._til[self._idx(x)]

    def eq(self, x, y):
        return self._idx(x) == self._idx(y)

    def contains(self, x):
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < self.table.n

    def sample(self, rng):
        return rng.randrange(self.table.n)

    @property
    def enumerable(self):
        return True

    def elements(self) -> Iterator[int]:
        return iter(range(self.table.n))

    @property
    def size(self):
        return self.table.n

    def label(self, x):
        return self.labels[self._idx(x)]

    def format_element(self, x):
        return str(self.label(x))

    def describe(self):
        return {"backend": self.backend, "size": self.size, "name": self.name}

    # -- fast exhaustive axiom check ------------------------------------

    def check_axioms(self, budget=None, seed=None) -> AxiomReport:
        """Exhaustive A1–A8 via vectorized table algebra.

        Same formulas as the generic path, evaluated on index grids; the
        pure-Python path stays available through the base class and is
        cross-checked against this one in the test suite.
        """
        n = self.table.n
        op = np.array(self._op, dtype=np.intp)
        ng = np.array(self._neg, dtype=np.intp)
        tl = np.array(self._til, dtype=np.intp)
        zero, one = self.table.zero, self.table.one
        res = {name: CheckResult(name) for name in
               ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8")}

        def record(name, ok_mask, witness_of):
            r = res[name]
            r.checked += ok_mask.size
            if not bool(ok_mask.all()):
                r.passed = False
                bad = np.argwhere(~ok_mask)
                for idx in bad[: CheckResult.MAX_WITNESSES]:
                    r.witnesses.append(witness_of(tuple(int(v) for v in idx)))

        res["A4"].count(ng[one] == zero and tl[one] == zero, (one,))

        xs = np.arange(n)
        record("A2", (op[xs, zero] == xs) & (op[zero, xs] == xs), lambda i: (i[0],))
        record("A3", (op[xs, one] == one) & (op[one, xs] == one), lambda i: (i[0],))
        record("A8", tl[ng[xs]] == xs, lambda i: (i[0],))

        X, Y = np.meshgrid(xs, xs, indexing="ij")
        odot = tl[op[ng[Y], ng[X]]]          # x ⊙ y = (y⁻ ⊕ x⁻)∼
        record("A5", tl[op[ng[X], ng[Y]]] == ng[op[tl[X], tl[Y]]], lambda i: i)
        e1 = op[X, odot[tl[X], Y]]
        e2 = op[Y, odot[tl[Y], X]]
        e3 = op[odot[X, ng[Y]], Y]
        e4 = op[odot[Y, ng[X]], X]
        record("A6", (e1 == e2) & (e2 == e3) & (e3 == e4), lambda i: i)
        record("A7", odot[X, op[ng[X], Y]] == odot[op[X, tl[Y]], Y], lambda i: i)

        X3, Y3, Z3 = np.meshgrid(xs, xs, xs, indexing="ij")
        record("A1", op[op[X3, Y3], Z3] == op[X3, op[Y3, Z3]], lambda i: i)
        return AxiomReport(res, exhaustive=True)

    def validated(self) -> "FinitePMV":
        report = self.check_axioms()
        if not report.all_pass:
            raise AxiomValidationError(report)
        return self


def tabulate(algebra: PseudoMV, name: str | None = None) -> FinitePMV:
    """Materialize any enumerable algebra as an index table, keeping the
    original elements as labels."""
    elems = list(algebra.elements())
    index: dict[Any, int] = {}
    for i, e in enumerate(elems):
        index[e] = i

    def find(v) -> int:
        try:
            return index[v]
        except (KeyError, TypeError):
            pass
        for e, i in index.items():
            if algebra.eq(e, v):
                return i
        raise AlgebraError(f"operation escaped the carrier at {v!r}")
    table = FiniteTable(
        n=len(elems),
        oplus=tuple(tuple(find(algebra.oplus(a, b)) for b in elems) for a in elems),
        neg=tuple(find(algebra.neg(a)) for a in elems),
        tilde=tuple(find(algebra.tilde(a)) for a in elems),
        zero=find(algebra.zero),
        one=find(algebra.one),
    )
    labels = tuple(algebra.format_element(e) if not isinstance(e, (int, tuple)) else e
                   for e in elems)
    return FinitePMV(table, labels=labels, sampler=algebra.sampler, name=name)


# ----------------------------------------------------------------------
# catalogue
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogueSpec:
    """Constructor description: chain(n), boolean(k), product(a, b),
    interval(a, idempotent-index)."""

    kind: str
    params: tuple

    def label(self) -> str:
        if self.kind in ("chain", "boolean"):
            return f"{self.kind}({self.params[0]})"
        if self.kind == "product":
            return f"product({self.params[0].label()},{self.params[1].label()})"
        if self.kind == "interval":
            return f"interval({self.params[0].label()},{self.params[1]})"
        return f"{self.kind}{self.params!r}"


def chain(n: int) -> FinitePMV:
    """The n+1 element chain {0, 1, ..., n} with x ⊕ y = (x+y) ∧ n."""
    if n < 0:
        raise ValueError("chain parameter must be nonnegative")
    size = n + 1
    table = FiniteTable(
        n=size,
        oplus=tuple(tuple(min(i + j, n) for j in range(size)) for i in range(size)),
        neg=tuple(n - i for i in range(size)),
        tilde=tuple(n - i for i in range(size)),
        zero=0,
        one=n,
    )
    return FinitePMV(table, name=f"chain({n})").validated()


def boolean(k: int) -> FinitePMV:
    """The Boolean algebra 2ᵏ on bitmask carriers, x ⊕ y = x | y."""
    if k < 0:
        raise ValueError("boolean parameter must be nonnegative")
    size = 1 << k
    full = size - 1
    table = FiniteTable(
        n=size,
        oplus=tuple(tuple(i | j for j in range(size)) for i in range(size)),
        neg=tuple(full ^ i for i in range(size)),
        tilde=tuple(full ^ i for i in range(size)),
        zero=0,
        one=full,
    )
    return FinitePMV(table, name=f"boolean({k})").validated()


def product(a: FinitePMV, b: FinitePMV) -> FinitePMV:
    """Direct product, materialized as a table with pair labels."""
    prod = ProductPMV(a, b)
    out = tabulate(prod, name=f"product({a.name},{b.name})")
    out = FinitePMV(out.table,
                    labels=tuple((a.label(i), b.label(j))
                                 for i in range(a.size) for j in range(b.size)),
                    sampler=out.sampler, name=out.name)
    return out.validated()


def interval(a: FinitePMV, top: int) -> FinitePMV:
    """The algebra on [0, top] for an idempotent top, with relativized
    negations x⁻ ∧ top and x∼ ∧ top."""
    sub = IntervalPMV(a, top)
    carrier = list(sub.elements())
    out = tabulate(sub, name=f"interval({a.name},{a.format_element(top)})")
    out = FinitePMV(out.table, labels=tuple(a.label(x) for x in carrier),
                    sampler=out.sampler, name=out.name)
    return out.validated()


def build_catalogue(spec: CatalogueSpec) -> FinitePMV:
    if spec.kind == "chain":
        return chain(int(spec.params[0]))
    if spec.kind == "boolean":
        return boolean(int(spec.params[0]))
    if spec.kind == "product":
        return product(build_catalogue(spec.params[0]), build_catalogue(spec.params[1]))
    if spec.kind == "interval":
        return interval(build_catalogue(spec.params[0]), int(spec.params[1]))
    raise ValueError(f"unknown catalogue kind {spec.kind!r}")


# ----------------------------------------------------------------------
# weak square roots by brute force
# ----------------------------------------------------------------------

def maximum_of(algebra: PseudoMV, subset: list) -> Any | None:
    """The greatest element of ``subset`` in the algebra order, or None.

    A subset of a poset may have maximal elements without a maximum, so
    existence is checked explicitly.
    """
    for cand in subset:
        if all(algebra.leq(z, cand) for z in subset):
            return cand
    return None


@dataclass
class WeakSqrtSearch:
    """Outcome of the exhaustive search for a weak square root.

    ``verdict`` is "found", "no-maximum" (some x has square-below set with
    no greatest element) or "square-mismatch" (the candidate maximum m has
    m ⊙ m ≠ x).  The two failure modes are deliberately distinct.
    """

    verdict: str
    mapping: dict | None = None
    failing: Any = None

    @property
    def found(self) -> bool:
        return self.verdict == "found"


def brute_force_weak_sqrt(algebra: FinitePMV) -> WeakSqrtSearch:
    """For each x collect S(x) = {z : z ⊙ z ≤ x}; a weak square root must
    send x to the maximum of S(x) and square back to x."""
    elems = list(algebra.elements())
    mapping: dict = {}
    for x in elems:
        below = [z for z in elems if algebra.leq(algebra.odot(z, z), x)]
        m = maximum_of(algebra, below)
        if m is None:
            return WeakSqrtSearch("no-maximum", failing=x)
        if not algebra.eq(algebra.odot(m, m), x):
            return WeakSqrtSearch("square-mismatch", failing=x)
        mapping[x] = m
    return WeakSqrtSearch("found", mapping=mapping)


def check_negation_compat(algebra: FinitePMV, mapping: dict) -> CheckResult:
    """Exhaustively check r(x⁻) = r(x) → r(0) and r(x∼) = r(x) ⇝ r(0)."""
    res = CheckResult("negation-compat")
    r0 = mapping[algebra.zero]
    for x in algebra.elements():
        ok = (algebra.eq(mapping[algebra.neg(x)], algebra.arrow(mapping[x], r0))
              and algebra.eq(mapping[algebra.tilde(x)], algebra.snake(mapping[x], r0)))
        res.count(ok, (x,))
    return res


# ----------------------------------------------------------------------
# catalogue search
# ----------------------------------------------------------------------

@dataclass
class SearchRow:
    name: str
    size: int
    has_weak_sqrt: bool
    is_boolean_algebra: bool
    detail: str

    @property
    def consistent(self) -> bool:
        return self.has_weak_sqrt == self.is_boolean_algebra


def catalogue_closure(max_size: int) -> list[FinitePMV]:
    """Chains and Boolean algebras up to ``max_size`` elements, their
    pairwise products, and the nontrivial intervals of everything built."""
    base: list[FinitePMV] = []
    m = 1
    while m + 1 <= max_size:
        base.append(chain(m))
        m += 1
    k = 1
    while (1 << k) <= max_size:
        base.append(boolean(k))
        k += 1
    out = list(base)
    for a, b in itertools.product(base, base):
        if a.size * b.size <= max_size:
            out.append(product(a, b))
    for a in list(out):
        for e in a.boolean_skeleton():
            if e in (a.zero, a.one):
                continue
            out.append(interval(a, e))
    return out


def search_square_rootable(max_size: int = SEARCH_CEILING) -> list[SearchRow]:
    """Report, per catalogue algebra, whether a weak square root exists and
    whether the algebra is Boolean; the two verdicts must coincide."""
    if max_size > SEARCH_CEILING:
        raise ValueError(f"search ceiling is {SEARCH_CEILING} elements")
    rows = []
    for algebra in catalogue_closure(max_size):
        search = brute_force_weak_sqrt(algebra)
        is_bool = all(algebra.is_boolean_element(x) for x in algebra.elements())
        if search.found:
            detail = "weak square root found"
        else:
            detail = f"{search.verdict} at x={algebra.format_element(search.failing)}"
        rows.append(SearchRow(algebra.name, algebra.size, search.found, is_bool, detail))
    return rows


# ----------------------------------------------------------------------
# isomorphism search
# ----------------------------------------------------------------------

def _signature(algebra: FinitePMV, x: int, down_counts: list[int]) -> tuple:
    return (
        down_counts[x],
        algebra.is_boolean_element(x),
        down_counts[algebra.neg(x)],
        down_counts[algebra.tilde(x)],
        x == algebra.zero,
        x == algebra.one,
    )


def find_isomorphism(a: FinitePMV, b: FinitePMV) -> dict | None:
    """Backtracking search for a bijection preserving ⊕, ⁻, ∼, 0, 1.

    Prunes on cardinality, idempotent counts, and per-element order
    profiles, which keeps carriers of up to a dozen elements instant.
    """
    if a.size != b.size:
        return None
    if a.size > ISO_CEILING:
        raise ValueError(f"isomorphism ceiling is {ISO_CEILING} elements")
    ea, eb = list(a.elements()), list(b.elements())
    down_a = [sum(a.leq(y, x) for y in ea) for x in ea]
    down_b = [sum(b.leq(y, x) for y in eb) for x in eb]
    sig_a = {x: _signature(a, x, down_a) for x in ea}
    sig_b = {x: _signature(b, x, down_b) for x in eb}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return None

    candidates = {x: [y for y in eb if sig_b[y] == sig_a[x]] for x in ea}
    order = sorted(ea, key=lambda x: len(candidates[x]))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def compatible(x: int, y: int) -> bool:
        if mapping.get(a.neg(x), b.neg(y)) != b.neg(y):
            return False
        if mapping.get(a.tilde(x), b.tilde(y)) != b.tilde(y):
            return False
        for p, q in mapping.items():
            s = a.oplus(x, p)
            if s in mapping and mapping[s] != b.oplus(y, q):
                return False
            s = a.oplus(p, x)
            if s in mapping and mapping[s] != b.oplus(q, y):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return all(
                mapping[a.oplus(x, y)] == b.oplus(mapping[x], mapping[y])
                for x in ea for y in ea
            ) and all(
                mapping[a.neg(x)] == b.neg(mapping[x])
                and mapping[a.tilde(x)] == b.tilde(mapping[x])
                for x in ea
            ) and mapping[a.zero] == b.zero and mapping[a.one] == b.one
        x = order[i]
        for y in candidates[x]:
            if y in used:
                continue
            if not compatible(x, y):
                continue
            mapping[x] = y
            used.add(y)
            if extend(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    if (a.zero != a.one) != (b.zero != b.one):
        return None
    return dict(mapping) if extend(0) else None

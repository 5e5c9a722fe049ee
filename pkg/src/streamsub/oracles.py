"""Exact set-function oracles, residual views, and access-policy control.

Ground sets are ``{0, ..., n-1}``; subsets may be passed as any iterable
of element ids and are normalized to frozensets. All function values are
exact integers (arbitrary precision), so every threshold comparison and
every table entry in the library is bit-exact.

Three query policies are supported:

* strong   -- any subset may be queried;
* weak     -- only sets that are feasible for a given matroid;
* element-store -- only subsets of the currently stored elements plus
  the element arriving in the present stream step.

Queries are funneled through a :class:`QueryGate`, which enforces the
policy and keeps an :class:`OracleAudit` of query counts, peak storage
and refused queries. A refused query never reveals the value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import GroundSetTooLarge, PolicyViolation


class SetFunction:
    """Deterministic exact-valued function on subsets of {0..n-1}."""

    def __init__(self, n: int, fn: Callable[[frozenset], int], name: str = ""):
        self.n = n
        self._fn = fn
        self.name = name

    def value(self, subset) -> int:
        return self._fn(frozenset(subset))

    def __repr__(self):
        return f"SetFunction(n={self.n}, name={self.name!r})"


def additive(weights) -> SetFunction:
    """Modular function from per-element weights (dict or sequence)."""
    if isinstance(weights, dict):
        w = dict(weights)
        n = max(w, default=-1) + 1
    else:
        w = {i: v for i, v in enumerate(weights)}
        n = len(w)
    return SetFunction(n, lambda s: sum(w.get(e, 0) for e in s), name="additive")


class Residual(SetFunction):
    """View of ``base`` conditioned on a pinned set ``S``.

    ``value(T) = base(T | S) - base(S)`` exactly. The pinned set is
    stored by value and ``base(S)`` is evaluated once at construction.
    A residual of a residual flattens, so nesting behaves like a single
    restriction by the union of the pinned sets.
    """

    def __init__(self, base, pinned, _pinned_value=None):
        pinned = frozenset(pinned)
        if isinstance(base, Residual):
            inner = base.inner
            pinned = pinned | base.pinned
        else:
            inner = base
        self.inner = inner
        self.pinned = pinned
        self.pinned_value = inner.value(pinned) if _pinned_value is None else _pinned_value
        super().__init__(inner.n, self._eval, name=f"residual({getattr(inner, 'name', '')})")

    def _eval(self, subset: frozenset) -> int:
        return self.inner.value(subset | self.pinned) - self.pinned_value


def restrict(fn, pinned) -> Residual:
    """Pin ``pinned`` and return the conditioned function."""
    return Residual(fn, pinned)


def marginal(fn, gain_set, context) -> int:
    """Value added by ``gain_set`` on top of ``context``."""
    context = frozenset(context)
    return fn.value(frozenset(gain_set) | context) - fn.value(context)


# ---------------------------------------------------------------------------
# access policies and auditing


class AccessPolicy:
    """Base policy: every query is allowed."""

    mode = "strong"

    def check(self, subset: frozenset) -> Optional[str]:
        """Return None when the query is allowed, else a refusal reason."""
        return None


class StrongPolicy(AccessPolicy):
    pass


class WeakPolicy(AccessPolicy):
    """Allows value queries on feasible (independent) sets only."""

    mode = "weak"

    def __init__(self, matroid):
        self.matroid = matroid

    def check(self, subset):
        if self.matroid.is_independent(subset):
            return None
        return "infeasible set under weak oracle"


class ElementStorePolicy(AccessPolicy):
    """Allows queries only on subsets of stored elements plus the arrival.

    The running algorithm (or the harness driving it) must call
    :meth:`begin_step` when an element arrives and :meth:`commit` with its
    retained element set once the step is processed. ``record_history``
    keeps per-step snapshots so a run can be replayed and re-audited.
    """

    mode = "element-store"

    def __init__(self, record_history: bool = False):
        self.stored: frozenset = frozenset()
        self.arrival: Optional[int] = None
        self.record_history = record_history
        self.history: list[frozenset] = []

    def begin_step(self, element: int):
        self.arrival = element

    def commit(self, stored):
        self.stored = frozenset(stored)
        if self.record_history:
            self.history.append(self.stored)

    def check(self, subset):
        window = self.stored
        if self.arrival is not None:
            window = window | {self.arrival}
        if subset <= window:
            return None
        return "query outside stored set plus current arrival"


@dataclass
class OracleAudit:
    """Per-run accounting: query count, peak storage, refused queries.

    ``max_stored`` is the peak of whatever storage figure the runner
    reports via :meth:`observe_stored` (for branch trees this is the
    element count summed over live branch state). ``rejected`` holds
    ``(subset, reason)`` pairs; an empty list means the run complied with
    its declared policy.
    """

    query_count: int = 0
    max_stored: int = 0
    rejected: list = field(default_factory=list)
    record_log: bool = False
    log: list = field(default_factory=list)
    step: int = -1

    def observe_stored(self, count: int):
        if count > self.max_stored:
            self.max_stored = count

    @property
    def compliant(self) -> bool:
        return not self.rejected


class QueryGate:
    """Front door for every value query of one run."""

    def __init__(self, fn, policy: AccessPolicy | None = None, audit: OracleAudit | None = None):
        self.fn = fn
        self.policy = policy if policy is not None else StrongPolicy()
        self.audit = audit if audit is not None else OracleAudit()

    @property
    def n(self) -> int:
        return self.fn.n

    def value(self, subset) -> Optional[int]:
        """Gated query. Returns None (and records the refusal) when the
        policy rejects; the function value is never revealed in that case."""
        subset = frozenset(subset)
        reason = self.policy.check(subset)
        if reason is not None:
            self.audit.rejected.append((subset, reason))
            return None
        self.audit.query_count += 1
        if self.audit.record_log:
            self.audit.log.append((self.audit.step, subset))
        return self.fn.value(subset)

    def require(self, subset) -> int:
        """Gated query that raises on refusal. Used by algorithms that
        pre-check feasibility and treat a refusal as a programming error."""
        result = self.value(subset)
        if result is None:
            subset = frozenset(subset)
            raise PolicyViolation(subset, self.audit.rejected[-1][1])
        return result


def evaluate(fn, policy, subset, audit: OracleAudit) -> Optional[int]:
    """One policy-gated evaluation against an explicit audit."""
    return QueryGate(fn, policy, audit).value(subset)


# ---------------------------------------------------------------------------
# exhaustive structure verification


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    kind: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return f"{self.kind} violated at {self.witness}"


def _mask_set(mask: int) -> frozenset:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return frozenset(out)


def verify_monotone_submodular(fn, limit: int = 14) -> CheckReport:
    """Exhaustively check monotonicity and diminishing returns.

    Verifies f(S+e) >= f(S) for every S, e and
    f(S+e) - f(S) >= f(T+e) - f(T) for every S <= T, e outside T.
    Returns the first violating witness found. Cost is O(n * 3^n), so the
    ground set is capped (default 14).
    """
    n = fn.n
    if n > limit:
        raise GroundSetTooLarge(f"n={n} exceeds exhaustive limit {limit}")
    size = 1 << n
    vals = [fn.value(_mask_set(mask)) for mask in range(size)]
    for mask in range(size):
        for e in range(n):
            bit = 1 << e
            if mask & bit:
                continue
            if vals[mask | bit] < vals[mask]:
                return CheckReport(False, "monotonicity",
                                   (_mask_set(mask), e, vals[mask], vals[mask | bit]))
    for tmask in range(size):
        for e in range(n):
            bit = 1 << e
            if tmask & bit:
                continue
            marg_t = vals[tmask | bit] - vals[tmask]
            smask = tmask
            while True:
                if vals[smask | bit] - vals[smask] < marg_t:
                    return CheckReport(False, "submodularity",
                                       (_mask_set(smask), _mask_set(tmask), e))
                if smask == 0:
                    break
                smask = (smask - 1) & tmask
    return CheckReport(True)


def verify_by_pairs(fn, limit: int = 14) -> CheckReport:
    """Independent checker via the local exchange form of diminishing
    returns: f(S+e) - f(S) >= f(S+e'+e) - f(S+e') for all S and e != e'
    outside S, plus pointwise monotonicity. Equivalent verdict to
    :func:`verify_monotone_submodular`, different enumeration."""
    n = fn.n
    if n > limit:
        raise GroundSetTooLarge(f"n={n} exceeds exhaustive limit {limit}")
    size = 1 << n
    vals = [fn.value(_mask_set(mask)) for mask in range(size)]
    for mask in range(size):
        for e in range(n):
            bit = 1 << e
            if mask & bit:
                continue
            if vals[mask | bit] < vals[mask]:
                return CheckReport(False, "monotonicity", (_mask_set(mask), e))
            for e2 in range(n):
                bit2 = 1 << e2
                if e2 == e or mask & bit2:
                    continue
                lhs = vals[mask | bit] - vals[mask]
                rhs = vals[mask | bit2 | bit] - vals[mask | bit2]
                if lhs < rhs:
                    return CheckReport(False, "submodularity",
                                       (_mask_set(mask), e2, e))
    return CheckReport(True)

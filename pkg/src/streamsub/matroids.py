"""Matroid independence oracles: uniform, partition, and explicit families.

Algorithms in this package only ever ask "is this set independent", so a
matroid is anything with ``n`` and ``is_independent``. Explicit matroids
(given by their full independent family) exist for testing and for
cross-checking the structured kinds by enumeration.
"""

from __future__ import annotations

from collections import Counter

from .errors import GroundSetTooLarge, InvalidParams, NotIndependent
from .oracles import CheckReport, _mask_set


class Matroid:
    kind = "abstract"
    n: int

    def is_independent(self, subset) -> bool:
        raise NotImplementedError

    @property
    def rank(self) -> int:
        raise NotImplementedError


class UniformMatroid(Matroid):
    """Independent iff the set has at most ``rank`` elements."""

    kind = "uniform"

    def __init__(self, n: int, rank: int):
        if rank < 0 or n < 0:
            raise InvalidParams("rank and n must be non-negative")
        self.n = n
        self._rank = min(rank, n)

    def is_independent(self, subset) -> bool:
        return len(frozenset(subset)) <= self._rank

    @property
    def rank(self) -> int:
        return self._rank

    def describe(self) -> dict:
        return {"kind": self.kind, "n": self.n, "rank": self._rank}


class PartitionMatroid(Matroid):
    """Per-class capacities; independent iff no class is over capacity.

    ``class_of`` assigns each element a class label. ``capacity`` is a
    single integer applied to every class, or a mapping per label. The
    classical constructions here use capacity 1 throughout, but general
    capacities are free and the tests use them.
    """

    kind = "partition"

    def __init__(self, class_of, capacity=1):
        self.class_of = tuple(class_of)
        self.n = len(self.class_of)
        labels = set(self.class_of)
        if isinstance(capacity, int):
            self.capacity = {c: capacity for c in labels}
        else:
            self.capacity = dict(capacity)
            missing = labels - set(self.capacity)
            if missing:
                raise InvalidParams(f"no capacity for classes {sorted(missing)}")
        if any(c < 0 for c in self.capacity.values()):
            raise InvalidParams("capacities must be non-negative")

    def is_independent(self, subset) -> bool:
        counts = Counter(self.class_of[e] for e in frozenset(subset))
        return all(counts[c] <= self.capacity[c] for c in counts)

    @property
    def rank(self) -> int:
        sizes = Counter(self.class_of)
        return sum(min(self.capacity[c], sizes[c]) for c in sizes)

    def describe(self) -> dict:
        return {"kind": self.kind, "class_of": list(self.class_of),
                "capacity": {str(k): v for k, v in sorted(self.capacity.items())}}


class ExplicitMatroid(Matroid):
    """Set system given by its full list of independent sets."""

    kind = "explicit"

    def __init__(self, n: int, family):
        self.n = n
        self.family = frozenset(frozenset(s) for s in family)

    def is_independent(self, subset) -> bool:
        return frozenset(subset) in self.family

    @property
    def rank(self) -> int:
        return max((len(s) for s in self.family), default=0)

    @classmethod
    def from_oracle(cls, matroid: Matroid, limit: int = 12) -> "ExplicitMatroid":
        if matroid.n > limit:
            raise GroundSetTooLarge(f"n={matroid.n} exceeds enumeration limit {limit}")
        fam = [_mask_set(m) for m in range(1 << matroid.n)
               if matroid.is_independent(_mask_set(m))]
        return cls(matroid.n, fam)


def can_extend(matroid: Matroid, independent_set, element: int) -> bool:
    """Whether ``independent_set + element`` stays independent."""
    base = frozenset(independent_set)
    if not matroid.is_independent(base):
        raise NotIndependent(f"{sorted(base)} is not independent")
    return matroid.is_independent(base | {element})


def check_axioms(matroid: Matroid, limit: int = 12) -> CheckReport:
    """Verify non-emptiness, heredity and the exchange axiom by
    enumerating all subsets of the ground set (n capped at ``limit``)."""
    n = matroid.n
    if n > limit:
        raise GroundSetTooLarge(f"n={n} exceeds enumeration limit {limit}")
    indep = [matroid.is_independent(_mask_set(m)) for m in range(1 << n)]
    if not indep[0]:
        return CheckReport(False, "non-empty", (frozenset(),))
    for mask in range(1 << n):
        if not indep[mask]:
            continue
        sub = mask
        for e in range(n):
            bit = 1 << e
            if mask & bit and not indep[mask & ~bit]:
                return CheckReport(False, "heredity", (_mask_set(mask & ~bit), _mask_set(mask)))
    by_size: dict[int, list[int]] = {}
    for mask in range(1 << n):
        if indep[mask]:
            by_size.setdefault(bin(mask).count("1"), []).append(mask)
    sizes = sorted(by_size)
    for small in sizes:
        for big in sizes:
            if big <= small:
                continue
            for a in by_size[small]:
                for b in by_size[big]:
                    extra = b & ~a
                    found = False
                    while extra:
                        bit = extra & -extra
                        if indep[a | bit]:
                            found = True
                            break
                        extra &= extra - 1
                    if not found:
                        return CheckReport(False, "exchange", (_mask_set(a), _mask_set(b)))
    return CheckReport(True)

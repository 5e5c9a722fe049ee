import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from streamsub.errors import NotIndependent
from streamsub.hard_matroid import MatHardParams, instantiate
from streamsub.matroids import (ExplicitMatroid, PartitionMatroid,
                                UniformMatroid, can_extend, check_axioms)


class TestIsIndependent:
    def test_uniform_cardinality_rule(self):
        m = UniformMatroid(4, 2)
        assert m.is_independent({0, 1})
        assert not m.is_independent({0, 1, 2})

    def test_partition_capacity_one(self):
        m = PartitionMatroid([0, 0, 1], capacity=1)
        assert not m.is_independent({0, 1})
        assert m.is_independent({0, 2})

    def test_explicit_from_bases(self):
        fam = [frozenset(), frozenset({0}), frozenset({1}), frozenset({2}),
               frozenset({0, 1}), frozenset({0, 2})]
        m = ExplicitMatroid(3, fam)
        assert not m.is_independent({1, 2})
        assert m.is_independent({0, 2})


class TestCanExtend:
    def test_empty_extends_anywhere(self):
        m = UniformMatroid(3, 1)
        assert can_extend(m, frozenset(), 2)

    def test_partition_class_exhausted(self):
        m = PartitionMatroid([0, 0, 1], capacity=1)
        assert not can_extend(m, {0}, 1)
        assert can_extend(m, {0}, 2)

    def test_uniform_rank_reached(self):
        m = UniformMatroid(5, 3)
        full = {0, 1, 2}
        assert all(not can_extend(m, full, e) for e in (3, 4))

    def test_dependent_input_rejected(self):
        m = UniformMatroid(3, 1)
        with pytest.raises(NotIndependent):
            can_extend(m, {0, 1}, 2)

    @settings(max_examples=60, deadline=None)
    @given(rank=st.integers(0, 4), subset=st.sets(st.integers(0, 5)), e=st.integers(0, 5))
    def test_matches_direct_query(self, rank, subset, e):
        m = UniformMatroid(6, rank)
        if not m.is_independent(subset):
            return
        assert can_extend(m, subset, e) == m.is_independent(set(subset) | {e})


class TestCheckAxioms:
    def test_uniform_ok(self):
        assert check_axioms(UniformMatroid(4, 2)).ok

    def test_heredity_witness(self):
        broken = ExplicitMatroid(2, [frozenset(), frozenset({0}), frozenset({0, 1})])
        report = check_axioms(broken)
        assert not report.ok and report.kind == "heredity"

    def test_exchange_witness(self):
        # two maximal sets of different sizes with no valid exchange
        broken = ExplicitMatroid(3, [frozenset(), frozenset({0}), frozenset({1}),
                                     frozenset({2}), frozenset({1, 2})])
        report = check_axioms(broken)
        assert not report.ok and report.kind == "exchange"

    @pytest.mark.parametrize("classes,cap", [([0, 0, 1, 1], 1), ([0, 1, 2, 0, 1], 2)])
    def test_partition_ok_by_enumeration(self, classes, cap):
        assert check_axioms(PartitionMatroid(classes, cap)).ok


class TestAgainstExplicitEnumeration:
    @pytest.mark.parametrize("matroid", [
        UniformMatroid(7, 3),
        PartitionMatroid([0, 0, 0, 1, 1, 2, 2, 2], 1),
        PartitionMatroid([0, 1, 0, 1, 0, 1], {0: 2, 1: 1}),
    ])
    def test_oracles_agree_with_enumerated_family(self, matroid):
        explicit = ExplicitMatroid.from_oracle(matroid)
        assert check_axioms(explicit).ok
        for mask in range(1 << matroid.n):
            s = frozenset(e for e in range(matroid.n) if mask >> e & 1)
            assert matroid.is_independent(s) == explicit.is_independent(s)

    def test_hard_matroid_feasibility_is_one_per_class(self):
        inst = instantiate(MatHardParams(3, 3), 2)
        m = inst.matroid
        for mask in range(1 << inst.fn.n):
            s = frozenset(e for e in range(inst.fn.n) if mask >> e & 1)
            per_class_ok = all(
                sum(1 for e in s if inst.class_of[e] == c) <= 1
                for c in range(1, inst.params.K + 1))
            assert m.is_independent(s) == per_class_ok


class TestRank:
    def test_partition_rank_counts_reachable(self):
        m = PartitionMatroid([0, 0, 1], capacity=1)
        assert m.rank == 2

    def test_uniform_rank_clamped_to_n(self):
        assert UniformMatroid(3, 9).rank == 3

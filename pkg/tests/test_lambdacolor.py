"""Grouped-assignment tests: validator, coarsening, enumeration, verdicts."""

from __future__ import annotations

import random

import pytest

from strictcolor.errors import Undetermined
from strictcolor.graphs import Graph, chromatic_number, complete_multipartite, is_proper
from strictcolor.lambdacolor import (
    BadAssignmentWitness,
    LambdaAssignment,
    PartitionabilityWitness,
    check_bad_witness,
    check_partitionability_witness,
    coarsen_grouping,
    color_via_partition,
    descending_parts,
    enumerate_lambda_assignments,
    lambda_choosable,
    lambda_partitionable,
    random_lambda_assignment,
    validate_lambda,
)
from strictcolor.listcolor import l_color
from strictcolor.partitions import (
    GroupingWitness,
    IntegerPartition,
    enumerate_partitions,
    unit_partition,
)

P = IntegerPartition

# The K_{3,3,3} table for k=3: parts of three vertices each, every part
# carrying {0,1,3}, {0,2,3}, {1,2,3}, grouped as {0,1,2} twice-met and {3}
# once-met.  Written out literally so validator tests do not depend on the
# constructor module.
K333_LISTS = tuple(
    lst for _ in range(3) for lst in ((0, 1, 3), (0, 2, 3), (1, 2, 3)))
K333_ASSIGNMENT = LambdaAssignment(
    P((1, 2)), K333_LISTS,
    (frozenset({0, 1, 2}), frozenset({3})), sizes=(3, 3, 3))


def graphs_on(n):
    from itertools import combinations
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, tuple(e for i, e in enumerate(pairs) if mask >> i & 1))


class TestValidate:
    def test_k333_table_validates(self):
        report = validate_lambda(K333_ASSIGNMENT)
        assert report.ok and not report.violations
        assert bool(report)

    def test_misaligned_grouping_reports_each_violation(self):
        bad = LambdaAssignment(
            P((1, 2)), K333_LISTS,
            (frozenset({0, 1}), frozenset({2, 3})), sizes=(3, 3, 3))
        report = validate_lambda(bad)
        assert not report.ok
        # list {1,2,3} meets {0,1} once but needs 2; three such vertices,
        # and every vertex is off against at least one group.
        assert any("vertex 2 group 0" in v for v in report.violations)
        assert len(report.violations) >= 9

    def test_single_vertex(self):
        a = LambdaAssignment(P((1,)), ((1,),), ({1},))
        assert validate_lambda(a).ok

    def test_structural_violations(self):
        overlap = LambdaAssignment(P((1, 1)), ((1, 2),), ({1, 2}, {2, 3}))
        assert any("share" in v for v in validate_lambda(overlap).violations)
        empty = LambdaAssignment(P((1, 1)), ((1, 2),), ({1, 2}, set()))
        assert any("empty" in v for v in validate_lambda(empty).violations)
        stray = LambdaAssignment(P((1, 1)), ((1, 9),), ({1}, {2}))
        assert any("no group" in v for v in validate_lambda(stray).violations)
        short = LambdaAssignment(P((1, 2)), ((1, 4),), ({1, 2, 3}, {4}))
        assert any("need 3" in v for v in validate_lambda(short).violations)
        sized = LambdaAssignment(P((1,)), ((1,), (1,)), ({1},), sizes=(3,))
        assert any("sum to" in v for v in validate_lambda(sized).violations)


class TestCoarsen:
    def test_merge_to_single_group(self):
        out = coarsen_grouping(K333_ASSIGNMENT, P((3,)),
                               GroupingWitness((0, 0)))
        assert out.lam == P((3,))
        assert out.groups == (frozenset({0, 1, 2, 3}),)
        assert validate_lambda(out).ok
        assert out.lists == K333_ASSIGNMENT.lists

    def test_identity_witness(self):
        out = coarsen_grouping(K333_ASSIGNMENT, P((1, 2)),
                               GroupingWitness((0, 1)))
        assert out == K333_ASSIGNMENT

    def test_three_part_merge(self):
        a = random_lambda_assignment(4, P((1, 1, 2)), seed=3)
        out = coarsen_grouping(a, P((2, 2)), GroupingWitness((0, 0, 1)))
        assert validate_lambda(out).ok
        assert out.lam == P((2, 2))

    def test_bad_witness_rejected(self):
        with pytest.raises(ValueError):
            coarsen_grouping(K333_ASSIGNMENT, P((3,)), GroupingWitness((0, 1)))

    def test_500_random_coarsenings(self):
        rng = random.Random(17)
        for _ in range(500):
            k = rng.randrange(2, 7)
            coarse = rng.choice(list(enumerate_partitions(k)))
            pieces = []  # (fine part, coarse slot)
            for slot, part in enumerate(coarse.parts):
                left = part
                while left:
                    cut = rng.randrange(1, left + 1)
                    pieces.append((cut, slot))
                    left -= cut
            pieces.sort(key=lambda t: t[0])
            fine = P(tuple(sz for sz, _ in pieces))
            witness = GroupingWitness(tuple(slot for _, slot in pieces))
            n = rng.randrange(1, 4)
            a = random_lambda_assignment(n, fine, seed=rng.randrange(10 ** 6))
            assert validate_lambda(a).ok
            out = coarsen_grouping(a, coarse, witness)
            assert validate_lambda(out).ok


class TestEnumeration:
    def test_single_vertex_two_unit_groups(self):
        got = list(enumerate_lambda_assignments(Graph(1, ()), P((1, 1))))
        assert len(got) == 1
        assert got[0].lists == ((1, 2),)
        assert got[0].groups == (frozenset({1}), frozenset({2}))

    def test_k2_one_unit_group(self):
        got = list(enumerate_lambda_assignments(Graph(2, ((0, 1),)), P((1,))))
        assert [a.lists for a in got] == [((1,), (1,)), ((1,), (2,))]

    def test_every_member_validates(self):
        cases = [(complete_multipartite([1, 2]), P((1, 1))),
                 (complete_multipartite([2, 2]), P((2,))),
                 (Graph(3, ((0, 1), (1, 2))), P((1, 2)))]
        for g, lam in cases:
            members = list(enumerate_lambda_assignments(g, lam))
            assert members
            for a in members:
                assert validate_lambda(a).ok
                assert len(a.lists) == g.n
            assert members == list(enumerate_lambda_assignments(g, lam))

    def test_k3_with_unit_pair_has_bad_member(self):
        g = complete_multipartite([1, 1, 1])
        bad = [a for a in enumerate_lambda_assignments(g, P((1, 1)))
               if not l_color(g, a.lists).colorable]
        assert bad  # chi = 3, so some {1,1}-assignment refuses

    def test_bound(self):
        from strictcolor.errors import BoundExceeded
        g = complete_multipartite([4, 4])
        with pytest.raises(BoundExceeded):
            list(enumerate_lambda_assignments(g, P((1, 1, 1, 1))))


class TestPartitionable:
    def test_pair_core_block_shape(self):
        g = complete_multipartite([2, 3, 3])
        w = lambda_partitionable(g, P((1, 2)))
        assert isinstance(w, PartitionabilityWitness)
        assert w.blocks[0].vertices == (0, 1, 2, 3, 4)  # V_1 ∪ V_2 = K_{2,3}
        assert w.blocks[0].method == "ert-core"
        assert w.blocks[1].vertices == (5, 6, 7)
        assert w.blocks[1].method == "edgeless"
        assert check_partitionability_witness(g, P((1, 2)), w)

    def test_complete_graph_pairing(self):
        g = complete_multipartite([1, 1, 1, 1])
        w = lambda_partitionable(g, P((1, 1, 2)))
        assert isinstance(w, PartitionabilityWitness)
        assert len(w.blocks[0].vertices) == 2  # a K_2 at the level-2 slot
        assert check_partitionability_witness(g, P((1, 1, 2)), w)

    def test_edgeless_single_block(self):
        w = lambda_partitionable(Graph(3, ()), P((1,)))
        assert isinstance(w, PartitionabilityWitness)
        assert w.blocks[0].method == "edgeless"

    def test_triangle_unit_pair_absent(self):
        assert lambda_partitionable(Graph(3, ((0, 1), (0, 2), (1, 2))),
                                    P((1, 1))) is None

    def test_case2_shape_absent(self):
        # (2,4,5) admits no lambda_3-partition; the full vertex-level
        # search (2^11 candidates) settles it definitively.
        assert lambda_partitionable(complete_multipartite([2, 4, 5]),
                                    P((1, 2))) is None

    def test_out_of_bounds_is_undetermined(self):
        cyc = Graph(11, tuple((i, (i + 1) % 11) for i in range(11)))
        got = lambda_partitionable(cyc, P((3,)))
        assert isinstance(got, Undetermined)

    def test_tampered_witness_fails(self):
        g = complete_multipartite([2, 3, 3])
        w = lambda_partitionable(g, P((1, 2)))
        swapped = PartitionabilityWitness(
            w.lam, (w.blocks[1], w.blocks[0]))
        assert not check_partitionability_witness(g, P((1, 2)), swapped)


class TestChoosable:
    def test_triangle_near_unit_both_routes(self):
        g = complete_multipartite([1, 1, 1])
        auto = lambda_choosable(g, P((1, 2)))
        assert auto.choosable and auto.provenance == "partitionable"
        assert check_partitionability_witness(g, P((1, 2)), auto.partition)
        full = lambda_choosable(g, P((1, 2)), method="exhaustive")
        assert full.choosable and full.provenance == "exhaustive"
        assert full.classes_checked > 0

    def test_bipartite_unit_pair(self):
        g = complete_multipartite([2, 2])
        v = lambda_choosable(g, P((1, 1)))
        assert v.choosable

    def test_exhaustive_negative_carries_witness(self):
        g = Graph(3, ((0, 1), (0, 2), (1, 2)))
        v = lambda_choosable(g, P((1, 1)), method="exhaustive")
        assert v.choosable is False and v.provenance == "exhaustive"
        assert check_bad_witness(g, v.witness)
        assert v.classes_checked >= 1

    def test_seed_path(self):
        g = Graph(4, tuple((i, j) for i in range(4) for j in range(i + 1, 4)))
        seed = LambdaAssignment(P((1, 1)), (((1, 2),) * 4), ({1}, {2}))
        v = lambda_choosable(g, P((1, 1)), seeds=[seed])
        assert v.choosable is False and v.provenance == "seeded-witness"
        assert check_bad_witness(g, v.witness)

    def test_colorable_seed_is_skipped(self):
        g = complete_multipartite([2, 2])
        seed = LambdaAssignment(P((1, 1)), (((1, 2),) * 4), ({1}, {2}))
        v = lambda_choosable(g, P((1, 1)), seeds=[seed])
        assert v.choosable is True

    def test_invalid_seed_rejected(self):
        g = Graph(2, ((0, 1),))
        broken = LambdaAssignment(P((1, 1)), ((1, 2), (1, 3)), ({1}, {2}))
        with pytest.raises(ValueError):
            lambda_choosable(g, P((1, 1)), seeds=[broken])

    def test_undecided_when_everything_is_out_of_bounds(self):
        cyc = Graph(11, tuple((i, (i + 1) % 11) for i in range(11)))
        v = lambda_choosable(cyc, P((3,)))
        assert v.choosable is None and v.provenance == "undecided"
        assert "bounded" in v.reason

    def test_workers_do_not_change_the_verdict(self):
        g = complete_multipartite([2, 2])
        a = lambda_choosable(g, P((1, 1)), method="exhaustive", workers=1)
        b = lambda_choosable(g, P((1, 1)), method="exhaustive", workers=3)
        assert a == b

    def test_unit_partition_matches_chromatic_number_small(self):
        for n in (1, 2, 3):
            for g in graphs_on(n):
                for k in (1, 2):
                    v = lambda_choosable(g, unit_partition(k))
                    assert v.choosable is (chromatic_number(g) <= k), (g, k)


class TestPartitionImpliesChoosable:
    def test_instance_level_on_tiny_graph(self):
        g = complete_multipartite([1, 2])
        lam = P((1, 1))
        w = lambda_partitionable(g, lam)
        assert isinstance(w, PartitionabilityWitness)
        for a in enumerate_lambda_assignments(g, lam):
            coloring = color_via_partition(g, a, w)
            assert is_proper(g, coloring)
            assert all(coloring[v] in a.lists[v] for v in range(g.n))

    def test_sampled_assignments_color_via_blocks(self):
        g = complete_multipartite([2, 3, 3])
        lam = P((1, 2))
        w = lambda_partitionable(g, lam)
        stream = enumerate_lambda_assignments(g, lam)
        for i, a in enumerate(stream):
            if i >= 2000:
                break
            coloring = color_via_partition(g, a, w)
            assert is_proper(g, coloring)
            assert all(coloring[v] in a.lists[v] for v in range(g.n))
        for seed in range(200):
            a = random_lambda_assignment(g.n, lam, seed=seed,
                                         sizes=(2, 3, 3))
            coloring = color_via_partition(g, a, w)
            assert is_proper(g, coloring)
            assert all(coloring[v] in a.lists[v] for v in range(g.n))


class TestRandomAssignment:
    def test_validates_and_is_deterministic(self):
        for lam in (P((1, 2)), P((2, 3)), P((1, 1, 1))):
            for n in (1, 3, 5):
                a = random_lambda_assignment(n, lam, seed=9)
                assert validate_lambda(a).ok
                assert a == random_lambda_assignment(n, lam, seed=9)
        assert random_lambda_assignment(4, P((1, 2)), seed=0) != \
            random_lambda_assignment(4, P((1, 2)), seed=1)

    def test_sizes_metadata(self):
        a = random_lambda_assignment(11, P((1, 2)), seed=0, sizes=(2, 4, 5))
        assert a.sizes == (2, 4, 5)
        with pytest.raises(ValueError):
            random_lambda_assignment(10, P((1, 2)), seed=0, sizes=(2, 4, 5))

    def test_descending_alignment(self):
        a = random_lambda_assignment(3, P((1, 2)), seed=2)
        desc = descending_parts(a.lam)
        assert desc == (2, 1)
        for lst in a.lists:
            assert len(set(lst) & a.groups[0]) == 2
            assert len(set(lst) & a.groups[1]) == 1

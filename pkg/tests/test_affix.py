from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqcomp.affix import (
    MatrixState,
    Pick,
    build_prefix_tree,
    build_suffix_tree,
    collapse,
    collapse_all,
    expand_all_next_level,
    expand_cell,
    expand_column,
    expand_row,
    materialize_matrix,
    node_at,
    select_sets,
    serialize_grid,
    sort_siblings,
    visible_frontier,
)
from seqcomp.dataset import Dataset
from seqcomp.errors import StateError

from .checks import frontier_counts_conserved, grid_row_col_sums_consistent, trees_equal
from .conftest import make_dataset, make_seq, random_dataset

UNFILTERED = MatrixState(length_filter=(1, None))


def reverse_dataset(d: Dataset) -> Dataset:
    return Dataset.from_sequences(
        make_seq(s.id, list(s.event_types())[::-1]) for s in d.sequences
    )


class TestBuildTrees:
    def test_prefix_groups_by_first_events(self, worked_dataset):
        # Oracle: group sequences by their first k events by hand.
        tree = build_prefix_tree(worked_dataset)
        level1 = {c.event_type: c for c in tree.root.children}
        assert level1["a"].count == 3 and level1["a"].member_ids == {"s1", "s2", "s3"}
        assert level1["b"].count == 1
        assert node_at(tree, ("a", "b")).count == 2

    def test_single_sequence(self):
        tree = build_prefix_tree(make_dataset({"s": "x"}))
        assert [(c.event_type, c.count) for c in tree.root.children] == [("x", 1)]

    def test_empty_dataset(self):
        tree = build_prefix_tree(Dataset.from_sequences(()))
        assert tree.root.count == 0 and tree.root.children == ()

    def test_suffix_groups_by_last_events(self, worked_dataset):
        # Oracle: reverse every sequence, group by first events.
        tree = build_suffix_tree(worked_dataset)
        level1 = {c.event_type: c for c in tree.root.children}
        assert level1["c"].count == 3 and level1["c"].member_ids == {"s1", "s3", "s4"}
        assert level1["d"].count == 1

    def test_suffix_equals_prefix_of_reversed(self, worked_dataset):
        stree = build_suffix_tree(worked_dataset)
        ptree = build_prefix_tree(reverse_dataset(worked_dataset))
        assert trees_equal(stree.root, ptree.root)

    def test_max_depth_truncates(self):
        tree = build_prefix_tree(make_dataset({"s": "abcde"}), max_depth=2)
        assert node_at(tree, ("a", "b")).children == ()

    def test_children_in_first_touch_order(self):
        d = make_dataset({"s1": "b", "s2": "a", "s3": "c"})
        tree = build_prefix_tree(d)
        assert [c.event_type for c in tree.root.children] == ["b", "a", "c"]

    def test_membership_nesting_and_disjointness(self, worked_dataset):
        tree = build_prefix_tree(worked_dataset)

        def walk(node):
            union = set()
            for c in node.children:
                assert c.member_ids <= node.member_ids
                assert not (union & c.member_ids)
                union |= c.member_ids
                walk(c)

        walk(tree.root)


class TestVisibleFrontier:
    def test_root_expansion_gives_level_one(self, worked_dataset):
        tree = build_prefix_tree(worked_dataset)
        frontier = visible_frontier(tree, [()])
        assert [e.path for e in frontier] == [("a",), ("b",)]

    def test_expanding_a_inlines_its_children(self, worked_dataset):
        tree = build_prefix_tree(worked_dataset)
        frontier = visible_frontier(tree, [(), ("a",)])
        assert [e.path for e in frontier] == [("a", "b"), ("a", "c"), ("b",)]

    def test_residual_entry_for_terminating_sequences(self, worked_dataset):
        d = Dataset.from_sequences(list(worked_dataset.sequences) + [make_seq("s5", "a")])
        tree = build_prefix_tree(d)
        frontier = visible_frontier(tree, [(), ("a",)])
        residuals = [e for e in frontier if e.residual]
        assert len(residuals) == 1
        assert residuals[0].path == ("a",) and residuals[0].member_ids == {"s5"}
        assert sum(e.count for e in frontier) == len(d)

    def test_unknown_path_is_state_error(self, worked_dataset):
        tree = build_prefix_tree(worked_dataset)
        with pytest.raises(StateError):
            visible_frontier(tree, [(), ("z",)])

    def test_suffix_frontier_paths_end_aligned(self, worked_dataset):
        tree = build_suffix_tree(worked_dataset)
        frontier = visible_frontier(tree, [(), ("c",)])
        # sequences ending ...b,c ...a,c plus the lone [b,c] handled via b,c path
        assert ("b", "c") in [e.path for e in frontier]


class TestMaterialize:
    def test_level_one_cells(self, worked_dataset):
        # Oracle: intersect prefix/suffix groups by hand.
        pt, st_ = build_prefix_tree(worked_dataset), build_suffix_tree(worked_dataset)
        grid = materialize_matrix(pt, st_, UNFILTERED)
        assert [c.path for c in grid.columns] == [("a",), ("b",)]
        assert [r.path for r in grid.rows] == [("c",), ("d",)]
        assert grid.cells[0][0].count == 2  # row c, col a: {s1, s3}
        assert grid.cells[0][0].member_ids == {"s1", "s3"}
        assert grid.cells[1][1].count == 0  # row d, col b
        assert grid.max_cell_count == 2

    def test_overlap_membership_single_event(self):
        d = make_dataset({"solo": "a"})
        grid = materialize_matrix(build_prefix_tree(d), build_suffix_tree(d), UNFILTERED)
        assert grid.cells[0][0].member_ids == {"solo"}

    def test_row_metric_is_union_of_cells(self, worked_dataset):
        pt, st_ = build_prefix_tree(worked_dataset), build_suffix_tree(worked_dataset)
        grid = materialize_matrix(pt, st_, UNFILTERED)
        row_c = grid.rows[0]
        union = frozenset().union(*(c.member_ids for c in grid.cells[0]))
        assert row_c.count == 3 and union == row_c.member_ids

    def test_count_conservation_and_sums(self, worked_dataset):
        pt, st_ = build_prefix_tree(worked_dataset), build_suffix_tree(worked_dataset)
        grid = materialize_matrix(pt, st_, UNFILTERED)
        assert sum(c.count for c in grid.columns) == len(worked_dataset)
        assert sum(r.count for r in grid.rows) == len(worked_dataset)
        assert grid_row_col_sums_consistent(grid)


class TestExpandCollapse:
    def test_expand_cell_touches_both_trees(self, worked_dataset):
        pt, st_ = build_prefix_tree(worked_dataset), build_suffix_tree(worked_dataset)
        state, row_noop, col_noop = expand_cell(UNFILTERED, pt, st_, ("c",), ("a",))
        assert ("a",) in state.expanded_prefix
        assert ("c",) in state.expanded_suffix
        assert not row_noop and not col_noop

    def test_expand_leaf_is_flagged_noop(self, worked_dataset):
        pt = build_prefix_tree(worked_dataset)
        state, noop = expand_column(UNFILTERED, pt, ("b",))  # [b,c] then leaf below
        state, noop = expand_column(state, pt, ("b", "c"))
        assert noop and state.expanded_prefix == UNFILTERED.expanded_prefix | {("b",)}

    def test_expand_requires_expanded_parent(self, worked_dataset):
        pt = build_prefix_tree(worked_dataset)
        with pytest.raises(StateError):
            expand_column(UNFILTERED, pt, ("a", "b"))

    def test_collapse_removes_descendants(self, worked_dataset):
        pt = build_prefix_tree(worked_dataset)
        state, _ = expand_column(UNFILTERED, pt, ("a",))
        state, _ = expand_column(state, pt, ("a", "b"))
        state = collapse(state, pt, ("a",))
        assert state.expanded_prefix == frozenset({()})

    def test_collapse_root_rejected(self, worked_dataset):
        pt = build_prefix_tree(worked_dataset)
        with pytest.raises(StateError):
            collapse(UNFILTERED, pt, ())

    def test_expand_then_collapse_restores_grid(self, worked_dataset):
        pt, st_ = build_prefix_tree(worked_dataset), build_suffix_tree(worked_dataset)
        before = serialize_grid(materialize_matrix(pt, st_, UNFILTERED))
        state, _, _ = expand_cell(UNFILTERED, pt, st_, ("c",), ("a",))
        state = collapse(state, pt, ("a",))
        state = collapse(state, st_, ("c",))
        after = serialize_grid(materialize_matrix(pt, st_, state))
        assert before == after

    def test_expand_all_next_level_matches_enumeration(self, worked_dataset):
        pt, st_ = build_prefix_tree(worked_dataset), build_suffix_tree(worked_dataset)
        state = expand_all_next_level(UNFILTERED, pt, st_)
        expected = UNFILTERED
        for entry in visible_frontier(pt, [()]):
            expected, _ = expand_column(expected, pt, entry.path)
        for entry in visible_frontier(st_, [()]):
            expected, _ = expand_row(expected, st_, entry.path)
        assert state.expanded_prefix == expected.expanded_prefix
        assert state.expanded_suffix == expected.expanded_suffix

    def test_collapse_all(self, worked_dataset):
        pt, st_ = build_prefix_tree(worked_dataset), build_suffix_tree(worked_dataset)
        state = expand_all_next_level(UNFILTERED, pt, st_)
        assert collapse_all(state).expanded_prefix == frozenset({()})


class TestSortSiblings:
    def test_descending_by_count(self, worked_dataset):
        tree = sort_siblings(build_prefix_tree(worked_dataset), "count", "descending")
        assert [c.event_type for c in tree.root.children] == ["a", "b"]

    def test_tie_broken_lexicographically(self):
        d = make_dataset({"s1": "y", "s2": "y", "s3": "x", "s4": "x"})
        tree = sort_siblings(build_prefix_tree(d), "count", "descending")
        assert [c.event_type for c in tree.root.children] == ["x", "y"]

    def test_hierarchy_unchanged(self, worked_dataset):
        tree = sort_siblings(build_prefix_tree(worked_dataset), "count", "ascending")
        a = next(c for c in tree.root.children if c.event_type == "a")
        assert {c.event_type for c in a.children} == {"b", "c"}

    def test_sorting_preserves_counts_and_membership(self, worked_dataset):
        plain = build_prefix_tree(worked_dataset)
        sorted_tree = sort_siblings(plain, "avgLength", "descending")

        def collect(node, acc):
            acc.append((node.event_type, node.count, node.member_ids))
            for c in node.children:
                collect(c, acc)
            return acc

        assert sorted(map(repr, collect(plain.root, []))) == sorted(
            map(repr, collect(sorted_tree.root, []))
        )

    def test_none_keeps_first_touch_order(self, worked_dataset):
        tree = build_prefix_tree(worked_dataset)
        assert sort_siblings(tree, "count", "none") is tree


class TestSelectSets:
    @pytest.fixture
    def grid(self, worked_dataset):
        pt, st_ = build_prefix_tree(worked_dataset), build_suffix_tree(worked_dataset)
        return materialize_matrix(pt, st_, UNFILTERED)

    def test_cell_picks(self, grid):
        sel = select_sets(
            grid,
            [Pick("cell", row=0, col=0)],  # (c, a) -> {s1, s3}
            [Pick("cell", row=1, col=1)],  # (d, b) -> empty
        )
        assert sel.set_a == {"s1", "s3"}
        assert sel.set_b == frozenset()
        assert any("empty region" in w for w in sel.warnings)

    def test_row_pick_unions_cells(self, grid):
        sel = select_sets(grid, [Pick("row", row=0)], [Pick("cell", row=1, col=0)])
        assert sel.set_a == {"s1", "s3", "s4"}

    def test_same_cell_both_sides_flags_overlap(self, grid):
        sel = select_sets(grid, [Pick("cell", row=0, col=0)], [Pick("cell", row=0, col=0)])
        assert sel.set_a == sel.set_b
        assert sel.overlap == sel.set_a
        assert any("share" in w for w in sel.warnings)

    def test_out_of_range_pick(self, grid):
        with pytest.raises(StateError):
            select_sets(grid, [Pick("row", row=99)], [])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_random_walks_conserve_counts(seed):
    rng = random.Random(seed)
    d = random_dataset(rng, max_sequences=12, alphabet_size=3, max_len=5)
    pt, st_ = build_prefix_tree(d), build_suffix_tree(d)
    state = UNFILTERED
    for _ in range(6):
        tree, is_prefix = (pt, True) if rng.random() < 0.5 else (st_, False)
        expanded = state.expanded_prefix if is_prefix else state.expanded_suffix
        frontier = visible_frontier(tree, expanded)
        expandable = [e for e in frontier if not e.residual and node_at(tree, e.path).children]
        if rng.random() < 0.7 and expandable:
            target = rng.choice(expandable).path
            state, _ = (expand_column if is_prefix else expand_row)(state, tree, target)
        else:
            collapsible = [p for p in expanded if p]
            if collapsible:
                state = collapse(state, tree, rng.choice(sorted(collapsible)))
        assert frontier_counts_conserved(pt, state.expanded_prefix)
        assert frontier_counts_conserved(st_, state.expanded_suffix)
        assert grid_row_col_sums_consistent(materialize_matrix(pt, st_, state))

import random
from fractions import Fraction

import pytest

from morsebott import (
    DiscreteFunction,
    ReducedCollection,
    build_simplicial,
    check_discrete_morse,
    check_morse_bott,
    classify,
    collections,
    critical_cells,
    is_noncritical_pair,
    perturb,
    reduce_collection,
    reduced_collections,
)
from morsebott.morse import DOWNWARD, INTERIOR, UPWARD
from conftest import random_simplicial_complex


def collection_containing(colls, cid):
    return next(C for C in colls if cid in C.cells)


class TestCollections:
    def test_dimension_function_on_triangle(self, triangle):
        f = DiscreteFunction.by_dimension(triangle)
        groups = sorted(sorted(C.cells) for C in collections(triangle, f))
        assert groups == [["a"], ["a-b", "a-c", "b-c"], ["a-b-c"], ["b"], ["c"]]

    def test_injective_gives_singletons(self, torus7):
        values = {cid: Fraction(i) for i, cid in enumerate(torus7.ids())}
        assert all(len(C.cells) == 1 for C in collections(torus7, DiscreteFunction(values)))

    def test_constant_on_circle_is_one_collection(self, hollow_triangle):
        colls = collections(hollow_triangle, DiscreteFunction.constant(hollow_triangle))
        assert len(colls) == 1 and len(colls[0].cells) == 6

    def test_partition(self, mb_corpus_small):
        for X, f in mb_corpus_small[:40]:
            seen = [cid for C in collections(X, f) for cid in C.cells]
            assert sorted(seen) == X.ids()

    def test_totality_required(self, triangle):
        with pytest.raises(ValueError, match="undefined"):
            collections(triangle, DiscreteFunction({"a": 0}))


class TestCheckMorseBott:
    def test_dimension_function_ok(self, triangle):
        assert check_morse_bott(triangle, DiscreteFunction.by_dimension(triangle)).ok

    def test_star_violation(self, star_violation):
        X, f = star_violation
        verdict = check_morse_bott(X, f)
        assert not verdict.ok
        assert len(verdict.violations) == 1
        bad = verdict.violations[0]
        assert bad.cell == "n" and bad.rule == "U_exceeds_1"
        assert bad.witnesses == ("a-n", "b-n")

    def test_segment_pair_ok(self, segment, segment_function):
        assert check_morse_bott(segment, segment_function).ok

    def test_irregular_face_clause(self, loop_complex):
        good = DiscreteFunction({"v": 0, "e": 1})
        assert check_morse_bott(loop_complex, good).ok
        bad = check_morse_bott(loop_complex, DiscreteFunction({"v": 1, "e": 0}))
        assert not bad.ok
        assert bad.violations[0].rule == "irregular-face-value"

    def test_both_one_flagged(self):
        # v below e below t with values making e have one cheap cofacet and
        # one dear facet at once
        X = build_simplicial([("u", "v", "w")])
        f = DiscreteFunction(
            {"u": 5, "v": 0, "w": 0, "u-v": 2, "u-w": 2, "v-w": 2, "u-v-w": 1}
        )
        verdict = check_morse_bott(X, f)
        assert any(v.rule == "U_and_D_both_1" for v in verdict.violations)


class TestCheckDiscreteMorse:
    def test_dimension_function(self, triangle, torus7, rp2):
        for X in (triangle, torus7, rp2):
            assert check_discrete_morse(X, DiscreteFunction.by_dimension(X)).ok

    def test_constant_on_circle_fails_on_edges(self, hollow_triangle):
        verdict = check_discrete_morse(
            hollow_triangle, DiscreteFunction.constant(hollow_triangle)
        )
        assert not verdict.ok
        edge_rules = {v.rule for v in verdict.violations if "-" in v.cell}
        assert "D_exceeds_1" in edge_rules

    def test_segment_pair(self, segment, segment_function):
        assert check_discrete_morse(segment, segment_function).ok


class TestClassify:
    def test_edge_collection_interior(self, triangle):
        f = DiscreteFunction.by_dimension(triangle)
        C = collection_containing(collections(triangle, f), "a-b")
        labels = classify(triangle, f, C)
        assert all(c.kind == INTERIOR for c in labels.values())

    def test_segment_pair_is_interior(self, segment, segment_function):
        C = collection_containing(collections(segment, segment_function), "v")
        labels = classify(segment, segment_function, C)
        assert labels["v"].kind == INTERIOR and labels["v-w"].kind == INTERIOR

    def test_upward_with_witness(self, segment):
        f = DiscreteFunction({"v": 5, "v-w": 3, "w": 3})
        C = collection_containing(collections(segment, f), "v")
        assert C.cells == frozenset({"v"})
        label = classify(segment, f, C)["v"]
        assert label.kind == UPWARD and label.witness == "v-w"

    def test_outside_cell_rejected(self, triangle):
        f = DiscreteFunction.by_dimension(triangle)
        C = collection_containing(collections(triangle, f), "a")
        with pytest.raises(ValueError, match="not members"):
            classify(triangle, f, C, cells=["b"])


class TestReduceCollection:
    def test_interior_singleton_survives(self, triangle):
        f = DiscreteFunction.by_dimension(triangle)
        C = collection_containing(collections(triangle, f), "a-b-c")
        assert reduce_collection(triangle, f, C).cells == frozenset({"a-b-c"})

    def test_upward_singleton_empties(self, segment):
        f = DiscreteFunction({"v": 5, "v-w": 3, "w": 3})
        C = collection_containing(collections(segment, f), "v")
        assert reduce_collection(segment, f, C).cells == frozenset()

    def test_worked_example_reduction(self, worked_example):
        X, f = worked_example
        C = collection_containing(collections(X, f), "a-b-c")
        R = reduce_collection(X, f, C)
        assert R.cells == frozenset({"a-c", "b-c", "a-b-c"})
        assert R.classification["a"].kind == UPWARD
        assert R.classification["a"].witness == "a-d"
        assert R.classification["a-b"].kind == UPWARD
        assert R.classification["a-b"].witness == "a-b-d"

    def test_downward_cells_drop(self, worked_example):
        X, f = worked_example
        C = collection_containing(collections(X, f), "a-d")
        R = reduce_collection(X, f, C)
        assert C.cells == frozenset({"a-d", "b-d", "a-b-d"})
        assert R.cells == frozenset()
        assert all(label.kind == DOWNWARD for label in R.classification.values())


class TestNoncriticalPair:
    def test_segment_pair(self, segment, segment_function):
        C = collection_containing(collections(segment, segment_function), "v")
        assert is_noncritical_pair(reduce_collection(segment, segment_function, C))

    def test_three_cells(self, worked_example):
        X, f = worked_example
        C = collection_containing(collections(X, f), "a-b-c")
        assert not is_noncritical_pair(reduce_collection(X, f, C))

    def test_two_vertices_no_facet_relation(self, segment, segment_function):
        R = ReducedCollection(0, Fraction(0), frozenset({"v", "w"}), {}, segment)
        assert not is_noncritical_pair(R)


class TestCriticalCells:
    def test_dimension_function(self, torus7):
        f = DiscreteFunction.by_dimension(torus7)
        assert critical_cells(torus7, f) == frozenset(torus7.ids())

    def test_segment(self, segment, segment_function):
        assert critical_cells(segment, segment_function) == frozenset({"w"})

    def test_constant_on_circle(self, hollow_triangle):
        assert critical_cells(hollow_triangle, DiscreteFunction.constant(hollow_triangle)) == frozenset()


class TestPerturb:
    def test_triangle_values(self, triangle):
        f = DiscreteFunction.by_dimension(triangle)
        g = perturb(triangle, f, Fraction(1, 2))
        assert g("a") == Fraction(-1, 2)
        assert g("a-b") == Fraction(3, 4)
        assert g("a-b-c") == Fraction(11, 6)
        assert check_discrete_morse(triangle, g).ok
        assert critical_cells(triangle, g) == frozenset(triangle.ids())

    def test_constant_auto(self, hollow_triangle):
        f = DiscreteFunction.constant(hollow_triangle)
        g = perturb(hollow_triangle, f, "auto")  # auto epsilon = 1
        assert g("a") == Fraction(-1)
        assert g("a-b") == Fraction(-1, 2)
        assert check_discrete_morse(hollow_triangle, g).ok
        assert critical_cells(hollow_triangle, g) == frozenset(hollow_triangle.ids())

    def test_nonpositive_epsilon(self, triangle):
        f = DiscreteFunction.by_dimension(triangle)
        with pytest.raises(ValueError, match="positive"):
            perturb(triangle, f, 0)

    def test_auto_preserves_strict_order(self, mb_corpus_small):
        for X, f in mb_corpus_small[:25]:
            g = perturb(X, f)
            ids = X.ids()
            for a in ids:
                for b in ids:
                    if f(a) < f(b):
                        assert g(a) < g(b)


def test_singleton_bridge(mb_corpus_small):
    # Morse-Bott functions whose collections are all singletons are Morse.
    found = 0
    for X, f in mb_corpus_small:
        if all(len(C.cells) == 1 for C in collections(X, f)):
            assert check_discrete_morse(X, f).ok
            found += 1
    rng = random.Random(2)
    while found < 5:  # make sure the property is exercised at least a few times
        X = random_simplicial_complex(rng, max_cells=12)
        values = {cid: Fraction(i) for i, cid in enumerate(X.ids())}
        f = DiscreteFunction(values)
        if check_morse_bott(X, f).ok:
            assert check_discrete_morse(X, f).ok
            found += 1


def test_reduced_collections_filters(segment, segment_function):
    included = reduced_collections(segment, segment_function)
    assert [sorted(R.cells) for R in included] == [["w"]]
    everything = reduced_collections(
        segment, segment_function, include_pairs=True, include_empty=True
    )
    assert len(everything) == 2

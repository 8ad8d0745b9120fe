import random

import pytest
from hypothesis import given, settings, strategies as st

from harmony import (
    ColorConflict,
    ColorState,
    Forest,
    PartialColoring,
    TheoremPreconditionError,
    assign,
    emit_coloring,
    is_harmonious,
    lower_bound_degree,
    lower_bound_nonadjacent,
    lower_bound_pairs,
    parse_coloring,
    predict_h,
)
from harmony.instances import build_double_broom, build_t_delta, prufer_decode


def star(n):
    return Forest(n, [(0, v) for v in range(1, n)])


def path(n):
    return Forest(n, [(i, i + 1) for i in range(n - 1)])


class TestPartialColoring:
    def test_empty_start(self):
        c = PartialColoring(3, 4)
        assert c.n == 3 and c.k == 4
        assert not c.is_total()
        assert c.assigned_count() == 0
        assert c.distinct_colors() == 0

    def test_total_from_list(self):
        c = PartialColoring(3, 3, [0, 1, 2])
        assert c.is_total()
        assert c.distinct_colors() == 3

    def test_rejects_color_outside_palette(self):
        with pytest.raises(ValueError):
            PartialColoring(2, 2, [0, 2])

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            PartialColoring(3, 3, [0, 1])

    def test_copy_is_independent(self):
        c = PartialColoring(2, 2, [0, None])
        d = c.copy()
        d.colors[1] = 1
        assert c.colors[1] is None

    def test_equality(self):
        assert PartialColoring(2, 3, [0, 1]) == PartialColoring(2, 3, [0, 1])
        assert PartialColoring(2, 3, [0, 1]) != PartialColoring(2, 2, [0, 1])


class TestAssign:
    def test_star_center_then_leaves(self):
        f = star(4)
        c = PartialColoring(4, 4)
        s = ColorState(4)
        assign(f, c, s, 0, 0)
        assert s.degree_sum[0] == 3
        assert s.used_pairs == set()
        assign(f, c, s, 1, 1)
        assert s.degree_sum[1] == 1
        assert s.used_pairs == {(0, 1)}
        with pytest.raises(ColorConflict):
            assign(f, c, s, 2, 1)  # would reuse pair {0,1}

    def test_rejects_monochrome_edge(self):
        f = path(2)
        c = PartialColoring(2, 2)
        s = ColorState(2)
        assign(f, c, s, 0, 0)
        with pytest.raises(ColorConflict):
            assign(f, c, s, 1, 0)

    def test_rejects_recolor(self):
        f = path(2)
        c = PartialColoring(2, 2)
        s = ColorState(2)
        assign(f, c, s, 0, 0)
        with pytest.raises(ValueError):
            assign(f, c, s, 0, 1)

    def test_rejects_color_out_of_range(self):
        f = path(2)
        with pytest.raises(ValueError):
            assign(f, PartialColoring(2, 2), ColorState(2), 0, 2)

    def test_failed_assign_leaves_state_untouched(self):
        f = path(3)
        c = PartialColoring(3, 2)
        s = ColorState(2)
        assign(f, c, s, 0, 0)
        assign(f, c, s, 1, 1)
        before = (c.copy(), s.copy())
        with pytest.raises(ColorConflict):
            assign(f, c, s, 2, 0)  # pair {0,1} again
        assert c == before[0] and s == before[1]

    def test_two_uncolored_neighbors_same_pair(self):
        # coloring the middle of a path both of whose neighbors share a
        # color must fail: one edge pair would repeat within the call
        f = path(3)
        c = PartialColoring(3, 3, [0, None, 0])
        s = ColorState.from_coloring(f, c)
        with pytest.raises(ColorConflict):
            assign(f, c, s, 1, 1)


class TestBatchState:
    def test_from_partial_skips_uncolored(self):
        f = path(3)
        s = ColorState.from_coloring(f, PartialColoring(3, 3, [0, None, 2]))
        assert s.used_pairs == set()
        assert s.degree_sum == [1, 0, 1]

    def test_from_total(self):
        f = path(3)
        s = ColorState.from_coloring(f, PartialColoring(3, 3, [0, 1, 2]))
        assert s.used_pairs == {(0, 1), (1, 2)}

    def test_rejects_pair_reuse(self):
        f = path(3)
        with pytest.raises(ColorConflict):
            ColorState.from_coloring(f, PartialColoring(3, 3, [0, 1, 0]))


class TestIsHarmonious:
    def test_p3_repeated_pair(self):
        assert not is_harmonious(path(3), PartialColoring(3, 3, [0, 1, 0]))

    def test_p3_rainbow(self):
        assert is_harmonious(path(3), PartialColoring(3, 3, [0, 1, 2]))

    def test_p4_three_colors(self):
        assert is_harmonious(path(4), PartialColoring(4, 3, [0, 1, 2, 0]))

    def test_monochrome_edge(self):
        assert not is_harmonious(path(2), PartialColoring(2, 2, [1, 1]))

    def test_partial_raises(self):
        with pytest.raises(ValueError):
            is_harmonious(path(2), PartialColoring(2, 2, [0, None]))


class TestLowerBounds:
    def test_degree(self):
        assert lower_bound_degree(star(5)) == 5
        assert lower_bound_degree(path(4)) == 3
        assert lower_bound_degree(Forest(1)) == 1
        assert lower_bound_degree(Forest(0)) == 0

    def test_nonadjacent_p4(self):
        assert lower_bound_nonadjacent(path(4)) == 3

    def test_nonadjacent_double_star(self):
        assert lower_bound_nonadjacent(build_double_broom(2, 4, 4)) == 5

    def test_nonadjacent_centers_at_distance_two(self):
        f = Forest(9, [(0, 1), (1, 2),
                       (0, 3), (0, 4), (0, 5), (2, 6), (2, 7), (2, 8)])
        assert lower_bound_nonadjacent(f) == 6

    def test_pairs(self):
        assert lower_bound_pairs(path(2)) == 2
        assert lower_bound_pairs(path(4)) == 3
        assert lower_bound_pairs(star(8)) == 5  # 7 edges: 4*3/2 < 7 <= 10
        assert lower_bound_pairs(Forest(3)) == 0

    @given(st.integers(min_value=2, max_value=9).flatmap(
        lambda n: st.lists(st.integers(min_value=0, max_value=n - 1),
                           min_size=n - 2, max_size=n - 2)))
    def test_bounds_are_consistent(self, code):
        f = prufer_decode(code)
        assert lower_bound_nonadjacent(f) >= lower_bound_degree(f)
        # h*(h-1)/2 covers m at the returned value but not below
        h = lower_bound_pairs(f)
        assert h * (h - 1) // 2 >= f.edge_count
        if h > 0:
            assert (h - 1) * (h - 2) // 2 < f.edge_count


class TestPredict:
    def test_star(self):
        assert predict_h(star(6)) == 6

    def test_nonadjacent_centers(self):
        f = Forest(9, [(0, 1), (1, 2),
                       (0, 3), (0, 4), (0, 5), (2, 6), (2, 7), (2, 8)])
        assert predict_h(f) == 6

    def test_t_delta_rejected_with_slack(self):
        for delta in (3, 4, 5):
            with pytest.raises(TheoremPreconditionError) as err:
                predict_h(build_t_delta(delta))
            assert err.value.slack == -1

    def test_adjacent_pair_stays_low(self):
        assert predict_h(build_double_broom(2, 4, 4)) == 5


class TestColoringFormat:
    def test_round_trip(self):
        c = PartialColoring(3, 5, [0, 4, 2])
        assert parse_coloring(emit_coloring(c)) == c

    def test_emit_refuses_partial(self):
        with pytest.raises(ValueError):
            emit_coloring(PartialColoring(2, 2, [0, None]))

    @pytest.mark.parametrize("text", [
        "", "2\n", "2 2\n0 0\n", "2 2\n1 0\n0 1\n", "2 2\n0 0\n1 2\n",
    ])
    def test_parse_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            parse_coloring(text)


@st.composite
def tree_and_attempts(draw):
    n = draw(st.integers(min_value=2, max_value=9))
    code = draw(st.lists(st.integers(min_value=0, max_value=n - 1),
                         min_size=n - 2, max_size=n - 2))
    f = prufer_decode(code)
    k = draw(st.integers(min_value=2, max_value=n + 2))
    seed = draw(st.integers(min_value=0, max_value=2 ** 32))
    return f, k, seed


class TestIncrementalBatchAgreement:
    @settings(max_examples=200)
    @given(tree_and_attempts())
    def test_incremental_equals_batch(self, args):
        f, k, seed = args
        rng = random.Random(seed)
        c = PartialColoring(f.n, k)
        s = ColorState(k)
        order = list(range(f.n))
        rng.shuffle(order)
        for v in order:
            try:
                assign(f, c, s, v, rng.randrange(k))
            except ColorConflict:
                pass
        assert ColorState.from_coloring(f, c) == s

    @settings(max_examples=100)
    @given(tree_and_attempts())
    def test_accepted_total_is_harmonious(self, args):
        f, k, seed = args
        rng = random.Random(seed)
        c = PartialColoring(f.n, k)
        s = ColorState(k)
        for v in range(f.n):
            for color in rng.sample(range(k), k):
                try:
                    assign(f, c, s, v, color)
                    break
                except ColorConflict:
                    continue
        if c.is_total():
            assert is_harmonious(f, c)

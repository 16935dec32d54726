import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimershuffle.lattice import EVEN, HORIZONTAL, ODD, VERTICAL, block_parity, centered_window, window_vertices
from dimershuffle.pyramid import (
    Brick,
    DimerConfig,
    PyramidError,
    bricks_to_dimers,
    canonical_key,
    check_removed_set,
    config_blocks,
    empty_room,
    enumerate_brick_partitions,
    enumerate_partitions,
    flip,
    increasing_flips,
    partition_series,
    room_blocks,
    room_partner,
    visible_partner,
)
from dimershuffle.series import ONE, Q0, Q1, TruncatedSeries, formula_Z

APEX = Brick(0, 0, 0)


def test_length_one_centre_is_a_vertical_pair():
    e = empty_room(1)
    assert e.partner((-1, -1)) == (-1, 0)
    assert e.partner((0, -1)) == (0, 0)
    assert room_blocks(1) == {(-1, -1): VERTICAL}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_empty_room_has_n_stacked_odd_blocks(n):
    blocks = room_blocks(n)
    assert len(blocks) == n
    assert {x for x, _ in blocks} == {-1}
    assert all(block_parity(c, n % 2) == ODD for c in blocks)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_shuffled_rooms_match_the_brick_model(n):
    for v in window_vertices(centered_window(10)):
        assert room_partner(n, v) == visible_partner(v, n)


def test_empty_room_window_too_small():
    with pytest.raises(PyramidError):
        empty_room(3, (-1, -1, 0, 0))


def test_bricks_to_dimers_base_case():
    assert bricks_to_dimers([], centered_window(6)) == empty_room(1)


def test_removing_apex_flips_the_centre():
    cfg = bricks_to_dimers([APEX], centered_window(6))
    assert cfg.block_state((-1, -1)) == HORIZONTAL
    assert cfg == flip(empty_room(1), (-1, -1))


def test_removing_a_light_brick_flips_an_even_block():
    before = bricks_to_dimers([APEX], centered_window(6))
    after = bricks_to_dimers([APEX, Brick(0, 1, 1)], centered_window(6))
    assert block_parity((-1, 0), 1) == EVEN
    assert before.block_state((-1, 0)) == HORIZONTAL
    assert after.block_state((-1, 0)) == VERTICAL


def test_removed_set_must_be_upward_closed():
    with pytest.raises(PyramidError):
        check_removed_set([Brick(0, 1, 1)])
    with pytest.raises(PyramidError):
        check_removed_set([Brick(1, 0, 0)])


def test_window_too_small_for_removed_set():
    pile = [pi for pi, _ in enumerate_brick_partitions(1, 4)][-1]
    with pytest.raises(PyramidError):
        bricks_to_dimers(pile, centered_window(1))


def test_flips_of_small_configs():
    e1 = empty_room(1)
    assert increasing_flips(e1) == [((-1, -1), ODD)]
    assert len(increasing_flips(empty_room(2))) == 2
    after = increasing_flips(flip(e1, (-1, -1)))
    assert len(after) == 2 and all(kind == EVEN for _, kind in after)


def test_flip_requires_a_block():
    with pytest.raises(PyramidError):
        flip(empty_room(1), (5, 5))


def test_enumerate_degree_zero_and_one():
    assert enumerate_partitions(1, 0) == [(empty_room(1), ONE)]
    assert [w for _, w in enumerate_partitions(1, 1)] == [ONE, Q0]


def test_enumerate_degree_three_series():
    want = TruncatedSeries({(0, 0): 1, (1, 0): 1, (1, 1): 2, (2, 1): 4, (1, 2): 1}, 3)
    assert partition_series(1, 3) == want


@pytest.mark.parametrize("n,d", [(1, 6), (2, 5), (3, 5), (4, 4)])
def test_brute_force_matches_product_formula(n, d):
    assert partition_series(n, d) == formula_Z(n, d)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_every_enumerated_config_is_valid_and_graded(n):
    items = enumerate_partitions(n, 5)
    degrees = [w.degree for _, w in items]
    assert degrees == sorted(degrees)
    keys = {canonical_key(cfg) for cfg, _ in items}
    assert len(keys) == len(items)
    for cfg, w in items:
        cfg.validate()
        assert w.is_polynomial()


@pytest.mark.parametrize("n", [1, 2])
def test_brick_sets_and_flip_sequences_agree(n):
    window = centered_window(n + 14)
    by_bricks = {}
    for pi, w in enumerate_brick_partitions(n, 5):
        cfg = bricks_to_dimers(pi, window, n)
        by_bricks[cfg.diff] = w
        dark = sum(1 for b in pi if b.dark)
        assert w == Q0 ** dark * Q1 ** (len(pi) - dark)
    by_flips = {cfg.diff: w for cfg, w in enumerate_partitions(n, 5)}
    assert by_bricks == by_flips


def test_canonical_key_of_empty_room_is_empty():
    assert canonical_key(empty_room(2)) == b"[2,[],[]]"


def test_keys_differ_after_one_flip():
    e = empty_room(1)
    assert canonical_key(e) != canonical_key(flip(e, (-1, -1)))


def test_two_paths_give_one_key():
    e = flip(empty_room(1), (-1, -1))
    (a, _), (b, _) = increasing_flips(e)
    ab = flip(flip(e, a), b)
    ba = flip(flip(e, b), a)
    assert canonical_key(ab) == canonical_key(ba)


@pytest.mark.parametrize("threads", [2, 4])
def test_thread_count_does_not_change_output(threads):
    one = enumerate_partitions(2, 5)
    many = enumerate_partitions(2, 5, threads=threads)
    assert [(canonical_key(c), w) for c, w in one] == [(canonical_key(c), w) for c, w in many]


def test_removed_dimers_complement_diff():
    cfg = flip(empty_room(1), (-1, -1))
    assert cfg.removed() == {((-1, -1), (-1, 0)), ((0, -1), (0, 0))}
    assert cfg.diff == {((-1, -1), (0, -1)), ((-1, 0), (0, 0))}


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.lists(st.integers(0, 50), max_size=6))
def test_random_flip_walks_stay_valid(n, picks):
    cfg, weight = empty_room(n), ONE
    for p in picks:
        moves = increasing_flips(cfg)
        corner, kind = moves[p % len(moves)]
        cfg = flip(cfg, corner)
        weight = weight * (Q0 if kind == ODD else Q1)
    cfg.validate()
    assert weight.degree == len(picks)
    found = {canonical_key(c): w for c, w in enumerate_partitions(n, len(picks))}
    assert found[canonical_key(cfg)] == weight


def test_blocks_of_config_include_room_blocks():
    assert config_blocks(empty_room(3)) == room_blocks(3)


def test_config_is_hashable_and_window_is_ignored():
    a = DimerConfig(1, frozenset(), (-3, -3, 2, 2))
    assert a == empty_room(1)
    assert len({a, empty_room(1)}) == 1

import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fastzz.barcode import (
    BarcodeError,
    PairClass,
    classify_pair,
    convert_barcode,
    map_by_positions,
    map_extended_to_updown,
    map_pair,
    map_pair_composed,
    map_pairs_array,
    parse_barcode,
    write_barcode,
)
from fastzz.conversion import convert_filt
from fastzz.filtration import gen_clique_family, gen_random_zigzag, parse_ops
from fastzz.intervals import ZigzagInterval, endpoint_type
from fastzz.reduction import PersistencePair, ReductionResult, reduce

from conftest import UV, clique_corpus, random_corpus


@pytest.mark.parametrize(
    "pair, kind",
    [((2, 3), PairClass.ORD), ((1, 4), PairClass.EXT), ((5, 6), PairClass.REL), ((3, 4), PairClass.EXT)],
)
def test_classify(pair, kind):
    assert classify_pair(PersistencePair(*pair, 0), 3) is kind


@pytest.mark.parametrize("pair", [(0, 1), (3, 3), (4, 2), (5, 7)])
def test_classify_out_of_range(pair):
    with pytest.raises(BarcodeError):
        classify_pair(PersistencePair(*pair, 0), 3)


def test_map_pair_uv(uv):
    _, reg = convert_filt(uv)
    assert map_pair(PersistencePair(2, 3, 0), reg) == ZigzagInterval(0, 2, 2, "CO")
    assert map_pair(PersistencePair(1, 4, 0), reg) == ZigzagInterval(0, 1, 5, "CC")
    assert map_pair(PersistencePair(5, 6, 1), reg) == ZigzagInterval(0, 4, 4, "OC")


def test_single_vertex():
    f = parse_ops("i 0\nd 0")
    D, reg = convert_filt(f)
    r = reduce(D)
    assert r.pair_set() == {(1, 2)}
    assert map_pair(r.pairs[0], reg) == ZigzagInterval(0, 1, 1, "CC")
    assert convert_barcode(r, reg) == [ZigzagInterval(0, 1, 1, "CC")]


def test_creator_after_destroyer_drops_dimension():
    # closed-closed up-down interval, creator at 6, destroyer at 3
    assert map_by_positions("CC", 6, 3, 1) == ZigzagInterval(0, 4, 6, "OO")
    assert map_by_positions("CC", 3, 6, 1) == ZigzagInterval(1, 4, 6, "CC")
    with pytest.raises(BarcodeError):
        map_by_positions("OO", 1, 2, 0)


def test_extended_to_updown_table():
    assert map_extended_to_updown(1, 2, 0, 3) == ("CO", 1, 2, 0)
    assert map_extended_to_updown(4, 5, 1, 3) == ("OC", 4, 5, 0)
    assert map_extended_to_updown(2, 4, 1, 3) == ("CC", 2, 4, 1)


def test_uv_barcode(uv):
    D, reg = convert_filt(uv)
    bars = convert_barcode(reduce(D), reg)
    out = io.StringIO()
    write_barcode(bars, out)
    assert out.getvalue() == "0 1 5 CC\n0 2 2 CO\n0 4 4 OC\n"
    assert parse_barcode(out.getvalue()) == bars


def test_convert_barcode_rejects_bad_essential(uv):
    D, reg = convert_filt(uv)
    r = reduce(D)
    with pytest.raises(BarcodeError, match="essential"):
        convert_barcode(ReductionResult(r.pairs, [(0, 0), (3, 1)]), reg)
    with pytest.raises(BarcodeError, match="essential"):
        convert_barcode(ReductionResult(r.pairs, [(1, 0)]), reg)


def test_dimension_minus_one_is_refused():
    _, reg = convert_filt(parse_ops("i 0\nd 0\ni 1\nd 1"))
    # vertex 1 is added after vertex 0 is deleted; pairing it with the cone of 0 is impossible
    with pytest.raises(BarcodeError, match="dimension -1"):
        map_pair(PersistencePair(2, 4, 0), reg)
    with pytest.raises(BarcodeError, match="dimension -1"):
        map_pairs_array([2], [4], reg)
    with pytest.raises(BarcodeError, match="out of range"):
        map_pairs_array([0], [4], reg)


def _check(f):
    D, reg = convert_filt(f)
    r = reduce(D)
    bars = convert_barcode(r, reg)
    assert 2 * len(bars) == len(f)
    assert bars == sorted(map_pair(p, reg) for p in r.pairs)
    for p in r.pairs:
        assert map_pair(p, reg) == map_pair_composed(p, reg)
    used = []
    for iv in bars:
        assert 1 <= iv.b <= iv.d <= len(f) - 1
        assert iv.dim >= 0
        assert endpoint_type(f, iv.b, iv.d) == iv.type
        used += [iv.b - 1, iv.d]
    # every op creates or destroys exactly one interval
    assert sorted(used) == list(range(len(f)))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 150), st.integers(1, 3))
def test_fused_equals_composed_random(seed, m, max_dim):
    _check(gen_random_zigzag(6, m, max_dim, seed))


def test_fused_equals_composed_corpora():
    for f in random_corpus(50) + clique_corpus(30):
        _check(f)
    _check(gen_clique_family(30, 2000, 3, seed=11))

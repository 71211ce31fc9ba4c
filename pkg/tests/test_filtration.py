import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fastzz.filtration import (
    DELETE,
    INSERT,
    FiltrationError,
    FiltrationOp,
    ParseError,
    ZigzagFiltration,
    close_filtration,
    gen_clique_family,
    gen_clique_zigzag,
    gen_random_zigzag,
    gen_updown,
    gen_updown_shuffle,
    is_updown,
    parse_ops,
    random_edge_events,
    shuffle_updown,
    validate,
    write_ops,
)
from fastzz.pipeline import fast_zigzag

from conftest import UV


def zz(*pairs):
    return ZigzagFiltration.from_pairs(pairs)


class TestParse:
    def test_transcription(self, uv):
        assert parse_ops(UV) == uv

    def test_sorts_vertices(self):
        assert parse_ops("i 2 1").ops == (FiltrationOp(INSERT, (1, 2)),)

    @pytest.mark.parametrize(
        "text, line",
        [("x 1 2", 1), ("i 0\ni a", 2), ("i 0\n\ni 1 1", 3), ("# c\nd", 2)],
    )
    def test_errors_name_line(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_ops(text)
        assert exc.value.lineno == line
        assert f"line {line}" in str(exc.value)

    def test_comments_and_blanks(self):
        assert len(parse_ops("# header\n\ni 0\n  \nd 0\n")) == 2

    def test_stream_input(self, uv):
        assert parse_ops(io.StringIO(UV)) == uv

    def test_roundtrip(self, uv):
        out = io.StringIO()
        write_ops(uv, out)
        assert out.getvalue() == UV


class TestValidate:
    def test_ok(self, uv):
        assert validate(uv).ok

    def test_missing_face(self):
        r = validate(zz(("i", [0]), ("i", [0, 1])))
        assert not r and r.index == 1 and "[1]" in r.reason and "missing" in r.reason

    def test_live_coface(self):
        r = validate(zz(("i", [0]), ("i", [1]), ("i", [0, 1]), ("d", [0])))
        assert not r and r.index == 3 and "coface [0, 1]" in r.reason

    def test_duplicate_and_absent(self):
        assert "duplicate" in validate(zz(("i", [0]), ("i", [0]))).reason
        assert "absent" in validate(zz(("d", [0]),)).reason

    def test_max_size(self, uv):
        assert validate(uv).max_size == 3


class TestClose:
    def test_tie_break(self):
        f = close_filtration(zz(("i", [0]), ("i", [1]), ("i", [0, 1])))
        assert [str(op) for op in f.ops[3:]] == ["d 0 1", "d 1", "d 0"]

    def test_closed_unchanged(self, uv):
        assert close_filtration(uv) is uv

    def test_single_vertex(self):
        assert close_filtration(zz(("i", [0]),)) == zz(("i", [0]), ("d", [0]))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10**6), st.integers(1, 30))
    def test_idempotent_and_valid(self, seed, cut):
        f = gen_random_zigzag(5, 30, 2, seed)
        prefix = ZigzagFiltration(f.ops[:cut])
        once = close_filtration(prefix)
        assert validate(once).ok and validate(once).final_size == 0
        assert close_filtration(once) == once
        assert len(once) % 2 == 0


class TestClique:
    def test_triangle_closes(self):
        events = [(INSERT, (0, 1)), (INSERT, (1, 2)), (INSERT, (0, 2))]
        f = gen_clique_zigzag(events, 2)
        ops = [str(op) for op in f.ops]
        assert ops[:7] == ["i 0", "i 1", "i 0 1", "i 2", "i 1 2", "i 0 2", "i 0 1 2"]
        assert validate(f).ok

    def test_insert_then_delete(self):
        f = gen_clique_zigzag([(INSERT, (0, 1)), (DELETE, (0, 1))], 2)
        assert [str(op) for op in f.ops] == ["i 0", "i 1", "i 0 1", "d 0 1", "d 1", "d 0"]

    def test_form_and_break_triangle(self):
        events = [("i", (0, 1)), ("i", (1, 2)), ("i", (0, 2)), ("d", (1, 2))]
        f = gen_clique_zigzag(events, 2)
        assert validate(f).ok
        assert "d 0 1 2" in [str(op) for op in f.ops]

    def test_max_dim_caps(self):
        events = [("i", e) for e in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]]
        assert gen_clique_zigzag(events, 2).max_dim() == 2
        assert gen_clique_zigzag(events, 3).max_dim() == 3

    @pytest.mark.parametrize("events", [[("i", (0, 1)), ("i", (0, 1))], [("d", (0, 1))]])
    def test_invalid_events(self, events):
        with pytest.raises(FiltrationError, match="edge event"):
            gen_clique_zigzag(events, 2)

    def test_family_valid_and_deterministic(self):
        a = gen_clique_family(50, 2000, 2, seed=7)
        assert validate(a).ok and len(a) % 2 == 0
        assert a == gen_clique_family(50, 2000, 2, seed=7)

    def test_length_bound(self):
        f = gen_clique_family(30, None, 2, seed=1, max_length=500)
        assert 500 <= len(f) < 600

    def test_random_events_valid(self):
        live = set()
        for kind, e in random_edge_events(10, 500, 3, density=0.3):
            if kind is INSERT:
                assert e not in live
                live.add(e)
            else:
                live.remove(e)


class TestRandom:
    def test_deterministic(self):
        assert gen_random_zigzag(5, 40, 2, 1) == gen_random_zigzag(5, 40, 2, 1)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 60), st.integers(0, 3))
    def test_valid_closed_even(self, seed, verts, m, max_dim):
        f = gen_random_zigzag(verts, m, max_dim, seed)
        r = validate(f)
        assert r.ok and r.final_size == 0
        assert len(f) % 2 == 0 and len(f) >= m
        assert f.max_dim() <= max_dim

    def test_repetitive(self):
        assert gen_random_zigzag(3, 60, 1, 0).repetitiveness() > 1


class TestShuffle:
    def test_preserves_orders(self):
        f = gen_updown(8, 0.5, 2, seed=4)
        g = shuffle_updown(f, seed=9)
        assert validate(g).ok
        assert [op for op in g if op.kind is INSERT] == [op for op in f if op.kind is INSERT]
        assert [op for op in g if op.kind is DELETE] == [op for op in f if op.kind is DELETE]
        assert g.repetitiveness() == 1.0
        assert g == shuffle_updown(f, seed=9)

    def test_actually_interleaves(self):
        f = gen_updown(8, 0.5, 2, seed=4)
        assert not is_updown(shuffle_updown(f, seed=9))

    def test_single_cell(self):
        f = zz(("i", [0]), ("d", [0]))
        assert shuffle_updown(f, 5) == f

    def test_rejects_zigzag(self, uv):
        with pytest.raises(FiltrationError, match="up-down"):
            shuffle_updown(zz(("i", [0]), ("d", [0]), ("i", [0]), ("d", [0])), 1)

    def test_same_interval_count(self):
        f = gen_updown(10, 0.4, 2, seed=2)
        g = shuffle_updown(f, seed=3)
        assert len(fast_zigzag(g)) == len(fast_zigzag(f)) == len(f) // 2

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_property(self, seed):
        g = gen_updown_shuffle(6, 0.5, 2, seed)
        assert validate(g).ok and g.repetitiveness() == 1.0


def test_repetitiveness():
    f = zz(("i", [0]), ("d", [0]), ("i", [0]), ("i", [1]), ("d", [1]), ("d", [0]))
    assert f.repetitiveness() == 1.5

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localuid.coloring import Coloring, greedy_dhop_unique
from localuid.errors import ParseError, ValidationError
from localuid.graph import Graph, path_graph
from localuid.ilp import (
    IlpInstance,
    augment_features,
    build_features,
    encode_bipartite,
    onehot_color_features,
    parse_ilp,
    write_ilp,
)
from localuid.splitmix import SplitMix64

ONE = '{"n": 1, "m": 1, "c": [1], "b": [2], "A": [[0, 0, 1]]}'
TWO = '{"n": 2, "m": 1, "c": [1, -1], "b": [3], "A": [[0, 0, 1], [0, 1, 2]]}'


def test_parse_smallest_instance():
    ilp = parse_ilp(ONE)
    assert (ilp.n, ilp.m, ilp.c, ilp.b, ilp.A) == (1, 1, (1.0,), (2.0,), ((0, 0, 1.0),))


def test_parse_two_nonzeros():
    assert parse_ilp(TWO).nnz == 2


@pytest.mark.parametrize(
    "spec",
    [
        {"n": 1, "m": 1, "c": [1], "b": [2], "A": [[0, 0, 1], [0, 0, 2]]},
        {"n": 1, "m": 1, "c": [1], "b": [2], "A": [[1, 0, 1]]},
        {"n": 1, "m": 1, "c": [1], "b": [2], "A": [[0, 1, 1]]},
        {"n": 1, "m": 1, "c": [1, 2], "b": [2], "A": []},
        {"n": 1, "m": 1, "c": [1], "b": [2], "A": [[0, 0, 0]]},
        {"n": 1, "m": 1, "c": [1], "b": [2], "A": [], "integrality": [True, False]},
    ],
)
def test_invalid_instances(spec):
    with pytest.raises(ValidationError):
        parse_ilp(json.dumps(spec))


def test_non_finite_rejected():
    with pytest.raises(ValidationError):
        parse_ilp('{"n": 1, "m": 1, "c": [NaN], "b": [2], "A": []}')
    with pytest.raises(ValidationError):
        parse_ilp('{"n": 1, "m": 1, "c": [1], "b": [2], "A": [[0, 0, Infinity]]}')


@pytest.mark.parametrize(
    "text",
    ["nope", '{"n": 1}', '{"n": 1, "m": 1, "c": [1], "b": [2], "A": [[0, 0]]}',
     '{"n": 1, "m": 1, "c": ["x"], "b": [2], "A": []}',
     '{"n": 1, "m": 1, "c": [1], "b": [2], "A": [], "integrality": [1]}'],
)
def test_malformed_instances(text):
    with pytest.raises(ParseError):
        parse_ilp(text)


def test_encode_one_by_one():
    bg = encode_bipartite(parse_ilp(ONE))
    g = bg.underlying
    assert g.num_nodes == 2
    assert g.edges == ((0, 1, 1.0),)
    assert g.node_labels == ((1.0,), (2.0,))
    assert bg.side(0) == "variable" and bg.side(1) == "constraint"


def test_encode_two_by_one():
    g = encode_bipartite(parse_ilp(TWO)).underlying
    assert g.edges == ((0, 2, 1.0), (1, 2, 2.0))


def test_zero_row_constraint_isolated():
    ilp = IlpInstance(2, 2, (1.0, 1.0), (1.0, 5.0), ((0, 0, 1.0), (0, 1, 1.0)))
    bg = encode_bipartite(ilp)
    assert bg.underlying.degree(3) == 0


ilp_strategy = st.integers(1, 6).flatmap(
    lambda n: st.integers(1, 5).flatmap(
        lambda m: st.tuples(
            st.just(n),
            st.just(m),
            st.lists(st.floats(allow_nan=False, allow_infinity=False, width=64), min_size=n, max_size=n),
            st.lists(st.floats(allow_nan=False, allow_infinity=False, width=64), min_size=m, max_size=m),
            st.dictionaries(
                st.tuples(st.integers(0, m - 1), st.integers(0, n - 1)),
                st.floats(allow_nan=False, allow_infinity=False).filter(lambda x: x != 0.0),
                max_size=n * m,
            ),
        )
    )
)


def _instance(t):
    n, m, c, b, entries = t
    return IlpInstance(n, m, tuple(c), tuple(b), tuple((j, i, v) for (j, i), v in entries.items()))


@settings(max_examples=100, deadline=None)
@given(ilp_strategy)
def test_round_trip_is_bit_exact(t):
    ilp = _instance(t)
    back = parse_ilp(write_ilp(ilp))
    assert back == ilp
    assert [np.float64(x).tobytes() for x in back.c] == [np.float64(x).tobytes() for x in ilp.c]


@settings(max_examples=100, deadline=None)
@given(ilp_strategy, st.data())
def test_encoding_injective(t, data):
    ilp = _instance(t)
    field = data.draw(st.sampled_from(["c", "b", "A"]))
    n, m, c, b, entries = t
    if field == "c":
        c = list(c)
        c[0] = c[0] + 1.0 if abs(c[0]) < 1e300 else 0.0
    elif field == "b":
        b = list(b)
        b[0] = b[0] + 1.0 if abs(b[0]) < 1e300 else 0.0
    else:
        entries = dict(entries)
        if (0, 0) in entries:
            del entries[(0, 0)]
        else:
            entries[(0, 0)] = 1.0
    other = _instance((n, m, c, b, entries))
    if other == ilp:
        return
    assert encode_bipartite(other).underlying != encode_bipartite(ilp).underlying


def test_encoding_is_bipartite_and_counts_nonzeros():
    ilp = parse_ilp(TWO)
    bg = encode_bipartite(ilp)
    assert bg.underlying.num_edges == ilp.nnz
    for u, v, _ in bg.underlying.edges:
        assert {bg.side(u), bg.side(v)} == {"variable", "constraint"}


def test_augment_none_is_identity():
    bg = encode_bipartite(parse_ilp(TWO))
    fm = augment_features(bg, "none")
    assert np.array_equal(fm.features, np.array(bg.underlying.node_labels))


def test_augment_position():
    ilp = IlpInstance(3, 2, (1.0, 2.0, 3.0), (4.0, 5.0), ((0, 0, 1.0), (1, 2, 1.0)))
    fm = augment_features(encode_bipartite(ilp), "position")
    assert fm.features[:, -1].tolist() == [0.0, 0.5, 1.0, 0.0, 0.0]
    assert fm.features[:, 0].tolist() == [1.0, 2.0, 3.0, 4.0, 5.0]


def test_augment_coloruid():
    g = path_graph(3)
    fm = augment_features(g, "coloruid", coloring=Coloring((0, 1, 2), 3))
    assert fm.features[:, -1].tolist() == [0.0, 0.5, 1.0]
    single = augment_features(Graph(1), "coloruid", coloring=Coloring((0,), 1))
    assert single.features.tolist() == [[0.0]]


def test_augment_uniform_reproducible():
    bg = encode_bipartite(parse_ilp(TWO))
    a = augment_features(bg, "uniform", seed=42)
    b = augment_features(bg, "uniform", seed=42)
    c = augment_features(bg, "uniform", seed=43)
    assert a.features.tobytes() == b.features.tobytes()
    assert not np.array_equal(a.features, c.features)
    assert ((a.features[:, -1] >= 0) & (a.features[:, -1] < 1)).all()
    assert a.to_dict()["seed"] == 42 and a.to_dict()["generator"] == "splitmix64"


def test_augment_missing_inputs():
    g = path_graph(3)
    with pytest.raises(ValidationError):
        augment_features(g, "uniform")
    with pytest.raises(ValidationError):
        augment_features(g, "coloruid")
    with pytest.raises(ValidationError):
        augment_features(g, "orbit")


def test_splitmix_reference_values():
    # first outputs for seed 0 and 1234567 from the published C reference
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(2)] == [6457827717110365317, 3203168211198807973]


def test_feature_file_round_trip():
    g = encode_bipartite(parse_ilp(TWO))
    c, _ = greedy_dhop_unique(g.underlying, 1)
    fm = augment_features(g, "coloruid", coloring=c)
    back = build_features(json.loads(json.dumps(fm.to_dict())))
    assert back.features.tobytes() == fm.features.tobytes()
    assert back.scheme == "coloruid"


def test_onehot_alternative():
    feats = onehot_color_features(path_graph(3), Coloring((0, 1, 2), 3))
    assert feats.tolist() == np.eye(3).tolist()

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pivotal.allocation import (
    Basis,
    PopulationTable,
    TableError,
    invariance_report,
    load_population_table,
    power_based_weights,
    sqrt_weights,
)
from pivotal.power import PowerConfig, Strategy, VotingScheme

B, T = VotingScheme.BINARY, VotingScheme.TERNARY
MALTA_GERMANY = b"name,population\nMalta,400000\nGermany,82300000"

names = st.text("abcdefghij", min_size=1, max_size=6)
tables = st.lists(
    st.tuples(names, st.integers(1, 10**9)), min_size=1, max_size=8, unique_by=lambda e: e[0]
).map(PopulationTable.from_pairs)


def test_load_example():
    table = load_population_table(MALTA_GERMANY)
    assert table.entries == (("Malta", 400000), ("Germany", 82300000))


def test_load_accepts_crlf_whitespace_and_stream(tmp_path):
    path = tmp_path / "t.csv"
    path.write_bytes(b"name , population\r\n  Malta , 400000 \r\nGermany,82300000\r\n")
    with open(path, "rb") as fh:
        table = load_population_table(fh)
    assert table.names == ["Malta", "Germany"]


@pytest.mark.parametrize(
    "data, match",
    [
        (b"name,population\nX,0", "population"),
        (b"name,population\nA,10\nA,20", "duplicate"),
        (b"name,population\n", "no data"),
        (b"", "empty"),
        (b"name,pop\nA,1", "header"),
        (b"name,population\nA,1\nB,2,3", "line 3"),
        (b'name,population\nA,"1,000"', "line 2"),
        (b"name,population\nA,1e5", "line 2"),
        (b"name,population\nA,-4", "line 2"),
        (b"name,population\n,4", "empty name"),
        (b"name,population\nA,\xff", "UTF-8"),
    ],
)
def test_load_errors(data, match):
    with pytest.raises(TableError, match=match):
        load_population_table(data)


def test_duplicate_after_trimming():
    with pytest.raises(TableError, match="duplicate"):
        load_population_table(b"name,population\nA ,1\n A,2")


def test_sqrt_weight_examples():
    w = sqrt_weights(load_population_table(MALTA_GERMANY)).as_dict()
    assert w["Germany"] / w["Malta"] == pytest.approx(math.sqrt(205.75), rel=1e-13)
    assert w["Germany"] / w["Malta"] == pytest.approx(14.344, abs=5e-4)
    assert sqrt_weights(PopulationTable.from_pairs([("A", 7)])).weights == [1.0]
    for n in (1, 2, 10**9):
        assert sqrt_weights(PopulationTable.from_pairs([("A", n), ("B", n)])).weights == [0.5, 0.5]


def test_power_weights_examples():
    table = load_population_table(MALTA_GERMANY)
    tw = power_based_weights(table, T)
    bw = power_based_weights(table, B)
    assert tw.basis is Basis.INVERSE_POWER_TERNARY and bw.basis is Basis.INVERSE_POWER_BINARY
    for a, b, s in zip(tw.weights, bw.weights, sqrt_weights(table).weights):
        assert a == pytest.approx(b, abs=1e-12)
        assert a == pytest.approx(s, rel=1e-4)
    single = PopulationTable.from_pairs([("A", 3)])
    assert power_based_weights(single, B).weights == [1.0]
    assert power_based_weights(single, T).weights == [1.0]


def test_small_table_uses_exact_powers():
    # populations 2 and 3: ternary powers 2/3 and 5/9 give weights 3/2 : 9/5
    table = PopulationTable.from_pairs([("a", 2), ("b", 3)])
    w = power_based_weights(table, T).weights
    assert w == pytest.approx([15 / 33, 18 / 33], abs=1e-15)


def test_report_examples():
    report = invariance_report(load_population_table(MALTA_GERMANY))
    for row in report.rows:
        assert row.ratio == pytest.approx(math.sqrt(1.5), abs=1e-6)
    assert report.max_deviation["sqrt-ternary"] < 1e-4
    equal = invariance_report(PopulationTable.from_pairs([("a", 5000), ("b", 5000)]))
    for row in equal.rows:
        assert row.sqrt_weight == row.binary_weight == row.ternary_weight == 0.5


def test_report_max_deviation_consistent():
    table = PopulationTable.from_pairs([("a", 10), ("b", 300), ("c", 7000)])
    report = invariance_report(table)
    assert max(r.max_dev for r in report.rows) == pytest.approx(max(report.max_deviation.values()))
    assert report.max_deviation["sqrt-binary"] > 0


def test_table_invariants():
    with pytest.raises(TableError):
        PopulationTable(())
    with pytest.raises(TableError):
        PopulationTable.from_pairs([("a", 0)])


@settings(max_examples=60)
@given(tables)
def test_weights_normalized(table):
    for alloc in (
        sqrt_weights(table),
        power_based_weights(table, B),
        power_based_weights(table, T),
    ):
        assert math.fsum(alloc.weights) == pytest.approx(1.0, abs=1e-12)
        assert [n for n, _ in alloc.entries] == table.names
        assert all(0 < w <= 1 for w in alloc.weights)


@settings(max_examples=60)
@given(tables, st.randoms(use_true_random=False))
def test_permutation_equivariance(table, rnd):
    perm = list(table.entries)
    rnd.shuffle(perm)
    shuffled = PopulationTable(tuple(perm))
    for fn in (sqrt_weights, lambda t: power_based_weights(t, T)):
        original = fn(table).as_dict()
        permuted = fn(shuffled).as_dict()
        for name in table.names:
            assert permuted[name] == pytest.approx(original[name], abs=1e-15)


@settings(max_examples=60)
@given(tables, st.integers(1, 1000))
def test_scale_invariance(table, lam):
    scaled = PopulationTable.from_pairs([(n, p * lam) for n, p in table.entries])
    for a, b in zip(sqrt_weights(table).weights, sqrt_weights(scaled).weights):
        assert abs(a - b) <= 1e-12


@settings(max_examples=60)
@given(st.lists(st.integers(2, 10**9), min_size=1, max_size=10))
def test_scheme_invariance_asymptotic(pops):
    table = PopulationTable.from_pairs([(f"c{i}", p) for i, p in enumerate(pops)])
    bw = power_based_weights(table, B, Strategy.ASYMPTOTIC).weights
    tw = power_based_weights(table, T, Strategy.ASYMPTOTIC).weights
    for a, b in zip(bw, tw):
        assert abs(a - b) <= 1e-12


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(10**4, 2 * 10**4), min_size=1, max_size=4))
def test_scheme_invariance_exact_path(pops):
    table = PopulationTable.from_pairs([(f"c{i}", p) for i, p in enumerate(pops)])
    config = PowerConfig(exact_threshold=2 * 10**4)
    bw = power_based_weights(table, B, config=config).weights
    tw = power_based_weights(table, T, config=config).weights
    for a, b in zip(bw, tw):
        assert a == pytest.approx(b, rel=1e-3)

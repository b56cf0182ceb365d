import pytest
from hypothesis import given, settings, strategies as st

from parabolic_counts.matrices import (
    BudgetExceeded,
    GroupSpec,
    ParabolicSpec,
    algebra,
    burnside_count,
    centralizer_order,
    centralizer_order_scan,
    conjugation_action,
    double_count_check,
    enumerate_group,
    enumerate_levi,
    enumerate_lie,
    enumerate_nilradical,
    enumerate_parabolic,
    enumerate_unipotent_radical,
    f_nilradical_lie,
    f_parabolic_group,
    f_parabolic_lie,
    is_semisimple,
    jordan_add,
    jordan_mult,
    matrix_from_rows,
    normalizer_of_parabolic,
    orbit,
    orbit_report_json,
    orbit_representatives,
    parse_matrix,
    semisimple_into_levi,
    serialize_matrix,
)
from parabolic_counts.weyl import gl_order

GL22 = GroupSpec.make("GL", 2, 2)
GL23 = GroupSpec.make("GL", 2, 3)
GL32 = GroupSpec.make("GL", 3, 2)
BOREL2 = ParabolicSpec((1, 1))


def m(group, rows):
    return matrix_from_rows(group.field, rows)


@pytest.mark.parametrize("n,qq", [(1, 2), (2, 2), (2, 3), (3, 2), (2, 4), (2, 5)])
def test_group_orders(n, qq):
    group = GroupSpec.make("GL", n, qq)
    assert len(enumerate_group(group)) == gl_order(n, qq) == group.order
    assert len(enumerate_lie(group)) == qq ** (n * n)


def test_sl_orders():
    assert len(enumerate_group(GroupSpec.make("SL", 2, 3))) == 24
    assert len(enumerate_group(GroupSpec.make("SL", 3, 2))) == 168


def test_parabolic_pieces():
    assert len(enumerate_parabolic(GL22, BOREL2)) == 2
    assert len(enumerate_levi(GL22, BOREL2)) == 1
    assert len(enumerate_parabolic(GL23, BOREL2)) == 12
    assert enumerate_nilradical(GL22, BOREL2) == (m(GL22, [[0, 0], [0, 0]]), m(GL22, [[0, 1], [0, 0]]))
    par = ParabolicSpec((2, 1))
    assert len(enumerate_parabolic(GL32, par)) == len(enumerate_levi(GL32, par)) * len(
        enumerate_unipotent_radical(GL32, par))


def test_parabolic_spec_parse_and_check():
    assert ParabolicSpec.parse("2,1").composition == (2, 1)
    with pytest.raises(ValueError):
        ParabolicSpec((2, 1)).check(2)


def test_serialization_roundtrip():
    for x in enumerate_lie(GL23):
        assert parse_matrix(serialize_matrix(x), GL23.field) == x


def test_jordan_examples():
    M = algebra(GL22)
    u = m(GL22, [[1, 1], [0, 1]])
    pair = jordan_mult(M, u)
    assert pair.semisimple == M.identity and pair.unipotent == u
    M3 = algebra(GL23)
    d = m(GL23, [[2, 0], [0, 1]])
    assert jordan_mult(M3, d).unipotent == M3.identity
    x = m(GL23, [[1, 1], [0, 1]])
    add = jordan_add(M3, x)
    assert add.semisimple == M3.identity and add.nilpotent == m(GL23, [[0, 1], [0, 0]])


@pytest.mark.parametrize("group", [GL22, GL23, GL32], ids=str)
def test_jordan_decomposition_everywhere(group):
    M = algebra(group)
    for g in enumerate_group(group):
        p = jordan_mult(M, g)
        assert M.mul(p.semisimple, p.unipotent) == g
        assert M.mul(p.semisimple, p.unipotent) == M.mul(p.unipotent, p.semisimple)
        assert is_semisimple(M, p.semisimple)
    for x in enumerate_lie(group)[::3]:
        a = jordan_add(M, x)
        assert M.add(a.semisimple, a.nilpotent) == x
        assert M.is_nilpotent(a.nilpotent) and is_semisimple(M, a.semisimple)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([4, 5, 7, 8, 9]), st.lists(st.integers(0, 100), min_size=4, max_size=4))
def test_jordan_add_property(qq, raw):
    group = GroupSpec.make("GL", 2, qq)
    M = algebra(group)
    x = tuple(r % qq for r in raw)
    a = jordan_add(M, x)
    assert M.add(a.semisimple, a.nilpotent) == x
    assert M.mul(a.semisimple, a.nilpotent) == M.mul(a.nilpotent, a.semisimple)


def test_centralizer_examples():
    assert centralizer_order(GL22, m(GL22, [[1, 0], [0, 1]])) == 6
    assert centralizer_order(GL22, m(GL22, [[1, 1], [0, 1]])) == 2
    assert centralizer_order(GL23, m(GL23, [[0, 0], [0, 0]])) == 48
    assert centralizer_order(GL23, m(GL23, [[1, 0], [0, 2]])) == 4


@pytest.mark.parametrize("group", [GL22, GL23], ids=str)
def test_centralizer_matches_scan(group):
    for x in enumerate_lie(group)[::2]:
        assert centralizer_order(group, x) == centralizer_order_scan(group, x)


def test_burnside_counts():
    act = conjugation_action(GL22)
    G = enumerate_group(GL22)
    assert burnside_count(G, G, act) == 3
    assert burnside_count(G, enumerate_lie(GL22), act) == 6
    assert burnside_count(enumerate_group(GL23), enumerate_group(GL23), conjugation_action(GL23)) == 8


def test_f_examples():
    one = algebra(GL22).identity
    assert f_parabolic_group(GL22, one, BOREL2) == 3
    assert f_parabolic_group(GL22, m(GL22, [[1, 1], [0, 1]]), BOREL2) == 1
    assert f_parabolic_group(GL22, m(GL22, [[0, 1], [1, 1]]), BOREL2) == 0
    assert f_parabolic_lie(GL22, m(GL22, [[0, 0], [0, 0]]), BOREL2) == 3
    assert f_nilradical_lie(GL22, m(GL22, [[0, 1], [0, 0]]), BOREL2) == 1
    assert f_parabolic_lie(GL22, m(GL22, [[0, 1], [1, 1]]), BOREL2) == 0
    assert f_parabolic_group(GL22, one, ParabolicSpec((2,))) == 1


def test_orbit_representatives():
    G = enumerate_group(GL22)
    assert len(orbit_representatives(G, GL22)) == 3
    nilp = [x for x in enumerate_lie(GL22) if algebra(GL22).is_nilpotent(x)]
    assert len(orbit_representatives(nilp, GL22)) == 2
    reps = orbit_representatives(nilp, GL22, meeting=enumerate_nilradical(GL22, BOREL2))
    assert reps == [m(GL22, [[0, 0], [0, 0]]), m(GL22, [[0, 0], [1, 0]])]
    assert '"orbit_size": 3' in orbit_report_json(GL22, BOREL2, reps)


@pytest.mark.parametrize("group", [GL22, GL23], ids=str)
def test_orbit_stabilizer(group):
    for x in enumerate_lie(group)[::5]:
        assert len(orbit(group, x)) * centralizer_order(group, x) == group.order


def test_normalizer_is_parabolic():
    for group in (GL22, GL23, GL32):
        for comp in [(1,) * group.n, (group.n,)]:
            par = ParabolicSpec(comp)
            size = len(enumerate_parabolic(group, par))
            assert normalizer_of_parabolic(group, par) == size
            assert normalizer_of_parabolic(group, par, lie=True) == size


@pytest.mark.parametrize("group", [GL22, GL23, GL32], ids=str)
def test_semisimple_parts_conjugate_into_levi(group):
    for comp in [(1,) * group.n, (2, 1) if group.n == 3 else (2,)]:
        par = ParabolicSpec(comp)
        for lie in (False, True):
            checked, failures = semisimple_into_levi(group, par, lie)
            assert checked > 0 and failures == []


@pytest.mark.parametrize("group", [GL22, GL23], ids=str)
def test_double_count(group):
    for x in enumerate_lie(group)[::4]:
        lhs, rhs = double_count_check(group, BOREL2, x)
        assert lhs == rhs


def test_budget_refusal(monkeypatch):
    with pytest.raises(BudgetExceeded) as err:
        enumerate_group(GroupSpec.make("GL", 3, 7), budget=1000)
    assert err.value.size == gl_order(3, 7)
    assert "exceeds budget 1000" in str(err.value)
    monkeypatch.setenv("PARABOLIC_COUNTS_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        enumerate_lie(GroupSpec.make("GL", 2, 11))


def test_sl_lie_degenerate():
    with pytest.raises(ValueError, match="degenerate"):
        GroupSpec.make("SL", 2, 2).check_lie()
    GroupSpec.make("SL", 2, 3).check_lie()

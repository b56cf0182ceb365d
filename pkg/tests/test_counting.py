import csv
import io
import json

import pytest

from parabolic_counts.counting import (
    SIGN_CANDIDATES,
    count,
    hc_induction_lie,
    k_group,
    k_lie,
    k_nil,
    k_nil_brute,
    k_nil_formula,
    k_nil_fourier,
    lemma_sum_group,
    lemma_sum_lie,
    lemma_sum_nil,
    levi_average,
    one,
    reports_to_csv,
    select_sign_convention,
    type_partition_group,
    type_partition_lie,
    verify_f_identities,
    verify_fourier,
    verify_hc_nilradical,
    verify_regular_decomposition,
    verify_trivial_decomposition_additive,
    verify_trivial_decomposition_group,
)
from parabolic_counts.matrices import (
    GroupSpec,
    ParabolicSpec,
    algebra,
    enumerate_group,
    enumerate_levi,
    enumerate_lie,
    enumerate_lie_parabolic,
    enumerate_nilradical,
    enumerate_parabolic,
    enumerate_unipotent_radical,
    f_nilradical_lie,
    f_parabolic_lie,
)
from parabolic_counts.weyl import TypeLabel, compositions

GRID = [("GL", 2, 2), ("GL", 2, 3), ("GL", 3, 2)]
CELLS = [(k, n, qq, c) for k, n, qq in GRID for c in compositions(n)]
ids = [f"{k}{n}-F{qq}-{','.join(map(str, c))}" for k, n, qq, c in CELLS]


def orbit_count(acting, acted, group):
    """Number of orbits found by flood fill, independent of Burnside."""
    M = algebra(group)
    pairs = [(h, M.inverse(h)) for h in acting]
    left = set(acted)
    orbits = 0
    while left:
        x = left.pop()
        stack = [x]
        while stack:
            y = stack.pop()
            for h, hi in pairs:
                z = M.mul(M.mul(h, y), hi)
                if z in left:
                    left.remove(z)
                    stack.append(z)
        orbits += 1
    return orbits


@pytest.mark.parametrize("kind,n,qq,comp", CELLS, ids=ids)
def test_k_group_engines_and_orbit_oracle(kind, n, qq, comp):
    group, par = GroupSpec.make(kind, n, qq), ParabolicSpec(comp)
    rep = k_group(group, par)
    assert rep.agree
    assert rep.brute == orbit_count(enumerate_parabolic(group, par), enumerate_group(group), group)


def commuting_pairs(group, ambient):
    """|{(g, x) in G^F x ambient : g x = x g}|, counted from the g side."""
    M = algebra(group)
    ambient = list(ambient)
    return sum(1 for g in enumerate_group(group) for x in ambient if M.mul(g, x) == M.mul(x, g))


@pytest.mark.parametrize("kind,n,qq,comp", CELLS, ids=ids)
def test_k_lie_engines_and_pair_oracle(kind, n, qq, comp):
    group, par = GroupSpec.make(kind, n, qq), ParabolicSpec(comp)
    rep = k_lie(group, par)
    assert rep.agree
    pairs = commuting_pairs(group, enumerate_lie_parabolic(group, par))
    assert pairs % len(enumerate_parabolic(group, par)) == 0
    assert rep.brute == pairs // len(enumerate_parabolic(group, par))


@pytest.mark.parametrize("kind,n,qq,comp", CELLS, ids=ids)
def test_k_nil_three_routes(kind, n, qq, comp):
    group, par = GroupSpec.make(kind, n, qq), ParabolicSpec(comp)
    rep = k_nil(group, par)
    assert rep.agree
    assert rep.brute == lemma_sum_nil(group, par)
    assert rep.brute == commuting_pairs(group, enumerate_nilradical(group, par)) // len(
        enumerate_unipotent_radical(group, par))
    assert rep.brute == k_nil_fourier(group, par)


def test_anchors():
    G = GroupSpec.make("GL", 2, 2)
    assert k_group(G, ParabolicSpec((1, 1))).value == 4
    assert k_lie(G, ParabolicSpec((2,))).value == 6
    assert k_nil(G, ParabolicSpec((1, 1))).value == 4
    # with P = G the nilradical is zero and the count is |G^F|
    assert k_nil(G, ParabolicSpec((2,))).value == 6
    assert k_group(GroupSpec.make("GL", 2, 5), ParabolicSpec((1, 1))).value == 40


def test_lemma_sums():
    for kind, n, qq in GRID:
        group = GroupSpec.make(kind, n, qq)
        for comp in compositions(n):
            par = ParabolicSpec(comp)
            assert lemma_sum_group(group, par) == k_group(group, par, "brute").value
            assert lemma_sum_lie(group, par) == k_lie(group, par, "brute").value


def test_sign_selection_is_unique():
    winner, failures = select_sign_convention()
    assert winner == "torus"
    assert failures["torus"] == ()
    assert all(failures[c] for c in SIGN_CANDIDATES if c != "torus")


def test_sl_counts():
    group = GroupSpec.make("SL", 2, 3)
    for comp in compositions(2):
        par = ParabolicSpec(comp)
        for q in ("group", "lie", "nil"):
            assert count(q, group, par).agree


def test_census_partitions_ambient():
    for kind, n, qq in GRID + [("SL", 2, 3)]:
        group = GroupSpec.make(kind, n, qq)
        assert sum(f.size for f in type_partition_group(group)) == group.order
        assert sum(f.size for f in type_partition_lie(group)) == group.lie_size


def test_gl1_fiber_counts():
    for qq in (2, 3, 5, 7):
        fibers = type_partition_lie(GroupSpec.make("GL", 1, qq))
        assert len(fibers) == 1 and fibers[0].size == qq and fibers[0].classes == qq
        groups = type_partition_group(GroupSpec.make("GL", 1, qq))
        assert groups[0].size == qq - 1


def test_levi_average_examples():
    central = TypeLabel.parse("{(1,2):[1,1]}")
    assert levi_average(central, (1, 1), 2) == 3
    assert levi_average(central, (2,), 3) == 1
    assert levi_average(TypeLabel.parse("{(2,1):[1]}"), (1, 1), 3) == 0


def test_hc_induction_examples():
    group = GroupSpec.make("GL", 2, 3)
    par = ParabolicSpec((1, 1))
    for x in enumerate_lie(group)[::3]:
        assert hc_induction_lie(group, par, one, x) == f_parabolic_lie(group, x, par)
        assert hc_induction_lie(group, par, one, x, invariant=False) == f_parabolic_lie(group, x, par)
    whole = ParabolicSpec((2,))
    M = algebra(group)
    for x in enumerate_lie(group)[::5]:
        assert hc_induction_lie(group, whole, M.trace, x) == M.trace(x)


def test_nilradical_f_is_induced_delta():
    group = GroupSpec.make("GL", 2, 2)
    par = ParabolicSpec((1, 1))
    zero = (0,) * 4
    for x in enumerate_lie(group):
        got = hc_induction_lie(group, par, lambda y: 1 if y == zero else 0, x)
        assert got == f_nilradical_lie(group, x, par)


@pytest.mark.parametrize("n,qq", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_trivial_decomposition_group(n, qq):
    assert verify_trivial_decomposition_group(n, qq).ok


@pytest.mark.parametrize("kind,n,qq,comp", CELLS, ids=ids)
def test_f_identities(kind, n, qq, comp):
    group, par = GroupSpec.make(kind, n, qq), ParabolicSpec(comp)
    assert verify_f_identities(group, par).ok
    assert verify_f_identities(group, par, lie=True).ok


@pytest.mark.parametrize("comp", [(1, 1), (2,), (1, 1, 1), (2, 1), (3,)])
def test_trivial_decomposition_additive(comp):
    rep = verify_trivial_decomposition_additive(comp, 2)
    assert rep.ok and rep.checked > 0


@pytest.mark.parametrize("rho,qq", [((1,), 2), ((1,), 3), ((1,), 5), ((1, 1), 2), ((2,), 2)])
def test_fourier(rho, qq):
    assert verify_fourier(rho, qq).ok


@pytest.mark.parametrize("comp,qq", [((1,), 2), ((1,), 3), ((1,), 5), ((2,), 2), ((1, 1), 2)])
def test_regular_decomposition(comp, qq):
    assert verify_regular_decomposition(comp, qq).ok


def test_hc_nilradical():
    for comp in [(1, 1), (2,)]:
        assert verify_hc_nilradical(GroupSpec.make("GL", 2, 2), ParabolicSpec(comp)).ok


def test_formula_breakdown_and_reports():
    group, par = GroupSpec.make("GL", 2, 2), ParabolicSpec((1, 1))
    value, rows, lams = k_nil_formula(group, par)
    assert value == k_nil_brute(group, par) == 4
    assert sorted(map(tuple, lams)) == [(1, 1), (2,)]
    rep = k_nil(group, par)
    d = json.loads(rep.to_json(timing=False))
    assert d["extra"]["sign_convention"] == "torus" and "ms_brute" not in d
    table = list(csv.reader(io.StringIO(reports_to_csv([rep, k_group(group, par)]))))
    assert table[0][:4] == ["group", "parabolic", "quantity", "q"]
    assert [r[2] for r in table[1:]] == ["nil", "group"]


def test_engine_validation():
    with pytest.raises(ValueError):
        k_group(GroupSpec.make("GL", 2, 2), ParabolicSpec((2,)), engine="fast")
    with pytest.raises(ValueError):
        count("torus", GroupSpec.make("GL", 2, 2), ParabolicSpec((2,)))
    assert len(enumerate_levi(GroupSpec.make("GL", 2, 2), ParabolicSpec((2,)))) == 6

import random

import pytest

from wittk.errors import DomainError, ResourceError
from wittk.ktheory import (
    check_v_matrix,
    k_group,
    k_group_even,
    max_stages,
    ses_diagram_check,
    tower_cyclotomic,
    tower_fermat,
    unit_group_oracle,
    v_map,
    v_matrix,
    witt_quotient_group,
)
from wittk.truncation import ts_divide, ts_interval


def test_quotient_examples():
    assert witt_quotient_group(2, ts_interval(2), 2).group.invariant_factors == [2]
    assert sorted(witt_quotient_group(2, ts_interval(4), 4).group.invariant_factors) == [2, 4]
    for p in (2, 3, 5):
        assert witt_quotient_group(p, ts_interval(3), 1).group.is_trivial


def test_k_group_examples():
    rep = k_group(2, 4, 1)
    assert rep.invariant_factors == [4, 2] and rep.order == 8
    rep = k_group(3, 2, 1)
    assert rep.invariant_factors == [3] and rep.order == 3
    assert k_group(2, 2, 2).order == 4
    assert str(k_group(2, 4, 1)) == "K_1(F_2[x]/(x^4), (x)) = Z/4 ⊕ Z/2  (order 8)"


def test_k_group_json():
    assert k_group(2, 4, 1).to_json() == (
        '{"ambient": [[1, 3], [3, 1]], "degree": 1, "invariant_factors": [4, 2], "j": 1, '
        '"m": 4, "oracle_checked": false, "order": "8", "p": 2}'
    )


@pytest.mark.parametrize("p,m,j", [(2, 4, 1), (3, 9, 2), (5, 3, 3)])
def test_even_degree_vanishes(p, m, j):
    rep = k_group_even(p, m, j)
    assert rep.degree == 2 * j and rep.order == 1 and rep.group.is_trivial


def test_rejects_non_prime():
    with pytest.raises(DomainError, match="4 is not prime"):
        k_group(4, 2, 1)


@pytest.mark.parametrize("p,m,j", [(p, m, j) for p in (2, 3) for j in (1, 2, 3) for m in range(1, 6)])
def test_order_law(p, m, j):
    assert k_group(p, m, j).order == p ** (j * (m - 1))


def test_oracle_examples():
    assert unit_group_oracle(2, 4) == [4, 2]
    assert unit_group_oracle(3, 2) == [3]
    assert unit_group_oracle(2, 2) == [2]
    # principal units of F_2[x]/(x^8): generators 1+x^a for odd a, orders 8, 4, 2, 2
    assert unit_group_oracle(2, 8) == [8, 4, 2, 2]
    assert unit_group_oracle(5, 6) == [25, 5, 5, 5]
    with pytest.raises(ResourceError):
        unit_group_oracle(2, 30, bound=2**10)


@pytest.mark.parametrize("p,m", [(2, 8), (3, 5), (5, 6), (7, 4), (2, 12)])
def test_oracle_agreement(p, m):
    assert k_group(p, m, 1).invariant_factors == unit_group_oracle(p, m)


def test_v_map_examples():
    f = v_map(2, 2, 2, 1)
    assert f.is_injective and f.image_order == 2
    assert sorted(f.target.invariant_factors) == [2, 4]
    g = v_map(3, 4, 1, 2)
    assert g.matrix == [[int(i == j) for j in range(len(g.matrix))] for i in range(len(g.matrix))]
    assert v_map(3, 2, 3, 1).is_injective


def test_v_map_functorial():
    for p, m, j in [(2, 2, 1), (3, 2, 2), (2, 3, 2)]:
        for n, n2 in [(2, 2), (2, 3), (3, 2)]:
            assert v_map(p, m, n, j).then(v_map(p, m * n, n2, j)).equals(v_map(p, m, n * n2, j))


def test_v_matrix_matches_verschiebung():
    rng = random.Random(3)
    for p in (2, 3, 5):
        for n in (2, 3, 4, 5, 6, 9, 10):
            T = ts_interval(20)
            assert check_v_matrix(p, ts_divide(T, n), n, T, 20, rng) == []


def test_v_matrix_shape():
    # n = 6 = 2 * 3 at p = 2: component e goes to 3e with factor 3 * 2
    M = v_matrix(2, ts_interval(2), 6, ts_interval(12))
    assert len(M[0]) == 1 and sum(1 for row in M if row[0]) == 1
    assert max(row[0] for row in M) == 6


@pytest.mark.parametrize("args", [(2, 2, 2, 1), (3, 3, 2, 2), (2, 1, 3, 2), (3, 1, 2, 1), (2, 4, 3, 2)])
def test_ses_diagram(args):
    rep = ses_diagram_check(*args)
    assert rep.ok, rep.failures()


def test_fermat_tower():
    st = tower_fermat(2, 1, 2)
    assert st[0].report.invariant_factors == [2]
    assert st[1].report.invariant_factors == [4, 2] and st[1].report.order == 8
    assert tower_fermat(3, 1, 1)[0].report.order == 9
    for n, stage in enumerate(tower_fermat(2, 2, 3), start=1):
        assert stage.report.order == 2 ** (2 * (2**n - 1))
        assert stage.transition is None or stage.transition_injective


def test_cyclotomic_tower():
    cyc = tower_cyclotomic(2, 1, 5)
    fer = tower_fermat(2, 1, 4)
    assert cyc[0].report.group.is_trivial
    for n in range(2, 6):
        assert cyc[n - 1].report.invariant_factors == fer[n - 2].report.invariant_factors
    c3 = tower_cyclotomic(3, 1, 2)
    assert c3[0].report.invariant_factors == [3]
    assert c3[1].report.order == 243
    assert all(s.transition_injective for s in c3[:-1])


def test_tower_guard():
    assert max_stages(2, 1, "fermat") == 6
    assert max_stages(2, 1, "cyclotomic") == 7
    assert max_stages(3, 1, "fermat") == 3
    with pytest.raises(ResourceError):
        tower_fermat(2, 1, 7)
    with pytest.raises(ResourceError):
        tower_fermat(3, 1, 2, max_order_bits=10)

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import matrices
from oracles import power_positive, reach_bfs
from sftkit import (IntMatrix, is_canonical_form, is_irreducible, is_standard_form_pair,
                    row_col_profile, scc_poset)
from sftkit.graph import reachability

M = IntMatrix
A1 = M([[2, 0, 4], [1, 2, 0], [1, 2, 0]])
J3 = M([[2, 1, 1], [1, 2, 1], [1, 1, 2]])


def test_scc_examples():
    p = scc_poset(M([[2]]))
    assert p.components == ((0,),) and p.order == {(0, 0)}
    p = scc_poset(M([[1, 1], [0, 1]]))
    assert p.components == ((0,), (1,)) and p.leq(0, 1) and not p.leq(1, 0)
    assert scc_poset(A1).components == ((0, 1, 2),)


def test_scc_topological_order_and_ties():
    # vertex 2 feeds vertex 0; 1 is isolated
    p = scc_poset(M([[1, 0, 0], [0, 1, 0], [1, 0, 1]]))
    assert p.components == ((1,), (2,), (0,))
    assert p.leq(1, 2)


@pytest.mark.parametrize("m, expected", [([[2]], True), ([[0]], False), ([[1, 1], [0, 1]], False),
                                         ([[0, 1], [1, 0]], True)])
def test_irreducible_examples(m, expected):
    assert is_irreducible(M(m)) is expected


@pytest.mark.parametrize("m, profile", [([[0, 1], [0, 1]], (False, True)), ([[2]], (False, False)),
                                        ([[0, 0], [1, 0]], (True, True))])
def test_row_col_profile(m, profile):
    assert row_col_profile(M(m)) == profile


def test_canonical_form_examples():
    assert is_canonical_form(M([[1]])) == (True, [])
    ok, why = is_canonical_form(M([[2]]))
    assert not ok and why[0].startswith("3")
    assert is_canonical_form(J3) == (True, [])
    ok, why = is_canonical_form(M([[0, 1], [1, 0]]))
    assert not ok and any(w.startswith("1") for w in why)


def test_canonical_form_clause_two():
    # 0 -> 1 -> 2 with loops; 0 reaches 2 but has no direct edge
    ok, why = is_canonical_form(M([[1, 1, 0], [0, 1, 1], [0, 0, 1]]))
    assert not ok and any(w.startswith("2") for w in why)
    assert is_canonical_form(M([[1, 1, 1], [0, 1, 1], [0, 0, 1]]))[0]


def test_standard_form_pairs():
    assert is_standard_form_pair(M([[1]]), M([[1]]))
    assert not is_standard_form_pair(M([[1]]), J3)
    other = M([[2, 2, 1], [1, 2, 1], [1, 1, 2]])
    # SNF of the second block is diag(1, 1, 5): two ones, diagonal >= 2
    assert is_canonical_form(other)[0]
    assert is_standard_form_pair(J3, other)


@given(matrices(max_size=6, hi=2))
def test_reachability_against_bfs(a):
    assert reachability(a) == reach_bfs(a)


@given(matrices(max_size=6, hi=2), st.randoms(use_true_random=False))
def test_poset_relabels_with_permutation(a, rnd):
    perm = list(range(a.rows))
    rnd.shuffle(perm)
    pa, pb = scc_poset(a), scc_poset(a.conjugate_by(perm))
    assert sorted(tuple(sorted(perm[v] for v in c)) for c in pa.components) == \
        sorted(pb.components)
    for p, cp in enumerate(pa.components):
        for q, cq in enumerate(pa.components):
            p2 = pb.component_of(perm[cp[0]])
            q2 = pb.component_of(perm[cq[0]])
            assert pa.leq(p, q) == pb.leq(p2, q2)


@given(matrices(max_size=6, hi=2))
def test_poset_order_matches_reachability(a):
    p = scc_poset(a)
    reach = reach_bfs(a)
    covered = sorted(v for c in p.components for v in c)
    assert covered == list(range(a.rows))
    for i, ci in enumerate(p.components):
        for j, cj in enumerate(p.components):
            expected = i == j or any(reach[u][v] for u in ci for v in cj)
            assert p.leq(i, j) == expected
            if p.leq(i, j) and i != j:
                assert i < j  # topological layout


@given(matrices(max_size=6, hi=2))
def test_irreducible_iff_single_cyclic_component(a):
    reach = reach_bfs(a)
    assert is_irreducible(a) == all(all(r) for r in reach)
    if is_irreducible(a):
        assert len(scc_poset(a).components) == 1


@given(matrices(max_size=5, hi=2))
def test_clause_two_against_powers(a):
    ok, why = is_canonical_form(a)
    pos = power_positive(a, a.rows)
    violated = any(pos[i][j] and a[i, j] <= 0 for i in range(a.rows) for j in range(a.rows))
    assert any(w.startswith("2") for w in why) == violated

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import matrices, no_zero_row_matrices, outsplit_specs
from oracles import dim_equal_search, invariant_factors
from sftkit import (DimElement, DimensionError, IntMatrix, apply_outsplit, bf_induced_map,
                    bowen_franks, check_commuting_square, dim_elem_equal, induced_dim_map,
                    positivity_witness, theta_apply)
from sftkit.corpus import ak_bk, ashley_matrix
from sftkit.dimension import compose_bf, push
from sftkit.matrix import mat_vec

M = IntMatrix
TWO = M([[2]])
A1 = M([[2, 0, 4], [1, 2, 0], [1, 2, 0]])
C = M([[1, 0, 1], [1, 0, 1], [0, 1, 1]])


def E(base, vec, stage=0):
    return DimElement(base, tuple(vec), stage)


def test_equality_examples():
    assert dim_elem_equal(E(TWO, [1], 0), E(TWO, [2], 1))
    x = E(A1, [1, -2, 3], 2)
    assert dim_elem_equal(x, x)
    assert not dim_elem_equal(E(C, [1, 1, 2]), E(C, [1, 1, 1]))
    with pytest.raises(DimensionError):
        dim_elem_equal(E(TWO, [1]), E(M([[3]]), [1]))


def test_theta_examples():
    assert theta_apply(E(TWO, [1])) == E(TWO, [2])
    assert theta_apply(E(A1, [1, 0, 0])).vec == (2, 0, 4)
    v = E(A1, [1, 2, 3], 1)
    assert dim_elem_equal(theta_apply(E(A1, v.vec, 2)), v)


def test_positivity_examples():
    assert positivity_witness(E(TWO, [1]), 5) == 0
    assert positivity_witness(E(M([[1, 1], [1, 1]]), [-1, 3]), 5) == 1
    assert positivity_witness(E(M.identity(2), [-1, 0]), 50) is None


def test_induced_map_examples():
    x = E(A1, [1, 2, 3], 1)
    assert induced_dim_map(M.identity(3), x, A1) == x
    ash = ashley_matrix()
    assert induced_dim_map(M.ones(8, 1) * 16, DimElement.unit(ash), TWO) == E(TWO, [128])
    a3, b3, _, cert = ak_bk(3)
    assert induced_dim_map(cert.r, DimElement.unit(a3), b3).vec == (9, 19)
    with pytest.raises(DimensionError):
        induced_dim_map(M.identity(2), x, A1)


@pytest.mark.parametrize("m, factors, unit, sign", [
    ([[2]], (1,), (0,), -1),
    ([[3]], (2,), (1,), -1),
    ([[1, 1], [1, 1]], (1, 1), (0, 0), -1),
    ([[1]], (0,), (1,), 0),
])
def test_bowen_franks_examples(m, factors, unit, sign):
    bf = bowen_franks(M(m))
    assert bf.invariant_factors == factors and bf.sign == sign
    assert bf.unit_class == unit


def test_bowen_franks_json():
    assert bowen_franks(M([[3]])).to_json() == {"factors": [2], "unit_class": [1], "sign": "-1"}


def test_bf_map_examples():
    f = bf_induced_map(M.identity(3), A1, A1)
    assert f.is_isomorphism()
    assert all(f.apply(v) == f.target.coords(v) for v in ([1, 0, 0], [0, 1, 0], [0, 0, 1]))
    ash = ashley_matrix()
    g = bf_induced_map(M.ones(8, 1) * 16, ash, TWO)
    assert g.source.group() == () and g.target.group() == () and g.is_isomorphism()
    a3, b3, _, cert = ak_bk(3)
    h = bf_induced_map(cert.r, a3, b3)
    assert h.source.group() == h.target.group() == (6,)  # |det(I - A3^t)| = 6
    assert h.is_isomorphism()
    assert not bf_induced_map(M([[2]]), M([[5]]), M([[5]])).is_isomorphism()  # x2 on Z/4


def test_commuting_square_examples():
    assert check_commuting_square(M.identity(3), A1, A1) == (True, None)
    assert check_commuting_square(M.ones(8, 1) * 16, ashley_matrix(), TWO)[0]
    a3, b3, _, cert = ak_bk(3)
    assert check_commuting_square(cert.r, a3, b3)[0]


@st.composite
def related_elements(draw):
    """Three elements over one matrix, each either random or a restaging of the previous."""
    a = draw(matrices(max_size=4, hi=3))
    n = a.rows
    vec = st.lists(st.integers(-3, 3), min_size=n, max_size=n)
    out = [E(a, draw(vec), draw(st.integers(0, 4)))]
    for _ in range(2):
        prev = out[-1]
        if draw(st.booleans()):
            j = draw(st.integers(0, 3))
            out.append(E(a, push(a, prev.vec, j), prev.stage + j))
        else:
            out.append(E(a, draw(vec), draw(st.integers(0, 4))))
    return out


@given(related_elements())
def test_equality_is_equivalence_and_matches_search(xs):
    x, y, z = xs
    n = x.base.rows
    assert dim_elem_equal(x, x)
    assert dim_elem_equal(x, y) == dim_elem_equal(y, x)
    if dim_elem_equal(x, y) and dim_elem_equal(y, z):
        assert dim_elem_equal(x, z)
    for p, q in ((x, y), (y, z), (x, z)):
        assert dim_elem_equal(p, q) == dim_equal_search(p.base, p.vec, p.stage, q.vec, q.stage, 2 * n)


@given(matrices(max_size=5, hi=3), st.data())
def test_kernel_stabilises_by_size(a, data):
    n = a.rows
    w = data.draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n))
    zero = (0,) * n
    if any(push(a, w, l) == zero for l in range(3 * n + 1)):
        assert push(a, w, n) == zero


@given(related_elements())
def test_theta_respects_classes(xs):
    x, y, _ = xs
    assert dim_elem_equal(x, y) == dim_elem_equal(theta_apply(x), theta_apply(y))


@given(matrices(max_size=5, hi=4))
def test_bowen_franks_factors_independent_of_pivot(a):
    bf1, bf2 = bowen_franks(a, "smallest"), bowen_franks(a, "first")
    i_minus = M.identity(a.rows) - a.T
    assert bf1.invariant_factors == bf2.invariant_factors == tuple(invariant_factors(i_minus))
    assert bf1.sign == bf2.sign
    for c, d in zip(bf1.unit_class, bf1.invariant_factors):
        assert (0 <= c < d) if d else True


@given(matrices(max_size=5, hi=4))
def test_identity_induces_identity(a):
    f = bf_induced_map(M.identity(a.rows), a, a)
    k = len(f.source.nontrivial)
    ident = tuple(tuple(int(i == j) % f.source.factors[f.source.nontrivial[i]]
                        if f.source.factors[f.source.nontrivial[i]] else int(i == j)
                        for j in range(k)) for i in range(k))
    assert f.matrix == ident


@given(st.data())
def test_bf_maps_compose(data):
    a = data.draw(no_zero_row_matrices(max_size=3, hi=3))
    b, d1, _ = apply_outsplit(a, data.draw(outsplit_specs(a, max_parts=2)))
    c, d2, _ = apply_outsplit(b, data.draw(outsplit_specs(b, max_parts=2)))
    f, g = bf_induced_map(d1, a, b), bf_induced_map(d2, b, c)
    assert compose_bf(f, g).matrix == bf_induced_map(d1 @ d2, a, c).matrix
    v = data.draw(st.lists(st.integers(-5, 5), min_size=a.rows, max_size=a.rows))
    assert compose_bf(f, g).apply(v) == g.apply(mat_vec(d1.T, v))

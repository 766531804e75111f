from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moufang.algebras import (
    AnticommAlgebra,
    AnticommutativityError,
    BinaryAlgebra,
    ClosureError,
    ConstructionError,
    associator,
    cd_double,
    check_alternative,
    check_anticommutative,
    check_associative,
    check_jacobi,
    check_maltsev,
    check_unit,
    commutator_algebra,
    complexes,
    left_mult,
    lie_cross,
    octonions,
    quaternions,
    reals,
    right_mult,
    sedenions,
    split_octonions,
)
from moufang.exact import (
    DimensionError,
    Tensor3,
    identity,
    mat_commutator,
    matrix,
    vector,
    zeros,
)
from moufang.yamaguti import imaginary_octonions

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


# an independent Cayley-Dickson product on nested coordinate lists


def _cd_mul(x, y, gammas):
    if not gammas:
        return [x[0] * y[0]]
    h = len(x) // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    g, rest = gammas[-1], gammas[:-1]
    ac = _cd_mul(a, c, rest)
    dbar_b = _cd_mul(_cd_conj(d), b, rest)
    da = _cd_mul(d, a, rest)
    b_cbar = _cd_mul(b, _cd_conj(c), rest)
    return [p - g * q for p, q in zip(ac, dbar_b)] + [p + q for p, q in zip(da, b_cbar)]


def _cd_conj(x):
    return [x[0]] + [-v for v in x[1:]]


@pytest.mark.parametrize(
    "alg, gammas",
    [
        (complexes(), [1]),
        (quaternions(), [1, 1]),
        (octonions(), [1, 1, 1]),
        (split_octonions(), [1, 1, -1]),
        (sedenions(), [1, 1, 1, 1]),
    ],
)
def test_structure_matches_recursive_product(alg, gammas):
    n = alg.dim
    for i in range(n):
        for j in range(n):
            ei = [Fraction(int(i == t)) for t in range(n)]
            ej = [Fraction(int(j == t)) for t in range(n)]
            assert alg.product(alg.basis(i), alg.basis(j)).tolist() == _cd_mul(ei, ej, gammas)


def test_quaternion_table():
    h = quaternions()
    one, i, j, k = (h.basis(n) for n in range(4))
    assert h.product(i, j) == k
    assert h.product(j, i) == -k
    assert h.product(i, i) == -one
    assert h.product(j, k) == i
    assert h.product(k, i) == j


def test_cayley_dickson_ladder():
    assert check_associative(complexes()).passed
    assert check_associative(quaternions()).passed
    assert check_alternative(octonions()).passed
    assert not check_associative(octonions()).passed
    assert check_alternative(split_octonions()).passed
    assert not check_associative(split_octonions()).passed
    assert not check_alternative(sedenions()).passed


def test_unit_law():
    for alg in (reals(), complexes(), quaternions(), octonions(), sedenions()):
        assert alg.unit_index == 0
        assert check_unit(alg).passed


def test_declared_unit_is_validated():
    h = quaternions()
    with pytest.raises(ConstructionError):
        BinaryAlgebra(h.mult, unit_index=1)
    with pytest.raises(ConstructionError):
        cd_double(BinaryAlgebra(h.mult))


def _norm(x):
    return sum(v * v for v in x.tolist())


def _split_norm(x):
    v = x.tolist()
    return sum(t * t for t in v[:4]) - sum(t * t for t in v[4:])


@settings(max_examples=25, deadline=None)
@given(st.lists(fractions, min_size=8, max_size=8), st.lists(fractions, min_size=8, max_size=8))
def test_octonion_norm_is_multiplicative(x, y):
    o, s = octonions(), split_octonions()
    x, y = vector(x), vector(y)
    assert _norm(o.product(x, y)) == _norm(x) * _norm(y)
    assert _split_norm(s.product(x, y)) == _split_norm(x) * _split_norm(y)


def test_sedenions_have_zero_divisors():
    s = sedenions()
    # (e3 + e10)(e6 - e15) = 0
    x = s.basis(3) + s.basis(10)
    y = s.basis(6) - s.basis(15)
    assert s.product(x, y).is_zero()


def test_conjugate_and_norm():
    o = octonions()
    x = vector([1, 2, "1/2", 0, -3, 0, 0, 1])
    assert o.product(x, o.conjugate(x)) == _norm(x) * o.basis(0)


def test_left_right_mult():
    o = octonions()
    x = vector([0, 1, 2, 0, 0, -1, 0, "1/3"])
    y = vector([1, 0, 0, 5, 0, 0, 2, 0])
    assert left_mult(o, x) @ y == o.product(x, y)
    assert right_mult(o, x) @ y == o.product(y, x)
    assert left_mult(o, o.basis(0)) == identity(8)
    with pytest.raises(DimensionError):
        left_mult(o, zeros(7))


def test_left_mult_commutes_with_right_mult_iff_associative():
    h, o = quaternions(), octonions()
    for alg, expect in ((h, True), (o, False)):
        all_commute = all(
            mat_commutator(left_mult(alg, alg.basis(i)), right_mult(alg, alg.basis(j))).is_zero()
            for i in range(alg.dim) for j in range(alg.dim)
        )
        assert all_commute is expect


def test_commutator_algebra_of_quaternions():
    g = commutator_algebra(quaternions())
    assert g.dim == 3
    assert g.basis_names == ("e1", "e2", "e3")
    # [i, j] = 2k
    assert g.bracket(g.basis(0), g.basis(1)) == 2 * g.basis(2)
    assert check_jacobi(g).passed


def test_commutator_algebra_closure_error():
    # unit e0 plus e1 e2 = e0, e2 e1 = 0: the commutator of e1, e2 lands on the unit
    m = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        m[i, 0, i] = m[i, i, 0] = 1
    m[0, 1, 2] = 1
    with pytest.raises(ClosureError) as info:
        commutator_algebra(BinaryAlgebra(Tensor3(m), unit_index=0))
    assert info.value.indices == (1, 2)


def test_associator():
    h, o = quaternions(), octonions()
    x, y, z = (vector([1, 2, 3, 4]), vector([0, 1, 0, -1]), vector(["1/2", 0, 1, 1]))
    assert associator(h, x, y, z).is_zero()
    e = o.basis
    assert not associator(o, e(1), e(2), e(4)).is_zero()
    # alternating on octonions
    assert associator(o, e(1), e(1), e(4)).is_zero()
    assert associator(o, e(1), e(2), e(4)) == -associator(o, e(2), e(1), e(4))


def test_anticommutativity_validated():
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0, 1] = 1
    with pytest.raises(AnticommutativityError):
        AnticommAlgebra(Tensor3(c))
    c[0, 1, 0] = -1
    AnticommAlgebra(Tensor3(c))


def test_axiom_verdicts():
    assert check_jacobi(lie_cross()).passed
    assert check_maltsev(lie_cross()).passed
    oct_imag = imaginary_octonions()
    assert check_anticommutative(oct_imag).passed
    assert check_maltsev(oct_imag).passed
    assert not check_jacobi(oct_imag).passed
    sed = commutator_algebra(sedenions())
    report = check_maltsev(sed)
    assert not report.passed
    w = report.witnesses[0]
    assert w.lhs != w.rhs


def _random_vector(rng, n):
    return vector([Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4))) for _ in range(n)])


def test_maltsev_verdict_matches_unpolarized_random_vectors():
    # [[x,y],[x,z]] = [[[x,y],z],x] + [[[y,z],x],x] + [[[z,x],x],y]
    rng = np.random.default_rng(3)
    for g, holds in ((imaginary_octonions(), True), (commutator_algebra(sedenions()), False)):
        b = g.bracket
        found = False
        for _ in range(20):
            x, y, z = (_random_vector(rng, g.dim) for _ in range(3))
            lhs = b(b(x, y), b(x, z))
            rhs = b(b(b(x, y), z), x) + b(b(b(y, z), x), x) + b(b(b(z, x), x), y)
            found |= lhs != rhs
        assert found is not holds


def test_alternative_verdict_matches_random_vectors():
    rng = np.random.default_rng(4)
    s = sedenions()
    failures = 0
    for _ in range(10):
        x, y = _random_vector(rng, 16), _random_vector(rng, 16)
        failures += not associator(s, x, x, y).is_zero()
    assert failures > 0
    o = octonions()
    for _ in range(10):
        x, y = _random_vector(rng, 8), _random_vector(rng, 8)
        assert associator(o, x, x, y).is_zero()
        assert associator(o, y, x, x).is_zero()


def test_change_basis_preserves_verdicts():
    g = lie_cross()
    h = g.change_basis(matrix([[1, 1, 0], [0, 1, 2], [1, 0, 1]]))
    assert check_jacobi(h).passed
    assert h != g

from fractions import Fraction

import numpy as np
import pytest

from moufang.algebras import (
    associator,
    check_maltsev,
    commutator_algebra,
    lie_cross,
    octonions,
    quaternions,
)
from moufang.exact import contract_trilinear, vector
from moufang.yamaguti import (
    PERTURBATION_SEED,
    associator_tensor,
    check_sagle_yamaguti,
    equivalence_corpus,
    imaginary_octonions,
    octonion_perturbations,
    sagle_yamaguti_identities,
    yamaguti_bracket,
    yamaguti_tensor,
)


def _random_vector(rng, n):
    return vector([Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5))) for _ in range(n)])


def test_bracket_on_lie_algebra_is_twice_nested():
    g = lie_cross()
    e = g.basis
    b = g.bracket
    for x, y, z in ((e(0), e(1), e(2)), (e(0), e(1), e(0)), (e(2), e(2), e(1))):
        assert yamaguti_bracket(g, x, y, z) == 2 * b(b(x, y), z)
    # [e1, e2] = e3, [e3, e1] = e2
    assert yamaguti_bracket(g, e(0), e(1), e(0)) == 2 * e(1)


def test_bracket_antisymmetric_in_first_two_arguments():
    g = imaginary_octonions()
    rng = np.random.default_rng(0)
    for _ in range(10):
        x, y, z = (_random_vector(rng, 7) for _ in range(3))
        assert yamaguti_bracket(g, x, y, z) == -yamaguti_bracket(g, y, x, z)
        assert yamaguti_bracket(g, x, x, z).is_zero()


def test_tensor_contraction_matches_bracket_on_random_triples():
    rng = np.random.default_rng(PERTURBATION_SEED)
    for g in (lie_cross(), imaginary_octonions(), octonion_perturbations(1)[0]):
        y6 = yamaguti_tensor(g).y6
        for _ in range(100 if g.dim == 7 else 30):
            x, y, z = (_random_vector(rng, g.dim) for _ in range(3))
            assert contract_trilinear(y6, x, y, z) == yamaguti_bracket(g, x, y, z)


def test_tensor_scaling():
    t = yamaguti_tensor(lie_cross())
    assert t.y * 6 == t.y6
    assert t.dim == 3


def test_octonion_bracket_against_algebra_associator():
    # on the imaginary octonions [x,y,z] = 2[[x,y],z] - 6 (x,y,z)
    o = octonions()
    g = imaginary_octonions()
    rng = np.random.default_rng(8)
    for _ in range(10):
        x, y, z = (_random_vector(rng, 7) for _ in range(3))
        lift = lambda v: vector([0, *v.tolist()])  # noqa: E731
        assoc = associator(o, lift(x), lift(y), lift(z))
        assert assoc[0] == 0
        expected = 2 * g.bracket(g.bracket(x, y), z) - 6 * vector(assoc.tolist()[1:])
        assert yamaguti_bracket(g, x, y, z) == expected


def test_associator_tensor_zero_on_lie_algebras():
    assert associator_tensor(lie_cross()).l.is_zero()
    assert associator_tensor(commutator_algebra(quaternions())).l.is_zero()


def test_octonion_associator_tensor_is_alternating():
    l = associator_tensor(imaginary_octonions()).l
    assert not l.is_zero()
    assert l == -l.transpose(0, 2, 1, 3)
    assert l == -l.transpose(0, 1, 3, 2)
    assert l == -l.transpose(0, 3, 2, 1)


def test_sagle_yamaguti_bulk_matches_pointwise():
    g = octonion_perturbations(1)[0]
    (ident,) = sagle_yamaguti_identities(g)
    lhs, rhs = ident.bulk()
    for tup in ((0, 1, 2, 3), (6, 5, 4, 3), (1, 1, 2, 0)):
        a, b = ident.evaluate(tup)
        assert lhs[tup] == a and rhs[tup] == b


def test_sagle_yamaguti_verdicts():
    assert check_sagle_yamaguti(lie_cross()).passed
    assert check_sagle_yamaguti(imaginary_octonions()).passed
    bad = check_sagle_yamaguti(octonion_perturbations(1)[0])
    assert not bad.passed
    w = bad.witnesses[0]
    assert w.lhs != w.rhs and len(w.indices) == 4


def test_corpus_composition():
    corpus = equivalence_corpus(count=3)
    assert [g.name for g in corpus[:5]] == [
        "lie-cross",
        "quaternions-commutator",
        "octonions-commutator",
        "split-octonions-commutator",
        "sedenions-commutator",
    ]
    assert len(corpus) == 8
    assert [g.name for g in octonion_perturbations(3)] == [g.name for g in corpus[5:]]
    assert octonion_perturbations(5, seed=1) != octonion_perturbations(5, seed=2)


def test_corpus_agreement(corpus_report):
    assert corpus_report.all_agree
    assert corpus_report.disagreements == []
    passing = {e.name for e in corpus_report.entries if e.maltsev.passed}
    assert {"lie-cross", "quaternions-commutator", "octonions-commutator",
            "split-octonions-commutator"} <= passing
    assert "sedenions-commutator" not in passing


@pytest.mark.parametrize("g", [lie_cross(), imaginary_octonions()], ids=lambda g: g.name)
def test_maltsev_and_sagle_yamaguti_pass_on_models(g):
    assert check_maltsev(g).passed and check_sagle_yamaguti(g).passed

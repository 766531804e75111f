"""Moufang-Mal'tsev operator pairs and the identities of their translations.

A pair assigns to every basis vector ``e_j`` of an anticommutative algebra
two square matrices ``S_j`` and ``T_j``; translations extend linearly and
``P = -(S + T)``.  Checks evaluate each identity on all basis tuples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .algebras import (
    AnticommAlgebra,
    BinaryAlgebra,
    ConstructionError,
    check_alternative,
    commutator_algebra,
    left_mult,
    right_mult,
)
from .exact import (
    DimensionError,
    Matrix,
    RatTensor,
    Vector,
    combine,
    einsum,
    mat_commutator,
    rank,
    solve,
    stack,
    wrap,
)
from .reports import Identity, IdentityReport, Report, Witness, run_identities
from .yamaguti import yamaguti_bracket, yamaguti_tensor

FAMILIES = ("S", "T", "P", "S+", "T+", "P+")

FULL_ENUMERATION_LIMIT = 8
DEFAULT_SAMPLE_CAP = 10_000

THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class MoufangMaltsevPair:
    gamma: AnticommAlgebra
    s_ops: RatTensor
    t_ops: RatTensor
    name: str = field(default="", compare=False)
    verified_model: bool = True
    faithful: bool = field(init=False, compare=False)

    def __post_init__(self):
        for attr in ("s_ops", "t_ops"):
            ops = getattr(self, attr)
            if not isinstance(ops, RatTensor):
                object.__setattr__(self, attr, stack(list(ops)))
        s, t = self.s_ops, self.t_ops
        m = self.gamma.dim
        if s.ndim != 3 or s.shape[0] != m or s.shape[1] != s.shape[2]:
            raise DimensionError(f"s_ops must have shape ({m}, n, n), got {s.shape}")
        if t.shape != s.shape:
            raise DimensionError(f"t_ops shape {t.shape} differs from s_ops {s.shape}")
        object.__setattr__(self, "faithful", self._joint_rank() == m)

    def _joint_rank(self) -> int:
        a = self._stacked_columns()
        return rank(einsum("ri,rj->ij", a, a))

    def _stacked_columns(self) -> Matrix:
        """Columns are ``vec(S_j)`` over ``vec(T_j)``."""
        m, n = self.dim, self.rep_dim
        both = stack([self.s_ops, self.t_ops])
        return wrap(both.num.transpose(0, 2, 3, 1).reshape(2 * n * n, m), both.den)

    @property
    def dim(self) -> int:
        return self.gamma.dim

    @property
    def rep_dim(self) -> int:
        return self.s_ops.shape[1]

    @cached_property
    def p_ops(self) -> RatTensor:
        return -(self.s_ops + self.t_ops)

    def family(self, name: str) -> RatTensor:
        """Operator stack for ``S``, ``T``, ``P`` or a conjugate ``S+``, ``T+``, ``P+``."""
        s, t, p = self.s_ops, self.t_ops, self.p_ops
        table = {"S": s, "T": t, "P": p, "S+": t - p, "T+": p - s, "P+": s - t}
        try:
            return table[name]
        except KeyError:
            raise ValueError(f"unknown operator family {name!r}") from None

    def op(self, name: str, x: Vector) -> Matrix:
        if x.shape != (self.dim,):
            raise DimensionError(f"vector of shape {x.shape} for pair of dim {self.dim}")
        return combine(x, self.family(name))

    @cached_property
    def y6_grid(self) -> RatTensor:
        """``6 Y(e_j; e_k)`` for all j, k, shape ``(m, m, n, n)``."""
        total = None
        for f in ("S", "T", "P"):
            g = _commutator_grid(self.family(f), self.family(f))
            total = g if total is None else total + g
        return total

    @cached_property
    def ternary(self) -> RatTensor:
        return yamaguti_tensor(self.gamma).y6


def _commutator_grid(a: RatTensor, b: RatTensor) -> RatTensor:
    """``[A_j, B_k]`` for all j, k."""
    return einsum("jab,kbc->jkac", a, b) - einsum("kab,jbc->jkac", b, a)


def _at_bracket_grid(c: RatTensor, x: RatTensor) -> RatTensor:
    """``X_{[e_j, e_k]}`` for all j, k."""
    return einsum("ijk,iab->jkab", c, x)


def pair_from_alternative(a: BinaryAlgebra) -> MoufangMaltsevPair:
    """Left and right multiplications by the non-unit basis elements.

    Non-alternative inputs still produce a pair, with ``verified_model`` False.
    """
    if a.unit_index is None:
        raise ConstructionError("pair construction needs a unital algebra")
    gamma = commutator_algebra(a)
    imag = a.imaginary_indices()
    return MoufangMaltsevPair(
        gamma,
        stack([left_mult(a, a.basis(i)) for i in imag]),
        stack([right_mult(a, a.basis(i)) for i in imag]),
        name=a.name,
        verified_model=check_alternative(a).passed,
    )


def change_pair_basis(pair: MoufangMaltsevPair, q: Matrix) -> MoufangMaltsevPair:
    """Re-express the pair in the basis ``f_j = sum_i q[i, j] e_i``."""
    return MoufangMaltsevPair(
        pair.gamma.change_basis(q),
        einsum("ij,iab->jab", q, pair.s_ops),
        einsum("ij,iab->jab", q, pair.t_ops),
        name=pair.name,
        verified_model=pair.verified_model,
    )


def translations(pair: MoufangMaltsevPair, x: Vector) -> tuple[Matrix, Matrix, Matrix]:
    return pair.op("S", x), pair.op("T", x), pair.op("P", x)


def conjugates(pair: MoufangMaltsevPair, x: Vector) -> tuple[Matrix, Matrix, Matrix]:
    return pair.op("S+", x), pair.op("T+", x), pair.op("P+", x)


def yamagutian(pair: MoufangMaltsevPair, x: Vector, y: Vector) -> Matrix:
    """``(1/6)([S_x,S_y] + [T_x,T_y] + [P_x,P_y])``."""
    sx, tx, px = translations(pair, x)
    sy, ty, py = translations(pair, y)
    six_y = mat_commutator(sx, sy) + mat_commutator(tx, ty) + mat_commutator(px, py)
    return six_y / 6


# binary identities -----------------------------------------------------------
#
# Each identity in x, y is written once against a small term vocabulary and
# evaluated either at one basis pair or on the whole grid.


class _PairTerms:
    def __init__(self, pair: MoufangMaltsevPair, j: int, k: int):
        self.pair = pair
        self.x = pair.gamma.basis(j)
        self.y = pair.gamma.basis(k)

    def comm(self, a: str, b: str) -> Matrix:
        return mat_commutator(self.pair.op(a, self.x), self.pair.op(b, self.y))

    def at_bracket(self, a: str) -> Matrix:
        return self.pair.op(a, self.pair.gamma.bracket(self.x, self.y))

    def six_y(self) -> Matrix:
        return 6 * yamagutian(self.pair, self.x, self.y)


class _GridTerms:
    def __init__(self, pair: MoufangMaltsevPair):
        self.pair = pair

    def comm(self, a: str, b: str) -> RatTensor:
        return _commutator_grid(self.pair.family(a), self.pair.family(b))

    def at_bracket(self, a: str) -> RatTensor:
        return _at_bracket_grid(self.pair.gamma.c, self.pair.family(a))

    def six_y(self) -> RatTensor:
        return self.pair.y6_grid


def _binary(pair: MoufangMaltsevPair, name: str, sides) -> Identity:
    return Identity(
        name,
        2,
        lambda tup: sides(_PairTerms(pair, *tup)),
        lambda: sides(_GridTerms(pair)),
    )


def maurer_cartan_identities(pair: MoufangMaltsevPair) -> list[Identity]:
    return [
        _binary(pair, "[S_x,S_y] = S_[x,y] - 2[S_x,T_y]",
                lambda o: (o.comm("S", "S"), o.at_bracket("S") - 2 * o.comm("S", "T"))),
        _binary(pair, "[T_x,T_y] = T_[y,x] - 2[T_x,S_y]",
                lambda o: (o.comm("T", "T"), -o.at_bracket("T") - 2 * o.comm("T", "S"))),
        _binary(pair, "[S_x,T_y] = [T_x,S_y]",
                lambda o: (o.comm("S", "T"), o.comm("T", "S"))),
    ]


def decomposition_identities(pair: MoufangMaltsevPair) -> list[Identity]:
    return [
        _binary(pair, "[S_x,S_y] = 2Y(x;y) + 1/3 S_[x,y] + 2/3 T_[x,y]",
                lambda o: (o.comm("S", "S"),
                           THIRD * (o.six_y() + o.at_bracket("S") + 2 * o.at_bracket("T")))),
        _binary(pair, "[S_x,T_y] = -Y(x;y) + 1/3 S_[x,y] - 1/3 T_[x,y]",
                lambda o: (o.comm("S", "T"),
                           -o.six_y() / 6 + THIRD * (o.at_bracket("S") - o.at_bracket("T")))),
        _binary(pair, "[T_x,T_y] = 2Y(x;y) - 2/3 S_[x,y] - 1/3 T_[x,y]",
                lambda o: (o.comm("T", "T"),
                           THIRD * (o.six_y() - 2 * o.at_bracket("S") - o.at_bracket("T")))),
    ]


def conjugate_yamagutian_identities(pair: MoufangMaltsevPair) -> list[Identity]:
    def form(f):
        return lambda o: (o.six_y(), o.comm(f, f) + o.at_bracket(f))

    return [
        _binary(pair, f"6Y(x;y) = [{f}_x,{f}_y] + {f}_[x,y]", form(f))
        for f in ("P+", "T+", "S+")
    ]


# ternary and quaternary identities ---------------------------------------------


def _reductivity_identity(pair: MoufangMaltsevPair, f: str) -> Identity:
    g = pair.gamma

    def evaluate(tup):
        x, y, z = (g.basis(i) for i in tup)
        lhs = mat_commutator(6 * yamagutian(pair, x, y), pair.op(f, z))
        return lhs, pair.op(f, yamaguti_bracket(g, x, y, z))

    def bulk():
        x = pair.family(f)
        y6 = pair.y6_grid
        lhs = einsum("jkab,lbc->jklac", y6, x) - einsum("lab,jkbc->jklac", x, y6)
        return lhs, einsum("ijkl,iab->jklab", pair.ternary, x)

    return Identity(f"6[Y(x;y),{f}_z] = {f}_[x,y,z]", 3, evaluate, bulk)


def reductivity_identities(pair: MoufangMaltsevPair) -> list[Identity]:
    return [_reductivity_identity(pair, f) for f in ("S", "T", "P")]


def conjugate_reductivity_identities(pair: MoufangMaltsevPair) -> list[Identity]:
    return [_reductivity_identity(pair, f) for f in ("S+", "T+", "P+")]


def hidden_associativity_identities(pair: MoufangMaltsevPair) -> list[Identity]:
    g = pair.gamma

    def evaluate(tup):
        x, y, z, w = (g.basis(i) for i in tup)
        lhs = 6 * mat_commutator(yamagutian(pair, x, y), yamagutian(pair, z, w))
        rhs = yamagutian(pair, yamaguti_bracket(g, x, y, z), w) + yamagutian(
            pair, z, yamaguti_bracket(g, x, y, w)
        )
        return lhs, rhs

    def bulk():
        y6 = pair.y6_grid
        b = pair.ternary
        lhs = einsum("jkab,lpbc->jklpac", y6, y6) - einsum("lpab,jkbc->jklpac", y6, y6)
        rhs = einsum("ijkl,ipab->jklpab", b, y6) + einsum("ijkp,liab->jklpab", b, y6)
        return lhs / 6, rhs / 6

    return [Identity("6[Y(x;y),Y(z;w)] = Y([x,y,z];w) + Y(z;[x,y,w])", 4, evaluate, bulk)]


# checks --------------------------------------------------------------------------


def _flags(pair: MoufangMaltsevPair) -> list[str]:
    notes = []
    if not pair.verified_model:
        notes.append("unverified model: source algebra is not alternative")
    if not pair.faithful:
        notes.append("translations are not faithful")
    return notes


def check_maurer_cartan(pair: MoufangMaltsevPair) -> IdentityReport:
    return run_identities(
        "maurer-cartan", maurer_cartan_identities(pair), pair.dim, notes=_flags(pair)
    )


def check_triality_decomposition(pair: MoufangMaltsevPair) -> IdentityReport:
    return run_identities(
        "decomposition", decomposition_identities(pair), pair.dim, notes=_flags(pair)
    )


def check_conjugate_yamagutian(pair: MoufangMaltsevPair) -> IdentityReport:
    return run_identities(
        "conjugate-yamagutian",
        conjugate_yamagutian_identities(pair),
        pair.dim,
        notes=_flags(pair),
    )


def check_reductivity(pair: MoufangMaltsevPair) -> IdentityReport:
    return run_identities(
        "reductivity", reductivity_identities(pair), pair.dim, notes=_flags(pair)
    )


def check_conjugate_reductivity(pair: MoufangMaltsevPair) -> IdentityReport:
    return run_identities(
        "conjugate-reductivity",
        conjugate_reductivity_identities(pair),
        pair.dim,
        notes=_flags(pair),
    )


def sample_tuples(dim: int, arity: int, count: int, seed: int) -> list[tuple[int, ...]]:
    """``count`` distinct basis tuples drawn uniformly, in lexicographic order."""
    total = dim**arity
    rng = random.Random(seed)
    picks = sorted(rng.sample(range(total), min(count, total)))
    out = []
    for code in picks:
        digits = []
        for _ in range(arity):
            code, d = divmod(code, dim)
            digits.append(d)
        out.append(tuple(reversed(digits)))
    return out


def check_hidden_associativity(
    pair: MoufangMaltsevPair,
    seed: int = 0,
    cap: int = DEFAULT_SAMPLE_CAP,
) -> IdentityReport:
    """Full enumeration up to dimension 8 (or ``dim**4 <= cap``), sampling beyond."""
    m = pair.dim
    tuples = None
    notes = _flags(pair)
    if m > FULL_ENUMERATION_LIMIT and m**4 > cap:
        tuples = sample_tuples(m, 4, cap, seed)
        notes.append(f"sampled {len(tuples)} of {m**4} quadruples with seed {seed}")
    return run_identities(
        "hidden-associativity",
        hidden_associativity_identities(pair),
        m,
        tuples=tuples,
        notes=notes,
    )


def check_generalized_representation(
    pair: MoufangMaltsevPair, seed: int = 0, cap: int = DEFAULT_SAMPLE_CAP
) -> IdentityReport:
    """Reductivity and hidden associativity as a single verdict."""
    parts = [check_reductivity(pair), check_hidden_associativity(pair, seed, cap)]
    witnesses: list[Witness] = [w for r in parts for w in r.witnesses]
    return Report(
        name="generalized-representation",
        identities=tuple(i for r in parts for i in r.identities),
        checked=sum(r.checked for r in parts),
        witnesses=tuple(witnesses),
        sampled=any(r.sampled for r in parts),
        notes=tuple(dict.fromkeys(n for r in parts for n in r.notes)),
    )


def extract_ternary_bracket(
    pair: MoufangMaltsevPair, j: int, k: int, l: int
) -> Vector | None:
    """Recover ``a`` with ``6[Y(e_j;e_k), X_{e_l}] = X_a`` for X = S and T jointly.

    Returns ``None`` when no such ``a`` exists.  Unique when the pair is faithful.
    """
    g = pair.gamma
    six_y = 6 * yamagutian(pair, g.basis(j), g.basis(k))
    z = g.basis(l)
    targets = stack([
        mat_commutator(six_y, pair.op("S", z)),
        mat_commutator(six_y, pair.op("T", z)),
    ])
    b = wrap(targets.num.reshape(-1), targets.den)
    a = pair._stacked_columns()
    coeffs = solve(einsum("ri,rj->ij", a, a), einsum("ri,r->i", a, b))
    if coeffs is None or a @ coeffs != b:
        return None
    return coeffs



def constraint_identities(pair: MoufangMaltsevPair) -> list[Identity]:
    def sides(f1, f2, f3):
        def evaluate(tup):
            x = pair.gamma.basis(tup[0])
            total = pair.op(f1, x) + pair.op(f2, x) + pair.op(f3, x)
            return total, total * 0
        return evaluate

    return [
        Identity("S_x + T_x + P_x = 0", 1, sides("S", "T", "P")),
        Identity("S+_x + T+_x + P+_x = 0", 1, sides("S+", "T+", "P+")),
    ]


def check_constraint(pair: MoufangMaltsevPair) -> IdentityReport:
    return run_identities("translation-constraint", constraint_identities(pair), pair.dim)

"""Smash products ``A # X`` of a graded algebra with a split G-set.

Basis elements are pairs ``(i, x)`` with ``x`` in the fiber over the domain of
``deg(b_i)``, ordered lexicographically by (A-basis index, carrier position).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import linalg as la
from .algebra import AlgebraMap, GradedAlgebra, StructureAlgebra, validate_algebra
from .errors import GsmError
from .gset import GSetAction, GSetMorphism, check_morphism
from .linalg import ONE, ZERO


@dataclass(frozen=True, eq=False)
class SmashAlgebra:
    algebra: StructureAlgebra
    labels: tuple  # basis index -> (A-basis index, carrier point)
    graded: GradedAlgebra
    action: GSetAction
    _index: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def index(self, i: int, x) -> int:
        try:
            return self._index[(i, x)]
        except KeyError:
            raise GsmError("E_NO_POINT", f"no basis element ({i}, {x!r})") from None

    def has(self, i: int, x) -> bool:
        return (i, x) in self._index

    def element(self, i: int, x) -> tuple:
        return self.algebra.basis(self.index(i, x))

    def idempotent(self, x) -> tuple:
        """``1_e delta_x`` for the object ``e`` whose fiber holds ``x``."""
        e = self.action.object_of(x)
        v = [ZERO] * self.dim
        for j, c in enumerate(self.graded.units[e]):
            if c != 0:
                v[self.index(j, x)] = c
        return tuple(v)

    def lift(self, a, x) -> tuple:
        """``a delta_x`` for ``a`` in A; components of ``a`` whose degree does not
        start at the object of ``x`` are dropped."""
        v = [ZERO] * self.dim
        for j, c in enumerate(a):
            if c != 0 and self.has(j, x):
                v[self.index(j, x)] += c
        return tuple(v)

    def __repr__(self):
        return f"SmashAlgebra(dim={self.dim})"


def smash_product(GA: GradedAlgebra, action: GSetAction) -> SmashAlgebra:
    """``(a_g d_x)(b_h d_y) = a_g b_h d_y`` when ``d(g) = r(h)`` and ``alpha_h(y) = x``."""
    if not action.split:
        raise GsmError("E_NOT_SPLIT", "smash products need a split G-set")
    if action.groupoid is not GA.groupoid:
        raise GsmError("E_SHAPE", "algebra and action use different groupoids")
    A, G = GA.algebra, GA.groupoid
    labels = []
    for i in range(A.dim):
        for x in action.fibers[G.dom[GA.deg[i]]]:
            labels.append((i, x))
    index = {lab: n for n, lab in enumerate(labels)}
    mult = {}
    for (p, (i, x)), (q, (j, y)) in product(enumerate(labels), repeat=2):
        g, h = GA.deg[i], GA.deg[j]
        if not G.composable(g, h) or action.alpha[h][y] != x:
            continue
        row = {index[(k, y)]: c for k, c in A.basis_product(i, j).items()}
        if row:
            mult[(p, q)] = row
    unit = [ZERO] * len(labels)
    for e in G.objects:
        for j, c in enumerate(GA.units[e]):
            if c != 0:
                for x in action.fibers[e]:
                    unit[index[(j, x)]] = c
    names = [f"{A.name(i)}#{action.label(x)}" for i, x in labels]
    alg = validate_algebra(len(labels), mult, unit, names)
    return SmashAlgebra(alg, tuple(labels), GA, action, index)


def eta_embedding(GA: GradedAlgebra, S: SmashAlgebra) -> AlgebraMap:
    """``eta(a_g) = sum_{x in X_d(g)} a_g d_x``."""
    A, G = GA.algebra, GA.groupoid
    cols = []
    for i in range(A.dim):
        v = [ZERO] * S.dim
        for x in S.action.fibers[G.dom[GA.deg[i]]]:
            v[S.index(i, x)] = ONE
        cols.append(v)
    eta = AlgebraMap(A, S.algebra, la.from_columns(cols, S.dim))
    w = eta.multiplicative_witness()
    if w is not None:
        raise GsmError("E_NOT_MULTIPLICATIVE", "eta is not multiplicative", w)
    if not eta.is_unital():
        raise GsmError("E_NOT_MULTIPLICATIVE", "eta does not preserve the unit")
    return eta


@dataclass(frozen=True)
class Bimodule:
    left: tuple  # A-basis index -> matrix of m -> eta(b_i) m
    right: tuple  # A-basis index -> matrix of m -> m eta(b_i)


def bimodule_actions(GA: GradedAlgebra, S: SmashAlgebra, eta: AlgebraMap | None = None) -> Bimodule:
    """A-bimodule structure on ``A # X`` through ``eta``, with the two
    identities linking ``a_g d_x`` to ``eta(a_g)`` checked on every basis pair."""
    eta = eta or eta_embedding(GA, S)
    A, G, X = GA.algebra, GA.groupoid, S.action
    SA = S.algebra
    images = [eta.image_of_basis(i) for i in range(A.dim)]
    for i in range(A.dim):
        g = GA.deg[i]
        for x in X.fibers[G.dom[g]]:
            if SA.mul(images[i], S.idempotent(x)) != S.element(i, x):
                raise GsmError("E_BIMODULE", "a_g d_x != eta(a_g)(1 d_x)", (i, x))
        for x in X.fibers[G.ran[g]]:
            want = S.element(i, X.alpha[G.inv[g]][x])
            if SA.mul(S.idempotent(x), images[i]) != want:
                raise GsmError("E_BIMODULE", "(1 d_x) eta(a_g) != a_g d_{alpha_g^-1(x)}", (i, x))
    left = tuple(SA.left_matrix(v) for v in images)
    right = tuple(SA.right_matrix(v) for v in images)
    n = S.dim
    one = la.identity(n)
    Lu = SA.left_matrix(eta(A.unit))
    Ru = SA.right_matrix(eta(A.unit))
    if not (la.mat_equal(Lu, one) and la.mat_equal(Ru, one)):
        raise GsmError("E_BIMODULE", "unit of A does not act as the identity")
    for i, j in product(range(A.dim), repeat=2):
        prod = eta(A.mul(A.basis(i), A.basis(j)))
        if not la.mat_equal(la.matmul(left[i], left[j], n), SA.left_matrix(prod)):
            raise GsmError("E_BIMODULE", "left action not multiplicative", (i, j))
        if not la.mat_equal(la.matmul(right[j], right[i], n), SA.right_matrix(prod)):
            raise GsmError("E_BIMODULE", "right action not multiplicative", (i, j))
        if not la.mat_equal(la.matmul(left[i], right[j], n), la.matmul(right[j], left[i], n)):
            raise GsmError("E_BIMODULE", "(a m) b != a (m b)", (i, j))
    return Bimodule(left, right)


def induced_morphism(phi, GA: GradedAlgebra, source: SmashAlgebra | None = None,
                     target: SmashAlgebra | None = None) -> AlgebraMap:
    """For ``phi: X -> Z`` the algebra map ``A # Z -> A # X`` sending ``a_g d_z`` to
    the sum of ``a_g d_x`` over ``x in X_d(g)`` with ``phi(x) = z``."""
    if not isinstance(phi, GSetMorphism):
        raise GsmError("E_NOT_MORPHISM", "expected a GSetMorphism")
    X, Z = phi.source, phi.target
    check = check_morphism(phi.map, X, Z)
    if not check.is_morphism:
        raise GsmError("E_NOT_MORPHISM", "map is not a morphism of G-sets", check.witness)
    SZ = source or smash_product(GA, Z)
    SX = target or smash_product(GA, X)
    G = GA.groupoid
    cols = []
    for i, z in SZ.labels:
        v = [ZERO] * SX.dim
        for x in X.fibers[G.dom[GA.deg[i]]]:
            if phi.map[x] == z:
                v[SX.index(i, x)] = ONE
        cols.append(v)
    f = AlgebraMap(SZ.algebra, SX.algebra, la.from_columns(cols, SX.dim))
    w = f.multiplicative_witness()
    if w is not None:
        raise GsmError("E_NOT_MULTIPLICATIVE", "induced map is not multiplicative", w)
    if check.injective and not f.is_surjective():
        raise GsmError("E_CONTRACT", "injective phi but the induced map is not surjective")
    if check.surjective and not f.is_injective():
        raise GsmError("E_CONTRACT", "surjective phi but the induced map is not injective")
    return f

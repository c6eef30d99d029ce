"""Groupoid actions on algebras with their skew rings and invariant subalgebras.

An action of ``K`` on ``B`` is given by one ideal per object (``E_k`` is the
ideal of ``ran(k)``) and, for every morphism, the matrix of
``beta_k: E_dom(k) -> E_ran(k)`` on the echelon bases of the two ideals.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import linalg as la
from .algebra import (StructureAlgebra, GradedAlgebra, find_unit, product_span,
                      subalgebra, validate_algebra, validate_grading)
from .errors import GsmError
from .groupoid import FiniteGroupoid
from .gset import BiSet, make_morphism, orbit_gset, sub_action
from .linalg import ZERO, Subspace
from .smash import SmashAlgebra, induced_morphism, smash_product


@dataclass(frozen=True, eq=False)
class AlgebraAction:
    groupoid: FiniteGroupoid
    algebra: StructureAlgebra
    ideals: tuple  # object -> Subspace
    iso: tuple  # morphism -> matrix, E_dom(k) coordinates -> E_ran(k) coordinates
    units: tuple  # object -> unit of the ideal, or None
    direct_sum: bool
    smash: SmashAlgebra | None = None

    @property
    def unital(self) -> bool:
        return all(u is not None for u in self.units)

    def ideal(self, k: int) -> Subspace:
        return self.ideals[self.groupoid.ran[k]]

    def unit_of(self, k: int) -> tuple:
        """``1_k``, the unit of ``E_k``."""
        u = self.units[self.groupoid.ran[k]]
        if u is None:
            raise GsmError("E_NO_IDEAL_UNIT", "ideal has no unit", k)
        return u

    def apply(self, k: int, v: Sequence) -> tuple:
        """``beta_k(v)`` for ``v`` in ``E_{k^-1}``."""
        K = self.groupoid
        src, dst = self.ideals[K.dom[k]], self.ideals[K.ran[k]]
        c = src.coordinates(v)
        if c is None:
            raise GsmError("E_NOT_IDEAL", "vector outside the source ideal", k)
        return dst.combine(la.matvec(self.iso[k], c))

    def matrix(self, k: int) -> list:
        """Ambient matrix of ``x -> beta_k(x 1_{k^-1})``."""
        B, K = self.algebra, self.groupoid
        one = self.unit_of(K.inv[k])
        cols = [self.apply(k, B.mul(B.basis(j), one)) for j in range(B.dim)]
        return la.from_columns(cols, B.dim)


def ideal_unit(B: StructureAlgebra, E: Subspace):
    """The two-sided unit of the ideal ``E`` as an algebra, or ``None``."""
    r = E.rank
    if r == 0:
        return la.zero_vector(B.dim)
    rows, rhs = [], []
    for b in E.rows:
        left = [B.mul(a, b) for a in E.rows]
        right = [B.mul(b, a) for a in E.rows]
        for t in range(B.dim):
            rows.append([v[t] for v in left])
            rhs.append(b[t])
            rows.append([v[t] for v in right])
            rhs.append(b[t])
    c = la.solve(rows, rhs, r)
    return None if c is None else E.combine(c)


def validate_algebra_action(K: FiniteGroupoid, B: StructureAlgebra, ideals, isos, units=None,
                            smash=None) -> AlgebraAction:
    ideals = tuple(E if isinstance(E, Subspace) else Subspace(B.dim, E) for E in ideals)
    if len(ideals) != K.n_objects or len(isos) != K.n:
        raise GsmError("E_SHAPE", "one ideal per object and one map per morphism required")
    full = Subspace.full(B.dim)
    for p, E in enumerate(ideals):
        if not E.contains(product_span(B, full, E)) or not E.contains(product_span(B, E, full)):
            raise GsmError("E_NOT_IDEAL", "subspace is not a two-sided ideal", p)
    isos = tuple([[la.frac(x) for x in row] for row in M] for M in isos)
    for k in K.morphisms:
        src, dst = ideals[K.dom[k]], ideals[K.ran[k]]
        M = isos[k]
        if len(M) != dst.rank or any(len(r) != src.rank for r in M):
            raise GsmError("E_NOT_ISO", "matrix shape does not match the ideals", k)
        if src.rank != dst.rank or la.rank(M, src.rank) != src.rank:
            raise GsmError("E_NOT_ISO", "map is not bijective", k)
    act = AlgebraAction(K, B, ideals, isos, (None,) * K.n_objects, False, smash)
    for k in K.morphisms:
        basis = ideals[K.dom[k]].rows
        for a, b in product(range(len(basis)), repeat=2):
            lhs = act.apply(k, B.mul(basis[a], basis[b]))
            rhs = B.mul(act.apply(k, basis[a]), act.apply(k, basis[b]))
            if lhs != rhs:
                raise GsmError("E_NOT_ISO", "map is not multiplicative", (k, a, b))
    for p in K.objects:
        if not la.mat_equal(isos[K.identity[p]], la.identity(ideals[p].rank)):
            raise GsmError("E_COCYCLE", "identity morphism does not act as the identity", K.identity[p])
    for g, h in product(K.morphisms, repeat=2):
        if not K.composable(g, h):
            continue
        n = ideals[K.dom[h]].rank
        if not la.mat_equal(la.matmul(isos[g], isos[h], n) if isos[g] else [], isos[K.comp[g][h]]):
            raise GsmError("E_COCYCLE", "beta_g beta_h != beta_gh", (g, h))
    found = [ideal_unit(B, E) for E in ideals]
    if units is not None:
        for p, (u, f) in enumerate(zip(units, found)):
            if u is not None and (f is None or la.vec(u) != f):
                raise GsmError("E_NO_IDEAL_UNIT", "declared unit is not the unit of the ideal", p)
    total = Subspace(B.dim)
    for E in ideals:
        total = total.sum(E)
    direct = sum(E.rank for E in ideals) == B.dim and total.rank == B.dim
    return AlgebraAction(K, B, ideals, isos, tuple(found), direct, smash)


@dataclass(frozen=True, eq=False)
class SkewRing:
    algebra: StructureAlgebra
    labels: tuple  # basis index -> (morphism k, index into the echelon basis of E_k)
    action: AlgebraAction

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def graded(self) -> GradedAlgebra:
        return validate_grading(self.algebra, self.action.groupoid, [k for k, _ in self.labels])


def skew_groupoid_ring(act: AlgebraAction) -> SkewRing:
    """``(x d_g)(y d_h) = x beta_g(y) d_gh`` on composable pairs, zero otherwise."""
    K, B = act.groupoid, act.algebra
    labels = [(k, a) for k in K.morphisms for a in range(act.ideal(k).rank)]
    index = {lab: n for n, lab in enumerate(labels)}
    mult = {}
    for (p, (g, a)), (q, (h, b)) in product(enumerate(labels), repeat=2):
        if not K.composable(g, h):
            continue
        x = act.ideal(g).rows[a]
        y = act.ideal(h).rows[b]
        gh = K.comp[g][h]
        c = act.ideal(gh).coordinates(B.mul(x, act.apply(g, y)))
        if c is None:
            raise GsmError("E_NOT_IDEAL", "product left the ideal", (g, h))
        row = {index[(gh, t)]: v for t, v in enumerate(c) if v != 0}
        if row:
            mult[(p, q)] = row
    if act.direct_sum and act.unital:
        unit = [ZERO] * len(labels)
        for p in K.objects:
            i = K.identity[p]
            for t, v in enumerate(act.ideals[p].coordinates(act.units[p])):
                unit[index[(i, t)]] = v
    else:
        unit = find_unit(len(labels), mult)
        if unit is None:
            raise GsmError("E_NOT_UNITAL_DECOMP", "skew ring has no unit")
    names = [f"u{a}@{K.name(k)}" for k, a in labels]
    return SkewRing(validate_algebra(len(labels), mult, unit, names), tuple(labels), act)


def invariant_subalgebra(act: AlgebraAction) -> tuple[Subspace, StructureAlgebra]:
    """Solve ``beta_k(x 1_{k^-1}) = x 1_k`` for every morphism ``k``."""
    if not act.unital:
        raise GsmError("E_NO_IDEAL_UNIT", "invariants need unital ideals")
    B, K = act.algebra, act.groupoid
    rows = []
    for k in K.morphisms:
        M = act.matrix(k)
        R = B.right_matrix(act.unit_of(k))
        rows.extend([[m - r for m, r in zip(mr, rr)] for mr, rr in zip(M, R)])
    inv = Subspace(B.dim, la.nullspace(rows, B.dim))
    return inv, subalgebra(B, inv)


def _galois_target(act: AlgebraAction, k: int) -> tuple:
    if act.groupoid.is_identity(k):
        return act.unit_of(k)
    return la.zero_vector(act.algebra.dim)


def galois_witness(act: AlgebraAction, pairs):
    """First morphism where ``sum x_i beta_k(y_i 1_{k^-1})`` misses its target."""
    if not act.unital:
        raise GsmError("E_NO_IDEAL_UNIT", "Galois coordinates need unital ideals")
    B, K = act.algebra, act.groupoid
    for k in K.morphisms:
        one = act.unit_of(K.inv[k])
        total = la.zero_vector(B.dim)
        for x, y in pairs:
            total = la.add(total, B.mul(la.vec(x), act.apply(k, B.mul(la.vec(y), one))))
        if total != _galois_target(act, k):
            return k
    return None


def galois_check(act: AlgebraAction, pairs) -> bool:
    return galois_witness(act, pairs) is None


def find_galois_coordinates(act: AlgebraAction):
    """Solve the bilinear system through its linearization on ``B (x) B``.

    Returns a list of at most ``dim B`` pairs, or ``None`` when none exists.
    """
    if not act.unital:
        raise GsmError("E_NO_IDEAL_UNIT", "Galois coordinates need unital ideals")
    B, K = act.algebra, act.groupoid
    n = B.dim
    cols = []  # unknown t_ab multiplies b_a beta_k(b_b 1_{k^-1}), stacked over k
    images = {k: [act.apply(k, B.mul(B.basis(b), act.unit_of(K.inv[k]))) for b in range(n)]
              for k in K.morphisms}
    for a, b in product(range(n), repeat=2):
        col = []
        for k in K.morphisms:
            col.extend(B.mul(B.basis(a), images[k][b]))
        cols.append(col)
    rhs = [c for k in K.morphisms for c in _galois_target(act, k)]
    t = la.solve(la.from_columns(cols, len(rhs)), rhs, n * n)
    if t is None:
        return None
    T = [list(t[a * n:(a + 1) * n]) for a in range(n)]
    R, pivots = la.rref(T, n)
    pairs = [(tuple(T[a][p] for a in range(n)), tuple(row)) for row, p in zip(R, pivots)]
    if not galois_check(act, pairs):
        raise GsmError("E_INTERNAL", "linearized Galois solution failed to verify")
    return pairs


def gamma_action(biset: BiSet, GA: GradedAlgebra, S: SmashAlgebra | None = None) -> AlgebraAction:
    """The action of ``K`` on ``A # X``: ``E_k`` spanned by ``a d_x`` with
    ``x in Y_k``, and ``gamma_k`` induced by the G-set isomorphism
    ``beta_{k^-1}: Y_k -> Y_{k^-1}``."""
    if not biset.split:
        raise GsmError("E_NOT_SPLIT", "gamma needs a split biset")
    ga, ka = biset.g_action, biset.k_action
    S = S or smash_product(GA, ga)
    K = ka.groupoid
    ideals = []
    for p in K.objects:
        Y = set(ka.fibers[p])
        ideals.append(Subspace.coordinate(S.dim, [n for n, (i, x) in enumerate(S.labels) if x in Y]))
    units = []
    for p in K.objects:
        u = la.zero_vector(S.dim)
        for x in ka.fibers[p]:
            u = la.add(u, S.idempotent(x))
        units.append(u)
    subs = {p: sub_action(ga, ka.fibers[p]) for p in K.objects}
    smashes = {p: smash_product(GA, subs[p]) for p in K.objects}
    isos = []
    for k in K.morphisms:
        r, d = K.ran[k], K.dom[k]
        kinv = K.inv[k]
        phi = make_morphism(ka.alpha[kinv], subs[r], subs[d])
        f = induced_morphism(phi, GA, source=smashes[d], target=smashes[r])
        # re-express f on the echelon bases of E_d and E_r inside A # X
        src_pos = {lab: t for t, lab in enumerate(S.labels[n] for n in ideals[d].pivots)}
        dst_pos = {lab: t for t, lab in enumerate(S.labels[n] for n in ideals[r].pivots)}
        M = la.zeros(ideals[r].rank, ideals[d].rank)
        for j, lab in enumerate(smashes[d].labels):
            for i, v in enumerate(f.image_of_basis(j)):
                if v != 0:
                    M[dst_pos[smashes[r].labels[i]]][src_pos[lab]] = v
        isos.append(M)
    act = validate_algebra_action(K, S.algebra, ideals, isos, units, smash=S)
    if not act.direct_sum:
        raise GsmError("E_NOT_DIRECT_SUM", "A # X is not the direct sum of the E_p")
    return act


@dataclass(frozen=True)
class FixedPointReport:
    dim_image: int
    dim_fixed: int
    equal: bool
    image: Subspace
    fixed: Subspace


def fixed_vs_orbit_image(biset: BiSet, GA: GradedAlgebra, act: AlgebraAction | None = None) -> FixedPointReport:
    """Compare the image of ``A # O^K`` in ``A # X`` with the gamma-invariants."""
    act = act or gamma_action(biset, GA)
    orb = orbit_gset(biset)
    phi_star = induced_morphism(orb.projection, GA, target=act.smash)
    image = phi_star.image()
    fixed, _ = invariant_subalgebra(act)
    return FixedPointReport(image.rank, fixed.rank, image == fixed, image, fixed)

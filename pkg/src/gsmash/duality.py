"""Endomorphism algebras and the skew ring / endomorphism ring comparison.

Operators act on the left of column vectors and compose as ``(ST)(m) = S(T(m))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import linalg as la
from .algebra import (AlgebraMap, GradedAlgebra, ModuleRep, StructureAlgebra,
                      dual_groupoid_algebra, subalgebra, validate_algebra, validate_module)
from .errors import GsmError
from .groupoid import FiniteGroupoid, SubgroupoidView, right_cosets, whole
from .gset import (BiSet, GSetAction, coset_biset, is_fully_faithful, is_transitive, left_translation_action,
                   orbit_partition, partial_bijection_groupoid, validate_biset, MAX_PARTIAL_CARRIER)
from .linalg import ONE, ZERO, Subspace
from .skew import (AlgebraAction, SkewRing, fixed_vs_orbit_image, galois_witness, gamma_action,
                   invariant_subalgebra, skew_groupoid_ring)
from .smash import smash_product


def _flat(M) -> tuple:
    return tuple(x for row in M for x in row)


def _unflat(v, n) -> list:
    return [list(v[r * n:(r + 1) * n]) for r in range(n)]


@dataclass(frozen=True, eq=False)
class EndAlgebra:
    algebra: StructureAlgebra
    basis: tuple  # operator matrices, one per basis element
    space: Subspace  # the same operators, flattened row-major
    module: ModuleRep

    def coordinates(self, T):
        return self.space.coordinates(_flat(T))


def endomorphism_algebra(M: ModuleRep) -> EndAlgebra:
    """All ``T`` with ``T R_b = R_b T`` for every action matrix ``R_b``."""
    if not isinstance(M, ModuleRep):
        raise GsmError("E_MODULE", "expected a ModuleRep")
    n = M.dim
    rows = []
    for R in M.act:
        # (T R - R T)_{ij} = sum_k T_ik R_kj - R_ik T_kj, unknown T_pq at p*n + q
        for i, j in product(range(n), repeat=2):
            row = [ZERO] * (n * n)
            for k in range(n):
                row[i * n + k] += R[k][j]
                row[k * n + j] -= R[i][k]
            rows.append(row)
    space = Subspace(n * n, la.nullspace(rows, n * n))
    basis = tuple(_unflat(v, n) for v in space.rows)
    d = len(basis)
    mult = {}
    for a, b in product(range(d), repeat=2):
        c = space.coordinates(_flat(la.matmul(basis[a], basis[b], n)))
        row = {k: v for k, v in enumerate(c) if v != 0}
        if row:
            mult[(a, b)] = row
    unit = space.coordinates(_flat(la.identity(n))) if n else ()
    alg = validate_algebra(d, mult, unit, [f"T{a}" for a in range(d)])
    for T in basis:
        for R in M.act:
            if not la.mat_equal(la.matmul(T, R, n), la.matmul(R, T, n)):
                raise GsmError("E_INTERNAL", "solution operator is not module-linear")
    return EndAlgebra(alg, basis, space, M)


def right_module_over(S: StructureAlgebra, B: Subspace) -> ModuleRep:
    """``S`` as a right module over the subalgebra carried by ``B``."""
    Balg = subalgebra(S, B)
    return validate_module(Balg, [S.right_matrix(b) for b in B.rows], "right")


def galois_operator(act: AlgebraAction, k: int, x) -> list:
    """Matrix of ``a -> x gamma_k(a 1_{k^-1})``."""
    B = act.algebra
    return la.matmul(B.left_matrix(x), act.matrix(k), B.dim)


def canonical_galois_map(act: AlgebraAction, fixed: Subspace, skew: SkewRing | None = None,
                         end: EndAlgebra | None = None) -> tuple[AlgebraMap, EndAlgebra]:
    """The map from the skew ring to ``End`` of the right ``fixed``-module."""
    skew = skew or skew_groupoid_ring(act)
    end = end or endomorphism_algebra(right_module_over(act.algebra, fixed))
    cols = []
    for n, (k, a) in enumerate(skew.labels):
        T = galois_operator(act, k, act.ideal(k).rows[a])
        c = end.coordinates(T)
        if c is None:
            raise GsmError("E_NOT_ENDO", "operator is not linear over the invariants", n)
        cols.append(c)
    f = AlgebraMap(skew.algebra, end.algebra, la.from_columns(cols, end.algebra.dim))
    w = f.multiplicative_witness()
    if w is not None:
        raise GsmError("E_NOT_MULTIPLICATIVE", "canonical map is not multiplicative", w)
    return f, end


@dataclass
class DualityReport:
    """``galois_ok`` tests the pairs ``(u_e, u_e)`` with ``u_e`` summing the
    idempotents over the fiber ``X_e``; the pointwise pairs ``(1 d_x, 1 d_x)``
    are reported in ``extras`` and are what the fully faithful case guarantees."""
    fully_faithful: bool
    galois_ok: bool
    dims: tuple  # (dim skew ring, dim End)
    map_ok: bool
    details: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.map_ok and not self.details

    def to_dict(self) -> dict:
        d = {"fullyFaithful": self.fully_faithful, "galoisOK": self.galois_ok,
             "dims": list(self.dims), "mapOK": self.map_ok, "details": list(self.details)}
        d.update(self.extras)
        return d


def verify_duality(biset: BiSet, GA: GradedAlgebra) -> DualityReport:
    """Skew ring of the induced action against ``End`` of ``A # X`` over its invariants.

    Not fully faithful actions still get both sides computed.
    """
    ff = is_fully_faithful(biset.k_action)
    act = gamma_action(biset, GA)
    S = act.smash
    skew = skew_groupoid_ring(act)
    orbit = fixed_vs_orbit_image(biset, GA, act)
    fixed = orbit.fixed
    details = []
    if not orbit.equal:
        details.append({"check": "fixed-vs-orbit", "image": orbit.dim_image, "fixed": orbit.dim_fixed})
    G = GA.groupoid
    coords = []
    for e in G.objects:
        u = la.zero_vector(S.dim)
        for x in S.action.fibers[e]:
            u = la.add(u, S.idempotent(x))
        coords.append((u, u))
    galois_ok = galois_witness(act, coords) is None
    pointwise = [(S.idempotent(x), S.idempotent(x)) for x in S.action.carrier]
    w = galois_witness(act, pointwise)
    if w is not None and ff:
        details.append({"check": "galois-pointwise", "morphism": act.groupoid.name(w)})
    f, end = canonical_galois_map(act, fixed, skew)
    map_ok = f.is_injective() and f.is_surjective() and f.is_unital()
    if ff and not map_ok:
        details.append({"check": "canonical-map", "rank": f.rank})
    extras = {"galoisPointwiseOK": w is None, "dimSmash": S.dim, "dimInvariants": fixed.rank, "rank": f.rank}
    return DualityReport(ff, galois_ok, (skew.dim, end.algebra.dim), map_ok, details, extras)


def coset_blocks(G: FiniteGroupoid, H: SubgroupoidView) -> tuple[set, set]:
    """Orbits of the right translation by ``H`` and the right cosets, as sets of frozensets."""
    b = coset_biset(G, H)
    orbits = {frozenset(B) for B in orbit_partition(b.k_action)}
    cosets = {frozenset(B) for B in right_cosets(G, H).blocks}
    return orbits, cosets


def coset_duality(G: FiniteGroupoid, H: SubgroupoidView, GA: GradedAlgebra) -> DualityReport:
    """Duality for ``G`` acting on itself with ``H`` translating on the right.

    The translation orbits are the classes ``lH``; they match the right cosets
    after inverting every morphism.
    """
    if not H.wide:
        raise GsmError("E_NOT_WIDE", "subgroupoid is not wide")
    orbits, cosets = coset_blocks(G, H)
    inverted = {frozenset(G.inv[g] for g in B) for B in cosets}
    rep = verify_duality(coset_biset(G, H), GA)
    rep.extras["cosetsMatch"] = orbits == inverted
    rep.extras["cosetsLiteral"] = orbits == cosets
    rep.extras["orbits"] = len(orbits)
    if orbits != inverted:
        rep.details.append({"check": "cosets"})
    return rep


def partial_bijection_duality(G: FiniteGroupoid, action: GSetAction, GA: GradedAlgebra,
                              max_size: int = MAX_PARTIAL_CARRIER) -> DualityReport:
    if not action.split:
        raise GsmError("E_NOT_SPLIT", "action must be split")
    if not is_transitive(action):
        raise GsmError("E_NOT_TRANSITIVE", "action has more than one orbit")
    I, taut = partial_bijection_groupoid(action, max_size)
    biset = validate_biset(action, taut)
    rep = verify_duality(biset, GA)
    if not rep.fully_faithful:
        rep.details.append({"check": "fully-faithful"})
    rep.extras["partialBijections"] = I.n
    rep.extras["invariantSubsets"] = I.n_objects
    return rep


@dataclass(frozen=True, eq=False)
class WeakHopfSmash:
    algebra: StructureAlgebra
    labels: tuple  # basis index -> (A-basis index, morphism h) for b_i (x) v_h
    psi: AlgebraMap
    report: DualityReport


def weak_hopf_smash(GA: GradedAlgebra) -> WeakHopfSmash:
    """``A # kG*`` built from the coproduct of ``kG*`` and the action ``v_g . a = a_g``,
    compared with ``A # X`` for ``X`` the left translation G-set."""
    A, G = GA.algebra, GA.groupoid
    D = dual_groupoid_algebra(G)
    labels = [(i, h) for i in range(A.dim) for h in G.morphisms if G.dom[GA.deg[i]] == G.ran[h]]
    index = {lab: n for n, lab in enumerate(labels)}
    mult = {}
    # (a (x) v_g)(b (x) v_h) = sum a (v_g1 . b) (x) v_g2 v_h over Delta(v_g) = sum v_g1 (x) v_g2
    for (p, (i, g)), (q, (j, h)) in product(enumerate(labels), repeat=2):
        row = {}
        for g1, g2 in D.coproduct[g]:
            if g2 != h or GA.deg[j] != g1:
                continue
            for k, c in A.basis_product(i, j).items():
                row[index[(k, h)]] = row.get(index[(k, h)], ZERO) + c
        row = {k: c for k, c in row.items() if c != 0}
        if row:
            mult[(p, q)] = row
    unit = [ZERO] * len(labels)
    for (i, h), n in index.items():
        unit[n] = A.unit[i]
    names = [f"{A.name(i)}*v_{G.name(h)}" for i, h in labels]
    W = validate_algebra(len(labels), mult, unit, names)
    X = left_translation_action(G)
    S = smash_product(GA, X)
    cols = []
    for i, h in labels:
        cols.append(S.element(i, h))
    psi = AlgebraMap(W, S.algebra, la.from_columns(cols, S.dim))
    if not psi.is_isomorphism() or not psi.is_unital():
        raise GsmError("E_NOT_ISO", "psi is not an algebra isomorphism", psi.multiplicative_witness())
    report = verify_duality(coset_biset(G, whole(G)), GA)
    return WeakHopfSmash(W, tuple(labels), psi, report)

"""Finite-dimensional associative algebras over Q by structure constants.

``mult[(i, j)]`` is a sparse dict ``{k: c}`` meaning ``b_i b_j = sum c b_k``;
absent pairs multiply to zero.  Gradings are basis-aligned: every basis
element carries one degree, a morphism of the grading groupoid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import linalg as la
from .errors import GsmError
from .groupoid import FiniteGroupoid
from .linalg import ZERO, ONE, Subspace


def _clean(d) -> dict:
    if isinstance(d, dict):
        items = d.items()
    else:
        items = enumerate(d)
    return {k: la.frac(c) for k, c in items if la.frac(c) != 0}


@dataclass(frozen=True, eq=False)
class StructureAlgebra:
    dim: int
    mult: dict
    unit: tuple
    names: tuple = ()

    def basis_product(self, i: int, j: int) -> dict:
        return self.mult.get((i, j), {})

    def basis(self, i: int) -> tuple:
        return la.unit_vector(self.dim, i)

    def name(self, i: int) -> str:
        return self.names[i] if self.names else f"b{i}"

    def mul(self, u: Sequence, v: Sequence) -> tuple:
        if len(u) != self.dim or len(v) != self.dim:
            raise GsmError("E_DIM_MISMATCH", "vector length differs from the algebra dimension")
        out = [ZERO] * self.dim
        su = [(i, a) for i, a in enumerate(u) if a != 0]
        sv = [(j, b) for j, b in enumerate(v) if b != 0]
        for i, a in su:
            for j, b in sv:
                for k, c in self.mult.get((i, j), {}).items():
                    out[k] += a * b * c
        return tuple(out)

    def left_matrix(self, u: Sequence) -> list:
        """Matrix of ``x -> u x`` on coordinate columns."""
        cols = [self.mul(u, self.basis(j)) for j in range(self.dim)]
        return la.from_columns(cols, self.dim)

    def right_matrix(self, u: Sequence) -> list:
        """Matrix of ``x -> x u``."""
        cols = [self.mul(self.basis(j), u) for j in range(self.dim)]
        return la.from_columns(cols, self.dim)

    def __repr__(self):
        return f"StructureAlgebra(dim={self.dim})"


def _sparse_mul(mult, x: dict, j: int) -> dict:
    out = {}
    for k, c in x.items():
        for l, d in mult.get((k, j), {}).items():
            out[l] = out.get(l, ZERO) + c * d
    return {k: c for k, c in out.items() if c != 0}


def _sparse_lmul(mult, i: int, x: dict) -> dict:
    out = {}
    for k, c in x.items():
        for l, d in mult.get((i, k), {}).items():
            out[l] = out.get(l, ZERO) + c * d
    return {k: c for k, c in out.items() if c != 0}


def validate_algebra(dim: int, mult, unit, names=None) -> StructureAlgebra:
    """Check associativity on every basis triple and the two unit laws."""
    table = {}
    for (i, j), row in dict(mult).items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise GsmError("E_SHAPE", "structure constant index out of range", (i, j))
        row = _clean(row)
        if any(not 0 <= k < dim for k in row):
            raise GsmError("E_SHAPE", "structure constant index out of range", (i, j))
        if row:
            table[(i, j)] = row
    unit = la.vec(unit)
    if len(unit) != dim:
        raise GsmError("E_SHAPE", "unit vector has the wrong length")
    if names is not None and len(names) != dim:
        raise GsmError("E_SHAPE", "one name per basis element required")
    for i, j in product(range(dim), repeat=2):
        ij = table.get((i, j), {})
        for l in range(dim):
            left = _sparse_mul(table, ij, l)
            right = _sparse_lmul(table, i, table.get((j, l), {}))
            if left != right:
                raise GsmError("E_ASSOC", "(b_i b_j) b_l != b_i (b_j b_l)", (i, j, l))
    alg = StructureAlgebra(dim, table, unit, tuple(names) if names is not None else ())
    for i in range(dim):
        b = alg.basis(i)
        if alg.mul(unit, b) != b or alg.mul(b, unit) != b:
            raise GsmError("E_UNIT", "unit law fails on a basis element", i)
    return alg


def find_unit(dim: int, mult) -> tuple | None:
    """Solve for a two-sided unit; ``None`` when the constants admit none."""
    table = {k: _clean(v) for k, v in dict(mult).items()}
    rows, rhs = [], []
    for i in range(dim):
        for k in range(dim):
            target = ONE if i == k else ZERO
            rows.append([table.get((t, i), {}).get(k, ZERO) for t in range(dim)])
            rhs.append(target)
            rows.append([table.get((i, t), {}).get(k, ZERO) for t in range(dim)])
            rhs.append(target)
    if dim == 0:
        return ()
    return la.solve(rows, rhs, dim)


def product_span(alg: StructureAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """``span{u v : u in basis(U), v in basis(V)}``."""
    if U.dim != alg.dim or V.dim != alg.dim:
        raise GsmError("E_DIM_MISMATCH", "subspaces must live in the algebra")
    return Subspace(alg.dim, [alg.mul(u, v) for u in U.rows for v in V.rows])


def subalgebra(alg: StructureAlgebra, U: Subspace) -> StructureAlgebra:
    """The algebra carried by ``U`` on its echelon basis, with its own unit."""
    d = U.rank
    mult = {}
    for i, j in product(range(d), repeat=2):
        p = alg.mul(U.rows[i], U.rows[j])
        c = U.coordinates(p)
        if c is None:
            raise GsmError("E_NOT_CLOSED", "subspace not closed under multiplication", (i, j))
        mult[(i, j)] = c
    unit = U.coordinates(alg.unit)
    if unit is None:
        unit = find_unit(d, mult)
        if unit is None:
            raise GsmError("E_NO_UNIT", "subalgebra has no unit")
    return validate_algebra(d, mult, unit)


@dataclass(frozen=True, eq=False)
class AlgebraMap:
    source: StructureAlgebra
    target: StructureAlgebra
    matrix: list  # target.dim x source.dim; column j is the image of b_j

    def __call__(self, v: Sequence) -> tuple:
        return la.matvec(self.matrix, v)

    def image_of_basis(self, j: int) -> tuple:
        return tuple(row[j] for row in self.matrix)

    def multiplicative_witness(self):
        S, T = self.source, self.target
        imgs = [self.image_of_basis(j) for j in range(S.dim)]
        for i, j in product(range(S.dim), repeat=2):
            lhs = T.mul(imgs[i], imgs[j])
            rhs = self(S.mul(S.basis(i), S.basis(j)))
            if lhs != rhs:
                return (i, j)
        return None

    def is_multiplicative(self) -> bool:
        return self.multiplicative_witness() is None

    def is_unital(self) -> bool:
        return self(self.source.unit) == self.target.unit

    @property
    def rank(self) -> int:
        return la.rank(la.columns(self.matrix, self.source.dim), self.target.dim)

    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective() and self.is_multiplicative()

    def image(self) -> Subspace:
        return Subspace(self.target.dim, la.columns(self.matrix, self.source.dim))

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        """``self after other``."""
        return AlgebraMap(other.source, self.target,
                          la.matmul(self.matrix, other.matrix, inner=other.target.dim)
                          if self.matrix else [])


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    algebra: StructureAlgebra
    groupoid: FiniteGroupoid
    deg: tuple
    units: tuple  # object -> 1_e as a vector

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def component(self, g: int) -> tuple:
        return tuple(i for i, d in enumerate(self.deg) if d == g)

    def component_space(self, g: int) -> Subspace:
        return Subspace.coordinate(self.dim, self.component(g))

    def components_space(self, gs) -> Subspace:
        gs = set(gs)
        return Subspace.coordinate(self.dim, [i for i, d in enumerate(self.deg) if d in gs])

    def degree_part(self, v: Sequence, gs) -> tuple:
        """Projection of ``v`` onto the components whose degree lies in ``gs``."""
        gs = {gs} if isinstance(gs, int) else set(gs)
        return tuple(c if self.deg[i] in gs else ZERO for i, c in enumerate(v))

    def __repr__(self):
        return f"GradedAlgebra(dim={self.dim}, groupoid={self.groupoid!r})"


def validate_grading(alg: StructureAlgebra, G: FiniteGroupoid, deg) -> GradedAlgebra:
    deg = tuple(G.morphism(d) for d in deg)
    if len(deg) != alg.dim:
        raise GsmError("E_SHAPE", "one degree per basis element required")
    for i, j in product(range(alg.dim), repeat=2):
        p = alg.basis_product(i, j)
        gi, gj = deg[i], deg[j]
        if G.composable(gi, gj):
            want = G.comp[gi][gj]
            for k in p:
                if deg[k] != want:
                    raise GsmError("E_GRADING", "product leaves the composite degree", (i, j, k))
        elif p:
            raise GsmError("E_GRADING", "non-composable degrees multiply to nonzero", (i, j, min(p)))
    ga = GradedAlgebra(alg, G, deg, ())
    return GradedAlgebra(alg, G, deg, homogeneous_units(ga))


def homogeneous_units(GA: GradedAlgebra) -> tuple:
    """``1_e`` for each object: the identity-degree components of the unit."""
    alg, G = GA.algebra, GA.groupoid
    for i, c in enumerate(alg.unit):
        if c != 0 and not G.is_identity(GA.deg[i]):
            raise GsmError("E_UNIT_DECOMP", "unit has a component of non-identity degree", i)
    units = tuple(GA.degree_part(alg.unit, G.identity[e]) for e in G.objects)
    for i in range(alg.dim):
        g = GA.deg[i]
        b = alg.basis(i)
        if alg.mul(units[G.ran[g]], b) != b or alg.mul(b, units[G.dom[g]]) != b:
            raise GsmError("E_UNIT_DECOMP", "1_e does not act as a unit on A_g", i)
    total = la.zero_vector(alg.dim)
    for u in units:
        total = la.add(total, u)
    if total != alg.unit:
        raise GsmError("E_UNIT_DECOMP", "homogeneous units do not sum to 1")
    return units


def graded_algebra(dim, mult, unit, G: FiniteGroupoid, deg, names=None) -> GradedAlgebra:
    return validate_grading(validate_algebra(dim, mult, unit, names), G, deg)


def groupoid_algebra(G: FiniteGroupoid) -> GradedAlgebra:
    """``kG``: basis ``b_g`` with ``b_g b_h = b_gh`` on composable pairs."""
    mult = {(g, h): {G.comp[g][h]: ONE} for g, h in product(G.morphisms, repeat=2) if G.composable(g, h)}
    unit = [ONE if G.is_identity(g) else ZERO for g in G.morphisms]
    return graded_algebra(G.n, mult, unit, G, list(G.morphisms), G.names)


@dataclass(frozen=True, eq=False)
class DualGroupoidAlgebra:
    groupoid: FiniteGroupoid
    algebra: StructureAlgebra
    coproduct: tuple  # g -> ((a, b), ...) meaning sum v_a (x) v_b
    counit: tuple
    antipode: tuple

    def coassociativity_witness(self):
        from collections import Counter
        for g in self.groupoid.morphisms:
            left = Counter((x, y, b) for a, b in self.coproduct[g] for x, y in self.coproduct[a])
            right = Counter((a, x, y) for a, b in self.coproduct[g] for x, y in self.coproduct[b])
            if left != right:
                return g
        return None

    def comultiplicativity_witness(self):
        """``Delta(v_g v_h) = Delta(v_g) Delta(v_h)`` with the componentwise product."""
        from collections import Counter
        G = self.groupoid
        for g, h in product(G.morphisms, repeat=2):
            lhs = Counter(self.coproduct[g]) if g == h else Counter()
            rhs = Counter()
            for a, b in self.coproduct[g]:
                for c, d in self.coproduct[h]:
                    if a == c and b == d:
                        rhs[(a, b)] += 1
            if lhs != rhs:
                return (g, h)
        return None

    def counit_witness(self):
        """``(eps (x) id) Delta = id`` and ``(id (x) eps) Delta = id`` on the basis."""
        for g in self.groupoid.morphisms:
            left = [b for a, b in self.coproduct[g] if self.counit[a]]
            right = [a for a, b in self.coproduct[g] if self.counit[b]]
            if left != [g] or right != [g]:
                return g
        return None


def dual_groupoid_algebra(G: FiniteGroupoid) -> DualGroupoidAlgebra:
    """``kG*`` on the dual basis ``v_g``: orthogonal idempotents, with
    ``Delta(v_g) = sum_{h in D_d(g)} v_{g h^-1} (x) v_h``."""
    mult = {(g, g): {g: ONE} for g in G.morphisms}
    alg = validate_algebra(G.n, mult, [ONE] * G.n, [f"v_{s}" for s in G.names])
    cop = tuple(tuple((G.comp[g][G.inv[h]], h) for h in G.D(G.dom[g])) for g in G.morphisms)
    counit = tuple(1 if G.is_identity(g) else 0 for g in G.morphisms)
    antipode = tuple(G.inv)
    return DualGroupoidAlgebra(G, alg, cop, counit, antipode)


@dataclass(frozen=True, eq=False)
class ModuleRep:
    algebra: StructureAlgebra
    dim: int
    act: tuple  # basis index -> dim x dim matrix; m . b = act[b] m on the right side
    side: str = "left"

    def action_of(self, v: Sequence) -> list:
        out = la.zeros(self.dim, self.dim)
        for i, c in enumerate(v):
            if c == 0:
                continue
            for r in range(self.dim):
                row, src = out[r], self.act[i][r]
                for s in range(self.dim):
                    if src[s] != 0:
                        row[s] += c * src[s]
        return out

    def __repr__(self):
        return f"ModuleRep({self.side}, dim={self.dim}, over dim {self.algebra.dim})"


def validate_module(alg: StructureAlgebra, act, side: str = "left") -> ModuleRep:
    """Operators act on the left of column vectors in both cases; for a right
    module ``m . (ab) = act[b] act[a] m``."""
    if side not in ("left", "right"):
        raise GsmError("E_SHAPE", f"unknown side {side!r}")
    act = tuple([[la.frac(x) for x in row] for row in M] for M in act)
    if len(act) != alg.dim:
        raise GsmError("E_MODULE", "one matrix per basis element required")
    m = len(act[0]) if act else 0
    for M in act:
        if len(M) != m or any(len(r) != m for r in M):
            raise GsmError("E_MODULE", "matrices must be square of one size")
    mod = ModuleRep(alg, m, act, side)
    if not la.mat_equal(mod.action_of(alg.unit), la.identity(m)):
        raise GsmError("E_MODULE", "unit does not act as the identity", "unit")
    for i, j in product(range(alg.dim), repeat=2):
        prod = mod.action_of(alg.mul(alg.basis(i), alg.basis(j)))
        if side == "left":
            comp = la.matmul(act[i], act[j], inner=m)
        else:
            comp = la.matmul(act[j], act[i], inner=m)
        if not la.mat_equal(prod, comp):
            raise GsmError("E_MODULE", "action is not multiplicative", (i, j))
    return mod


def regular_module(alg: StructureAlgebra, side: str = "left") -> ModuleRep:
    if side == "left":
        act = [alg.left_matrix(alg.basis(i)) for i in range(alg.dim)]
    else:
        act = [alg.right_matrix(alg.basis(i)) for i in range(alg.dim)]
    return validate_module(alg, act, side)

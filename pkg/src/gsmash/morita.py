"""X-graded modules as modules over the smash product, and the Morita context at a point.

An X-graded module stores one component subspace ``M_x`` per carrier point;
a basis-aligned grading (``deg``: basis index -> point) is the special case of
coordinate subspaces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from . import linalg as la
from .algebra import GradedAlgebra, ModuleRep, StructureAlgebra, product_span, subalgebra, validate_module
from .errors import GsmError
from .gset import GSetAction, stabilizer
from .linalg import ONE, ZERO, Subspace
from .smash import SmashAlgebra, eta_embedding, smash_product


@dataclass(frozen=True, eq=False)
class XGradedModule:
    base: ModuleRep  # left module over A
    action: GSetAction
    components: tuple  # carrier position -> Subspace M_x
    graded: GradedAlgebra

    @property
    def dim(self) -> int:
        return self.base.dim

    def component(self, x) -> Subspace:
        return self.components[self.action.pos(x)]

    def projections(self) -> dict:
        return _projections(self.action.carrier, self.components, self.dim)


def _projections(points, comps, n) -> dict:
    """Projection matrices onto each component along the others."""
    cols, owner = [], []
    for x, C in zip(points, comps):
        cols.extend(C.rows)
        owner.extend([x] * C.rank)
    if n == 0:
        return {x: [] for x in points}
    Cmat = la.from_columns(cols, n)
    aug = [row + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(Cmat)]
    R, piv = la.rref(aug, 2 * n)
    if piv[:n] != list(range(n)):
        raise GsmError("E_XGRADING", "components do not form a direct sum")
    Cinv = [row[n:] for row in R]
    out = {}
    for x in points:
        E = [[ONE if i == j and owner[i] == x else ZERO for j in range(n)] for i in range(n)]
        out[x] = la.matmul(la.matmul(Cmat, E, n), Cinv, n)
    return out


def validate_xgraded(GA: GradedAlgebra, action: GSetAction, module: ModuleRep, deg) -> XGradedModule:
    """``deg`` is either a list (module basis index -> point) or a mapping
    point -> spanning vectors of ``M_x``."""
    if not action.split:
        raise GsmError("E_NOT_SPLIT", "X-graded modules need a split G-set")
    if action.groupoid is not GA.groupoid or module.algebra is not GA.algebra:
        raise GsmError("E_SHAPE", "module and action do not match the algebra")
    n = module.dim
    if isinstance(deg, dict):
        comps = tuple(Subspace(n, deg.get(x, ())) for x in action.carrier)
    else:
        deg = list(deg)
        if len(deg) != n:
            raise GsmError("E_SHAPE", "one point per module basis vector required")
        comps = tuple(Subspace.coordinate(n, [i for i, d in enumerate(deg) if d == x]) for x in action.carrier)
    if sum(C.rank for C in comps) != n:
        raise GsmError("E_XGRADING", "components do not form a direct sum")
    M = XGradedModule(module, action, comps, GA)
    M.projections()
    G = GA.groupoid
    for i in range(GA.dim):
        g = GA.deg[i]
        Ai = module.act[i]
        for x, C in zip(action.carrier, comps):
            target = M.component(action.alpha[g][x]) if x in action.source_fiber(g) else Subspace(n)
            for v in C.rows:
                if not target.contains(la.matvec(Ai, v)):
                    raise GsmError("E_XGRADING", "A_g M_x not inside M_{alpha_g(x)}",
                                   (G.name(g), action.label(x), i))
    return M


def to_smash_module(M: XGradedModule, S: SmashAlgebra | None = None) -> ModuleRep:
    """``(a_g d_x) . m = a_g m_x``."""
    S = S or smash_product(M.graded, M.action)
    P = M.projections()
    mats = [la.matmul(M.base.act[i], P[x], M.dim) if M.dim else [] for i, x in S.labels]
    return validate_module(S.algebra, mats, "left")


def to_xgraded(V: ModuleRep, S: SmashAlgebra) -> XGradedModule:
    """``V_x = (1_e d_x) V`` with ``A`` acting through the embedding of ``A`` into ``A # X``."""
    if V.algebra is not S.algebra:
        raise GsmError("E_SHAPE", "module is not over this smash product")
    GA = S.graded
    eta = eta_embedding(GA, S)
    act = [V.action_of(eta.image_of_basis(i)) for i in range(GA.dim)]
    base = validate_module(GA.algebra, act, "left")
    comps = {}
    for x in S.action.carrier:
        comps[x] = la.columns(V.action_of(S.idempotent(x)), V.dim)
    return validate_xgraded(GA, S.action, base, comps)


def _same_module(a: ModuleRep, b: ModuleRep):
    if a.dim != b.dim or len(a.act) != len(b.act):
        return "shape"
    for i, (p, q) in enumerate(zip(a.act, b.act)):
        if not la.mat_equal(p, q):
            return i
    return None


def roundtrip_witness(obj, S: SmashAlgebra | None = None):
    """``None`` when converting there and back reproduces ``obj`` exactly."""
    if isinstance(obj, XGradedModule):
        S = S or smash_product(obj.graded, obj.action)
        back = to_xgraded(to_smash_module(obj, S), S)
        w = _same_module(back.base, obj.base)
        if w is not None:
            return ("action", w)
        for x, (p, q) in zip(obj.action.carrier, zip(back.components, obj.components)):
            if p != q:
                return ("component", obj.action.label(x))
        return None
    if S is None:
        raise GsmError("E_SHAPE", "smash algebra required for a smash module")
    back = to_smash_module(to_xgraded(obj, S), S)
    w = _same_module(back, obj)
    return None if w is None else ("action", w)


def roundtrip_check(obj, S: SmashAlgebra | None = None) -> bool:
    return roundtrip_witness(obj, S) is None


def is_module_morphism(f, V: ModuleRep, W: ModuleRep) -> bool:
    """``f`` is a ``W.dim x V.dim`` matrix commuting with every basis action."""
    return all(la.mat_equal(la.matmul(f, a, V.dim) if f else [], la.matmul(b, f, V.dim) if b else [])
               for a, b in zip(V.act, W.act))


def is_graded_morphism(f, M: XGradedModule, N: XGradedModule) -> bool:
    if not is_module_morphism(f, M.base, N.base):
        return False
    return all(N.components[p].contains(la.matvec(f, v))
               for p, C in enumerate(M.components) for v in C.rows)


def morphism_compatible(f, M: XGradedModule, N: XGradedModule, S: SmashAlgebra | None = None) -> bool:
    """Graded module maps and smash module maps are the same matrices."""
    S = S or smash_product(M.graded, M.action)
    return is_graded_morphism(f, M, N) == is_module_morphism(f, to_smash_module(M, S), to_smash_module(N, S))


def regular_xgraded(S: SmashAlgebra) -> XGradedModule:
    """``A # X`` as a module over itself, read as an X-graded module."""
    A = S.algebra
    V = validate_module(A, [A.left_matrix(A.basis(i)) for i in range(A.dim)], "left")
    return to_xgraded(V, S)


def zero_xgraded(GA: GradedAlgebra, action: GSetAction) -> XGradedModule:
    base = validate_module(GA.algebra, [[] for _ in range(GA.dim)], "left")
    return validate_xgraded(GA, action, base, [])


def left_ideal_module(S: StructureAlgebra, v) -> ModuleRep:
    """The left ideal ``S v`` with the multiplication action, on its echelon basis."""
    W = Subspace(S.dim, [S.mul(S.basis(i), v) for i in range(S.dim)])
    mats = []
    for i in range(S.dim):
        cols = [W.coordinates(S.mul(S.basis(i), w)) for w in W.rows]
        mats.append(la.from_columns(cols, W.rank))
    return validate_module(S, mats, "left")


def random_smash_module(S: SmashAlgebra, rng: random.Random, max_dim: int = 6) -> ModuleRep:
    """A nonzero left ideal ``S v`` of dimension at most ``max_dim`` for a random sparse ``v``."""
    for _ in range(200):
        v = [ZERO] * S.dim
        for i in rng.sample(range(S.dim), rng.randint(1, min(3, S.dim))):
            v[i] = la.frac(rng.choice([-2, -1, 1, 1, 2, 3]))
        V = left_ideal_module(S.algebra, v)
        if 0 < V.dim <= max_dim:
            return V
    raise GsmError("E_TOO_LARGE", "no small left ideal found")


def stabilizer_subalgebra(GA: GradedAlgebra, action: GSetAction, x) -> tuple[Subspace, StructureAlgebra]:
    """The sum of the homogeneous components over the stabilizer of ``x``."""
    if not action.split:
        raise GsmError("E_NOT_SPLIT", "stabilizers need a split G-set")
    U = GA.components_space(stabilizer(action, x).sorted())
    return U, subalgebra(GA.algebra, U)


def hom_component(GA: GradedAlgebra, action: GSetAction, x, y) -> Subspace:
    """Sum of ``A_h`` over ``h`` from the object of ``x`` to that of ``y`` with ``alpha_h(x) = y``."""
    if not action.split:
        raise GsmError("E_NOT_SPLIT", "hom components need a split G-set")
    G = GA.groupoid
    e, f = action.object_of(x), action.object_of(y)
    hs = [h for h in G.hom(e, f) if action.alpha[h][x] == y]
    return GA.components_space(hs)


@dataclass(frozen=True, eq=False)
class MoritaContext:
    """Bimodule elements and elements of ``D`` are vectors in ``A``; elements of ``C`` live in ``A # X``."""
    ringC: SmashAlgebra
    ringD: Subspace
    algebraD: StructureAlgebra
    bimodW: Subspace
    bimodV: Subspace
    point: object
    stabilizer: tuple  # morphisms fixing the point

    @property
    def graded(self) -> GradedAlgebra:
        return self.ringC.graded

    @property
    def action(self) -> GSetAction:
        return self.ringC.action

    def w_part(self, w, y) -> tuple:
        """Components ``b_i`` of ``w`` with ``alpha_{deg b_i}(x) = y``."""
        GA, X, x = self.graded, self.action, self.point
        return tuple(c if c and X.alpha[GA.deg[i]].get(x) == y else ZERO for i, c in enumerate(w))

    def v_part(self, v, z) -> tuple:
        """Components ``b_i`` of ``v`` with ``alpha_{deg b_i}(z) = x``."""
        GA, X, x = self.graded, self.action, self.point
        return tuple(c if c and X.alpha[GA.deg[i]].get(z) == x else ZERO for i, c in enumerate(v))

    def c_on_w(self, c, w) -> tuple:
        S, A = self.ringC, self.graded.algebra
        out = la.zero_vector(A.dim)
        for n, a in enumerate(c):
            if a:
                i, y = S.labels[n]
                out = la.add(out, la.scale(a, A.mul(A.basis(i), self.w_part(w, y))))
        return out

    def v_on_c(self, v, c) -> tuple:
        S, A = self.ringC, self.graded.algebra
        out = la.zero_vector(A.dim)
        for n, a in enumerate(c):
            if a:
                i, y = S.labels[n]
                out = la.add(out, la.scale(a, self.v_part(A.mul(v, A.basis(i)), y)))
        return out

    def round(self, v, w) -> tuple:
        """``(v, w)``: the stabilizer-degree part of ``vw``."""
        return self.graded.degree_part(self.graded.algebra.mul(v, w), self.stabilizer)

    def square(self, w, v) -> tuple:
        """``[w, v] = sum_z (w v_z) d_z``."""
        S, A = self.ringC, self.graded.algebra
        out = la.zero_vector(S.dim)
        for z in self.action.carrier:
            vz = self.v_part(v, z)
            if any(vz):
                out = la.add(out, S.lift(A.mul(w, vz), z))
        return out


def _context_witness(ctx: MoritaContext):
    A, C = ctx.graded.algebra, ctx.ringC.algebra
    W, V, D = ctx.bimodW.rows, ctx.bimodV.rows, ctx.ringD.rows
    Cb = [C.basis(i) for i in range(C.dim)]
    for d in D:
        for w in W:
            if not ctx.bimodW.contains(A.mul(w, d)):
                return ("W.D", w, d)
        for v in V:
            if not ctx.bimodV.contains(A.mul(d, v)):
                return ("D.V", d, v)
    if any(ctx.c_on_w(C.unit, w) != w for w in W) or any(ctx.v_on_c(v, C.unit) != v for v in V):
        return ("unit",)
    for c, c2 in product(Cb, repeat=2):
        cc = C.mul(c, c2)
        for w in W:
            if ctx.c_on_w(c, ctx.c_on_w(c2, w)) != ctx.c_on_w(cc, w):
                return ("C.W", c, c2, w)
        for v in V:
            if ctx.v_on_c(ctx.v_on_c(v, c), c2) != ctx.v_on_c(v, cc):
                return ("V.C", c, c2, v)
    for c, d in product(Cb, D):
        for w in W:
            if ctx.c_on_w(c, A.mul(w, d)) != A.mul(ctx.c_on_w(c, w), d):
                return ("CWD", c, w, d)
        for v in V:
            if ctx.v_on_c(A.mul(d, v), c) != A.mul(d, ctx.v_on_c(v, c)):
                return ("DVC", d, v, c)
    for v, w in product(V, W):
        r = ctx.round(v, w)
        if not ctx.ringD.contains(r):
            return ("round-in-D", v, w)
        s = ctx.square(w, v)
        for d in D:
            if ctx.round(A.mul(d, v), w) != A.mul(d, r) or ctx.round(v, A.mul(w, d)) != A.mul(r, d):
                return ("round-D-bilinear", v, w, d)
            if ctx.square(A.mul(w, d), v) != ctx.square(w, A.mul(d, v)):
                return ("square-balanced", w, d, v)
        for c in Cb:
            if ctx.round(ctx.v_on_c(v, c), w) != ctx.round(v, ctx.c_on_w(c, w)):
                return ("round-balanced", v, c, w)
            if ctx.square(ctx.c_on_w(c, w), v) != C.mul(c, s) or ctx.square(w, ctx.v_on_c(v, c)) != C.mul(s, c):
                return ("square-C-bilinear", w, v, c)
        for w2 in W:
            if ctx.c_on_w(s, w2) != A.mul(w, ctx.round(v, w2)):
                return ("[w,v]w' = w(v,w')", w, v, w2)
        for v2 in V:
            if ctx.v_on_c(v2, s) != A.mul(ctx.round(v2, w), v):
                return ("v'[w,v] = (v',w)v", v2, w, v)
    return None


def build_morita_context(GA: GradedAlgebra, action: GSetAction, x, S: SmashAlgebra | None = None) -> MoritaContext:
    """The context between ``A # X`` and the stabilizer subalgebra at ``x``; every axiom is checked."""
    S = S or smash_product(GA, action)
    G = GA.groupoid
    e = action.object_of(x)
    D, Dalg = stabilizer_subalgebra(GA, action, x)
    W = GA.components_space([h for h in G.morphisms if G.dom[h] == e])
    V = GA.components_space([h for h in G.morphisms if G.ran[h] == e])
    ctx = MoritaContext(S, D, Dalg, W, V, x, stabilizer(action, x).sorted())
    w = _context_witness(ctx)
    if w is not None:
        raise GsmError("E_CONTEXT", "Morita context axiom fails", w[0])
    return ctx


@dataclass
class StrictnessReport:
    square_surjective: bool
    round_surjective: bool
    per_point: dict  # point label -> bool
    global_criterion: bool
    extras: dict = field(default_factory=dict)

    @property
    def morita_equivalent(self) -> bool:
        return self.square_surjective and self.round_surjective

    def to_dict(self) -> dict:
        d = {"squareSurjective": self.square_surjective, "roundSurjective": self.round_surjective,
             "perPointCriterion": dict(self.per_point), "globalCriterion": self.global_criterion,
             "moritaEquivalentFlag": self.morita_equivalent}
        d.update(self.extras)
        return d


def criterion_space(GA: GradedAlgebra, action: GSetAction, x, y) -> Subspace:
    """``sum A_{g^-1} A_g`` over ``g`` with ``alpha_g(y) = x``."""
    A, G = GA.algebra, GA.groupoid
    out = Subspace(A.dim)
    for g in G.D(action.object_of(y)):
        if action.alpha[g][y] == x:
            out = out.sum(product_span(A, GA.component_space(G.inv[g]), GA.component_space(g)))
    return out


def strictness_report(ctx: MoritaContext) -> StrictnessReport:
    GA, X, x = ctx.graded, ctx.action, ctx.point
    G = GA.groupoid
    squares = [ctx.square(w, v) for w in ctx.bimodW.rows for v in ctx.bimodV.rows]
    rounds = [ctx.round(v, w) for v in ctx.bimodV.rows for w in ctx.bimodW.rows]
    sq = Subspace(ctx.ringC.dim, squares).rank == ctx.ringC.dim
    rd = Subspace(GA.dim, rounds) == ctx.ringD
    everything = GA.components_space([G.identity[e] for e in G.objects])
    per_point, literal = {}, True
    for y in X.carrier:
        lhs = criterion_space(GA, X, x, y)
        per_point[X.label(y)] = lhs == GA.component_space(G.identity[X.object_of(y)])
        literal = literal and lhs == everything
    return StrictnessReport(sq, rd, per_point, literal,
                            {"dims": {"C": ctx.ringC.dim, "D": ctx.ringD.rank,
                                      "W": ctx.bimodW.rank, "V": ctx.bimodV.rank}})

"""Groupoid actions on finite sets.

An action of ``G`` on a carrier ``X`` assigns to each object ``e`` a fiber
``X_e`` and to each morphism ``g`` a bijection ``alpha[g]: X_dom(g) -> X_ran(g)``
(so ``X_g`` is the fiber over ``ran(g)``).  Fibers may overlap; such actions
are valid but not split, and most constructions downstream require split.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable

from .errors import GsmError
from .groupoid import (FiniteGroupoid, SubgroupoidView, check_subgroupoid,
                       validate_groupoid, NONE)

MAX_PARTIAL_CARRIER = 8


@dataclass(frozen=True, eq=False)
class GSetAction:
    groupoid: FiniteGroupoid
    carrier: tuple
    fibers: tuple  # object -> tuple of points, in carrier order
    alpha: tuple  # morphism -> {x: alpha_g(x)}
    split: bool
    labels: tuple = ()
    _pos: dict = field(default_factory=dict, repr=False)

    def pos(self, x) -> int:
        try:
            return self._pos[x]
        except KeyError:
            raise GsmError("E_NO_POINT", f"{x!r} is not a carrier point") from None

    def label(self, x) -> str:
        return self.labels[self.pos(x)] if self.labels else str(x)

    def fiber_of_morphism(self, g) -> tuple:
        """``X_g``, the fiber over ``ran(g)``."""
        return self.fibers[self.groupoid.ran[g]]

    def source_fiber(self, g) -> tuple:
        """``X_{g^-1}``, the domain of ``alpha_g``."""
        return self.fibers[self.groupoid.dom[g]]

    def act(self, g, x):
        return self.alpha[g][x]

    def object_of(self, x) -> int:
        """The unique object whose fiber holds ``x`` (split actions only)."""
        _require_split(self)
        for e, fib in enumerate(self.fibers):
            if x in fib:
                return e
        raise GsmError("E_NO_POINT", f"{x!r} lies in no fiber")

    def __len__(self):
        return len(self.carrier)

    def __repr__(self):
        return f"GSetAction(points={len(self.carrier)}, split={self.split})"


def _require_split(action, code="E_NOT_SPLIT"):
    if not action.split:
        raise GsmError(code, "the action is not split")


def _ordered(points, pos):
    return tuple(sorted(points, key=pos.__getitem__))


def validate_action(G: FiniteGroupoid, carrier, fibers, alpha, labels=None) -> GSetAction:
    """Check the action axioms exhaustively.

    ``fibers`` maps each object (index) to its points; ``alpha`` maps each
    morphism to a dict ``{x: alpha_g(x)}`` on ``X_dom(g)``.
    """
    carrier = tuple(carrier)
    pos = {x: i for i, x in enumerate(carrier)}
    if len(pos) != len(carrier):
        raise GsmError("E_SHAPE", "repeated carrier point")
    if isinstance(fibers, dict):
        fibers = [fibers.get(e, ()) for e in G.objects]
    if len(fibers) != G.n_objects:
        raise GsmError("E_SHAPE", "one fiber per object required")
    fib = []
    for e, F in enumerate(fibers):
        F = set(F)
        if not F <= pos.keys():
            raise GsmError("E_SHAPE", "fiber point outside the carrier", (e, sorted(F - pos.keys(), key=repr)[0]))
        fib.append(_ordered(F, pos))
    if isinstance(alpha, dict):
        alpha = [alpha.get(g) for g in G.morphisms]
    if len(alpha) != G.n:
        raise GsmError("E_SHAPE", "one map per morphism required")
    maps = []
    for g in G.morphisms:
        a = dict(alpha[g] or {})
        src, dst = fib[G.dom[g]], fib[G.ran[g]]
        if set(a) != set(src):
            raise GsmError("E_NOT_BIJECTIVE", "map not total on its source fiber", (g,))
        vals = list(a.values())
        if not set(vals) <= set(dst) or len(set(vals)) != len(vals) or len(vals) != len(dst):
            raise GsmError("E_NOT_BIJECTIVE", "map is not a bijection between fibers", (g,))
        maps.append(a)
    for e in G.objects:
        if any(maps[G.identity[e]][x] != x for x in fib[e]):
            raise GsmError("E_IDENTITY_ACTION", "identity morphism moves a point", e)
    for g, h in product(G.morphisms, repeat=2):
        if not G.composable(g, h):
            continue
        gh = G.comp[g][h]
        for x in fib[G.dom[h]]:
            if maps[g][maps[h][x]] != maps[gh][x]:
                raise GsmError("E_COCYCLE", "alpha_g alpha_h != alpha_gh", (g, h, x))
    seen = [x for F in fib for x in F]
    split = len(seen) == len(set(seen)) and set(seen) == set(carrier)
    labels = tuple(labels) if labels is not None else tuple(str(x) for x in carrier)
    return GSetAction(G, carrier, tuple(fib), tuple(maps), split, labels, pos)


def left_translation_action(G: FiniteGroupoid) -> GSetAction:
    """``G`` acting on its own morphisms by ``alpha_g(h) = gh`` with fibers ``R_e``."""
    fibers = [G.R(e) for e in G.objects]
    alpha = [{h: G.comp[g][h] for h in G.R(G.dom[g])} for g in G.morphisms]
    return validate_action(G, G.morphisms, fibers, alpha, G.names)


def right_translation_action(G: FiniteGroupoid, H: SubgroupoidView) -> GSetAction:
    """A wide subgroupoid ``H`` acting on the morphisms of ``G`` by ``beta_h(l) = l h^-1``."""
    if not H.wide:
        raise GsmError("E_NOT_WIDE", "right translation needs a wide subgroupoid")
    Hg, emb = H.as_groupoid()
    fibers = [G.D(e) for e in H.objects]
    alpha = []
    for h in emb:
        alpha.append({l: G.comp[l][G.inv[h]] for l in G.D(G.dom[h])})
    return validate_action(Hg, G.morphisms, fibers, alpha, G.names)


def trivial_action(G: FiniteGroupoid, points_per_object) -> GSetAction:
    """Each morphism sends the i-th point of its source fiber to the i-th point
    of its target fiber; isotropy groups act trivially."""
    carrier, fibers, k = [], [], 0
    for e in G.objects:
        F = tuple(range(k, k + points_per_object))
        k += points_per_object
        carrier.extend(F)
        fibers.append(F)
    alpha = []
    for g in G.morphisms:
        src, dst = fibers[G.dom[g]], fibers[G.ran[g]]
        alpha.append(dict(zip(src, dst)))
    return validate_action(G, carrier, fibers, alpha)


def orbit(action: GSetAction, x) -> tuple:
    _require_split(action)
    G = action.groupoid
    e = action.object_of(x)
    return _ordered({action.alpha[g][x] for g in G.D(e)}, action._pos)


def orbit_partition(action: GSetAction) -> tuple:
    _require_split(action)
    blocks, done = [], set()
    for x in action.carrier:
        if x in done:
            continue
        b = orbit(action, x)
        done.update(b)
        blocks.append(b)
    return tuple(blocks)


def stabilizer(action: GSetAction, x) -> SubgroupoidView:
    _require_split(action)
    G = action.groupoid
    e = action.object_of(x)
    return check_subgroupoid(G, [g for g in G.hom(e, e) if action.alpha[g][x] == x])


@dataclass(frozen=True)
class GSetMorphism:
    source: GSetAction
    target: GSetAction
    map: dict


@dataclass(frozen=True)
class MorphismCheck:
    kind: str  # not_morphism | morphism | mono | epi | iso
    injective: bool
    surjective: bool
    witness: object = None

    @property
    def is_morphism(self) -> bool:
        return self.kind != "not_morphism"


def _as_map(phi, src: GSetAction) -> dict:
    if isinstance(phi, GSetMorphism):
        return dict(phi.map)
    if isinstance(phi, dict):
        return dict(phi)
    return dict(zip(src.carrier, phi))


def check_morphism(phi, src: GSetAction, dst: GSetAction) -> MorphismCheck:
    """Classify ``phi: src -> dst``; the witness names the first failure."""
    m = _as_map(phi, src)
    G = src.groupoid
    inj = len(set(m.values())) == len(m)
    surj = set(m.values()) == set(dst.carrier)
    if dst.groupoid is not G:
        return MorphismCheck("not_morphism", inj, surj, "different groupoids")
    if set(m) != set(src.carrier) or not set(m.values()) <= set(dst.carrier):
        return MorphismCheck("not_morphism", inj, surj, "not a map between carriers")
    for e in G.objects:
        for x in src.fibers[e]:
            if m[x] not in dst.fibers[e]:
                return MorphismCheck("not_morphism", inj, surj, ("fiber", e, x))
    for g in G.morphisms:
        for x in src.source_fiber(g):
            if m[src.alpha[g][x]] != dst.alpha[g].get(m[x]):
                return MorphismCheck("not_morphism", inj, surj, ("equivariance", g, x))
    kind = {(True, True): "iso", (True, False): "mono", (False, True): "epi"}.get((inj, surj), "morphism")
    return MorphismCheck(kind, inj, surj)


def make_morphism(phi, src: GSetAction, dst: GSetAction) -> GSetMorphism:
    c = check_morphism(phi, src, dst)
    if not c.is_morphism:
        raise GsmError("E_NOT_MORPHISM", "map is not a morphism of G-sets", c.witness)
    return GSetMorphism(src, dst, _as_map(phi, src))


def invariance_witness(action: GSetAction, Y: Iterable):
    """First morphism ``g`` with ``alpha_g(Y & X_{g^-1})`` leaving ``Y & X_g``."""
    Y = set(Y)
    for g in action.groupoid.morphisms:
        target = Y & set(action.fiber_of_morphism(g))
        for x in action.source_fiber(g):
            if x in Y and action.alpha[g][x] not in target:
                return g
    return None


def is_invariant(action: GSetAction, Y: Iterable) -> bool:
    return invariance_witness(action, Y) is None


@dataclass(frozen=True)
class BiSet:
    g_action: GSetAction
    k_action: GSetAction
    split: bool

    @property
    def carrier(self) -> tuple:
        return self.g_action.carrier


def validate_biset(ga: GSetAction, ka: GSetAction) -> BiSet:
    """Mutual invariance of fibers and commutation of the two actions."""
    if set(ga.carrier) != set(ka.carrier):
        raise GsmError("E_SHAPE", "the two actions live on different carriers")
    G, K = ga.groupoid, ka.groupoid
    for g, k in product(G.morphisms, K.morphisms):
        Xg, Xsrc = set(ga.fiber_of_morphism(g)), ga.source_fiber(g)
        Yk, Ysrc = set(ka.fiber_of_morphism(k)), ka.source_fiber(k)
        for x in Xsrc:
            if x in Yk and not (ga.alpha[g][x] in Xg and ga.alpha[g][x] in Yk):
                raise GsmError("E_NOT_INVARIANT", "alpha_g leaves Y_k", (g, k, x))
        for x in Ysrc:
            if x in Xg and not (ka.alpha[k][x] in Xg and ka.alpha[k][x] in Yk):
                raise GsmError("E_NOT_INVARIANT", "beta_k leaves X_g", (g, k, x))
    for g, k in product(G.morphisms, K.morphisms):
        both = set(ga.source_fiber(g)) & set(ka.source_fiber(k))
        for x in _ordered(both, ga._pos):
            if ga.alpha[g][ka.alpha[k][x]] != ka.alpha[k][ga.alpha[g][x]]:
                raise GsmError("E_NOT_COMMUTING", "alpha_g beta_k != beta_k alpha_g", (g, k, x))
    return BiSet(ga, ka, ga.split and ka.split)


def sub_action(action: GSetAction, Y: Iterable) -> GSetAction:
    """Restriction of an action to an invariant subset ``Y``."""
    Y = set(Y)
    w = invariance_witness(action, Y)
    if w is not None:
        raise GsmError("E_NOT_INVARIANT", "subset is not invariant", w)
    pts = _ordered(Y, action._pos)
    fibers = [tuple(x for x in F if x in Y) for F in action.fibers]
    alpha = [{x: y for x, y in a.items() if x in Y} for a in action.alpha]
    labels = [action.label(x) for x in pts]
    return validate_action(action.groupoid, pts, fibers, alpha, labels)


def restricted_action(biset: BiSet, k) -> tuple[GSetAction, MorphismCheck]:
    """The G-set ``Y_k`` and the classification of ``beta_k: Y_{k^-1} -> Y_k``."""
    ka = biset.k_action
    k = ka.groupoid.morphism(k)
    theta = sub_action(biset.g_action, ka.fiber_of_morphism(k))
    theta_inv = sub_action(biset.g_action, ka.source_fiber(k))
    check = check_morphism(ka.alpha[k], theta_inv, theta)
    return theta, check


def fully_faithful_witness(action: GSetAction):
    """A non-identity ``l`` fixing some point of ``X_l & X_{l^-1}``, else ``None``."""
    G = action.groupoid
    for l in G.morphisms:
        if G.is_identity(l):
            continue
        both = set(action.fiber_of_morphism(l)) & set(action.source_fiber(l))
        if any(action.alpha[l][x] == x for x in both):
            return l
    return None


def is_fully_faithful(action: GSetAction) -> bool:
    return fully_faithful_witness(action) is None


def is_transitive(action: GSetAction) -> bool:
    return len(orbit_partition(action)) <= 1


@dataclass(frozen=True)
class OrbitGSet:
    base: BiSet
    blocks: tuple  # K-orbits, each in carrier order
    action: GSetAction  # G acting on orbit representatives
    projection: GSetMorphism

    def orbit_of(self, x):
        return self.projection.map[x]


def orbit_gset(biset: BiSet) -> OrbitGSet:
    """The set of K-orbits as a G-set, with the projection ``x -> o(x)``.

    Each orbit is represented by its first carrier point.
    """
    ka, ga = biset.k_action, biset.g_action
    _require_split(ka, "E_NOT_SPLIT_K")
    blocks = orbit_partition(ka)
    rep = {x: b[0] for b in blocks for x in b}
    G = ga.groupoid
    fibers = [{rep[x] for x in F} for F in ga.fibers]
    lam = []
    for g in G.morphisms:
        m = {}
        for x in ga.source_fiber(g):
            o, img = rep[x], rep[ga.alpha[g][x]]
            if m.setdefault(o, img) != img:
                raise GsmError("E_NOT_WELL_DEFINED", "orbit map depends on the representative", (g, x))
        lam.append(m)
    reps = tuple(b[0] for b in blocks)
    act = validate_action(G, reps, fibers, lam, [ga.label(r) for r in reps])
    proj = make_morphism(rep, ga, act)
    return OrbitGSet(biset, blocks, act, proj)


def _union_of(blocks, mask):
    return [x for i, b in enumerate(blocks) if mask >> i & 1 for x in b]


def invariant_subsets(action: GSetAction) -> list[tuple]:
    """All invariant subsets of a split action, as unions of orbits."""
    blocks = orbit_partition(action)
    out = []
    for mask in range(1 << len(blocks)):
        Y = _ordered(_union_of(blocks, mask), action._pos)
        if is_invariant(action, Y):
            out.append(Y)
    return sorted(out, key=lambda Y: (len(Y), [action.pos(x) for x in Y]))


def _equivariant_bijections(action: GSetAction, S: tuple, T: tuple):
    G = action.groupoid
    blocks = [b for b in orbit_partition(action) if b[0] in S]
    choices = []
    for b in blocks:
        e = action.object_of(b[0])
        choices.append([t for t in T if t in action.fibers[e]])
    for images in product(*choices):
        rho, ok = {}, True
        for b, t in zip(blocks, images):
            x = b[0]
            e = action.object_of(x)
            for g in G.D(e):
                src, dst = action.alpha[g][x], action.alpha[g][t]
                if rho.setdefault(src, dst) != dst:
                    ok = False
                    break
            if not ok:
                break
        if ok and len(set(rho.values())) == len(rho) and set(rho.values()) == set(T):
            yield rho


def partial_bijection_groupoid(action: GSetAction, max_size: int = MAX_PARTIAL_CARRIER):
    """The groupoid of equivariant partial bijections between invariant subsets,
    together with its tautological action on the carrier."""
    _require_split(action)
    if len(action.carrier) > max_size:
        raise GsmError("E_TOO_LARGE", f"carrier exceeds {max_size} points", len(action.carrier))
    pos = action._pos
    subsets = invariant_subsets(action)
    mors = []  # (dom, im, rho)
    for S, T in product(subsets, repeat=2):
        if len(S) != len(T):
            continue
        for rho in _equivariant_bijections(action, S, T):
            src, dst = sub_action(action, S), sub_action(action, T)
            if check_morphism(rho, src, dst).kind == "iso":
                mors.append((S, T, tuple(rho[x] for x in S)))
    key = lambda m: ([pos[x] for x in m[0]], [pos[x] for x in m[1]], [pos[x] for x in m[2]])
    mors.sort(key=lambda m: (len(m[0]),) + tuple(key(m)))
    index = {m: i for i, m in enumerate(mors)}
    obj = {S: i for i, S in enumerate(subsets)}

    def compose(a, b):  # a after b
        Sa, Ta, ra = a
        Sb, Tb, rb = b
        ma, mb = dict(zip(Sa, ra)), dict(zip(Sb, rb))
        c = {x: ma[mb[x]] for x in Sb}
        return (Sb, Ta, tuple(c[x] for x in Sb))

    n = len(mors)
    dom = [obj[m[0]] for m in mors]
    ran = [obj[m[1]] for m in mors]
    comp = [[NONE] * n for _ in range(n)]
    for i, j in product(range(n), repeat=2):
        if mors[i][0] == mors[j][1]:
            comp[i][j] = index[compose(mors[i], mors[j])]
    inv = []
    for S, T, r in mors:
        back = dict(zip(r, S))
        inv.append(index[(T, S, tuple(back[y] for y in T))])
    ident = [index[(S, S, S)] for S in subsets]
    lab = action.label
    names = ["[" + ",".join(f"{lab(x)}>{lab(y)}" for x, y in zip(S, r)) + "]" for S, _, r in mors]
    onames = ["{" + ",".join(lab(x) for x in S) + "}" for S in subsets]
    I = validate_groupoid(dom, ran, comp, inv, ident, names, onames)
    taut = validate_action(I, action.carrier, [S for S in subsets],
                           [dict(zip(S, r)) for S, _, r in mors], action.labels)
    return I, taut


def product_biset(ga: GSetAction, ka: GSetAction) -> BiSet:
    """``G`` acting on the first coordinate and ``K`` on the second of ``X x Y``."""
    carrier = [(x, y) for x in ga.carrier for y in ka.carrier]
    labels = [f"{ga.label(x)}.{ka.label(y)}" for x, y in carrier]
    gf = [[(x, y) for x in F for y in ka.carrier] for F in ga.fibers]
    ga2 = validate_action(ga.groupoid, carrier, gf,
                          [{(x, y): (a[x], y) for x in a for y in ka.carrier} for a in ga.alpha], labels)
    kf = [[(x, y) for x in ga.carrier for y in F] for F in ka.fibers]
    ka2 = validate_action(ka.groupoid, carrier, kf,
                          [{(x, y): (x, b[y]) for x in ga.carrier for y in b} for b in ka.alpha], labels)
    return validate_biset(ga2, ka2)


def disjoint_sum(a: GSetAction, b: GSetAction) -> GSetAction:
    """Two G-sets side by side; points become ``(0, x)`` and ``(1, y)``."""
    if a.groupoid is not b.groupoid:
        raise GsmError("E_SHAPE", "actions of different groupoids")
    carrier = [(0, x) for x in a.carrier] + [(1, y) for y in b.carrier]
    fibers = [[(0, x) for x in Fa] + [(1, y) for y in Fb] for Fa, Fb in zip(a.fibers, b.fibers)]
    alpha = [{**{(0, x): (0, y) for x, y in ma.items()}, **{(1, x): (1, y) for x, y in mb.items()}}
             for ma, mb in zip(a.alpha, b.alpha)]
    labels = [f"{a.label(x)}'" for x in a.carrier] + [f"{b.label(y)}''" for y in b.carrier]
    return validate_action(a.groupoid, carrier, fibers, alpha, labels)


def coset_biset(G: FiniteGroupoid, H: SubgroupoidView) -> BiSet:
    """``G`` translating itself on the left, the wide ``H`` on the right."""
    return validate_biset(left_translation_action(G), right_translation_action(G, H))

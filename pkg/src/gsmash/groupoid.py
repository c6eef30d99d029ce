"""Finite groupoids given by explicit tables, with subgroupoids and cosets.

Morphisms and objects are dense integer indices.  The composition table is a
full ``n x n`` array holding ``-1`` on non-composable pairs; ``comp[g][h]`` is
``gh`` (apply ``h`` first), defined exactly when ``dom(g) == ran(h)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import GsmError

NONE = -1


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    dom: tuple
    ran: tuple
    comp: tuple
    inv: tuple
    identity: tuple
    names: tuple = ()
    object_names: tuple = ()
    _index: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.dom)

    @property
    def n_objects(self) -> int:
        return len(self.identity)

    @property
    def morphisms(self) -> range:
        return range(len(self.dom))

    @property
    def objects(self) -> range:
        return range(len(self.identity))

    def composable(self, g: int, h: int) -> bool:
        return self.dom[g] == self.ran[h]

    def mul(self, g: int, h: int) -> int:
        k = self.comp[g][h]
        if k == NONE:
            raise GsmError("E_COMP_DOMAIN", "not composable", (g, h))
        return k

    def is_identity(self, g: int) -> bool:
        return self.identity[self.dom[g]] == g

    def D(self, e: int) -> tuple:
        self._check_object(e)
        return tuple(g for g in self.morphisms if self.dom[g] == e)

    def R(self, e: int) -> tuple:
        self._check_object(e)
        return tuple(g for g in self.morphisms if self.ran[g] == e)

    def hom(self, e: int, f: int) -> tuple:
        return tuple(g for g in self.morphisms if self.dom[g] == e and self.ran[g] == f)

    def _check_object(self, e):
        if not (isinstance(e, int) and 0 <= e < self.n_objects):
            raise GsmError("E_NO_OBJECT", f"no object {e!r}")

    def name(self, g: int) -> str:
        return self.names[g] if self.names else str(g)

    def object_name(self, e: int) -> str:
        return self.object_names[e] if self.object_names else str(e)

    def morphism(self, key) -> int:
        """Index of a morphism given by index or name."""
        if isinstance(key, int):
            if 0 <= key < self.n:
                return key
        elif key in self._index:
            return self._index[key]
        raise GsmError("E_UNRESOLVED_NAME", f"no morphism {key!r}")

    def obj(self, key) -> int:
        if isinstance(key, int):
            self._check_object(key)
            return key
        if key in self.object_names:
            return self.object_names.index(key)
        raise GsmError("E_NO_OBJECT", f"no object {key!r}")

    def __repr__(self):
        return f"FiniteGroupoid(objects={self.n_objects}, morphisms={self.n})"


def validate_groupoid(dom, ran, comp, inv, identity, names=None, object_names=None) -> FiniteGroupoid:
    """Check every groupoid axiom by enumeration and return the frozen groupoid."""
    n = len(dom)
    m = len(identity)
    dom, ran, inv, identity = tuple(dom), tuple(ran), tuple(inv), tuple(identity)
    comp = tuple(tuple(NONE if c is None else c for c in row) for row in comp)

    if len(ran) != n or len(inv) != n or len(comp) != n or any(len(r) != n for r in comp):
        raise GsmError("E_SHAPE", "table sizes disagree with the morphism count")
    for g in range(n):
        if not (0 <= dom[g] < m and 0 <= ran[g] < m and 0 <= inv[g] < n):
            raise GsmError("E_SHAPE", "index out of range", g)
    for row in comp:
        for c in row:
            if not (c == NONE or 0 <= c < n):
                raise GsmError("E_SHAPE", f"composition value {c} out of range")
    if names is not None and len(names) != n:
        raise GsmError("E_SHAPE", "one name per morphism required")
    if object_names is not None and len(object_names) != m:
        raise GsmError("E_SHAPE", "one name per object required")
    if n and not m:
        raise GsmError("E_SHAPE", "morphisms without objects")

    for e, i in enumerate(identity):
        if not 0 <= i < n or dom[i] != e or ran[i] != e:
            raise GsmError("E_IDENTITY", "identity morphism not an endomorphism of its object", e)

    for g, h in product(range(n), repeat=2):
        k = comp[g][h]
        if dom[g] == ran[h]:
            if k == NONE:
                raise GsmError("E_COMP_DOMAIN", "composable pair left undefined", (g, h))
            if dom[k] != dom[h] or ran[k] != ran[g]:
                raise GsmError("E_COMP_DOMAIN", "composite has wrong domain or range", (g, h))
        elif k != NONE:
            raise GsmError("E_COMP_DOMAIN", "non-composable pair given a value", (g, h))

    for g in range(n):
        if comp[identity[ran[g]]][g] != g or comp[g][identity[dom[g]]] != g:
            raise GsmError("E_IDENTITY", "identity law fails", g)

    for g in range(n):
        h = inv[g]
        if dom[h] != ran[g] or ran[h] != dom[g]:
            raise GsmError("E_INVERSE", "inverse has wrong domain or range", g)
        if comp[g][h] != identity[ran[g]] or comp[h][g] != identity[dom[g]]:
            raise GsmError("E_INVERSE", "inverse law fails", g)
        if inv[h] != g:
            raise GsmError("E_INVERSE", "inverse is not an involution", g)

    for g, h in product(range(n), repeat=2):
        gh = comp[g][h]
        if gh == NONE:
            continue
        for l in range(n):
            hl = comp[h][l]
            if hl == NONE:
                continue
            if comp[gh][l] != comp[g][hl]:
                raise GsmError("E_ASSOC", "composition not associative", (g, h, l))

    names = tuple(names) if names is not None else tuple(str(g) for g in range(n))
    object_names = tuple(object_names) if object_names is not None else tuple(f"o{e}" for e in range(m))
    if len(set(names)) != n or len(set(object_names)) != m:
        raise GsmError("E_DUPLICATE_NAME", "names must be distinct")
    index = {s: g for g, s in enumerate(names)}
    return FiniteGroupoid(dom, ran, comp, inv, identity, names, object_names, index)


def from_composition(dom, ran, comp, identity, names=None, object_names=None) -> FiniteGroupoid:
    """Build a groupoid whose inverses are read off the composition table."""
    n = len(dom)
    inv = []
    for g in range(n):
        found = [h for h in range(n)
                 if dom[g] == ran[h] and dom[h] == ran[g]
                 and comp[g][h] == identity[ran[g]] and comp[h][g] == identity[dom[g]]]
        if not found:
            raise GsmError("E_INVERSE", "no inverse", g)
        inv.append(found[0])
    return validate_groupoid(dom, ran, comp, inv, identity, names, object_names)


def pair_groupoid(n, object_names=None) -> FiniteGroupoid:
    """The groupoid with exactly one morphism between any ordered pair of objects.

    Morphism ``a -> b`` has index ``a*n + b`` and is named ``id_a`` or ``a_b``.
    """
    if n < 1:
        raise GsmError("E_EMPTY", "pair groupoid needs at least one object")
    obj = tuple(object_names) if object_names else tuple(f"o{i}" for i in range(n))
    idx = lambda a, b: a * n + b
    dom, ran, names = [], [], []
    for a, b in product(range(n), repeat=2):
        dom.append(a)
        ran.append(b)
        names.append(f"id_{obj[a]}" if a == b else f"{obj[a]}_{obj[b]}")
    comp = [[NONE] * (n * n) for _ in range(n * n)]
    for g, h in product(range(n * n), repeat=2):
        if dom[g] == ran[h]:
            comp[g][h] = idx(dom[h], ran[g])
    inv = [idx(ran[g], dom[g]) for g in range(n * n)]
    identity = [idx(a, a) for a in range(n)]
    return validate_groupoid(dom, ran, comp, inv, identity, names, obj)


def group_as_groupoid(table, names=None, object_name="*") -> FiniteGroupoid:
    """A group, given by its multiplication table, as a one-object groupoid."""
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise GsmError("E_NOT_GROUP", "table must be square and nonempty")
    if any(not 0 <= c < n for r in table for c in r):
        raise GsmError("E_NOT_GROUP", "entries out of range")
    units = [e for e in range(n) if all(table[e][a] == a and table[a][e] == a for a in range(n))]
    if not units:
        raise GsmError("E_NOT_GROUP", "no identity element")
    u = units[0]
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise GsmError("E_NOT_GROUP", "not associative", (a, b, c))
    inv = []
    for a in range(n):
        cands = [b for b in range(n) if table[a][b] == u and table[b][a] == u]
        if not cands:
            raise GsmError("E_NOT_GROUP", "element without inverse", a)
        inv.append(cands[0])
    names = names if names is not None else [f"z{a}" for a in range(n)]
    return validate_groupoid([0] * n, [0] * n, [list(r) for r in table], inv, [u], names, [object_name])


def cyclic_group(n, object_name="*") -> FiniteGroupoid:
    return group_as_groupoid([[(a + b) % n for b in range(n)] for a in range(n)], object_name=object_name)


def trivial_groupoid(object_name="e") -> FiniteGroupoid:
    return pair_groupoid(1, [object_name])


def discrete_groupoid(n, object_names=None) -> FiniteGroupoid:
    """``n`` objects and only their identity morphisms."""
    obj = tuple(object_names) if object_names else tuple(f"o{i}" for i in range(n))
    comp = [[g if g == h else NONE for h in range(n)] for g in range(n)]
    return validate_groupoid(range(n), range(n), comp, range(n), range(n),
                             [f"id_{o}" for o in obj], obj)


def disjoint_union(G: FiniteGroupoid, H: FiniteGroupoid, prefixes=None) -> FiniteGroupoid:
    """Coproduct; morphisms and objects of ``H`` are shifted after those of ``G``."""
    if prefixes is None:
        clash = set(G.names) & set(H.names) or set(G.object_names) & set(H.object_names)
        prefixes = ("l.", "r.") if clash else ("", "")
    p, q = prefixes
    n, m = G.n, G.n_objects
    dom = list(G.dom) + [d + m for d in H.dom]
    ran = list(G.ran) + [r + m for r in H.ran]
    N = n + H.n
    comp = [[NONE] * N for _ in range(N)]
    for g, h in product(G.morphisms, repeat=2):
        comp[g][h] = G.comp[g][h]
    for g, h in product(H.morphisms, repeat=2):
        c = H.comp[g][h]
        comp[g + n][h + n] = NONE if c == NONE else c + n
    inv = list(G.inv) + [i + n for i in H.inv]
    identity = list(G.identity) + [i + n for i in H.identity]
    names = [p + s for s in G.names] + [q + s for s in H.names]
    objs = [p + s for s in G.object_names] + [q + s for s in H.object_names]
    return validate_groupoid(dom, ran, comp, inv, identity, names, objs)


@dataclass(frozen=True)
class SubgroupoidView:
    parent: FiniteGroupoid
    members: frozenset
    wide: bool

    @property
    def objects(self) -> tuple:
        return tuple(sorted({self.parent.dom[g] for g in self.members}))

    def __contains__(self, g):
        return g in self.members

    def sorted(self) -> tuple:
        return tuple(sorted(self.members))

    def as_groupoid(self) -> tuple[FiniteGroupoid, tuple]:
        """Reindexed standalone groupoid plus the embedding (new index -> parent index)."""
        G = self.parent
        mors = self.sorted()
        objs = self.objects
        mpos = {g: i for i, g in enumerate(mors)}
        opos = {e: i for i, e in enumerate(objs)}
        comp = [[NONE if G.comp[g][h] == NONE else mpos[G.comp[g][h]] for h in mors] for g in mors]
        sub = validate_groupoid(
            [opos[G.dom[g]] for g in mors], [opos[G.ran[g]] for g in mors], comp,
            [mpos[G.inv[g]] for g in mors], [mpos[G.identity[e]] for e in objs],
            [G.name(g) for g in mors], [G.object_name(e) for e in objs])
        return sub, mors


def check_subgroupoid(G: FiniteGroupoid, members: Iterable) -> SubgroupoidView:
    mem = frozenset(G.morphism(g) for g in members)
    if not mem:
        raise GsmError("E_NOT_CLOSED", "a subgroupoid is nonempty")
    for g in sorted(mem):
        if G.inv[g] not in mem:
            raise GsmError("E_NOT_CLOSED", "missing inverse", (g,))
    for g, h in product(sorted(mem), repeat=2):
        if G.composable(g, h) and G.comp[g][h] not in mem:
            raise GsmError("E_NOT_CLOSED", "missing composite", (g, h))
    wide = all(i in mem for i in G.identity)
    return SubgroupoidView(G, mem, wide)


def identities(G: FiniteGroupoid) -> SubgroupoidView:
    return check_subgroupoid(G, G.identity)


def whole(G: FiniteGroupoid) -> SubgroupoidView:
    return check_subgroupoid(G, G.morphisms)


def isotropy_group(G: FiniteGroupoid, e) -> SubgroupoidView:
    e = G.obj(e)
    view = check_subgroupoid(G, G.hom(e, e))
    sub, _ = view.as_groupoid()
    if sub.n_objects != 1:
        raise GsmError("E_NOT_GROUP", "isotropy group has more than one object", e)
    return view


def fibers(G: FiniteGroupoid, e) -> tuple[tuple, tuple]:
    e = G.obj(e)
    return G.D(e), G.R(e)


@dataclass(frozen=True)
class CosetPartition:
    parent: FiniteGroupoid
    subgroupoid: SubgroupoidView
    blocks: tuple

    def block_of(self, g: int) -> tuple:
        for b in self.blocks:
            if g in b:
                return b
        raise GsmError("E_UNRESOLVED_NAME", f"morphism {g} in no block")


def right_cosets(G: FiniteGroupoid, H: SubgroupoidView) -> CosetPartition:
    """Classes of ``g ~ h  iff  g h^-1 in H`` inside each ``D_e``."""
    if not H.wide:
        raise GsmError("E_NOT_WIDE", "cosets need a wide subgroupoid")
    related = lambda g, h: G.comp[g][G.inv[h]] in H.members
    blocks = []
    for e in G.objects:
        left = list(G.D(e))
        while left:
            g = left[0]
            block = tuple(h for h in left if related(h, g))
            blocks.append(block)
            left = [h for h in left if h not in block]
    # the relation must be an equivalence whose classes are exactly these blocks
    for e in G.objects:
        for g, h in product(G.D(e), repeat=2):
            same = any(g in b and h in b for b in blocks)
            if same != related(g, h):
                raise GsmError("E_NOT_CLOSED", "coset relation is not an equivalence", (g, h))
    return CosetPartition(G, H, tuple(sorted(blocks)))

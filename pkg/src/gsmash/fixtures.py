"""Small worked examples shared by the tests and the CLI."""

from __future__ import annotations

import random

from .algebra import GradedAlgebra, graded_algebra, groupoid_algebra
from .groupoid import (FiniteGroupoid, cyclic_group, identities, pair_groupoid,
                       trivial_groupoid, whole)
from .gset import (BiSet, GSetAction, GSetMorphism, coset_biset, disjoint_sum, left_translation_action,
                   make_morphism, product_biset, right_translation_action, trivial_action,
                   validate_action, validate_biset)


def pair2() -> FiniteGroupoid:
    """Objects ``e, f``; morphisms ``id_e, e_f, f_e, id_f`` in that order."""
    return pair_groupoid(2, ("e", "f"))


def m2(G: FiniteGroupoid | None = None) -> GradedAlgebra:
    """2x2 matrices, ``E_ij`` of degree ``j -> i``."""
    G = G or pair2()
    names = ["E11", "E12", "E21", "E22"]
    mult = {}
    for a, (i, j) in enumerate([(1, 1), (1, 2), (2, 1), (2, 2)]):
        for b, (k, l) in enumerate([(1, 1), (1, 2), (2, 1), (2, 2)]):
            if j == k:
                mult[(a, b)] = {names.index(f"E{i}{l}"): 1}
    deg = [G.morphism(n) for n in ("id_e", "f_e", "e_f", "id_f")]
    return graded_algebra(4, mult, [1, 0, 0, 1], G, deg, names)


def xef(G: FiniteGroupoid) -> GSetAction:
    """One point over each object of the pair groupoid: ``X_e = {x}``, ``X_f = {y}``."""
    m = G.morphism
    alpha = {m("id_e"): {"x": "x"}, m("e_f"): {"x": "y"}, m("f_e"): {"y": "x"}, m("id_f"): {"y": "y"}}
    return validate_action(G, ["x", "y"], [["x"], ["y"]], alpha)


def qxq_diagonal(G: FiniteGroupoid) -> GradedAlgebra:
    """``Q x Q`` concentrated in the identity degrees; off-diagonal parts vanish."""
    mult = {(0, 0): {0: 1}, (1, 1): {1: 1}}
    return graded_algebra(2, mult, [1, 1], G, [G.morphism("id_e"), G.morphism("id_f")], ["p", "q"])


def scalars(G: FiniteGroupoid) -> GradedAlgebra:
    """``Q`` sitting in degree of the identity of a one-object groupoid."""
    return graded_algebra(1, {(0, 0): {0: 1}}, [1], G, [G.identity[0]], ["1"])


def m2_cyclic():
    """``M_2`` graded by ``Z/2``: diagonal even, off-diagonal odd."""
    G = cyclic_group(2)
    base = m2()
    mult = {k: dict(v) for k, v in base.algebra.mult.items()}
    return graded_algebra(4, mult, [1, 0, 0, 1], G, [0, 1, 1, 0], ["E11", "E12", "E21", "E22"])


def translation_biset(G: FiniteGroupoid) -> BiSet:
    """``G`` on itself by left and right translation."""
    return coset_biset(G, whole(G))


def identities_biset(ga: GSetAction) -> BiSet:
    """The trivial one-object groupoid acting identically on the whole carrier."""
    K = trivial_groupoid("k")
    ka = validate_action(K, ga.carrier, [ga.carrier], [{x: x for x in ga.carrier}], ga.labels)
    return validate_biset(ga, ka)


def control_biset():
    """``Z/2`` acting trivially on a single point: not fully faithful.

    Returns ``(biset, graded algebra)`` with ``A = Q`` over the trivial groupoid.
    """
    G = trivial_groupoid("e")
    ga = validate_action(G, ["p"], [["p"]], [{"p": "p"}])
    K = cyclic_group(2)
    ka = validate_action(K, ["p"], [["p"]], [{"p": "p"}, {"p": "p"}])
    return validate_biset(ga, ka), scalars(G)


def _random_action(G: FiniteGroupoid, rng: random.Random, size: int) -> GSetAction:
    """A split action with ``size`` points over every object."""
    carrier = [(e, i) for e in G.objects for i in range(size)]
    fibers = [[(e, i) for i in range(size)] for e in G.objects]
    alpha = [None] * G.n
    if G.n_objects == 1 and G.n == 2:
        perm = list(range(size))
        rng.shuffle(perm)
        # an involution: pair up consecutive entries of a shuffle
        inv = list(range(size))
        for a in range(0, size - 1, 2):
            if rng.random() < 0.7:
                inv[perm[a]], inv[perm[a + 1]] = perm[a + 1], perm[a]
        alpha[G.identity[0]] = {(0, i): (0, i) for i in range(size)}
        alpha[1 - G.identity[0]] = {(0, i): (0, inv[i]) for i in range(size)}
        return validate_action(G, carrier, fibers, alpha)
    # otherwise transport a random bijection from a base object (groupoid must be connected
    # with trivial isotropy, as in the pair groupoids)
    shift = {}
    for e in G.objects:
        perm = list(range(size))
        rng.shuffle(perm)
        shift[e] = perm
    for g in G.morphisms:
        d, r = G.dom[g], G.ran[g]
        back = {v: i for i, v in enumerate(shift[d])}
        alpha[g] = {(d, i): (r, shift[r][back[i]]) for i in range(size)}
    return validate_action(G, carrier, fibers, alpha)


def random_biset(seed: int):
    """A small product biset with a matching graded algebra.

    Returns ``(biset, graded algebra)``.
    """
    rng = random.Random(seed)
    choice = rng.randrange(3)
    if choice == 0:
        G = pair2()
        GA = rng.choice([m2, groupoid_algebra])(G)
    elif choice == 1:
        GA = m2_cyclic() if rng.random() < 0.5 else groupoid_algebra(cyclic_group(2))
        G = GA.groupoid
    else:
        G = trivial_groupoid("e")
        GA = scalars(G)
    K = rng.choice([cyclic_group(2), pair2(), trivial_groupoid("k")])
    n = rng.randint(1, 2)
    ga = _random_action(G, rng, n)
    # keep the product carrier within 8 points
    m = rng.randint(1, 2) if 2 * n * G.n_objects * K.n_objects <= 8 else 1
    ka = _random_action(K, rng, m)
    return product_biset(ga, ka), GA


def gset_morphisms(G: FiniteGroupoid) -> list[tuple[str, GSetMorphism]]:
    """Named morphisms of G-sets over the pair groupoid, covering every kind."""
    X = xef(G)
    XX = disjoint_sum(X, X)
    L = left_translation_action(G)
    T1, T2 = trivial_action(G, 1), trivial_action(G, 2)
    base = {G.objects[0]: "x", G.objects[1]: "y"}
    out = [
        ("identity", make_morphism({p: p for p in X.carrier}, X, X)),
        ("fold", make_morphism({(i, p): p for i, p in XX.carrier}, XX, X)),
        ("inclusion", make_morphism({p: (0, p) for p in X.carrier}, X, XX)),
        ("orbit map", make_morphism({h: X.alpha[h][base[G.dom[h]]] for h in G.morphisms}, L, X)),
        ("collapse", make_morphism({p: T1.fibers[T2.object_of(p)][0] for p in T2.carrier}, T2, T1)),
        ("swap", make_morphism({(i, p): (1 - i, p) for i, p in XX.carrier}, XX, XX)),
        ("embed", make_morphism({p: T2.fibers[T1.object_of(p)][1] for p in T1.carrier}, T1, T2)),
    ]
    return out

import pytest

from gsmash.errors import GsmError
from gsmash.fixtures import gset_morphisms, pair2, xef
from gsmash.groupoid import cyclic_group, identities, pair_groupoid, whole
from gsmash.gset import (check_morphism, coset_biset, disjoint_sum, invariant_subsets, is_fully_faithful,
                         is_transitive, left_translation_action, orbit, orbit_gset, orbit_partition,
                         partial_bijection_groupoid, product_biset, right_translation_action, stabilizer,
                         sub_action, trivial_action, validate_action, validate_biset)


def test_xef_is_split_and_transitive():
    G = pair2()
    X = xef(G)
    assert X.split and is_transitive(X)
    assert X.act(G.morphism("e_f"), "x") == "y"
    assert stabilizer(X, "x").members == frozenset({G.morphism("id_e")})


def test_action_axioms_are_enforced():
    G = pair2()
    m = G.morphism
    with pytest.raises(GsmError) as e:
        validate_action(G, ["x", "y"], [["x"], ["y"]], {m("id_e"): {"x": "x"}, m("e_f"): {"x": "y"},
                                                         m("f_e"): {}, m("id_f"): {"y": "y"}})
    assert e.value.code == "E_NOT_BIJECTIVE"
    C2 = cyclic_group(2)
    with pytest.raises(GsmError) as e:
        validate_action(C2, [0, 1], [[0, 1]], [{0: 1, 1: 0}, {0: 1, 1: 0}])
    assert e.value.code == "E_IDENTITY_ACTION"
    C3 = cyclic_group(3)
    with pytest.raises(GsmError) as e:
        validate_action(C3, [0, 1], [[0, 1]], [{0: 0, 1: 1}, {0: 1, 1: 0}, {0: 1, 1: 0}])
    assert e.value.code == "E_COCYCLE"


def test_translation_actions():
    G = pair2()
    L = left_translation_action(G)
    assert L.split and len(L) == 4
    assert len(orbit_partition(L)) == 2  # one orbit per domain
    R = right_translation_action(G, whole(G))
    assert R.split and len(orbit_partition(R)) == 2
    Ri = right_translation_action(G, identities(G))
    assert len(orbit_partition(Ri)) == 4


def test_trivial_action_and_disjoint_sum():
    G = pair2()
    T = trivial_action(G, 2)
    assert len(T) == 4 and [len(F) for F in T.fibers] == [2, 2]
    XX = disjoint_sum(xef(G), xef(G))
    assert len(orbit_partition(XX)) == 2
    assert sorted(orbit(XX, (0, "x"))) == [(0, "x"), (0, "y")]


def test_fixture_morphisms_classify():
    kinds = {name: check_morphism(phi.map, phi.source, phi.target).kind for name, phi in gset_morphisms(pair2())}
    assert kinds == {"identity": "iso", "fold": "epi", "inclusion": "mono", "orbit map": "epi",
                     "collapse": "epi", "swap": "iso", "embed": "mono"}


def test_non_equivariant_map_is_rejected():
    G = pair2()
    XX = disjoint_sum(xef(G), xef(G))
    bad = {(0, "x"): (0, "x"), (0, "y"): (1, "y"), (1, "x"): (1, "x"), (1, "y"): (0, "y")}
    c = check_morphism(bad, XX, XX)
    assert not c.is_morphism and c.witness[0] == "equivariance"


def test_coset_biset_commutes_and_orbits():
    G = pair2()
    B = coset_biset(G, whole(G))
    assert B.split
    O = orbit_gset(B)
    assert len(O.blocks) == 2 and len(O.action.carrier) == 2
    assert check_morphism(O.projection.map, B.g_action, O.action).kind == "epi"


def test_noncommuting_actions_are_rejected():
    C2 = cyclic_group(2)
    pts = [0, 1, 2]
    a = validate_action(C2, pts, [pts], [{0: 0, 1: 1, 2: 2}, {0: 1, 1: 0, 2: 2}])
    b = validate_action(C2, pts, [pts], [{0: 0, 1: 1, 2: 2}, {0: 0, 1: 2, 2: 1}])
    with pytest.raises(GsmError) as e:
        validate_biset(a, b)
    assert e.value.code == "E_NOT_COMMUTING"


def test_fully_faithful():
    C2 = cyclic_group(2)
    fixed = validate_action(C2, ["p"], [["p"]], [{"p": "p"}, {"p": "p"}])
    assert not is_fully_faithful(fixed)
    assert is_fully_faithful(left_translation_action(C2))
    G = pair2()
    assert is_fully_faithful(right_translation_action(G, whole(G)))


def test_product_biset_fibers():
    G, C2 = pair2(), cyclic_group(2)
    B = product_biset(xef(G), left_translation_action(C2))
    assert len(B.carrier) == 4 and B.split


def test_invariant_subsets_and_partial_bijections():
    G = pair2()
    X = xef(G)
    assert invariant_subsets(X) == [(), ("x", "y")]
    I, taut = partial_bijection_groupoid(X)
    assert I.n_objects == 2 and I.n == 2
    assert is_fully_faithful(taut)
    XX = disjoint_sum(X, X)
    I2, _ = partial_bijection_groupoid(XX)
    # subsets: empty, two single orbits, everything; the full subset has a swap
    assert I2.n_objects == 4 and I2.n == 1 + 4 + 2
    with pytest.raises(GsmError) as e:
        sub_action(X, ["x"])
    assert e.value.code == "E_NOT_INVARIANT"


def test_partial_bijections_refuse_large_carriers():
    G = pair_groupoid(3)
    with pytest.raises(GsmError) as e:
        partial_bijection_groupoid(left_translation_action(G), max_size=8)
    assert e.value.code == "E_TOO_LARGE"

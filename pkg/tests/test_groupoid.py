import pytest

from gsmash.errors import GsmError
from gsmash.groupoid import (NONE, check_subgroupoid, cyclic_group, discrete_groupoid, disjoint_union,
                             from_composition, group_as_groupoid, identities, isotropy_group,
                             pair_groupoid, right_cosets, trivial_groupoid, validate_groupoid, whole)


def test_pair_groupoid_layout():
    G = pair_groupoid(2, ("e", "f"))
    assert G.names == ("id_e", "e_f", "f_e", "id_f")
    ef, fe = G.morphism("e_f"), G.morphism("f_e")
    assert (G.dom[ef], G.ran[ef]) == (0, 1)
    # gh means h first
    assert G.mul(fe, ef) == G.identity[0]
    assert G.mul(ef, fe) == G.identity[1]
    assert G.comp[ef][ef] == NONE
    assert G.inv[ef] == fe


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pair_groupoid_counts(n):
    G = pair_groupoid(n)
    assert G.n == n * n and G.n_objects == n
    assert all(len(G.hom(a, b)) == 1 for a in G.objects for b in G.objects)


def test_group_table_and_cyclic():
    C3 = cyclic_group(3)
    assert C3.n == 3 and C3.n_objects == 1
    assert C3.mul(1, 2) == 0
    V = group_as_groupoid([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    assert all(V.inv[g] == g for g in V.morphisms)


def test_bad_tables_are_rejected():
    with pytest.raises(GsmError) as e:
        group_as_groupoid([[0, 1], [1, 1]])
    assert e.value.code == "E_NOT_GROUP" and e.value.witness == 1
    # a composable pair left undefined
    with pytest.raises(GsmError) as e:
        validate_groupoid([0, 0], [0, 0], [[0, 1], [1, NONE]], [0, 1], [0])
    assert e.value.code == "E_COMP_DOMAIN"
    # an identity that does not act as one
    with pytest.raises(GsmError) as e:
        from_composition([0, 0], [0, 0], [[1, 0], [0, 1]], [0])
    assert e.value.code in {"E_IDENTITY", "E_INVERSE"}


def test_nonassociative_table_is_caught():
    # a loop (quasigroup with identity) of order 5 that is not a group
    table = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GsmError) as e:
        group_as_groupoid(table)
    assert e.value.code == "E_NOT_GROUP"
    with pytest.raises(GsmError) as e:
        validate_groupoid([0] * 5, [0] * 5, table, range(5), [0])
    assert e.value.code == "E_ASSOC"


def test_disjoint_union_prefixes_on_clash():
    U = disjoint_union(pair_groupoid(2, ("e", "f")), pair_groupoid(2, ("e", "f")))
    assert U.n == 8 and U.n_objects == 4
    assert "l.id_e" in U.names and "r.id_e" in U.names
    assert U.comp[U.morphism("l.id_e")][U.morphism("r.id_e")] == NONE


def test_subgroupoids():
    G = pair_groupoid(2, ("e", "f"))
    assert identities(G).wide and whole(G).wide
    assert len(identities(G).members) == 2
    with pytest.raises(GsmError) as e:
        check_subgroupoid(G, ["e_f"])
    assert e.value.code == "E_NOT_CLOSED"
    H = check_subgroupoid(G, ["id_e"])
    assert not H.wide
    sub, emb = H.as_groupoid()
    assert sub.n == 1 and emb == (0,)
    assert isotropy_group(G, "e").members == frozenset({0})


def test_right_cosets_partition_each_star():
    G = pair_groupoid(2, ("e", "f"))
    assert len(right_cosets(G, whole(G)).blocks) == 2
    assert len(right_cosets(G, identities(G)).blocks) == 4
    C2 = cyclic_group(2)
    assert len(right_cosets(C2, identities(C2)).blocks) == 2
    with pytest.raises(GsmError):
        right_cosets(G, check_subgroupoid(G, ["id_e"]))


def test_small_builders():
    assert trivial_groupoid().n == 1
    D = discrete_groupoid(3)
    assert D.n == 3 and all(D.is_identity(g) for g in D.morphisms)
    with pytest.raises(GsmError):
        pair_groupoid(0)

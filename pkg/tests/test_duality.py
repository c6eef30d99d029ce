import pytest

from gsmash.algebra import groupoid_algebra, regular_module
from gsmash.duality import (coset_blocks, coset_duality, endomorphism_algebra, partial_bijection_duality,
                            right_module_over, verify_duality, weak_hopf_smash)
from gsmash.errors import GsmError
from gsmash.fixtures import control_biset, m2, pair2, random_biset, translation_biset, xef
from gsmash.groupoid import check_subgroupoid, cyclic_group, identities, whole
from gsmash.gset import disjoint_sum
from gsmash.skew import gamma_action

import oracles


def test_end_of_regular_module_is_the_algebra():
    A = m2().algebra
    E = endomorphism_algebra(regular_module(A, "right"))
    assert E.algebra.dim == 4
    assert oracles.associativity_unit_failures(E.algebra) == []


def test_end_dimension_matches_independent_count():
    G = pair2()
    act = gamma_action(translation_biset(G), m2(G))
    from gsmash.skew import invariant_subalgebra
    fixed, _ = invariant_subalgebra(act)
    E = endomorphism_algebra(right_module_over(act.algebra, fixed))
    assert E.algebra.dim == oracles.end_over_invariants_dimension(act.algebra, fixed.rows) == 16
    assert oracles.associativity_unit_failures(E.algebra) == []


def test_translation_duality_report():
    G = pair2()
    rep = verify_duality(translation_biset(G), m2(G))
    assert rep.fully_faithful and rep.map_ok and rep.ok
    assert rep.dims == (16, 16)
    assert rep.extras["galoisPointwiseOK"]
    d = rep.to_dict()
    assert d["dims"] == [16, 16] and d["details"] == []


def test_control_biset_is_not_an_isomorphism():
    B, GA = control_biset()
    rep = verify_duality(B, GA)
    assert not rep.fully_faithful and not rep.map_ok
    assert rep.dims == (2, 1)


@pytest.mark.parametrize("seed", [0, 1, 5])
def test_random_fully_faithful_bisets(seed):
    B, GA = random_biset(seed)
    rep = verify_duality(B, GA)
    assert rep.fully_faithful and rep.map_ok and not rep.details


@pytest.mark.parametrize("G,H,GA,dims", [
    (pair2(), "whole", "m2", (16, 16)),
    (pair2(), "identities", "m2", (8, 8)),
    (cyclic_group(2), "identities", "kG", (4, 4)),
])
def test_coset_duality(G, H, GA, dims):
    H = whole(G) if H == "whole" else identities(G)
    GA = m2(G) if GA == "m2" else groupoid_algebra(G)
    rep = coset_duality(G, H, GA)
    assert rep.ok and rep.dims == dims and rep.extras["cosetsMatch"]


def test_cosets_versus_translation_orbits():
    G = pair2()
    orbits, cosets = coset_blocks(G, whole(G))
    assert orbits != cosets
    assert orbits == {frozenset(G.inv[g] for g in b) for b in cosets}


def test_coset_duality_needs_wide_subgroupoid():
    G = pair2()
    with pytest.raises(GsmError) as e:
        coset_duality(G, check_subgroupoid(G, ["id_e"]), m2(G))
    assert e.value.code == "E_NOT_WIDE"


def test_partial_bijection_duality():
    G = pair2()
    rep = partial_bijection_duality(G, xef(G), m2(G))
    assert rep.ok and rep.fully_faithful and rep.dims == (4, 4)
    with pytest.raises(GsmError) as e:
        partial_bijection_duality(G, disjoint_sum(xef(G), xef(G)), m2(G))
    assert e.value.code == "E_NOT_TRANSITIVE"


def test_weak_hopf_smash():
    W = weak_hopf_smash(m2())
    assert W.algebra.dim == 8
    assert W.psi.is_isomorphism() and W.psi.is_unital() and W.psi.multiplicative_witness() is None
    assert oracles.associativity_unit_failures(W.algebra) == []
    assert W.report.map_ok

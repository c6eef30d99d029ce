"""The ten acceptance criteria, one test each.

Each test prints a single PASS/FAIL line (also repeated in the pytest summary).
All comparisons are exact rational equalities; nothing is approximate.
Run directly with ``python3 tests/test_acceptance.py`` for the verdict lines alone.
"""

import json
import os
import random
import subprocess
import sys
from fractions import Fraction
from itertools import product
from pathlib import Path

from gsmash.algebra import groupoid_algebra, validate_module
from gsmash.duality import (coset_duality, endomorphism_algebra, partial_bijection_duality, right_module_over,
                            verify_duality, weak_hopf_smash)
from gsmash.errors import GsmError
from gsmash.fixtures import (control_biset, gset_morphisms, identities_biset, m2, m2_cyclic, pair2,
                             qxq_diagonal, random_biset, scalars, translation_biset, xef)
from gsmash.groupoid import cyclic_group, identities, trivial_groupoid, whole
from gsmash.gset import (check_morphism, coset_biset, left_translation_action, orbit_gset, sub_action,
                         validate_action)
from gsmash.morita import (build_morita_context, random_smash_module, regular_xgraded, roundtrip_check,
                           strictness_report, to_smash_module, to_xgraded, validate_xgraded, zero_xgraded)
from gsmash.skew import fixed_vs_orbit_image, gamma_action, invariant_subalgebra, skew_groupoid_ring
from gsmash.smash import induced_morphism, smash_product

import oracles
from acceptance_log import record

# pinned tolerances: exact arithmetic everywhere, so the numerical tolerance is zero
TOLERANCE = Fraction(0)
SUITE_SECONDS = 60
RANDOM_MODULES = 50
MODULE_MAX_DIM = 6
SEED = 20240613

ROOT = Path(__file__).resolve().parents[1]
EXAMPLES = sorted((ROOT / "dsl_examples").glob("*.gsm"))


def _exact(a, b):
    return all(abs(Fraction(x) - Fraction(y)) <= TOLERANCE for x, y in zip(a, b)) and len(a) == len(b)


def _swap_action(G):
    return validate_action(G, ["a", "b"], [["a", "b"]], [{"a": "a", "b": "b"}, {"a": "b", "b": "a"}])


def _battery():
    """Fixture bisets with matching graded algebras."""
    G = pair2()
    C2 = cyclic_group(2)
    out = [
        ("identities over Xef", identities_biset(xef(G)), m2(G)),
        ("identities over left translation", identities_biset(left_translation_action(G)), m2(G)),
        ("translation", translation_biset(G), m2(G)),
        ("coset by identities", coset_biset(G, identities(G)), m2(G)),
        ("Z/2 coset by trivial", coset_biset(C2, identities(C2)), groupoid_algebra(C2)),
        ("control", *control_biset()),
    ]
    for seed in range(4):
        out.append((f"random seed {seed}", *random_biset(seed)))
    return out


def _orbits(action):
    """Orbits by plain closure, without the library's partition code."""
    seen, blocks = set(), []
    for x in action.carrier:
        if x in seen:
            continue
        block, todo = {x}, [x]
        while todo:
            y = todo.pop()
            for a in action.alpha:
                z = a.get(y)
                if z is not None and z not in block:
                    block.add(z)
                    todo.append(z)
        seen |= block
        blocks.append(frozenset(block))
    return blocks


# ---------------------------------------------------------------- 1

def test_criterion_1_structural_oracles():
    G = pair2()
    algebras = [("M2", m2(G).algebra), ("M2 over Z/2", m2_cyclic().algebra),
                ("QxQ", qxq_diagonal(G).algebra), ("Q", scalars(trivial_groupoid()).algebra),
                ("kP", groupoid_algebra(G).algebra), ("kZ3", groupoid_algebra(cyclic_group(3)).algebra)]
    checks = []
    GC = m2_cyclic()
    for name, GA, X in [("M2#Xef", m2(G), xef(G)), ("M2#L", m2(G), left_translation_action(G)),
                        ("QxQ#Xef", qxq_diagonal(G), xef(G)), ("M2(Z/2)#swap", GC, _swap_action(GC.groupoid))]:
        S = smash_product(GA, X)
        checks.append((f"{name} matches the defining rule", oracles.smash_matches_reference(GA, X, S)))
        algebras.append((name, S.algebra))
    for name, B, GA in [("translation", translation_biset(G), m2(G)), ("control", *control_biset()),
                        ("random seed 1", *random_biset(1))]:
        act = gamma_action(B, GA)
        algebras.append((f"skew ring {name}", skew_groupoid_ring(act).algebra))
        fixed, _ = invariant_subalgebra(act)
        algebras.append((f"End {name}", endomorphism_algebra(right_module_over(act.algebra, fixed)).algebra))
    algebras.append(("A#kG*", weak_hopf_smash(m2(G)).algebra))
    checks += [(name, oracles.associativity_unit_failures(alg) == []) for name, alg in algebras]
    assert record(1, f"structural oracles on {len(algebras)} algebras", checks)


# ---------------------------------------------------------------- 2

def test_criterion_2_induced_morphisms():
    G = pair2()
    GA = m2(G)
    checks = []
    morphisms = gset_morphisms(G)
    for name, phi in morphisms:
        try:
            f = induced_morphism(phi, GA)
        except GsmError as e:
            checks.append((f"{name}: {e.code}", False))
            continue
        T1, T2 = oracles.dense_table(f.source), oracles.dense_table(f.target)
        mult = True
        for i, j in product(range(f.source.dim), repeat=2):
            lhs = f(oracles._dense_mul(T1, f.source.basis(i), f.source.basis(j)))
            rhs = oracles._dense_mul(T2, f.image_of_basis(i), f.image_of_basis(j))
            mult = mult and _exact(lhs, rhs)
        r = oracles.rank(f.matrix) if f.matrix else 0
        inj = len(set(phi.map.values())) == len(phi.map)
        surj = set(phi.map.values()) == set(phi.target.carrier)
        checks.append((f"{name} multiplicative", mult))
        if inj:
            checks.append((f"{name} injective => surjective", r == f.target.dim))
        if surj:
            checks.append((f"{name} surjective => injective", r == f.source.dim))
    checks.append(("at least five morphisms", len(morphisms) >= 5))
    assert record(2, f"induced algebra maps on {len(morphisms)} G-set morphisms", checks)


# ---------------------------------------------------------------- 3

def test_criterion_3_gamma_actions():
    battery = _battery()
    checks = [("at least six bisets", len(battery) >= 6)]
    for name, B, GA in battery:
        try:
            act = gamma_action(B, GA)
        except GsmError as e:
            checks.append((f"{name}: {e.code}", False))
            continue
        ranks = [E.rank for E in act.ideals]
        rows = [r for E in act.ideals for r in E.rows]
        checks.append((f"{name} direct sum", sum(ranks) == act.algebra.dim == oracles.rank(rows)))
        ga, ka = B.g_action, B.k_action
        K = ka.groupoid
        for k in K.morphisms:
            src, dst = sub_action(ga, ka.source_fiber(k)), sub_action(ga, ka.fiber_of_morphism(k))
            kind = check_morphism(ka.alpha[k], src, dst).kind
            checks.append((f"{name} beta_{K.name(k)} iso", kind == "iso"))
        blocks = _orbits(ka)
        block_of = {x: b for b in blocks for x in b}
        well = all(block_of[ga.alpha[g][x]] == block_of[ga.alpha[g][y]]
                   for g in ga.groupoid.morphisms for x in ga.source_fiber(g) for y in ga.source_fiber(g)
                   if block_of[x] == block_of[y])
        try:
            orbit_gset(B)
            built = True
        except GsmError:
            built = False
        checks.append((f"{name} lambda well defined", well and built))
    assert record(3, f"gamma actions on {len(battery)} bisets", checks)


# ---------------------------------------------------------------- 4

def test_criterion_4_invariants_are_orbit_image():
    checks = []
    for name, B, GA in _battery():
        rep = fixed_vs_orbit_image(B, GA)
        checks.append((name, rep.equal and rep.image.rows == rep.fixed.rows))
    assert record(4, "image of A#O equals the gamma invariants", checks)


# ---------------------------------------------------------------- 5

def test_criterion_5_translation_duality():
    G = pair2()
    GA = m2(G)
    B = translation_biset(G)
    rep = verify_duality(B, GA)
    act = gamma_action(B, GA)
    S = act.smash
    fixed, _ = invariant_subalgebra(act)
    independent = oracles.end_over_invariants_dimension(S.algebra, fixed.rows)
    # {u_e, u_e} with u_e the sum of 1_e d_x over the G-fiber X_e
    pairs = []
    for e in G.objects:
        u = [Fraction(0)] * S.dim
        for x in S.action.fibers[e]:
            u = [a + b for a, b in zip(u, S.idempotent(x))]
        pairs.append((u, u))
    K = act.groupoid
    target = lambda k: act.unit_of(k) if K.is_identity(k) else (0,) * S.dim
    misses = oracles.is_galois_identity(act, pairs, target)
    points = [(S.idempotent(x), S.idempotent(x)) for x in S.action.carrier]
    pointwise = oracles.is_galois_identity(act, points, target)
    control, cGA = control_biset()
    crep = verify_duality(control, cGA)
    checks = [
        ("dim skew = 16", rep.dims[0] == 16),
        ("dim End = 16", rep.dims[1] == 16),
        ("independent End count = 16", independent == 16),
        ("mapOK", rep.map_ok),
        ("{u_e,u_e} identity" + (f" misses at {', '.join(K.name(k) for k in misses)}" if misses else ""),
         not misses),
        ("pointwise {1 d_x, 1 d_x} identity", not pointwise),
        ("control mapOK false", not crep.map_ok),
    ]
    assert record(5, "skew ring versus End on the translation biset", checks)


# ---------------------------------------------------------------- 6

def test_criterion_6_coset_and_partial_dualities():
    G = pair2()
    C2 = cyclic_group(2)
    checks = []
    for name, H, GA in [("(P, P)", whole(G), m2(G)), ("(P, identities)", identities(G), m2(G)),
                        ("(Z/2, trivial)", identities(C2), groupoid_algebra(C2))]:
        rep = coset_duality(H.parent, H, GA)
        checks.append((f"coset {name}", rep.ok and rep.extras["cosetsMatch"]
                       and rep.dims[0] == rep.dims[1] and rep.dims[0] > 0))
    rep = partial_bijection_duality(G, xef(G), m2(G))
    checks.append(("partial bijections on Xef", rep.ok and rep.fully_faithful))
    assert record(6, "coset and partial bijection dualities", checks)


# ---------------------------------------------------------------- 7

def test_criterion_7_module_round_trips():
    G = pair2()
    GA, X = m2(G), xef(G)
    S1 = smash_product(GA, X)
    GC = m2_cyclic()
    S2 = smash_product(GC, _swap_action(GC.groupoid))
    SL = smash_product(GA, left_translation_action(G))
    col = validate_xgraded(GA, X, validate_module(GA.algebra, [
        [[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]]), ["x", "y"])
    fixtures = [("column", col, S1), ("regular M2#Xef", regular_xgraded(S1), S1),
                ("regular M2#L", regular_xgraded(SL), SL), ("regular M2(Z/2)#swap", regular_xgraded(S2), S2),
                ("zero", zero_xgraded(GA, X), S1)]
    checks = []
    for name, M, S in fixtures:
        checks.append((f"{name} graded", roundtrip_check(M, S)))
        checks.append((f"{name} smash", roundtrip_check(to_smash_module(M, S), S)))
    rng = random.Random(SEED)
    for label, S in [("M2#Xef", S1), ("M2(Z/2)#swap", S2)]:
        good = 0
        for _ in range(RANDOM_MODULES):
            V = random_smash_module(S, rng, MODULE_MAX_DIM)
            good += (0 < V.dim <= MODULE_MAX_DIM and roundtrip_check(V, S)
                     and roundtrip_check(to_xgraded(V, S), S))
        checks.append((f"{good}/{RANDOM_MODULES} random modules over {label}", good == RANDOM_MODULES))
    assert record(7, "X-graded modules versus smash modules", checks)


# ---------------------------------------------------------------- 8

def test_criterion_8_morita_contexts():
    G = pair2()
    GC = m2_cyclic()
    cases = [("M2/Xef at x", m2(G), xef(G), "x"), ("M2/Xef at y", m2(G), xef(G), "y"),
             ("QxQ/Xef at x", qxq_diagonal(G), xef(G), "x"), ("QxQ/Xef at y", qxq_diagonal(G), xef(G), "y"),
             ("M2(Z/2)/swap at a", GC, _swap_action(GC.groupoid), "a"),
             ("kP/L at id_e", groupoid_algebra(G), left_translation_action(G), G.morphism("id_e"))]
    checks, reports = [], {}
    for name, GA, X, x in cases:
        try:
            ctx = build_morita_context(GA, X, x)
        except GsmError as e:
            checks.append((f"{name} axioms: {e.witness}", False))
            continue
        checks.append((f"{name} axioms", True))
        rep = strictness_report(ctx)
        reports[name] = rep
        every = all(rep.per_point.values())
        nonempty = all(X.fibers)
        checks.append((f"{name} criterion => square onto", not every or rep.square_surjective))
        checks.append((f"{name} square onto => criterion", not (rep.square_surjective and nonempty) or every))
    checks.append(("at least four contexts", len(reports) >= 4))
    m = reports.get("M2/Xef at x")
    c = reports.get("QxQ/Xef at x")
    checks.append(("M2/Xef strict", m is not None and m.square_surjective and m.round_surjective))
    checks.append(("control not strict", c is not None and not c.morita_equivalent))
    assert record(8, f"Morita contexts at a point ({len(cases)} contexts)", checks)


# ---------------------------------------------------------------- 9

def test_criterion_9_weak_hopf_smash():
    G = pair2()
    W = weak_hopf_smash(m2(G))
    psi = W.psi
    T1, T2 = oracles.dense_table(psi.source), oracles.dense_table(psi.target)
    mult = all(_exact(psi(oracles._dense_mul(T1, psi.source.basis(i), psi.source.basis(j))),
                      oracles._dense_mul(T2, psi.image_of_basis(i), psi.image_of_basis(j)))
               for i, j in product(range(psi.source.dim), repeat=2))
    n = psi.source.dim
    checks = [("square", n == psi.target.dim), ("bijective", oracles.rank(psi.matrix) == n),
              ("multiplicative", mult), ("unital", _exact(psi(psi.source.unit), psi.target.unit)),
              ("duality mapOK", W.report.map_ok)]
    assert record(9, "A#kG* against A#X for left translation", checks)


# ---------------------------------------------------------------- 10

def _cli(path, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "gsmash", str(path)], capture_output=True, env=env)


def test_criterion_10_cli_determinism(tmp_path):
    checks = []
    for path in EXAMPLES:
        a, b = _cli(path, 1), _cli(path, 2)
        checks.append((f"{path.name} exit 0", a.returncode == 0 and b.returncode == 0))
        checks.append((f"{path.name} byte identical", a.stdout == b.stdout and len(a.stdout) > 0))
    text = (ROOT / "dsl_examples" / "m2_pair.gsm").read_text()
    bad = text.replace("mult E21*E12 = E22;", "mult E21*E12 = 2 E22;")
    corrupted = tmp_path / "corrupted.gsm"
    corrupted.write_text(bad)
    r = _cli(corrupted, 1)
    report = json.loads(r.stdout or b"{}")
    m2_entry = report.get("tasks", [{}])[0].get("declarations", {}).get("M2", {})
    witness = m2_entry.get("error", {}).get("witness")
    checks.append(("corruption applied", bad != text))
    checks.append(("corrupted exit 1", r.returncode == 1))
    checks.append(("witness reported", witness is not None))
    assert record(10, "CLI determinism and corruption detection", checks)


if __name__ == "__main__":
    import tempfile

    tests = [(n, f) for n, f in globals().items() if n.startswith("test_criterion_")]
    for _, fn in sorted(tests, key=lambda t: int(t[0].split("_")[2])):
        try:
            if fn.__code__.co_argcount:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except AssertionError:
            pass

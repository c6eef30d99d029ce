"""Building declared structures and running tasks; canonical JSON output."""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import linalg as la
from .algebra import StructureAlgebra, graded_algebra, groupoid_algebra, validate_module
from .dsl import SpecDocument, Task, task_argument
from .duality import coset_duality, partial_bijection_duality, verify_duality, weak_hopf_smash
from .errors import GsmError
from .fixtures import identities_biset
from .groupoid import (NONE, check_subgroupoid, cyclic_group, disjoint_union, from_composition,
                       group_as_groupoid, identities, pair_groupoid, whole)
from .gset import (coset_biset, left_translation_action, orbit_gset, orbit_partition,
                   right_translation_action, trivial_action, validate_action, validate_biset)
from .morita import (build_morita_context, random_smash_module, roundtrip_check, strictness_report,
                     to_xgraded, validate_xgraded)
from .smash import eta_embedding, bimodule_actions, smash_product

DEFAULT_MAX_DIM = 32


# ----------------------------------------------------------------- canonical JSON

def canonical(obj):
    """Plain JSON data: rationals become ``"p/q"`` strings, tuples lists, sets sorted lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((canonical(v) for v in obj), key=lambda v: json.dumps(v, sort_keys=True))
    return str(obj)


def emit_json(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def algebra_to_json(alg: StructureAlgebra) -> dict:
    mult = [[i, j, k, c] for (i, j), row in sorted(alg.mult.items()) for k, c in sorted(row.items())]
    return {"dim": alg.dim, "names": list(alg.names), "unit": list(alg.unit), "mult": mult}


def error_json(err: GsmError) -> dict:
    return {"code": err.code, "message": str(err), "witness": err.witness}


# ----------------------------------------------------------------- building

class Workspace:
    """Lazily built declarations; failures are cached as ``GsmError``."""

    def __init__(self, doc: SpecDocument):
        self.doc = doc
        self.cache = {}

    def get(self, name):
        if name not in self.cache:
            try:
                self.cache[name] = self._build(self.doc.get(name))
            except GsmError as e:
                self.cache[name] = e
        v = self.cache[name]
        if isinstance(v, GsmError):
            raise v
        return v

    def _build(self, d):
        return getattr(self, "_build_" + d.kind)(d)

    def _build_groupoid(self, d):
        if d.builder == "pair":
            return pair_groupoid(len(d.args), d.args)
        if d.builder == "cyclic":
            return cyclic_group(d.args[0])
        if d.builder == "group":
            table, labels = d.args
            return group_as_groupoid([list(r) for r in table], list(labels) if labels else None)
        if d.builder == "union":
            return disjoint_union(self.get(d.args[0]), self.get(d.args[1]))
        obj = {e: i for i, e in enumerate(d.objects)}
        idx = {g: i for i, (g, _, _) in enumerate(d.mors)}
        n = len(d.mors)
        comp = [[NONE] * n for _ in range(n)]
        for g, h, k in d.comps:
            comp[idx[g]][idx[h]] = idx[k]
        ident = [NONE] * len(d.objects)
        for e, g in d.identities:
            ident[obj[e]] = idx[g]
        if NONE in ident:
            raise GsmError("E_IDENTITY", "object without identity", d.objects[ident.index(NONE)])
        return from_composition([obj[a] for _, a, _ in d.mors], [obj[b] for _, _, b in d.mors], comp,
                                ident, [g for g, _, _ in d.mors], list(d.objects))

    def _build_subgroupoid(self, d):
        G = self.get(d.groupoid)
        if d.builder == "whole":
            return whole(G)
        if d.builder == "identities":
            return identities(G)
        return check_subgroupoid(G, [G.morphism(g) for g in d.members])

    def _build_algebra(self, d):
        G = self.get(d.groupoid)
        if d.builder == "kG":
            return groupoid_algebra(G)
        names = [b for b, _ in d.basis]
        pos = {b: i for i, b in enumerate(names)}
        unit = [Fraction(0)] * len(names)
        for c, b in d.unit:
            unit[pos[b]] += c
        mult = {}
        for a, b, terms in d.mults:
            row = mult.setdefault((pos[a], pos[b]), {})
            for c, k in terms:
                row[pos[k]] = row.get(pos[k], 0) + c
        return graded_algebra(len(names), mult, unit, G, [G.morphism(g) for _, g in d.basis], names)

    def _build_action(self, d):
        G = self.get(d.groupoid)
        if d.builder == "left":
            return left_translation_action(G)
        if d.builder == "right":
            return right_translation_action(G, self.get(d.args[0]))
        if d.builder == "trivial":
            return trivial_action(G, d.args[0])
        points = [x for _, F in d.fibers for x in F]
        fibers = {G.obj(e): F for e, F in d.fibers}
        alpha = {G.morphism(g): dict(pairs) for g, pairs in d.maps}
        for e in G.objects:
            alpha.setdefault(G.identity[e], {x: x for x in fibers.get(e, ())})
        return validate_action(G, points, fibers, alpha)

    def _build_biset(self, d):
        if d.builder == "pair":
            return validate_biset(self.get(d.args[0]), self.get(d.args[1]))
        if d.builder == "translation":
            G = self.get(d.args[0])
            return coset_biset(G, whole(G))
        if d.builder == "coset":
            return coset_biset(self.get(d.args[0]), self.get(d.args[1]))
        return identities_biset(self.get(d.args[0]))

    def _build_module(self, d):
        GA, X = self.get(d.algebra), self.get(d.action)
        A = GA.algebra
        mats = [la.zeros(d.dim, d.dim) for _ in range(A.dim)]
        for b, M in d.acts:
            if len(M) != d.dim or any(len(r) != d.dim for r in M):
                raise GsmError("E_MODULE", f"matrix for {b} is not {d.dim}x{d.dim}", b)
            mats[A.names.index(b)] = [list(r) for r in M]
        base = validate_module(A, mats, "left")
        point = {X.label(x): x for x in X.carrier}
        return validate_xgraded(GA, X, base, [point[p] for p in d.deg])


# ----------------------------------------------------------------- tasks

def _labels(action, block):
    return [action.label(x) for x in block]


def _smash_guard(GA, X, max_dim):
    G = GA.groupoid
    n = sum(len(X.fibers[G.dom[g]]) for g in GA.deg)
    if n > max_dim:
        raise GsmError("E_TOO_LARGE", f"A # X would have dimension {n} > {max_dim}", n)


def _task_check(ws, task, ctx):
    decls, ok = {}, True
    for d in ws.doc.declarations:
        entry = {"kind": d.kind}
        try:
            obj = ws.get(d.name)
            entry["ok"] = True
            if d.kind == "groupoid":
                entry.update(objects=obj.n_objects, morphisms=obj.n)
            elif d.kind == "algebra":
                entry.update(dim=obj.dim, unit=list(obj.algebra.unit))
            elif d.kind == "action":
                entry.update(points=len(obj.carrier), split=obj.split)
            elif d.kind == "biset":
                entry.update(points=len(obj.carrier), split=obj.split)
            elif d.kind == "subgroupoid":
                entry.update(morphisms=len(obj.members), wide=obj.wide)
            elif d.kind == "module":
                entry.update(dim=obj.dim, roundtrip=roundtrip_check(obj))
                entry["ok"] = entry["roundtrip"]
        except GsmError as e:
            entry.update(ok=False, error=error_json(e))
        ok = ok and entry["ok"]
        decls[d.name] = entry
    return ok, {"declarations": decls}


def _task_orbits(ws, task, ctx):
    B = ws.get(task_argument(ws.doc, task, "biset"))
    ga, ka = B.g_action, B.k_action
    out = {"split": B.split, "points": len(B.carrier)}
    if ga.split:
        out["gOrbits"] = [_labels(ga, b) for b in orbit_partition(ga)]
    if ka.split:
        out["kOrbits"] = [_labels(ka, b) for b in orbit_partition(ka)]
        O = orbit_gset(B)
        out["orbitGSet"] = {"points": list(O.action.labels),
                            "fibers": {ga.groupoid.object_name(e): _labels(O.action, F)
                                       for e, F in enumerate(O.action.fibers)}}
    return True, out


def _task_smash(ws, task, ctx):
    GA = ws.get(task_argument(ws.doc, task, "algebra"))
    X = ws.get(task_argument(ws.doc, task, "action"))
    _smash_guard(GA, X, ctx["max_dim"])
    S = smash_product(GA, X)
    eta = eta_embedding(GA, S)
    bimodule_actions(GA, S, eta)
    return True, {"smash": algebra_to_json(S.algebra), "etaInjective": eta.is_injective(), "bimodule": True}


def _task_duality(ws, task, ctx):
    GA = ws.get(task_argument(ws.doc, task, "algebra"))
    B = ws.get(task_argument(ws.doc, task, "biset"))
    _smash_guard(GA, B.g_action, ctx["max_dim"])
    rep = verify_duality(B, GA)
    return not rep.details, rep.to_dict()


def _task_coset(ws, task, ctx):
    GA = ws.get(task_argument(ws.doc, task, "algebra"))
    H = ws.get(task_argument(ws.doc, task, "sub"))
    rep = coset_duality(H.parent, H, GA)
    return not rep.details, rep.to_dict()


def _task_ig(ws, task, ctx):
    GA = ws.get(task_argument(ws.doc, task, "algebra"))
    X = ws.get(task_argument(ws.doc, task, "action"))
    _smash_guard(GA, X, ctx["max_dim"])
    rep = partial_bijection_duality(X.groupoid, X, GA)
    return not rep.details, rep.to_dict()


def _task_weakhopf(ws, task, ctx):
    GA = ws.get(task_argument(ws.doc, task, "algebra"))
    W = weak_hopf_smash(GA)
    return not W.report.details, {"dim": W.algebra.dim, "psiIsomorphism": True,
                                  "algebra": algebra_to_json(W.algebra), "report": W.report.to_dict()}


def _task_morita(ws, task, ctx):
    GA = ws.get(task_argument(ws.doc, task, "algebra"))
    X = ws.get(task_argument(ws.doc, task, "action"))
    _smash_guard(GA, X, ctx["max_dim"])
    point = {X.label(x): x for x in X.carrier}[task.param("point")]
    S = smash_product(GA, X)
    mc = build_morita_context(GA, X, point, S)
    rep = strictness_report(mc)
    all_points = all(rep.per_point.values())
    nonempty = all(X.fibers)
    forward = not all_points or rep.square_surjective
    backward = not (rep.square_surjective and nonempty) or all_points
    rng = random.Random(ctx["seed"])
    trips = 0
    for _ in range(10):
        V = random_smash_module(S, rng)
        trips += roundtrip_check(V, S) and roundtrip_check(to_xgraded(V, S), S)
    out = rep.to_dict()
    out.update(contextAxioms=True, implications={"criterionImpliesSurjective": forward,
                                                  "surjectiveImpliesCriterion": backward},
               roundtripRandom=trips == 10)
    return forward and backward and trips == 10, out


TASKS = {"check": _task_check, "orbits": _task_orbits, "smash": _task_smash, "duality": _task_duality,
         "coset-duality": _task_coset, "ig-duality": _task_ig, "weakhopf": _task_weakhopf,
         "morita": _task_morita}


def run_task(ws: Workspace, task: Task, seed: int = 0, max_dim: int = DEFAULT_MAX_DIM) -> dict:
    head = {"task": task.kind, "params": dict(task.params)}
    try:
        ok, body = TASKS[task.kind](ws, task, {"seed": seed, "max_dim": max_dim})
    except GsmError as e:
        return {**head, "ok": False, "error": error_json(e)}
    return {**head, **body, "ok": bool(ok)}


def run(doc: SpecDocument, only=None, seed: int = 0, max_dim: int = DEFAULT_MAX_DIM, jobs: int = 1) -> dict:
    """Run the tasks of ``doc`` (optionally only those of kind ``only``) in declaration order."""
    tasks = [t for t in doc.tasks if only is None or t.kind == only]
    ws = Workspace(doc)
    for d in doc.declarations:  # build once up front so worker threads only read the cache
        try:
            ws.get(d.name)
        except GsmError:
            pass
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda t: run_task(ws, t, seed, max_dim), tasks))
    else:
        results = [run_task(ws, t, seed, max_dim) for t in tasks]
    return {"ok": all(r["ok"] for r in results), "seed": seed, "tasks": results}

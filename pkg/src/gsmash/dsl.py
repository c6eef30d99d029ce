"""A small declaration language for groupoids, graded algebras, G-sets, bisets,
modules and verification tasks (``.gsm`` files).

The grammar is in ``docs/grammar.ebnf``.  ``parse_spec`` checks syntax and
resolves every name; building the declared structures happens in ``report``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GsmError

TASK_KINDS = ("check", "orbits", "smash", "duality", "coset-duality", "ig-duality", "weakhopf", "morita")
TASK_PARAMS = {
    "check": (),
    "orbits": ("biset",),
    "smash": ("algebra", "action"),
    "duality": ("algebra", "biset"),
    "coset-duality": ("algebra", "sub"),
    "ig-duality": ("algebra", "action"),
    "weakhopf": ("algebra",),
    "morita": ("algebra", "action", "point"),
}
PARAM_KIND = {"algebra": "algebra", "action": "action", "biset": "biset", "sub": "subgroupoid"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_.']*)
  | (?P<arrow>->)
  | (?P<punct>[{}()\[\];:,=*+\-@])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # name, num, punct, eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out, line, start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise GsmError("E_SYNTAX", f"unexpected character {text[pos]!r}",
                           (line, pos - start + 1, "token"))
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind in ("name", "num", "punct", "arrow"):
            out.append(Token("punct" if kind == "arrow" else kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# ---------------------------------------------------------------- syntax tree

@dataclass(frozen=True)
class GroupoidDecl:
    name: str
    builder: str | None  # pair, group, cyclic, union or None for a hand-written table
    args: tuple = ()
    objects: tuple = ()
    mors: tuple = ()  # (name, dom, ran)
    identities: tuple = ()  # (object, morphism)
    comps: tuple = ()  # (g, h, gh)
    line: int = field(default=0, compare=False)
    kind = "groupoid"


@dataclass(frozen=True)
class SubgroupoidDecl:
    name: str
    groupoid: str
    builder: str | None  # whole, identities or None for a member list
    members: tuple = ()
    line: int = field(default=0, compare=False)
    kind = "subgroupoid"


@dataclass(frozen=True)
class AlgebraDecl:
    name: str
    groupoid: str
    builder: str | None  # kG or None
    basis: tuple = ()  # (name, degree)
    unit: tuple = ()  # (coefficient, basis name)
    mults: tuple = ()  # (a, b, terms)
    line: int = field(default=0, compare=False)
    kind = "algebra"


@dataclass(frozen=True)
class ActionDecl:
    name: str
    groupoid: str
    builder: str | None  # left, right, trivial or None
    args: tuple = ()
    fibers: tuple = ()  # (object, points)
    maps: tuple = ()  # (morphism, ((x, y), ...))
    line: int = field(default=0, compare=False)
    kind = "action"


@dataclass(frozen=True)
class BisetDecl:
    name: str
    builder: str  # pair, translation, coset, identities
    args: tuple
    line: int = field(default=0, compare=False)
    kind = "biset"


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    algebra: str
    action: str
    dim: int
    acts: tuple  # (basis name, matrix)
    deg: tuple  # module basis index -> point
    line: int = field(default=0, compare=False)
    kind = "module"


@dataclass(frozen=True)
class Task:
    kind: str
    params: tuple  # sorted (key, value)
    line: int = field(default=0, compare=False)

    def param(self, key):
        return dict(self.params).get(key)


@dataclass(frozen=True)
class SpecDocument:
    declarations: tuple
    tasks: tuple

    def get(self, name):
        for d in self.declarations:
            if d.name == name:
                return d
        raise GsmError("E_UNRESOLVED_NAME", f"no declaration {name!r}", name)

    def of_kind(self, kind) -> list:
        return [d for d in self.declarations if d.kind == kind]


# -------------------------------------------------------------------- parser

class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, expected):
        t = self.tok
        found = t.text or "end of input"
        raise GsmError("E_SYNTAX", f"line {t.line} col {t.col}: expected {expected}, found {found!r}",
                       (t.line, t.col, expected))

    def at(self, text) -> bool:
        return self.tok.kind != "eof" and self.tok.text == text and self.tok.kind != "num"

    def accept(self, text) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text) -> Token:
        if not self.at(text):
            self.error(repr(text))
        self.i += 1
        return self.toks[self.i - 1]

    def name(self, what="name") -> str:
        if self.tok.kind != "name":
            self.error(what)
        self.i += 1
        return self.toks[self.i - 1].text

    def integer(self) -> int:
        if self.tok.kind != "num" or "/" in self.tok.text:
            self.error("integer")
        self.i += 1
        return int(self.toks[self.i - 1].text)

    def number(self) -> Fraction:
        sign = -1 if self.accept("-") else 1
        if self.tok.kind != "num":
            self.error("number")
        self.i += 1
        return sign * Fraction(self.toks[self.i - 1].text)

    def names_until(self, stop) -> tuple:
        out = []
        while not self.at(stop):
            out.append(self.name())
        return tuple(out)

    def comma_names(self, close) -> tuple:
        out = []
        if not self.at(close):
            out.append(self.name())
            while self.accept(","):
                out.append(self.name())
        return tuple(out)

    # document -------------------------------------------------------------

    def document(self) -> SpecDocument:
        decls, tasks = [], []
        heads = {"groupoid": self.groupoid, "subgroupoid": self.subgroupoid, "algebra": self.algebra,
                 "action": self.action, "biset": self.biset, "module": self.module}
        while self.tok.kind != "eof":
            if self.at("task"):
                tasks.append(self.task())
            elif self.tok.kind == "name" and self.tok.text in heads:
                decls.append(heads[self.tok.text]())
            else:
                self.error("declaration or task")
        return SpecDocument(tuple(decls), tuple(tasks))

    def groupoid(self) -> GroupoidDecl:
        line = self.expect("groupoid").line
        name = self.name()
        if self.accept("="):
            b = self.name("pair, group, cyclic or union")
            self.expect("(")
            if b == "pair":
                args = self.comma_names(")")
            elif b == "union":
                args = (self.name(), )
                self.expect(",")
                args += (self.name(),)
            elif b == "cyclic":
                args = (self.integer(),)
            elif b == "group":
                table = self.matrix(integers=True)
                labels = ()
                if self.accept(","):
                    self.expect("[")
                    labels = self.comma_names("]")
                    self.expect("]")
                args = (table, labels)
            else:
                self.i -= 1
                self.error("pair, group, cyclic or union")
            self.expect(")")
            self.expect(";")
            return GroupoidDecl(name, b, args, line=line)
        self.expect("{")
        objects, mors, ids, comps = [], [], [], []
        while not self.accept("}"):
            if self.accept("objects"):
                objects.extend(self.names_until(";"))
            elif self.accept("mor"):
                g = self.name()
                self.expect(":")
                d = self.name()
                self.expect("->")
                r = self.name()
                mors.append((g, d, r))
            elif self.accept("identity"):
                e = self.name()
                self.expect("=")
                ids.append((e, self.name()))
            elif self.accept("comp"):
                g, h = self.name(), self.name()
                self.expect("=")
                comps.append((g, h, self.name()))
            else:
                self.error("objects, mor, identity, comp or '}'")
            self.expect(";")
        return GroupoidDecl(name, None, (), tuple(objects), tuple(mors), tuple(ids), tuple(comps), line)

    def subgroupoid(self) -> SubgroupoidDecl:
        line = self.expect("subgroupoid").line
        name = self.name()
        self.expect("of")
        G = self.name()
        self.expect("=")
        if self.accept("{"):
            members = self.comma_names("}")
            self.expect("}")
            self.expect(";")
            return SubgroupoidDecl(name, G, None, members, line)
        b = self.name("whole, identities or '{'")
        if b not in ("whole", "identities"):
            self.i -= 1
            self.error("whole, identities or '{'")
        self.expect(";")
        return SubgroupoidDecl(name, G, b, (), line)

    def lincomb(self) -> tuple:
        terms = []
        if self.tok.kind == "num" and self.tok.text == "0" and self.toks[self.i + 1].text in (";", "}"):
            self.i += 1
            return ()
        sign = -1 if self.accept("-") else 1
        while True:
            c = Fraction(1)
            if self.tok.kind == "num":
                c = self.number()
                self.accept("*")
            terms.append((sign * c, self.name("basis name")))
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                return tuple(terms)

    def algebra(self) -> AlgebraDecl:
        line = self.expect("algebra").line
        name = self.name()
        self.expect("over")
        G = self.name()
        if self.accept("="):
            b = self.name("kG")
            if b != "kG":
                self.i -= 1
                self.error("kG")
            self.expect(";")
            return AlgebraDecl(name, G, "kG", line=line)
        self.expect("{")
        basis, unit, mults = [], (), []
        while not self.accept("}"):
            if self.accept("basis"):
                while not self.at(";"):
                    b = self.name("basis name")
                    self.expect("@")
                    basis.append((b, self.name("morphism")))
            elif self.accept("unit"):
                unit = self.lincomb()
            elif self.accept("mult"):
                a = self.name("basis name")
                self.expect("*")
                b = self.name("basis name")
                self.expect("=")
                mults.append((a, b, self.lincomb()))
            else:
                self.error("basis, unit, mult or '}'")
            self.expect(";")
        return AlgebraDecl(name, G, None, tuple(basis), unit, tuple(mults), line)

    def action(self) -> ActionDecl:
        line = self.expect("action").line
        name = self.name()
        self.expect("of")
        G = self.name()
        if self.accept("="):
            b = self.name("left, right or trivial")
            args = ()
            if b == "right":
                self.expect("(")
                args = (self.name("subgroupoid"),)
                self.expect(")")
            elif b == "trivial":
                self.expect("(")
                args = (self.integer(),)
                self.expect(")")
            elif b != "left":
                self.i -= 1
                self.error("left, right or trivial")
            self.expect(";")
            return ActionDecl(name, G, b, args, line=line)
        self.expect("{")
        fibers, maps = [], []
        while not self.accept("}"):
            if self.accept("fiber"):
                e = self.name("object")
                self.expect(":")
                fibers.append((e, self.comma_names(";")))
            elif self.accept("map"):
                g = self.name("morphism")
                self.expect(":")
                pairs = []
                while True:
                    x = self.name("point")
                    self.expect("->")
                    pairs.append((x, self.name("point")))
                    if not self.accept(","):
                        break
                maps.append((g, tuple(pairs)))
            else:
                self.error("fiber, map or '}'")
            self.expect(";")
        return ActionDecl(name, G, None, (), tuple(fibers), tuple(maps), line)

    def biset(self) -> BisetDecl:
        line = self.expect("biset").line
        name = self.name()
        self.expect("=")
        if self.accept("("):
            a = self.name("action")
            self.expect(",")
            b = self.name("action")
            self.expect(")")
            self.expect(";")
            return BisetDecl(name, "pair", (a, b), line)
        b = self.name("translation, coset, identities or '('")
        if b not in ("translation", "coset", "identities"):
            self.i -= 1
            self.error("translation, coset, identities or '('")
        self.expect("(")
        args = (self.name(),)
        if b == "coset":
            self.expect(",")
            args += (self.name(),)
        self.expect(")")
        self.expect(";")
        return BisetDecl(name, b, args, line)

    def matrix(self, integers=False) -> tuple:
        self.expect("[")
        rows = []
        while self.at("["):
            self.expect("[")
            row = []
            if not self.at("]"):
                row.append(self.integer() if integers else self.number())
                while self.accept(","):
                    row.append(self.integer() if integers else self.number())
            self.expect("]")
            rows.append(tuple(row))
            if not self.accept(","):
                break
        self.expect("]")
        return tuple(rows)

    def module(self) -> ModuleDecl:
        line = self.expect("module").line
        name = self.name()
        self.expect("over")
        A = self.name()
        self.expect("on")
        X = self.name()
        self.expect("{")
        dim, acts, deg = None, [], ()
        while not self.accept("}"):
            if self.accept("dim"):
                dim = self.integer()
            elif self.accept("act"):
                b = self.name("basis name")
                self.expect("=")
                acts.append((b, self.matrix()))
            elif self.accept("deg"):
                deg = self.names_until(";")
            else:
                self.error("dim, act, deg or '}'")
            self.expect(";")
        if dim is None:
            dim = len(deg)
        return ModuleDecl(name, A, X, dim, tuple(acts), deg, line)

    def task(self) -> Task:
        line = self.expect("task").line
        t = self.tok
        kind = self.name("task name")
        # hyphenated names arrive as name '-' name without spaces
        while self.at("-") and self.tok.col == t.col + len(kind) and self.tok.line == t.line:
            self.i += 1
            kind += "-" + self.name("task name")
        if kind not in TASK_KINDS:
            self.i -= 1
            self.error("task name (" + ", ".join(TASK_KINDS) + ")")
        params = {}
        while not self.at(";"):
            key = self.name("parameter")
            if key not in TASK_PARAMS[kind]:
                self.i -= 1
                self.error(f"parameter of {kind} ({', '.join(TASK_PARAMS[kind]) or 'none'})")
            if key in params:
                raise GsmError("E_DUPLICATE_NAME", f"parameter {key} given twice", key)
            self.expect("=")
            if self.tok.kind not in ("name", "num"):
                self.error("value")
            params[key] = self.tok.text
            self.i += 1
        self.expect(";")
        return Task(kind, tuple(sorted(params.items())), line)


# ---------------------------------------------------------------- resolution

def groupoid_names(decl: GroupoidDecl, doc_groupoids: dict) -> tuple[tuple, tuple]:
    """Morphism and object names of a groupoid declaration, without building it."""
    if decl.builder == "pair":
        obj = decl.args
        mors = tuple(f"id_{a}" if a == b else f"{a}_{b}" for a in obj for b in obj)
        return mors, obj
    if decl.builder == "cyclic":
        return tuple(f"z{i}" for i in range(decl.args[0])), ("*",)
    if decl.builder == "group":
        table, labels = decl.args
        return (labels or tuple(f"z{i}" for i in range(len(table)))), ("*",)
    if decl.builder == "union":
        (m1, o1), (m2, o2) = (groupoid_names(doc_groupoids[a], doc_groupoids) for a in decl.args)
        if set(m1) & set(m2) or set(o1) & set(o2):
            return (tuple("l." + s for s in m1) + tuple("r." + s for s in m2),
                    tuple("l." + s for s in o1) + tuple("r." + s for s in o2))
        return m1 + m2, o1 + o2
    return tuple(m[0] for m in decl.mors), decl.objects


def _unique(items, what, line):
    seen = set()
    for x in items:
        if x in seen:
            raise GsmError("E_DUPLICATE_NAME", f"{what} {x!r} declared twice (line {line})", x)
        seen.add(x)


def _resolve(doc: SpecDocument) -> None:
    known = {}

    def need(name, kind, line):
        d = known.get(name)
        if d is None or d.kind != kind:
            raise GsmError("E_UNRESOLVED_NAME", f"line {line}: no {kind} named {name!r}", name)
        return d

    groupoids, points = {}, {}
    for d in doc.declarations:
        if d.name in known:
            raise GsmError("E_DUPLICATE_NAME", f"line {d.line}: {d.name!r} already declared", d.name)
        if d.kind == "groupoid":
            if d.builder == "union":
                for a in d.args:
                    need(a, "groupoid", d.line)
            if d.builder is None:
                _unique(d.objects, "object", d.line)
                objs = set(d.objects)
                for g, a, b in d.mors:
                    for o in (a, b):
                        if o not in objs:
                            raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: unknown object {o!r}", o)
                mnames = {m[0] for m in d.mors}
                for e, g in d.identities:
                    if e not in objs or g not in mnames:
                        raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: identity {e} = {g}", (e, g))
                for trip in d.comps:
                    for g in trip:
                        if g not in mnames:
                            raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: unknown morphism {g!r}", g)
            if d.builder == "pair":
                _unique(d.args, "object", d.line)
            groupoids[d.name] = d
            mors, objs = groupoid_names(d, groupoids)
            _unique(mors, "morphism", d.line)
        elif d.kind == "subgroupoid":
            mors, _ = groupoid_names(need(d.groupoid, "groupoid", d.line), groupoids)
            for g in d.members:
                if g not in mors:
                    raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: unknown morphism {g!r}", g)
        elif d.kind == "algebra":
            mors, _ = groupoid_names(need(d.groupoid, "groupoid", d.line), groupoids)
            names = [b for b, _ in d.basis]
            _unique(names, "basis element", d.line)
            for b, g in d.basis:
                if g not in mors:
                    raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: unknown degree {g!r}", g)
            used = [b for _, b in d.unit] + [x for a, b, t in d.mults for x in (a, b, *(n for _, n in t))]
            for b in used:
                if b not in names:
                    raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: unknown basis element {b!r}", b)
        elif d.kind == "action":
            G = need(d.groupoid, "groupoid", d.line)
            mors, objs = groupoid_names(G, groupoids)
            if d.builder == "right":
                sub = need(d.args[0], "subgroupoid", d.line)
                if sub.groupoid != d.groupoid:
                    raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: {sub.name} is not inside {G.name}", sub.name)
            if d.builder in ("left", "right"):
                pts = list(mors)
            elif d.builder == "trivial":
                pts = [str(i) for i in range(d.args[0] * len(objs))]
            else:
                pts = [x for _, F in d.fibers for x in F]
                _unique([e for e, _ in d.fibers], "fiber", d.line)
                for e, _ in d.fibers:
                    if e not in objs:
                        raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: unknown object {e!r}", e)
                for g, pairs in d.maps:
                    if g not in mors:
                        raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: unknown morphism {g!r}", g)
                    for x in (p for pair in pairs for p in pair):
                        if x not in pts:
                            raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: unknown point {x!r}", x)
            points[d.name] = set(pts)
        elif d.kind == "biset":
            if d.builder == "pair":
                for a in d.args:
                    need(a, "action", d.line)
            elif d.builder == "coset":
                need(d.args[0], "groupoid", d.line)
                sub = need(d.args[1], "subgroupoid", d.line)
                if sub.groupoid != d.args[0]:
                    raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: {sub.name} is not inside {d.args[0]}", sub.name)
            elif d.builder == "translation":
                need(d.args[0], "groupoid", d.line)
            else:
                need(d.args[0], "action", d.line)
        elif d.kind == "module":
            A = need(d.algebra, "algebra", d.line)
            need(d.action, "action", d.line)
            names = [b for b, _ in A.basis] if A.builder is None else list(
                groupoid_names(groupoids[A.groupoid], groupoids)[0])
            for b, _ in d.acts:
                if b not in names:
                    raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: unknown basis element {b!r}", b)
            _unique([b for b, _ in d.acts], "action matrix", d.line)
            for x in d.deg:
                if x not in points[d.action]:
                    raise GsmError("E_UNRESOLVED_NAME", f"line {d.line}: unknown point {x!r}", x)
        known[d.name] = d
    for t in doc.tasks:
        for key, value in t.params:
            if key in PARAM_KIND:
                need(value, PARAM_KIND[key], t.line)
        for key in TASK_PARAMS[t.kind]:
            if key in PARAM_KIND and t.param(key) is None:
                cands = doc.of_kind(PARAM_KIND[key])
                if len(cands) != 1:
                    raise GsmError("E_UNRESOLVED_NAME",
                                   f"line {t.line}: task {t.kind} needs {key}=<name>", key)
        if t.kind == "morita":
            x = t.param("point")
            if x is None:
                raise GsmError("E_UNRESOLVED_NAME", f"line {t.line}: task morita needs point=<name>", "point")
            act = t.param("action") or doc.of_kind("action")[0].name
            if x not in points[act]:
                raise GsmError("E_UNRESOLVED_NAME", f"line {t.line}: unknown point {x!r}", x)


def task_argument(doc: SpecDocument, task: Task, key: str) -> str:
    """The declaration a task refers to, defaulting to the only one of its kind."""
    v = task.param(key)
    if v is not None:
        return v
    return doc.of_kind(PARAM_KIND[key])[0].name


def parse_spec(text: str) -> SpecDocument:
    doc = Parser(text).document()
    _resolve(doc)
    return doc


# ------------------------------------------------------------------- printer

def _num(c: Fraction) -> str:
    return str(c)


def _lin(terms) -> str:
    if not terms:
        return "0"
    out = []
    for n, (c, b) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = b if mag == 1 else f"{_num(mag)} {b}"
        if n == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def _matrix(M) -> str:
    return "[" + ", ".join("[" + ", ".join(_num(Fraction(x)) for x in row) + "]" for row in M) + "]"


def print_decl(d) -> str:
    if d.kind == "groupoid":
        if d.builder == "pair":
            return f"groupoid {d.name} = pair({', '.join(d.args)});"
        if d.builder == "union":
            return f"groupoid {d.name} = union({d.args[0]}, {d.args[1]});"
        if d.builder == "cyclic":
            return f"groupoid {d.name} = cyclic({d.args[0]});"
        if d.builder == "group":
            table, labels = d.args
            extra = f", [{', '.join(labels)}]" if labels else ""
            return f"groupoid {d.name} = group({_matrix(table)}{extra});"
        lines = [f"groupoid {d.name} {{", f"  objects {' '.join(d.objects)};"]
        lines += [f"  mor {g}: {a} -> {b};" for g, a, b in d.mors]
        lines += [f"  identity {e} = {g};" for e, g in d.identities]
        lines += [f"  comp {g} {h} = {k};" for g, h, k in d.comps]
        return "\n".join(lines + ["}"])
    if d.kind == "subgroupoid":
        body = d.builder or "{" + ", ".join(d.members) + "}"
        return f"subgroupoid {d.name} of {d.groupoid} = {body};"
    if d.kind == "algebra":
        if d.builder:
            return f"algebra {d.name} over {d.groupoid} = {d.builder};"
        lines = [f"algebra {d.name} over {d.groupoid} {{",
                 "  basis " + " ".join(f"{b}@{g}" for b, g in d.basis) + ";",
                 f"  unit {_lin(d.unit)};"]
        lines += [f"  mult {a}*{b} = {_lin(t)};" for a, b, t in d.mults]
        return "\n".join(lines + ["}"])
    if d.kind == "action":
        if d.builder == "left":
            return f"action {d.name} of {d.groupoid} = left;"
        if d.builder:
            return f"action {d.name} of {d.groupoid} = {d.builder}({d.args[0]});"
        lines = [f"action {d.name} of {d.groupoid} {{"]
        lines += [f"  fiber {e}: {', '.join(F)};" for e, F in d.fibers]
        lines += [f"  map {g}: " + ", ".join(f"{x} -> {y}" for x, y in pairs) + ";" for g, pairs in d.maps]
        return "\n".join(lines + ["}"])
    if d.kind == "biset":
        if d.builder == "pair":
            return f"biset {d.name} = ({d.args[0]}, {d.args[1]});"
        return f"biset {d.name} = {d.builder}({', '.join(d.args)});"
    if d.kind == "module":
        lines = [f"module {d.name} over {d.algebra} on {d.action} {{", f"  dim {d.dim};"]
        lines += [f"  act {b} = {_matrix(M)};" for b, M in d.acts]
        lines.append(f"  deg {' '.join(d.deg)};")
        return "\n".join(lines + ["}"])
    raise GsmError("E_SHAPE", f"unknown declaration {d!r}")


def print_task(t: Task) -> str:
    params = "".join(f" {k}={v}" for k, v in t.params)
    return f"task {t.kind}{params};"


def print_spec(doc: SpecDocument) -> str:
    parts = [print_decl(d) for d in doc.declarations] + [print_task(t) for t in doc.tasks]
    return "\n".join(parts) + ("\n" if parts else "")

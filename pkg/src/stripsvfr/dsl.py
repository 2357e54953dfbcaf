"""Reader and writer for ``.vfr`` domain files.

A file declares propositions, values, the weight scale, incompatible pairs,
agents with their value thresholds, per-proposition assessments, operators,
the initial state and the goal::

    props p1 p2 p3 p4;
    values P Q;
    scale 1 2 3;
    incompat p1 p4;
    agent A { Q = 1; P = 2; }
    assess A p1 { Q = 2; P = 1; }
    operator O1 { pre + p1 p2; pre - ; add p3; del p1; }
    init p1 p2;
    goal + p4; - ;

``#`` starts a comment running to the end of the line. Identifiers may end in
primes (``O3'``) so operator names can follow the usual prime convention.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Tuple

from .core import (AgentProfile, Goal, Operator, PlanningProblem, Scale, State, VfrError, Weight,
                   World)

KEYWORDS = frozenset(
    ["props", "incompat", "values", "scale", "agent", "assess", "operator", "pre", "add", "del",
     "init", "goal"])
TOP_LEVEL = frozenset(["props", "incompat", "values", "scale", "agent", "assess", "operator",
                       "init", "goal"])
PUNCTUATION = "{}=,;:+-?"

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*'*")
_INT_RE = re.compile(r"[0-9]+")


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __str__(self):
        return "%d:%d" % (self.line, self.column)


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str
    message: str
    span: SourceSpan

    def __str__(self):
        return "%s: %s: %s" % (self.span, self.severity, self.message)


class ParseError(VfrError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        errors = [d for d in self.diagnostics if d.severity == "error"]
        super().__init__("\n".join(str(d) for d in errors) or "parse failed")


@dataclass(frozen=True)
class Token:
    kind: str  # "kw", "ident", "int", "eof", or the punctuation character itself
    text: str
    span: SourceSpan

    def __repr__(self):
        if self.kind in ("kw", "ident", "int"):
            return "%s:%s" % (self.kind, self.text)
        return self.kind


def _lex(source: str) -> Tuple[List[Token], List[ParseDiagnostic]]:
    tokens = []
    diags = []
    for lineno, line in enumerate(source.splitlines(), start=1):
        col = 0
        n = len(line)
        while col < n:
            ch = line[col]
            if ch.isspace():
                col += 1
                continue
            if ch == "#":
                break
            m = IDENT_RE.match(line, col)
            if m:
                text = m.group()
                kind = "kw" if text in KEYWORDS else "ident"
                tokens.append(Token(kind, text, SourceSpan(lineno, col + 1, len(text))))
                col = m.end()
                continue
            m = _INT_RE.match(line, col)
            if m:
                tokens.append(Token("int", m.group(), SourceSpan(lineno, col + 1, len(m.group()))))
                col = m.end()
                continue
            if ch in PUNCTUATION:
                tokens.append(Token(ch, ch, SourceSpan(lineno, col + 1, 1)))
                col += 1
                continue
            diags.append(ParseDiagnostic("error", "unexpected character %r" % ch,
                                         SourceSpan(lineno, col + 1, 1)))
            col += 1
    last_line = max(1, len(source.splitlines()))
    last_col = len(source.splitlines()[-1]) + 1 if source.splitlines() else 1
    tokens.append(Token("eof", "", SourceSpan(last_line, last_col, 0)))
    return tokens, diags


def tokenize(source: str) -> List[Token]:
    """Split ``source`` into tokens, ending with an ``eof`` token.

    Raises ParseError listing every unexpected character.
    """
    tokens, diags = _lex(source)
    if diags:
        raise ParseError(diags)
    return tokens


# -- syntax tree -------------------------------------------------------------

@dataclass(frozen=True)
class _Name:
    text: str
    span: SourceSpan


@dataclass
class _Decl:
    kind: str
    span: SourceSpan
    name: Optional[_Name] = None
    target: Optional[_Name] = None
    lists: Tuple[List, ...] = ()
    entries: List[Tuple[_Name, Token]] = field(default_factory=list)


class _SyntaxError(Exception):
    def __init__(self, message, span):
        self.message = message
        self.span = span


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0
        self.diags: List[ParseDiagnostic] = []

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def expect(self, kind: str, what: Optional[str] = None) -> Token:
        t = self.tok
        if t.kind != kind:
            raise _SyntaxError("expected %s, found %s" % (what or repr(kind), _describe(t)), t.span)
        return self.advance()

    def keyword(self, word: str) -> Token:
        t = self.tok
        if t.kind != "kw" or t.text != word:
            raise _SyntaxError("expected '%s', found %s" % (word, _describe(t)), t.span)
        return self.advance()

    def name(self, what: str) -> _Name:
        t = self.expect("ident", what)
        return _Name(t.text, t.span)

    def ident_list(self) -> List[_Name]:
        names = []
        while self.tok.kind == "ident":
            t = self.advance()
            names.append(_Name(t.text, t.span))
        return names

    def weight(self) -> Token:
        t = self.tok
        if t.kind not in ("int", "?"):
            raise _SyntaxError("expected a weight (integer or '?'), found %s" % _describe(t), t.span)
        return self.advance()

    def entries(self) -> List[Tuple[_Name, Token]]:
        self.expect("{")
        out = []
        while self.tok.kind == "ident":
            key = self.name("value name")
            self.expect("=")
            w = self.weight()
            self.expect(";")
            out.append((key, w))
        self.expect("}", "'}' or a value name")
        return out

    def document(self) -> List[_Decl]:
        decls = []
        while self.tok.kind != "eof":
            start = self.pos
            try:
                decls.append(self.declaration())
            except _SyntaxError as exc:
                self.diags.append(ParseDiagnostic("error", exc.message, exc.span))
                self.synchronize(start)
        return decls

    def synchronize(self, start: int) -> None:
        if self.pos == start:
            self.advance()
        while self.tok.kind != "eof" and not (self.tok.kind == "kw" and self.tok.text in TOP_LEVEL):
            self.advance()

    def declaration(self) -> _Decl:
        t = self.tok
        if t.kind != "kw" or t.text not in TOP_LEVEL:
            raise _SyntaxError("expected a declaration, found %s" % _describe(t), t.span)
        self.advance()
        kind = t.text
        if kind in ("props", "values"):
            names = self.ident_list()
            if not names:
                raise _SyntaxError("'%s' needs at least one name" % kind, self.tok.span)
            self.expect(";")
            return _Decl(kind, t.span, lists=(names,))
        if kind == "incompat":
            a = self.name("proposition name")
            b = self.name("proposition name")
            self.expect(";")
            return _Decl(kind, t.span, name=a, target=b)
        if kind == "scale":
            levels = []
            while self.tok.kind == "int":
                levels.append(self.advance())
            if not levels:
                raise _SyntaxError("'scale' needs at least one integer level", self.tok.span)
            self.expect(";")
            return _Decl(kind, t.span, lists=(levels,))
        if kind == "agent":
            name = self.name("agent name")
            return _Decl(kind, t.span, name=name, entries=self.entries())
        if kind == "assess":
            agent = self.name("agent name")
            prop = self.name("proposition name")
            return _Decl(kind, t.span, name=agent, target=prop, entries=self.entries())
        if kind == "operator":
            name = self.name("operator name")
            self.expect("{")
            self.keyword("pre")
            self.expect("+")
            x = self.ident_list()
            self.expect(";")
            self.keyword("pre")
            self.expect("-")
            y = self.ident_list()
            self.expect(";")
            self.keyword("add")
            z = self.ident_list()
            self.expect(";")
            self.keyword("del")
            d = self.ident_list()
            self.expect(";")
            self.expect("}")
            return _Decl(kind, t.span, name=name, lists=(x, y, z, d))
        if kind == "init":
            names = self.ident_list()
            self.expect(";")
            return _Decl(kind, t.span, lists=(names,))
        # goal
        self.expect("+")
        pos = self.ident_list()
        self.expect(";")
        self.expect("-")
        neg = self.ident_list()
        self.expect(";")
        return _Decl(kind, t.span, lists=(pos, neg))


def _describe(t: Token) -> str:
    if t.kind == "eof":
        return "end of input"
    if t.kind == "kw":
        return "keyword '%s'" % t.text
    if t.kind == "ident":
        return "identifier '%s'" % t.text
    if t.kind == "int":
        return "integer %s" % t.text
    return "'%s'" % t.text


# -- documents ---------------------------------------------------------------

@dataclass(frozen=True)
class Document:
    world: World
    profiles: Mapping[str, AgentProfile]
    operators: Tuple[Operator, ...]
    initial: State
    goal: Goal

    def __post_init__(self):
        object.__setattr__(self, "profiles", MappingProxyType(dict(self.profiles)))
        object.__setattr__(self, "operators", tuple(self.operators))

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return (self.world == other.world and dict(self.profiles) == dict(other.profiles)
                and self.operators == other.operators and self.initial == other.initial
                and self.goal == other.goal)

    __hash__ = None

    def problem(self) -> PlanningProblem:
        return PlanningProblem(self.world, self.operators, self.initial, self.goal)

    def profile(self, agent: str) -> AgentProfile:
        return self.profiles[agent]

    def problems(self) -> List[str]:
        """Invariant violations that would stop this document from round-tripping."""
        out = []
        w = self.world
        names = [("proposition", p) for p in w.props] + [("value", v) for v in w.values]
        names += [("agent", a) for a in self.profiles] + [("operator", o.name) for o in self.operators]
        for what, n in names:
            if not IDENT_RE.fullmatch(n) or n in KEYWORDS:
                out.append("%s name %r is not a valid identifier" % (what, n))
        for name, prof in self.profiles.items():
            if prof.agent != name:
                out.append("profile stored under %r belongs to %r" % (name, prof.agent))
            for v, wt in prof.value_weights.items():
                if v not in w.values:
                    out.append("agent %s weighs unknown value %s" % (name, v))
                if wt not in w.scale:
                    out.append("agent %s weight %s is not on the scale" % (name, wt))
            for (v, p), wt in prof.prop_assessments.items():
                if v not in w.values or p not in w.props:
                    out.append("agent %s assesses unknown pair (%s, %s)" % (name, v, p))
                if wt not in w.scale:
                    out.append("agent %s weight %s is not on the scale" % (name, wt))
        try:
            self.problem()
        except (VfrError, ValueError) as exc:
            out.append(str(exc))
        return out


def _weight_of(t: Token) -> Weight:
    return Weight(None) if t.kind == "?" else Weight(int(t.text))


class _Builder:
    def __init__(self, decls: List[_Decl], diags: List[ParseDiagnostic]):
        self.decls = decls
        self.diags = diags

    def error(self, message: str, span: SourceSpan) -> None:
        self.diags.append(ParseDiagnostic("error", message, span))

    def warn(self, message: str, span: SourceSpan) -> None:
        self.diags.append(ParseDiagnostic("warning", message, span))

    def of_kind(self, kind):
        return [d for d in self.decls if d.kind == kind]

    def single(self, kind: str, eof_span: SourceSpan) -> Optional[_Decl]:
        found = self.of_kind(kind)
        if not found:
            self.error("missing '%s' declaration" % kind, eof_span)
            return None
        for extra in found[1:]:
            self.error("duplicate '%s' declaration" % kind, extra.span)
        return found[0]

    def names(self, kind: str) -> List[str]:
        seen: Dict[str, _Name] = {}
        for d in self.of_kind(kind):
            for n in d.lists[0]:
                if n.text in seen:
                    what = "proposition" if kind == "props" else "value"
                    self.error("duplicate %s %s" % (what, n.text), n.span)
                else:
                    seen[n.text] = n
        return list(seen)

    def known(self, names: List[_Name], universe, what="proposition") -> List[str]:
        out = []
        seen = set()
        for n in names:
            if n.text not in universe:
                self.error("unknown %s %s" % (what, n.text), n.span)
            elif n.text in seen:
                self.warn("%s %s listed twice" % (what, n.text), n.span)
            else:
                out.append(n.text)
            seen.add(n.text)
        return out

    def weights(self, decl: _Decl, values, scale: Optional[Scale]) -> Dict[str, Weight]:
        out = {}
        for key, tok in decl.entries:
            if key.text not in values:
                self.error("unknown value %s" % key.text, key.span)
                continue
            if key.text in out:
                self.error("duplicate weight for value %s" % key.text, key.span)
                continue
            w = _weight_of(tok)
            if scale is not None and w not in scale:
                self.error("weight %s is not on the scale" % tok.text, tok.span)
                continue
            out[key.text] = w
        return out

    def build(self, eof_span: SourceSpan) -> Optional[Document]:
        props = self.names("props")
        values = self.names("values")

        scale = None
        sdecl = self.single("scale", eof_span)
        if sdecl is not None:
            try:
                scale = Scale(tuple(int(t.text) for t in sdecl.lists[0]))
            except ValueError as exc:
                self.error(str(exc), sdecl.span)

        pairs = set()
        for d in self.of_kind("incompat"):
            a, b = self.known([d.name], props), self.known([d.target], props)
            if not a or not b:
                continue
            if a[0] == b[0]:
                self.error("a proposition cannot be incompatible with itself", d.target.span)
                continue
            pr = frozenset((a[0], b[0]))
            if pr in pairs:
                self.error("duplicate incompatibility %s %s" % (a[0], b[0]), d.span)
            pairs.add(pr)

        world = None
        if scale is not None:
            world = World(frozenset(props), frozenset(values), scale, frozenset(pairs))

        agents: Dict[str, Dict[str, Weight]] = {}
        for d in self.of_kind("agent"):
            if d.name.text in agents:
                self.error("duplicate agent %s" % d.name.text, d.name.span)
                continue
            agents[d.name.text] = self.weights(d, values, scale)

        assessments: Dict[str, Dict[Tuple[str, str], Weight]] = {a: {} for a in agents}
        assessed = set()
        for d in self.of_kind("assess"):
            if d.name.text not in agents:
                self.error("unknown agent %s" % d.name.text, d.name.span)
                continue
            if not self.known([d.target], props):
                continue
            key = (d.name.text, d.target.text)
            if key in assessed:
                self.error("duplicate assessment of %s by %s" % (key[1], key[0]), d.span)
                continue
            assessed.add(key)
            for v, w in self.weights(d, values, scale).items():
                assessments[key[0]][(v, key[1])] = w

        operators = []
        op_names = set()
        for d in self.of_kind("operator"):
            x, y, z, t = (self.known(lst, props) for lst in d.lists)
            if d.name.text in op_names:
                self.error("duplicate operator %s" % d.name.text, d.name.span)
                continue
            op_names.add(d.name.text)
            try:
                operators.append(Operator(d.name.text, frozenset(x), frozenset(y), frozenset(z),
                                          frozenset(t)))
            except ValueError as exc:
                self.error(str(exc), d.name.span)

        initial = None
        idecl = self.single("init", eof_span)
        if idecl is not None:
            members = self.known(idecl.lists[0], props)
            initial = State(frozenset(members))
            if world is not None:
                for a, b in world.conflicts(members):
                    self.error("initial state is inconsistent: %s and %s are incompatible" % (a, b),
                               idecl.span)

        goal = None
        gdecl = self.single("goal", eof_span)
        if gdecl is not None:
            pos = self.known(gdecl.lists[0], props)
            neg = self.known(gdecl.lists[1], props)
            try:
                goal = Goal(frozenset(pos), frozenset(neg))
            except ValueError as exc:
                self.error(str(exc), gdecl.span)

        if any(d.severity == "error" for d in self.diags):
            return None
        profiles = {a: AgentProfile(a, agents[a], assessments[a]) for a in agents}
        return Document(world, profiles, tuple(operators), initial, goal)


def parse(source: str) -> Document:
    """Parse a ``.vfr`` source; raises ParseError with every diagnostic found."""
    tokens, diags = _lex(source)
    parser = _Parser(tokens)
    decls = parser.document()
    diags = diags + parser.diags
    doc = _Builder(decls, diags).build(tokens[-1].span)
    if doc is None or any(d.severity == "error" for d in diags):
        raise ParseError(diags)
    return doc


def parse_file(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _line(*parts: str) -> str:
    return " ".join(p for p in parts if p)


def render(doc: Document) -> str:
    """Canonical source text for ``doc``; ``parse(render(doc)) == doc``."""
    problems = doc.problems()
    if problems:
        raise ValueError("cannot render an invalid document: " + "; ".join(problems))
    w = doc.world
    values = sorted(w.values)
    out = []
    if w.props:
        out.append(_line("props", *w.sorted_props()) + ";")
    if values:
        out.append(_line("values", *values) + ";")
    out.append(_line("scale", *map(str, w.scale.levels)) + ";")
    for a, b in w.sorted_pairs():
        out.append("incompat %s %s;" % (a, b))
    for name in sorted(doc.profiles):
        prof = doc.profiles[name]
        out.append("agent %s {" % name)
        for v in sorted(prof.value_weights):
            out.append("  %s = %s;" % (v, prof.value_weights[v]))
        out.append("}")
        by_prop: Dict[str, List[str]] = {}
        for (v, p) in sorted(prof.prop_assessments, key=lambda k: (k[1], k[0])):
            by_prop.setdefault(p, []).append("  %s = %s;" % (v, prof.prop_assessments[(v, p)]))
        for p, lines in by_prop.items():
            out.append("assess %s %s {" % (name, p))
            out.extend(lines)
            out.append("}")
    for op in doc.operators:
        out.append("operator %s {" % op.name)
        out.append("  " + _line("pre", "+", *sorted(op.pre_true)) + ";")
        out.append("  " + _line("pre", "-", *sorted(op.pre_false)) + ";")
        out.append("  " + _line("add", *sorted(op.add)) + ";")
        out.append("  " + _line("del", *sorted(op.delete)) + ";")
        out.append("}")
    out.append(_line("init", *doc.initial.sorted()) + ";")
    out.append(_line("goal", "+", *sorted(doc.goal.require_true)) + "; "
               + _line("-", *sorted(doc.goal.require_false)) + ";")
    return "\n".join(out) + "\n"

"""Normal logic programs: syntax tree, parser, grounding, completion.

Surface grammar (UTF-8 text)::

    fact.                     % a fact: empty body reads as `true`
    head :- b1, b2; not c.    % `,` conjunction binds tighter than `;`
    edge(a, b).               % predicates over constants
    path(X, Y) :- edge(X, Y). % variables range over program constants

Atoms, predicates and constants match ``[a-z][A-Za-z0-9_]*``, variables
``[A-Z][A-Za-z0-9_]*``; ``true``, ``false``, ``not`` are reserved;
negation is written ``not a`` or ``~a`` and applies to atoms only;
parentheses group body subformulas; ``%`` starts a comment running to
the end of the line.  Function symbols are rejected: terms are
constants or variables.

``ground_program`` instantiates variables over the constants appearing
in the program (rejecting rules whose variables no positive body atom
binds), and ``normalize`` completes a ground program so that every atom
heads at least one rule, defining unheaded atoms as ``false``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import ParseError, ProgramError, SafetyError


@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __repr__(self) -> str:
        return self.name


Term = Union[Var, Const]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()

    @property
    def key(self) -> str:
        """Canonical ground identifier, e.g. ``p`` or ``edge(a,b)``."""
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(a.name for a in self.args)})"

    def is_ground(self) -> bool:
        return all(isinstance(a, Const) for a in self.args)

    def __repr__(self) -> str:
        return self.key if self.is_ground() else \
            f"{self.pred}({','.join(map(repr, self.args))})" if self.args else self.pred


@dataclass(frozen=True)
class Neg:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]


class _Marker:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name


TRUE = _Marker("true")
FALSE = _Marker("false")

Formula = Union[Atom, Neg, And, Or, _Marker]


@dataclass(frozen=True)
class Rule:
    head: Atom
    body: Formula


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...]

    def is_ground(self) -> bool:
        return all(
            r.head.is_ground() and _formula_is_ground(r.body)
            for r in self.rules)

    def atoms(self) -> tuple[str, ...]:
        """Sorted ground atom identifiers appearing anywhere."""
        if not self.is_ground():
            raise ProgramError("program is not ground")
        seen: set[str] = set()
        for r in self.rules:
            seen.add(r.head.key)
            seen.update(a.key for a in formula_atoms(r.body))
        return tuple(sorted(seen))

    def heads(self) -> set[str]:
        return {r.head.key for r in self.rules}

    def is_normalized(self) -> bool:
        if not self.is_ground():
            return False
        if any(isinstance(r.body, And) and not r.body.parts
               for r in self.rules):
            return False
        heads = self.heads()
        return all(a in heads for a in self.atoms())


def formula_atoms(formula: Formula) -> Iterator[Atom]:
    if isinstance(formula, Atom):
        yield formula
    elif isinstance(formula, Neg):
        yield from formula_atoms(formula.sub)
    elif isinstance(formula, (And, Or)):
        for part in formula.parts:
            yield from formula_atoms(part)


def _formula_is_ground(formula: Formula) -> bool:
    return all(a.is_ground() for a in formula_atoms(formula))


# -- rendering ------------------------------------------------------------


def render_formula(formula: Formula, *, _prec: int = 0) -> str:
    if formula is TRUE or formula is FALSE:
        return formula.name
    if isinstance(formula, Atom):
        if not formula.args:
            return formula.pred
        return f"{formula.pred}({', '.join(a.name for a in formula.args)})"
    if isinstance(formula, Neg):
        return f"not {render_formula(formula.sub)}"
    if isinstance(formula, And):
        text = ", ".join(render_formula(p, _prec=1) for p in formula.parts)
        return text
    if isinstance(formula, Or):
        text = "; ".join(render_formula(p) for p in formula.parts)
        return f"({text})" if _prec else text
    raise TypeError(f"not a formula: {formula!r}")


def render_rule(rule: Rule) -> str:
    head = render_formula(rule.head)
    if rule.body is TRUE:
        return f"{head}."
    return f"{head} :- {render_formula(rule.body)}."


def render_program(program: Program) -> str:
    return "\n".join(render_rule(r) for r in program.rules) + "\n"


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<imply>:-)
  | (?P<punct>[.,;()~])
  | (?P<var>[A-Z][A-Za-z0-9_]*)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
""", re.VERBOSE)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "punct":
            kind = chunk
        elif kind == "imply":
            kind = ":-"
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind: str | None = None) -> _Token:
        tok = self.tokens[self.pos]
        if kind is not None and tok.kind != kind:
            raise ParseError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                tok.line, tok.column)
        self.pos += 1
        return tok

    def parse_program(self) -> Program:
        rules = []
        while self.peek().kind != "eof":
            rules.append(self.parse_statement())
        return Program(tuple(rules))

    def parse_statement(self) -> Rule:
        head = self.parse_atom(context="rule head")
        if self.peek().kind == ":-":
            self.take(":-")
            body = self.parse_disjunction()
        else:
            body = TRUE
        self.take(".")
        return Rule(head, body)

    def parse_disjunction(self) -> Formula:
        parts = [self.parse_conjunction()]
        while self.peek().kind == ";":
            self.take(";")
            parts.append(self.parse_conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def parse_conjunction(self) -> Formula:
        parts = [self.parse_literal()]
        while self.peek().kind == ",":
            self.take(",")
            parts.append(self.parse_literal())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def parse_literal(self) -> Formula:
        tok = self.peek()
        if tok.kind == "(":
            self.take("(")
            inner = self.parse_disjunction()
            self.take(")")
            return inner
        if tok.kind == "ident" and tok.text == "true":
            self.take()
            return TRUE
        if tok.kind == "ident" and tok.text == "false":
            self.take()
            return FALSE
        if tok.kind == "~" or (tok.kind == "ident" and tok.text == "not"):
            self.take()
            return Neg(self.parse_atom(context="negated literal"))
        return self.parse_atom(context="literal")

    def parse_atom(self, context: str) -> Atom:
        tok = self.take("ident")
        if tok.text in ("true", "false", "not"):
            raise ParseError(
                f"reserved word {tok.text!r} cannot name an atom in a {context}",
                tok.line, tok.column)
        args: list[Term] = []
        if self.peek().kind == "(":
            self.take("(")
            args.append(self.parse_term())
            while self.peek().kind == ",":
                self.take(",")
                args.append(self.parse_term())
            self.take(")")
        return Atom(tok.text, tuple(args))

    def parse_term(self) -> Term:
        tok = self.peek()
        if tok.kind == "var":
            self.take()
            return Var(tok.text)
        if tok.kind == "ident":
            self.take()
            if self.peek().kind == "(":
                raise ParseError(
                    "function symbols are not supported "
                    f"(term {tok.text!r} takes arguments)",
                    tok.line, tok.column)
            return Const(tok.text)
        raise ParseError(
            f"expected a constant or variable, found {tok.text!r}",
            tok.line, tok.column)


def parse_program(text: str) -> Program:
    """Parse program text; raises :class:`ParseError` with position info."""
    return _Parser(text).parse_program()


# -- grounding and completion ----------------------------------------------


def _rule_vars(rule: Rule) -> list[str]:
    seen: dict[str, None] = {}
    for atom in itertools.chain([rule.head], formula_atoms(rule.body)):
        for arg in atom.args:
            if isinstance(arg, Var):
                seen.setdefault(arg.name)
    return list(seen)


def _positive_vars(formula: Formula) -> set[str]:
    if isinstance(formula, Atom):
        return {a.name for a in formula.args if isinstance(a, Var)}
    if isinstance(formula, (And, Or)):
        out: set[str] = set()
        for part in formula.parts:
            out |= _positive_vars(part)
        return out
    return set()  # markers and negated subformulas bind nothing


def _substitute_atom(atom: Atom, binding: dict[str, Const]) -> Atom:
    if not atom.args:
        return atom
    return Atom(atom.pred, tuple(
        binding[a.name] if isinstance(a, Var) else a for a in atom.args))


def _substitute(formula: Formula, binding: dict[str, Const]) -> Formula:
    if isinstance(formula, Atom):
        return _substitute_atom(formula, binding)
    if isinstance(formula, Neg):
        return Neg(_substitute(formula.sub, binding))
    if isinstance(formula, And):
        return And(tuple(_substitute(p, binding) for p in formula.parts))
    if isinstance(formula, Or):
        return Or(tuple(_substitute(p, binding) for p in formula.parts))
    return formula


def program_constants(program: Program) -> tuple[str, ...]:
    names: set[str] = set()
    for rule in program.rules:
        for atom in itertools.chain([rule.head], formula_atoms(rule.body)):
            names.update(a.name for a in atom.args if isinstance(a, Const))
    return tuple(sorted(names))


def ground_program(program: Program) -> Program:
    """Instantiate every rule over the program's constants.

    Rules with a variable that no positive body atom binds are rejected
    with :class:`SafetyError`.  Already-ground programs come back with
    the same rules (deduplicated).
    """
    constants = [Const(c) for c in program_constants(program)]
    out: list[Rule] = []
    seen: set[Rule] = set()
    for rule in program.rules:
        variables = _rule_vars(rule)
        bound = _positive_vars(rule.body)
        loose = [v for v in variables if v not in bound]
        if loose:
            raise SafetyError(
                f"rule {render_rule(rule)!r}: variable {loose[0]} is not "
                "bound by any positive body atom")
        if not variables:
            instances = [rule]
        else:
            instances = []
            for combo in itertools.product(constants, repeat=len(variables)):
                binding = dict(zip(variables, combo))
                instances.append(Rule(
                    _substitute_atom(rule.head, binding),
                    _substitute(rule.body, binding)))
        for inst in instances:
            if inst not in seen:
                seen.add(inst)
                out.append(inst)
    return Program(tuple(out))


def normalize(program: Program) -> Program:
    """Complete a ground program: every atom heads at least one rule.

    Empty conjunction bodies become ``true``; atoms that head nothing
    get an explicit ``false`` rule.  Idempotent.  Rejects non-ground or
    atom-free programs.
    """
    if not program.is_ground():
        raise ProgramError("normalize expects a ground program")
    rules = []
    for rule in program.rules:
        body = rule.body
        if isinstance(body, And) and not body.parts:
            body = TRUE
        rules.append(Rule(rule.head, body))
    universe = Program(tuple(rules)).atoms()
    if not universe:
        raise ProgramError("program has no atoms")
    headed = {r.head.key for r in rules}
    key_to_atom: dict[str, Atom] = {}
    for rule in rules:
        key_to_atom.setdefault(rule.head.key, rule.head)
        for atom in formula_atoms(rule.body):
            key_to_atom.setdefault(atom.key, atom)
    for key in universe:
        if key not in headed:
            rules.append(Rule(key_to_atom[key], FALSE))
    return Program(tuple(rules))

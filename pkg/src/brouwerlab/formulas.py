"""Propositional formula ASTs, the ASCII grammar, and seeded generators.

Grammar (ASCII):  atoms p1, p2, ...; constants bot, top; operators
~ (tightest), &, |, -> (loosest, right-associative); parentheses free.
Atom pN parses to index N-1.  Negation is a primitive AST node; the algebra
semantics elaborates it to an implication into the algebra's greatest
element.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import FormulaSyntaxError


class Formula:
    __slots__ = ()

    def atoms(self) -> set[int]:
        out: set[int] = set()
        _collect_atoms(self, out)
        return out

    def __str__(self) -> str:
        return pretty(self)


@dataclass(frozen=True)
class Atom(Formula):
    __slots__ = ("index",)
    index: int


@dataclass(frozen=True)
class And(Formula):
    __slots__ = ("left", "right")
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    __slots__ = ("left", "right")
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    __slots__ = ("left", "right")
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Neg(Formula):
    __slots__ = ("arg",)
    arg: Formula


@dataclass(frozen=True)
class Top(Formula):
    __slots__ = ()


@dataclass(frozen=True)
class Bot(Formula):
    __slots__ = ()


def _collect_atoms(f: Formula, out: set[int]) -> None:
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.index)
        elif isinstance(node, (And, Or, Imp)):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Neg):
            stack.append(node.arg)


def is_positive(f: Formula) -> bool:
    """True iff the AST contains no negation node."""
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Neg):
            return False
        if isinstance(node, (And, Or, Imp)):
            stack.append(node.left)
            stack.append(node.right)
    return True


# --- parser -------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected: str):
        raise FormulaSyntaxError(self.pos, expected)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def parse(self) -> Formula:
        f = self.parse_imp()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("end of input")
        return f

    def parse_imp(self) -> Formula:
        left = self.parse_or()
        if self.eat("->"):
            return Imp(left, self.parse_imp())     # right-associative
        return left

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while True:
            self.skip_ws()
            # '|' but not part of '->' lookahead issues; single char is fine
            if self.pos < len(self.text) and self.text[self.pos] == "|":
                self.pos += 1
                left = Or(left, self.parse_and())
            else:
                return left

    def parse_and(self) -> Formula:
        left = self.parse_unary()
        while self.eat("&"):
            left = And(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        if self.eat("~"):
            return Neg(self.parse_unary())
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            f = self.parse_imp()
            if not self.eat(")"):
                self.error("')'")
            return f
        if ch == "p":
            start = self.pos
            self.pos += 1
            digits = ""
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                digits += self.text[self.pos]
                self.pos += 1
            if not digits or int(digits) < 1:
                self.pos = start
                self.error("atom p<digits> with digits >= 1")
            return Atom(int(digits) - 1)
        if self.text.startswith("bot", self.pos):
            self.pos += 3
            return Bot()
        if self.text.startswith("top", self.pos):
            self.pos += 3
            return Top()
        self.error("atom, constant, '~' or '('")


def parse(text: str) -> Formula:
    return _Parser(text).parse()


# --- printer ------------------------------------------------------------

_PREC = {Imp: 1, Or: 2, And: 3, Neg: 4, Atom: 5, Top: 5, Bot: 5}


def pretty(f: Formula) -> str:
    """Minimal-parentheses rendering; pretty(parse(t)) reparses to the same AST."""
    def rec(node: Formula, min_prec: int) -> str:
        prec = _PREC[type(node)]
        if isinstance(node, Atom):
            s = f"p{node.index + 1}"
        elif isinstance(node, Top):
            s = "top"
        elif isinstance(node, Bot):
            s = "bot"
        elif isinstance(node, Neg):
            s = "~" + rec(node.arg, prec)
        elif isinstance(node, And):
            s = rec(node.left, prec) + " & " + rec(node.right, prec + 1)
        elif isinstance(node, Or):
            s = rec(node.left, prec) + " | " + rec(node.right, prec + 1)
        else:
            s = rec(node.left, prec + 1) + " -> " + rec(node.right, prec)
        if prec < min_prec:
            return "(" + s + ")"
        return s

    return rec(f, 0)


# --- seeded random formulas ----------------------------------------------

def random_formulas(seed: int, count: int, depth: int = 3, atoms: int = 2,
                    allow_constants: bool = True) -> list[Formula]:
    """Deterministic pseudo-random ASTs; same arguments, same list."""
    rng = random.Random(seed)

    def gen(d: int) -> Formula:
        if d <= 0 or rng.random() < 0.25:
            roll = rng.random()
            if allow_constants and roll < 0.08:
                return Bot() if rng.random() < 0.5 else Top()
            return Atom(rng.randrange(atoms))
        op = rng.randrange(4)
        if op == 0:
            return And(gen(d - 1), gen(d - 1))
        if op == 1:
            return Or(gen(d - 1), gen(d - 1))
        if op == 2:
            return Imp(gen(d - 1), gen(d - 1))
        return Neg(gen(d - 1))

    return [gen(depth) for _ in range(count)]

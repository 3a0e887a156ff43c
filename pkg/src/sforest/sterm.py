"""S-terms: terms over variables with an associative-commutative sum ``+``
and an associative product ``*``, kept in canonical form.

Canonical form flattens nested sums and nested products and sorts the
arguments of every sum, so two terms are equal modulo the axioms iff their
canonical forms are structurally equal.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import permutations, product
from typing import Iterable, Union

from .errors import NotDiversified, NotFTP, ParseError
from .relations import (
    Relation,
    check_var,
    concatenation,
    connected_components,
    disjoint_union,
    is_ftp,
    prime_concat_split,
    relation,
)


class _Term:
    __slots__ = ()

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __gt__(self, other):
        return self.key > other.key

    def __ge__(self, other):
        return self.key >= other.key

    def __str__(self):
        return render_sterm(self)


@dataclass(frozen=True, eq=True, order=False)
class Var(_Term):
    name: str

    def __post_init__(self):
        check_var(self.name)

    @property
    def key(self):
        return (0, self.name)

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, eq=True, order=False)
class Sum(_Term):
    args: tuple[STerm, ...]

    @cached_property
    def key(self):
        return (1, tuple(a.key for a in self.args))

    def __repr__(self):
        return f"Sum{list(self.args)!r}"


@dataclass(frozen=True, eq=True, order=False)
class Prod(_Term):
    args: tuple[STerm, ...]

    @cached_property
    def key(self):
        return (2, tuple(a.key for a in self.args))

    def __repr__(self):
        return f"Prod{list(self.args)!r}"


STerm = Union[Var, Sum, Prod]


def make_sum(*args: STerm) -> STerm:
    """Canonical sum of the arguments (flattened, sorted)."""
    flat = []
    for a in args:
        if isinstance(a, Sum):
            flat.extend(a.args)
        else:
            flat.append(a)
    if not flat:
        raise ValueError("empty sum")
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(sorted(flat, key=lambda t: t.key)))


def make_prod(*args: STerm) -> STerm:
    """Canonical product of the arguments (flattened, order kept)."""
    flat = []
    for a in args:
        if isinstance(a, Prod):
            flat.extend(a.args)
        else:
            flat.append(a)
    if not flat:
        raise ValueError("empty product")
    if len(flat) == 1:
        return flat[0]
    return Prod(tuple(flat))


# -- text form ---------------------------------------------------------------

_NAME = re.compile(r"[a-z][a-z0-9_]*")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def term(self) -> STerm:
        parts = [self.prod()]
        while self.peek() == "+":
            self.pos += 1
            parts.append(self.prod())
        return make_sum(*parts)

    def prod(self) -> STerm:
        parts = [self.atom()]
        while self.peek() == "*":
            self.pos += 1
            parts.append(self.atom())
        return make_prod(*parts)

    def atom(self) -> STerm:
        c = self.peek()
        if c == "(":
            self.pos += 1
            t = self.term()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return t
        match = _NAME.match(self.text, self.pos)
        if not match:
            what = repr(c) if c else "end of input"
            raise ParseError(f"expected variable or '(', got {what}", self.pos)
        self.pos = match.end()
        return Var(match.group())


def parse_sterm(text: str) -> STerm:
    p = _Parser(text)
    t = p.term()
    if p.peek():
        raise ParseError(f"unexpected {p.peek()!r}", p.pos)
    return t


def render_sterm(t: STerm) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Sum):
        return "+".join(render_sterm(a) for a in t.args)
    return "*".join(f"({render_sterm(a)})" if isinstance(a, Sum) else render_sterm(a) for a in t.args)


# -- predicates ----------------------------------------------------------------

def _occurrences(t: STerm) -> Counter:
    if isinstance(t, Var):
        return Counter([t.name])
    c = Counter()
    for a in t.args:
        c.update(_occurrences(a))
    return c


def variables(t: STerm) -> frozenset[str]:
    return frozenset(_occurrences(t))


def is_diversified(t: STerm) -> bool:
    return all(n == 1 for n in _occurrences(t).values())


def _in_c(t: STerm) -> bool:
    if isinstance(t, Var):
        return True
    if isinstance(t, Sum):
        return all(_in_c(a) for a in t.args)
    *head, last = t.args
    return all(isinstance(a, Var) for a in head) and _in_c(last)


def is_s_forest(t: STerm) -> bool:
    return is_diversified(t) and _in_c(t)


def is_s_tree(t: STerm) -> bool:
    return not isinstance(t, Sum) and is_s_forest(t)


# -- the isomorphism with trifunctional partial orders -------------------------

def kappa(t: STerm) -> Relation:
    """Read ``+`` as disjoint union and ``*`` as concatenation."""
    if not is_diversified(t):
        raise NotDiversified(f"{render_sterm(t)} repeats a variable")
    return _kappa(t)


def _kappa(t: STerm) -> Relation:
    if isinstance(t, Var):
        return relation([t.name])
    op = disjoint_union if isinstance(t, Sum) else concatenation
    return reduce(op, (_kappa(a) for a in t.args))


def sterm_of_ftp(r: Relation) -> STerm:
    """The canonical diversified term whose ``kappa`` is ``r``."""
    if not is_ftp(r):
        raise NotFTP(f"{r!r} is not a trifunctional partial order")
    return _sterm_of(r)


def _sterm_of(r: Relation) -> STerm:
    if len(r.domain) == 1:
        (x,) = r.domain
        return Var(x)
    parts = connected_components(r)
    if len(parts) > 1:
        return make_sum(*(_sterm_of(p) for p in parts))
    r1, r2 = prime_concat_split(r)
    return make_prod(_sterm_of(r1), _sterm_of(r2))


def sum_args(t: STerm) -> tuple[STerm, ...]:
    return t.args if isinstance(t, Sum) else (t,)


def diversified_terms(names: Iterable[str]) -> list[STerm]:
    """All canonical diversified terms over exactly ``names``, sorted."""
    return sorted(_terms(frozenset(names)), key=lambda t: t.key)


_TERM_CACHE: dict[frozenset, tuple] = {}


def _set_partitions(items: list) -> Iterable[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _ordered_partitions(items: list) -> Iterable[list[list]]:
    for part in _set_partitions(items):
        if len(part) < 2:
            continue
        for perm in permutations(part):
            yield list(perm)


def _terms(names: frozenset) -> tuple:
    if names in _TERM_CACHE:
        return _TERM_CACHE[names]
    if len(names) == 1:
        (x,) = names
        out = (Var(x),)
    else:
        items = sorted(names)
        found = []
        for part in _set_partitions(items):
            if len(part) < 2:
                continue
            choices = [[t for t in _terms(frozenset(b)) if not isinstance(t, Sum)] for b in part]
            for combo in product(*choices):
                found.append(make_sum(*combo))
        for part in _ordered_partitions(items):
            choices = [[t for t in _terms(frozenset(b)) if not isinstance(t, Prod)] for b in part]
            for combo in product(*choices):
                found.append(Prod(tuple(combo)))
        out = tuple(found)
    _TERM_CACHE[names] = out
    return out

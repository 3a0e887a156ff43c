"""Finite binary relations over named variables.

A relation is a pair (pairs, domain).  Two relations are combined only when
their domains are disjoint: ``disjoint_union`` puts them side by side and
``concatenation`` additionally places every element of the left domain below
every element of the right one.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional

from .errors import DomainOverlap, NotFTP, NotInDomain

VAR_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

Pair = tuple[str, str]


def check_var(name: str) -> str:
    if not isinstance(name, str) or not VAR_RE.match(name):
        raise ValueError(f"invalid variable name {name!r}")
    return name


@dataclass(frozen=True)
class Relation:
    domain: frozenset[str]
    pairs: frozenset[Pair]

    def __post_init__(self):
        for v in self.domain:
            check_var(v)
        for a, b in self.pairs:
            if a not in self.domain or b not in self.domain:
                raise ValueError(f"pair {(a, b)} not over domain")

    def __repr__(self):
        ps = ",".join(f"({a},{b})" for a, b in sorted(self.pairs))
        return f"Relation({{{ps}}}, {{{','.join(sorted(self.domain))}}})"

    def successors(self) -> dict[str, set[str]]:
        out = defaultdict(set)
        for a, b in self.pairs:
            out[a].add(b)
        return out

    def predecessors(self) -> dict[str, set[str]]:
        out = defaultdict(set)
        for a, b in self.pairs:
            out[b].add(a)
        return out

    def to_json(self) -> dict:
        return {
            "domain": sorted(self.domain),
            "pairs": [list(p) for p in sorted(self.pairs)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Relation:
        try:
            domain = obj["domain"]
            pairs = obj["pairs"]
            return relation(domain, (tuple(p) for p in pairs))
        except (KeyError, TypeError) as e:
            raise ValueError(f"malformed relation JSON: {e}") from e


def relation(domain: Iterable[str], pairs: Iterable[Pair] = ()) -> Relation:
    """Build a relation from any iterables; pairs must be 2-sequences."""
    ps = frozenset((a, b) for a, b in pairs)
    return Relation(frozenset(domain), ps)


def chain(*names: str) -> Relation:
    """The linear order ``names[0] < names[1] < ...``."""
    return relation(names, ((names[i], names[j]) for i in range(len(names)) for j in range(i + 1, len(names))))


def _check_disjoint(a: Relation, b: Relation) -> None:
    common = a.domain & b.domain
    if common:
        raise DomainOverlap(f"domains share {sorted(common)}")


def disjoint_union(a: Relation, b: Relation) -> Relation:
    _check_disjoint(a, b)
    return Relation(a.domain | b.domain, a.pairs | b.pairs)


def concatenation(a: Relation, b: Relation) -> Relation:
    _check_disjoint(a, b)
    cross = frozenset(product(a.domain, b.domain))
    return Relation(a.domain | b.domain, a.pairs | b.pairs | cross)


def restrict(r: Relation, subset: Iterable[str]) -> Relation:
    """The induced relation on ``subset`` (which must lie in the domain)."""
    sub = frozenset(subset)
    if not sub <= r.domain:
        raise NotInDomain(f"{sorted(sub - r.domain)} not in domain")
    return Relation(sub, frozenset((a, b) for a, b in r.pairs if a in sub and b in sub))


def is_partial_order(r: Relation) -> bool:
    if any(a == b for a, b in r.pairs):
        return False
    succ = r.successors()
    for a, b in r.pairs:
        if not succ[b] <= succ[a]:
            return False
    return True


def is_linear_order(r: Relation) -> bool:
    if not is_partial_order(r):
        return False
    n = len(r.domain)
    return len(r.pairs) == n * (n - 1) // 2


def is_trifunctional(r: Relation) -> bool:
    # (x,z),(y,z),(y,u) in R  =>  (x,u) or (y,x) or (u,z) in R
    pred = r.predecessors()
    succ = r.successors()
    pairs = r.pairs
    for z, pz in pred.items():
        for y in pz:
            for u in succ[y]:
                for x in pz:
                    if (x, u) not in pairs and (y, x) not in pairs and (u, z) not in pairs:
                        return False
    return True


def component_sets(domain: frozenset[str], pairs: Iterable[Pair]) -> list[frozenset[str]]:
    parent = {v: v for v in domain}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups = defaultdict(set)
    for v in domain:
        groups[find(v)].add(v)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def is_connected(r: Relation) -> bool:
    return len(component_sets(r.domain, r.pairs)) <= 1


def connected_components(r: Relation) -> list[Relation]:
    """Finest decomposition into connected parts, ordered by least variable."""
    return [restrict(r, c) for c in component_sets(r.domain, r.pairs)]


def inner_elements(r: Relation) -> frozenset[str]:
    sources = {a for a, _ in r.pairs}
    targets = {b for _, b in r.pairs}
    return frozenset(sources & targets)


def remove_element(r: Relation, y: str) -> Relation:
    if y not in r.domain:
        raise NotInDomain(f"{y!r} not in domain")
    return Relation(r.domain - {y}, frozenset(p for p in r.pairs if y not in p))


def is_ftp(r: Relation) -> bool:
    return bool(r.domain) and is_partial_order(r) and is_trifunctional(r)


def is_ftp_forest(r: Relation) -> bool:
    if not is_partial_order(r):
        return False
    pairs = r.pairs
    for preds in r.predecessors().values():
        ps = sorted(preds)
        for i, x in enumerate(ps):
            for y in ps[i + 1:]:
                if (x, y) not in pairs and (y, x) not in pairs:
                    return False
    return True


def is_ftp_tree(r: Relation) -> Optional[str]:
    """Return the root if ``r`` is an FTP-tree, else None."""
    if not r.domain or not is_ftp_forest(r):
        return None
    succ = r.successors()
    n = len(r.domain)
    for x in sorted(r.domain):
        if len(succ[x]) == n - 1:
            return x
    return None


def transitive_closure(domain: Iterable[str], pairs: Iterable[Pair]) -> Relation:
    dom = frozenset(domain)
    succ = defaultdict(set)
    for a, b in pairs:
        succ[a].add(b)
    closed = set()
    for start in dom:
        seen = set()
        stack = list(succ[start])
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(succ[v])
        closed.update((start, v) for v in seen)
    return Relation(dom, frozenset(closed))


def prime_concat_split(r: Relation) -> Optional[tuple[Relation, Relation]]:
    """Split a connected FTP relation as ``concatenation(r1, r2)``.

    Follows the induction on inner elements: with none, the sources go left
    and the sinks go right; otherwise the least inner element ``x`` is removed,
    the remainder is split with a prime right factor, and ``x`` is put back on
    the side dictated by its least successor ``w`` and its relation to the
    left factor.  Returns None for disconnected or one-element relations.
    """
    if not is_ftp(r):
        raise NotFTP(f"{r!r} is not a trifunctional partial order")
    if len(r.domain) < 2 or not is_connected(r):
        return None
    return _split(r)


def _split(r: Relation) -> tuple[Relation, Relation]:
    inner = inner_elements(r)
    if not inner:
        left = {a for a, _ in r.pairs}
        right = {b for _, b in r.pairs}
        return restrict(r, left), restrict(r, right)

    x = min(inner)
    rest = remove_element(r, x)
    r1, r2 = _split(rest)
    left = set(r1.domain)
    # make the right factor prime by absorbing its left parts into the left factor
    while len(r2.domain) > 1 and is_connected(r2):
        s, t = _split(r2)
        left |= s.domain
        r2 = t
    right = set(r2.domain)

    w = min(b for a, b in r.pairs if a == x)
    if w in left:
        left.add(x)
    elif all((y, x) in r.pairs for y in left):
        right.add(x)
    else:
        left.add(x)
    return restrict(r, left), restrict(r, right)

"""Brute-force generators of small structures, used as independent oracles."""

from __future__ import annotations

import random
from itertools import combinations, product
from typing import Iterator, Sequence

from .graphs import Graph, graph
from .relations import Relation, is_partial_order

NAMES = ("x", "y", "z", "u", "v", "w", "a", "b")


def names(n: int) -> tuple[str, ...]:
    return NAMES[:n]


def all_relations(domain: Sequence[str], irreflexive: bool = False) -> Iterator[Relation]:
    dom = sorted(domain)
    square = [(a, b) for a in dom for b in dom if not (irreflexive and a == b)]
    for bits in product((False, True), repeat=len(square)):
        yield Relation(frozenset(dom), frozenset(p for p, keep in zip(square, bits) if keep))


def all_partial_orders(domain: Sequence[str]) -> list[Relation]:
    """Every strict partial order on ``domain``, by filtering all relations."""
    return [r for r in all_relations(domain, irreflexive=True) if is_partial_order(r)]


def all_graphs(vertices: Sequence[str]) -> Iterator[Graph]:
    vs = sorted(vertices)
    possible = list(combinations(vs, 2))
    for bits in product((False, True), repeat=len(possible)):
        yield graph(vs, (e for e, keep in zip(possible, bits) if keep))


def random_graph(vertices: Sequence[str], rng: random.Random, p: float = 0.5) -> Graph:
    vs = sorted(vertices)
    return graph(vs, (e for e in combinations(vs, 2) if rng.random() < p))


def splits(domain: Sequence[str], allow_empty: bool = False) -> Iterator[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Ordered pairs (X, Y) partitioning ``domain``."""
    dom = sorted(domain)
    for bits in product((0, 1), repeat=len(dom)):
        x = tuple(v for v, b in zip(dom, bits) if b == 0)
        y = tuple(v for v, b in zip(dom, bits) if b == 1)
        if allow_empty or (x and y):
            yield x, y

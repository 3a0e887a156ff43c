"""Permutohedron skeletons and their collapse along S-forests of a graph.

Each permutation of the vertex set belongs to the linear extensions of
exactly one S-forest of the graph; gluing the permutohedron's vertices along
that partition gives the collapsed 1-skeleton.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from typing import Any, Iterable, Sequence, Union

from .errors import BudgetExceeded, DomainMismatch
from .graphs import Graph, t_forests
from .relations import component_sets
from .relationships import linear_extensions
from .sterm import STerm, Var, kappa, make_prod, make_sum, render_sterm

BUILD_LIMIT = 8
VERIFY_LIMIT = 7

Perm = tuple[str, ...]


@dataclass(frozen=True)
class PermutohedronSkeleton:
    domain: frozenset[str]
    vertices: tuple[Perm, ...]
    edges: tuple[tuple[int, int], ...]

    def labels(self) -> list[str]:
        return [" ".join(p) for p in self.vertices]


@dataclass(frozen=True)
class CollapseSkeleton:
    graph: Graph
    classes: dict = field(compare=False, repr=False)  # permutation -> STerm
    vertices: tuple[STerm, ...]
    edges: tuple[tuple[int, int], ...]

    def labels(self) -> list[str]:
        return [render_sterm(t) for t in self.vertices]

    def class_sizes(self) -> dict[str, int]:
        sizes = {t: 0 for t in self.vertices}
        for t in self.classes.values():
            sizes[t] += 1
        return {render_sterm(t): n for t, n in sizes.items()}


def _adjacent_swaps(p: Perm) -> Iterable[Perm]:
    for i in range(len(p) - 1):
        yield p[:i] + (p[i + 1], p[i]) + p[i + 2:]


def permutohedron(domain: Iterable[str]) -> PermutohedronSkeleton:
    dom = sorted(set(domain))
    if not 1 <= len(dom) <= BUILD_LIMIT:
        raise BudgetExceeded(f"permutohedron on {len(dom)} elements (allowed 1..{BUILD_LIMIT})")
    verts = tuple(permutations(dom))
    index = {p: i for i, p in enumerate(verts)}
    edges = sorted(
        (i, j) for i, p in enumerate(verts) for j in (index[q] for q in _adjacent_swaps(p)) if i < j
    )
    return PermutohedronSkeleton(frozenset(dom), verts, tuple(edges))


class _Classifier:
    """Greedy classification of permutations, with components memoized by
    vertex subset."""

    def __init__(self, g: Graph):
        self.g = g
        self.adj = g.neighbours()
        self._comps: dict[frozenset, list[frozenset]] = {}

    def comps(self, vs: frozenset) -> list[frozenset]:
        if vs not in self._comps:
            adj = self.adj
            self._comps[vs] = component_sets(vs, ((a, b) for a in vs for b in adj[a] if b in vs))
        return self._comps[vs]

    def classify(self, vs: frozenset, seq: Sequence[str]) -> STerm:
        if len(vs) == 1:
            return Var(seq[0])
        parts = self.comps(vs)
        if len(parts) == 1:
            head = seq[0]
            return make_prod(Var(head), self.classify(vs - {head}, seq[1:]))
        return make_sum(*(self.classify(p, [v for v in seq if v in p]) for p in parts))


def class_of_permutation(g: Graph, p: Sequence[str]) -> STerm:
    """The S-forest of ``g`` whose linear extensions contain ``p``."""
    if len(p) != len(set(p)) or set(p) != g.vertices:
        raise DomainMismatch(f"{list(p)} is not a permutation of {sorted(g.vertices)}")
    return _Classifier(g).classify(g.vertices, tuple(p))


def collapse(g: Graph) -> CollapseSkeleton:
    n = len(g.vertices)
    if n > BUILD_LIMIT:
        raise BudgetExceeded(f"collapse of a graph on {n} vertices (limit {BUILD_LIMIT})")
    clf = _Classifier(g)
    classes = {p: clf.classify(g.vertices, p) for p in permutations(sorted(g.vertices))}
    verts = sorted(set(classes.values()), key=render_sterm)
    index = {t: i for i, t in enumerate(verts)}
    edges = set()
    for p, t in classes.items():
        i = index[t]
        for q in _adjacent_swaps(p):
            j = index[classes[q]]
            if i < j:
                edges.add((i, j))
    return CollapseSkeleton(g, classes, tuple(verts), tuple(sorted(edges)))


def _dot_id(label: str) -> str:
    return '"' + label.replace('"', r"\"") + '"'


def export_skeleton(s: Union[CollapseSkeleton, PermutohedronSkeleton], fmt: str = "json") -> str:
    labels = s.labels()
    if fmt == "dot":
        name = "collapse" if isinstance(s, CollapseSkeleton) else "permutohedron"
        lines = [f"graph {name} {{"]
        lines += [f"  {_dot_id(l)};" for l in labels]
        lines += [f"  {_dot_id(labels[i])} -- {_dot_id(labels[j])};" for i, j in s.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        if isinstance(s, CollapseSkeleton):
            sizes = s.class_sizes()
        else:
            sizes = {l: 1 for l in labels}
        obj = {"vertices": labels, "edges": [list(e) for e in s.edges], "class_sizes": sizes}
        return json.dumps(obj, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


# -- verification --------------------------------------------------------------

@dataclass
class VerificationReport:
    proposition: str
    status: str  # "pass" or "fail"
    counterexample: Any = None
    checked: int = 0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "proposition": self.proposition,
            "status": self.status,
            "counterexample": self.counterexample,
            "checked": self.checked,
        }


def _verify_budget(g: Graph) -> None:
    if len(g.vertices) > VERIFY_LIMIT:
        raise BudgetExceeded(f"verification on {len(g.vertices)} vertices (limit {VERIFY_LIMIT})")


def _extension_classes(g: Graph) -> list[tuple[STerm, list[Perm]]]:
    fs = sorted(t_forests(g).forests, key=render_sterm)
    return [(t, linear_extensions(kappa(t))) for t in fs]


def verify_partition(g: Graph) -> VerificationReport:
    """Linear extensions of the forests of ``g`` are disjoint and cover every
    permutation."""
    _verify_budget(g)
    owner: dict[Perm, STerm] = {}
    for t, exts in _extension_classes(g):
        for p in exts:
            if p in owner:
                return VerificationReport(
                    "partition", "fail",
                    {"graph": g.to_json(), "permutation": list(p),
                     "forests": [render_sterm(owner[p]), render_sterm(t)]},
                )
            owner[p] = t
    n = len(g.vertices)
    if len(owner) != factorial(n):
        missing = next(p for p in permutations(sorted(g.vertices)) if p not in owner)
        return VerificationReport("partition", "fail", {"graph": g.to_json(), "missing": list(missing)})
    return VerificationReport("partition", "pass", checked=len(owner))


def connected_under_swaps(perms: Iterable[Perm]) -> bool:
    """Whether a set of permutations is connected by adjacent transpositions."""
    pool = set(perms)
    if not pool:
        return True
    start = next(iter(pool))
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for q in _adjacent_swaps(p):
            if q in pool and q not in seen:
                seen.add(q)
                queue.append(q)
    return len(seen) == len(pool)


def verify_class_connected(g: Graph) -> VerificationReport:
    _verify_budget(g)
    checked = 0
    for t, exts in _extension_classes(g):
        if not connected_under_swaps(exts):
            return VerificationReport(
                "class-connected", "fail", {"graph": g.to_json(), "forest": render_sterm(t)}
            )
        checked += 1
    return VerificationReport("class-connected", "pass", checked=checked)

"""Finite simple graphs and their S-forests.

``t_forests(g)`` collects the records of every way of destroying ``g`` by
vertex removal: a connected graph contributes ``x*t`` for each vertex ``x``
and each record ``t`` of ``g - x``; a disconnected graph contributes the sums
of records of its components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import MalformedForestSet, NotAForestOf, NotInGraph
from .relations import Relation, component_sets, check_var
from .sterm import STerm, Sum, Var, is_s_forest, make_prod, make_sum, render_sterm, variables


@dataclass(frozen=True)
class Graph:
    vertices: frozenset[str]
    edges: frozenset[tuple[str, str]]  # each edge stored as (a, b) with a < b

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("a graph needs at least one vertex")
        for v in self.vertices:
            check_var(v)
        for a, b in self.edges:
            if not a < b:
                raise ValueError(f"edge {(a, b)} is a loop or not normalized")
            if a not in self.vertices or b not in self.vertices:
                raise ValueError(f"edge {(a, b)} leaves the vertex set")

    def __repr__(self):
        es = ",".join(f"{a}-{b}" for a, b in sorted(self.edges))
        return f"Graph({{{','.join(sorted(self.vertices))}}}; {es})"

    def neighbours(self) -> dict[str, set[str]]:
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def as_relation(self) -> Relation:
        """The symmetric irreflexive relation of the graph."""
        return Relation(self.vertices, self.edges | frozenset((b, a) for a, b in self.edges))

    def to_json(self) -> dict:
        return {"vertices": sorted(self.vertices), "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, obj: dict) -> Graph:
        try:
            return graph(obj["vertices"], obj["edges"])
        except (KeyError, TypeError) as e:
            raise ValueError(f"malformed graph JSON: {e}") from e


def graph(vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()) -> Graph:
    norm = set()
    for e in edges:
        a, b = e
        if a == b:
            raise ValueError(f"loop at {a!r}")
        norm.add((a, b) if a < b else (b, a))
    return Graph(frozenset(vertices), frozenset(norm))


def induced(g: Graph, subset: Iterable[str]) -> Graph:
    sub = frozenset(subset)
    if not sub <= g.vertices:
        raise NotInGraph(f"{sorted(sub - g.vertices)} not in graph")
    return Graph(sub, frozenset(e for e in g.edges if e[0] in sub and e[1] in sub))


def graph_components(g: Graph) -> list[Graph]:
    return [induced(g, c) for c in component_sets(g.vertices, g.edges)]


def graph_connected(g: Graph) -> bool:
    return len(component_sets(g.vertices, g.edges)) == 1


def remove_vertex(g: Graph, x: str) -> Optional[Graph]:
    if x not in g.vertices:
        raise NotInGraph(f"{x!r} not in graph")
    if len(g.vertices) == 1:
        return None
    return induced(g, g.vertices - {x})


@dataclass(frozen=True)
class ForestSet:
    graph: Graph
    forests: frozenset

    def rendered(self) -> list[str]:
        return sorted(render_sterm(t) for t in self.forests)

    def __len__(self):
        return len(self.forests)


def t_forests(g: Graph) -> ForestSet:
    adj = g.neighbours()
    memo: dict[frozenset, frozenset] = {}

    def comps(vs: frozenset) -> list[frozenset]:
        return component_sets(vs, ((a, b) for a in vs for b in adj[a] if b in vs))

    def rec(vs: frozenset) -> frozenset:
        if vs in memo:
            return memo[vs]
        if len(vs) == 1:
            (x,) = vs
            out = frozenset([Var(x)])
        else:
            parts = comps(vs)
            if len(parts) == 1:
                out = frozenset(make_prod(Var(x), t) for x in vs for t in rec(vs - {x}))
            else:
                out = frozenset([None])
                for p in parts:
                    out = frozenset(t if s is None else make_sum(s, t) for s in out for t in rec(p))
        memo[vs] = out
        return out

    return ForestSet(g, rec(g.vertices))


def is_forest_of(g: Graph, t: STerm) -> bool:
    """Membership in ``t_forests(g)`` decided top-down from the definition."""
    if variables(t) != g.vertices or not is_s_forest(t):
        return False
    parts = graph_components(g)
    if len(g.vertices) == 1:
        return isinstance(t, Var)
    if len(parts) == 1:
        if isinstance(t, Sum) or isinstance(t, Var):
            return False
        head, rest = t.args[0], make_prod(*t.args[1:])
        return isinstance(head, Var) and is_forest_of(remove_vertex(g, head.name), rest)
    if not isinstance(t, Sum):
        return False
    by_vars = {variables(a): a for a in t.args}
    if set(by_vars) != {p.vertices for p in parts}:
        return False
    return all(is_forest_of(p, by_vars[p.vertices]) for p in parts)


def _separated(t: STerm, x: str, y: str) -> bool:
    """Whether some sum inside ``t`` has ``x`` and ``y`` in different summands."""
    if isinstance(t, Var):
        return False
    if isinstance(t, Sum):
        sides = [variables(a) for a in t.args]
        ix = next((i for i, s in enumerate(sides) if x in s), None)
        iy = next((i for i, s in enumerate(sides) if y in s), None)
        if ix is not None and iy is not None and ix != iy:
            return True
    return any(_separated(a, x, y) for a in t.args)


def reconstruct_graph(vertices: Iterable[str], forests: Iterable[STerm]) -> Graph:
    """Recover the graph from its forests: x-y is an edge iff no forest
    separates x and y by a sum."""
    vs = frozenset(vertices)
    fs = list(forests)
    if not fs:
        raise MalformedForestSet("empty forest set")
    for t in fs:
        if not is_s_forest(t) or variables(t) != vs:
            raise MalformedForestSet(f"{render_sterm(t)} is not an S-forest over {sorted(vs)}")
    names = sorted(vs)
    edges = [
        (a, b)
        for i, a in enumerate(names)
        for b in names[i + 1:]
        if not any(_separated(t, a, b) for t in fs)
    ]
    return Graph(vs, frozenset(edges))


FilmFrame = tuple  # tuple of Graph, the residual graphs running in parallel


def destruction_film(g: Graph, t: STerm) -> list[FilmFrame]:
    """Replay ``t`` as vertex removals: factors of a product happen one after
    another, summands of a sum happen in parallel.  The last frame is empty."""
    if not is_forest_of(g, t):
        raise NotAForestOf(f"{render_sterm(t)} is not an S-forest of {g!r}")

    def split(h: Graph, s: STerm) -> list[tuple[Graph, STerm]]:
        if isinstance(s, Sum):
            return [(induced(h, variables(a)), a) for a in s.args]
        return [(h, s)]

    def order(bs):
        return sorted(bs, key=lambda b: min(b[0].vertices))

    branches = order(split(g, t))
    frames: list[FilmFrame] = []
    while branches:
        frames.append(tuple(h for h, _ in branches))
        nxt = []
        for h, s in branches:
            if isinstance(s, Var):
                continue
            head, rest = s.args[0], make_prod(*s.args[1:])
            nxt.extend(split(remove_vertex(h, head.name), rest))
        branches = order(nxt)
    frames.append(())
    return frames

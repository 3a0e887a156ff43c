"""Exhaustive and seeded-random checks of the algebraic facts the library
relies on.  Each check returns a ``VerificationReport``; ``run_all`` collects
them sorted by proposition id.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations
from typing import Callable

from . import exhaustive as ex
from .graphs import Graph, is_forest_of, reconstruct_graph, t_forests
from .polytope import VerificationReport, class_of_permutation, connected_under_swaps, verify_partition
from .relations import (
    Relation,
    concatenation,
    connected_components,
    disjoint_union,
    inner_elements,
    is_connected,
    is_ftp,
    is_ftp_forest,
    is_ftp_tree,
    is_linear_order,
    is_partial_order,
    is_trifunctional,
    prime_concat_split,
    relation,
    remove_element,
    restrict,
    transitive_closure,
)
from .relationships import (
    concat_product,
    extend_with_pair,
    find_Q1_not_Q2_witness,
    linear_extension_through,
    linear_extensions,
    map_E,
    map_L,
    map_P,
    shuffle_sum,
)
from .sterm import diversified_terms, is_s_forest, is_s_tree, kappa, render_sterm, sterm_of_ftp

RELATION_LIMIT = 3  # all relations, including reflexive pairs: 2^(n^2)
SPLIT_LIMIT = 4
ORDER_LIMIT = 4  # brute-force partial orders
LINEAR_LIMIT = 5
GRAPH_LIMIT = 5


class Context:
    def __init__(self, max_n: int, random_count: int, seed: int):
        self.max_n = max_n
        self.random_count = random_count
        self.seed = seed
        self._po: dict[int, list[Relation]] = {}

    def n(self, limit: int) -> int:
        return min(self.max_n, limit)

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")

    def partial_orders(self, domain) -> list[Relation]:
        dom = tuple(sorted(domain))
        k = len(dom)
        if k not in self._po:
            self._po[k] = ex.all_partial_orders(ex.names(k))
        if dom == ex.names(k):
            return self._po[k]
        ren = dict(zip(ex.names(k), dom))
        return [relation(dom, ((ren[a], ren[b]) for a, b in r.pairs)) for r in self._po[k]]

    def ftps(self, k: int) -> list[Relation]:
        return [r for r in self.partial_orders(ex.names(k)) if is_trifunctional(r)]

    def po_pairs(self, limit: int):
        """Partial orders (r, s) on every nonempty split of up to ``limit`` names."""
        for k in range(2, self.n(limit) + 1):
            for xs, ys in ex.splits(ex.names(k)):
                for r in self.partial_orders(xs):
                    for s in self.partial_orders(ys):
                        yield r, s


def _fail(prop: str, **info) -> VerificationReport:
    return VerificationReport(prop, "fail", {k: _show(v) for k, v in info.items()})


def _show(v):
    if isinstance(v, (Relation, Graph)):
        return v.to_json()
    if hasattr(v, "key"):
        return render_sterm(v)
    return v


def _relation_pairs(ctx: Context, limit: int, allow_empty: bool = True):
    for k in range(0, ctx.n(limit) + 1):
        for xs, ys in ex.splits(ex.names(k), allow_empty=allow_empty):
            rs = list(ex.all_relations(xs))
            ss = list(ex.all_relations(ys))
            for a in rs:
                for b in ss:
                    yield a, b


def _closure(prop: str, pred: Callable[[Relation], bool]):
    def check(ctx: Context) -> VerificationReport:
        n = 0
        for a, b in _relation_pairs(ctx, RELATION_LIMIT):
            both = pred(a) and pred(b)
            for op in (disjoint_union, concatenation):
                n += 1
                if both != pred(op(a, b)):
                    return _fail(prop, left=a, right=b, op=op.__name__)
        return VerificationReport(prop, "pass", checked=n)

    return check


def check_connectivity(ctx: Context) -> VerificationReport:
    n = 0
    for a, b in _relation_pairs(ctx, RELATION_LIMIT, allow_empty=False):
        n += 1
        if is_connected(disjoint_union(a, b)) or not is_connected(concatenation(a, b)):
            return _fail("2.3", left=a, right=b)
    return VerificationReport("2.3", "pass", checked=n)


def check_unique_components(ctx: Context) -> VerificationReport:
    n = 0
    for k in range(1, ctx.n(RELATION_LIMIT) + 1):
        dom = ex.names(k)
        blocks_of = list(_set_partitions(list(dom)))
        for r in ex.all_relations(dom):
            comps = {c.domain for c in connected_components(r)}
            if disjoint_union_all(connected_components(r)) != r:
                return _fail("2.4", relation=r)
            for blocks in blocks_of:
                parts = [restrict(r, b) for b in blocks]
                if sum(len(p.pairs) for p in parts) != len(r.pairs):
                    continue
                if all(is_connected(p) for p in parts):
                    n += 1
                    if {frozenset(b) for b in blocks} != comps:
                        return _fail("2.4", relation=r, blocks=[sorted(b) for b in blocks])
    return VerificationReport("2.4", "pass", checked=n)


def disjoint_union_all(parts: list[Relation]) -> Relation:
    out = relation(())
    for p in parts:
        out = disjoint_union(out, p)
    return out


def _set_partitions(items: list):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def check_cancellation(ctx: Context) -> VerificationReport:
    n = 0
    for k in range(0, ctx.n(RELATION_LIMIT) + 1):
        for xs, ys in ex.splits(ex.names(k), allow_empty=True):
            rs = list(ex.all_relations(xs))
            for s in ex.all_relations(ys):
                right = {concatenation(r, s) for r in rs}
                left = {concatenation(s, r) for r in rs}
                n += 2 * len(rs)
                if len(right) != len(rs) or len(left) != len(rs):
                    return _fail("2.5", fixed=s, domain=list(xs))
    return VerificationReport("2.5", "pass", checked=n)


def check_unique_concatenation(ctx: Context) -> VerificationReport:
    seen: dict[Relation, tuple[Relation, Relation]] = {}
    n = 0
    for k in range(1, ctx.n(SPLIT_LIMIT) + 1):
        for xs, ys in ex.splits(ex.names(k), allow_empty=k <= RELATION_LIMIT):
            if not ys:
                continue
            rs = list(ex.all_relations(xs))
            ss = [s for s in ex.all_relations(ys) if len(s.domain) == 1 or not is_connected(s)]
            for a in rs:
                for b in ss:
                    c = concatenation(a, b)
                    n += 1
                    if c in seen and seen[c] != (a, b):
                        return _fail("2.6", result=c, first=list(seen[c]), second=[a, b])
                    seen[c] = (a, b)
    return VerificationReport("2.6", "pass", checked=n)


def check_k_one_one(ctx: Context) -> VerificationReport:
    n = 0
    for k in range(1, ctx.n(ORDER_LIMIT) + 1):
        terms = diversified_terms(ex.names(k))
        images = {}
        for t in terms:
            r = kappa(t)
            if r in images:
                return _fail("3.1", first=images[r], second=t)
            images[r] = t
            n += 1
    return VerificationReport("3.1", "pass", checked=n)


def check_prime_split(ctx: Context) -> VerificationReport:
    n = 0
    for k in range(1, ctx.n(ORDER_LIMIT) + 1):
        for r in ctx.ftps(k):
            connected = is_connected(r)
            if connected:
                for y in sorted(inner_elements(r)):
                    rest = remove_element(r, y)
                    if not (is_ftp(rest) and is_connected(rest)):
                        return _fail("3.2", relation=r, inner=y)
            split = prime_concat_split(r)
            n += 1
            if not connected or k == 1:
                if split is not None:
                    return _fail("3.2", relation=r)
                continue
            if split is None or not split[0].domain or not split[1].domain:
                return _fail("3.2", relation=r)
            if concatenation(*split) != r:
                return _fail("3.2", relation=r, split=list(split))
    return VerificationReport("3.2", "pass", checked=n)


def check_k_onto(ctx: Context) -> VerificationReport:
    n = 0
    for k in range(1, ctx.n(ORDER_LIMIT) + 1):
        ftps = set(ctx.ftps(k))
        images = {kappa(t) for t in diversified_terms(ex.names(k))}
        if images != ftps:
            return _fail("3.3", size=k, missing=sorted(map(repr, ftps - images))[:3])
        for r in ftps:
            n += 1
            t = sterm_of_ftp(r)
            if kappa(t) != r or sterm_of_ftp(kappa(t)) != t:
                return _fail("3.3", relation=r, term=t)
    return VerificationReport("3.3", "pass", checked=n)


def check_E_sum(ctx: Context) -> VerificationReport:
    n = 0
    for r, s in ctx.po_pairs(SPLIT_LIMIT):
        n += 1
        if map_E(disjoint_union(r, s)) != shuffle_sum(map_E(r), map_E(s), "all"):
            return _fail("4.1", left=r, right=s)
    return VerificationReport("4.1", "pass", checked=n)


def check_P_sum(ctx: Context) -> VerificationReport:
    n = 0
    for r, s in ctx.po_pairs(SPLIT_LIMIT):
        n += 1
        if map_P(disjoint_union(r, s)) != shuffle_sum(map_P(r), map_P(s), "partial-orders"):
            return _fail("4.2", left=r, right=s)
    return VerificationReport("4.2", "pass", checked=n)


def check_P_concat(ctx: Context) -> VerificationReport:
    n = 0
    for r, s in ctx.po_pairs(SPLIT_LIMIT):
        n += 1
        if map_P(concatenation(r, s)) != concat_product(map_P(r), map_P(s)):
            return _fail("4.3", left=r, right=s)
        if find_Q1_not_Q2_witness(r, s, partial_orders_only=True) is not None:
            return _fail("4.3", left=r, right=s, reason="partial-order witness")
    # without the partial-order restriction the implication fails
    if find_Q1_not_Q2_witness(relation("x"), relation("y")) is None:
        return _fail("4.3", reason="no unrestricted witness for x, y")
    return VerificationReport("4.3", "pass", checked=n)


def _all_orders(ctx: Context, limit: int):
    for k in range(1, ctx.n(limit) + 1):
        yield from ctx.partial_orders(ex.names(k))


def check_extend_pair(ctx: Context) -> VerificationReport:
    n = 0
    for r in _all_orders(ctx, ORDER_LIMIT):
        for x, y in permutations(sorted(r.domain), 2):
            if (y, x) in r.pairs:
                continue
            n += 1
            q = extend_with_pair(r, x, y)
            if not is_partial_order(q) or not r.pairs <= q.pairs or (x, y) not in q.pairs:
                return _fail("4.4", relation=r, pair=[x, y])
    return VerificationReport("4.4", "pass", checked=n)


def check_linear_through(ctx: Context) -> VerificationReport:
    n = 0
    for r in _all_orders(ctx, ORDER_LIMIT):
        for x, y in permutations(sorted(r.domain), 2):
            if (y, x) in r.pairs:
                continue
            n += 1
            q = linear_extension_through(r, x, y)
            if not is_linear_order(q) or not r.pairs <= q.pairs or (x, y) not in q.pairs:
                return _fail("4.5", relation=r, pair=[x, y])
    return VerificationReport("4.5", "pass", checked=n)


def check_L_one_one(ctx: Context) -> VerificationReport:
    n = 0
    for k in range(1, ctx.n(ORDER_LIMIT) + 1):
        seen = {}
        for r in ctx.partial_orders(ex.names(k)):
            img = map_L(r)
            n += 1
            if img in seen:
                return _fail("4.6", first=seen[img], second=r)
            seen[img] = r
    return VerificationReport("4.6", "pass", checked=n)


def random_partial_order(domain, rng: random.Random, p: float = 0.4) -> Relation:
    seq = sorted(domain)
    rng.shuffle(seq)
    pairs = [(a, b) for a, b in combinations(seq, 2) if rng.random() < p]
    return transitive_closure(seq, pairs)


def _random_po_pairs(ctx: Context, tag: str):
    rng = ctx.rng(tag)
    for _ in range(ctx.random_count):
        k = rng.randint(6, 7)
        dom = list(ex.NAMES[:k])
        cut = rng.randint(1, k - 1)
        rng.shuffle(dom)
        yield random_partial_order(dom[:cut], rng), random_partial_order(dom[cut:], rng)


def _L_law(prop: str, op, lift):
    def check(ctx: Context) -> VerificationReport:
        n = 0
        pairs = list(ctx.po_pairs(LINEAR_LIMIT)) + list(_random_po_pairs(ctx, prop))
        for r, s in pairs:
            n += 1
            if map_L(op(r, s)) != lift(map_L(r), map_L(s)):
                return _fail(prop, left=r, right=s)
        return VerificationReport(prop, "pass", checked=n)

    return check


def _terms_upto(ctx: Context, limit: int):
    for k in range(1, ctx.n(limit) + 1):
        yield from diversified_terms(ex.names(k))


def check_forest_image(ctx: Context) -> VerificationReport:
    n = 0
    for t in _terms_upto(ctx, ORDER_LIMIT):
        n += 1
        if is_s_forest(t) != is_ftp_forest(kappa(t)):
            return _fail("5.1", term=t)
    return VerificationReport("5.1", "pass", checked=n)


def check_tree_image(ctx: Context) -> VerificationReport:
    n = 0
    for t in _terms_upto(ctx, ORDER_LIMIT):
        n += 1
        if is_s_tree(t) != (is_ftp_tree(kappa(t)) is not None):
            return _fail("5.2", term=t)
    return VerificationReport("5.2", "pass", checked=n)


def _preimage_check(prop: str, pred, term_pred):
    def check(ctx: Context) -> VerificationReport:
        n = 0
        for r in _all_orders(ctx, ORDER_LIMIT):
            if not pred(r):
                continue
            n += 1
            t = sterm_of_ftp(r)
            if not term_pred(t) or kappa(t) != r:
                return _fail(prop, relation=r, term=t)
        return VerificationReport(prop, "pass", checked=n)

    return check


def check_L_connected(ctx: Context) -> VerificationReport:
    rng = ctx.rng("5.5")
    orders = list(_all_orders(ctx, ORDER_LIMIT))
    orders += [random_partial_order(ex.NAMES[: rng.randint(5, 6)], rng) for _ in range(ctx.random_count)]
    for r in orders:
        if not connected_under_swaps(linear_extensions(r)):
            return _fail("5.5", relation=r)
    return VerificationReport("5.5", "pass", checked=len(orders))


def _graphs(ctx: Context, tag: str) -> list[Graph]:
    gs = []
    for k in range(1, ctx.n(GRAPH_LIMIT) + 1):
        gs.extend(ex.all_graphs(ex.names(k)))
    rng = ctx.rng(tag)
    for _ in range(ctx.random_count):
        gs.append(ex.random_graph(ex.NAMES[: rng.randint(5, 6)], rng))
    return gs


def check_classes_cover(ctx: Context) -> VerificationReport:
    n = 0
    for g in _graphs(ctx, "5.6"):
        forests = t_forests(g).forests
        for p in permutations(sorted(g.vertices)):
            n += 1
            t = class_of_permutation(g, p)
            if t not in forests or p not in set(linear_extensions(kappa(t))):
                return _fail("5.6", graph=g, permutation=list(p), forest=t)
    return VerificationReport("5.6", "pass", checked=n)


def check_classes_disjoint(ctx: Context) -> VerificationReport:
    n = 0
    for g in _graphs(ctx, "5.7"):
        rep = verify_partition(g)
        n += 1
        if not rep.passed:
            return VerificationReport("5.7", "fail", rep.counterexample)
    return VerificationReport("5.7", "pass", checked=n)


def check_T_one_one(ctx: Context) -> VerificationReport:
    n = 0
    for k in range(1, ctx.n(ORDER_LIMIT) + 1):
        images = {}
        for g in ex.all_graphs(ex.names(k)):
            fs = t_forests(g).forests
            n += 1
            if fs in images or reconstruct_graph(g.vertices, fs) != g:
                return _fail("T-one-one", graph=g)
            if not all(is_forest_of(g, t) for t in fs):
                return _fail("T-one-one", graph=g, reason="membership")
            images[fs] = g
    return VerificationReport("T-one-one", "pass", checked=n)


def check_E_one_one(ctx: Context) -> VerificationReport:
    n = 0
    for k in range(1, ctx.n(RELATION_LIMIT) + 1):
        for r in ex.all_relations(ex.names(k)):
            n += 1
            common = frozenset.intersection(*map_E(r).family)
            if common != r.pairs:
                return _fail("E-one-one", relation=r)
    return VerificationReport("E-one-one", "pass", checked=n)


CHECKS: dict[str, Callable[[Context], VerificationReport]] = {
    "2.1": _closure("2.1", is_partial_order),
    "2.2": _closure("2.2", is_trifunctional),
    "2.3": check_connectivity,
    "2.4": check_unique_components,
    "2.5": check_cancellation,
    "2.6": check_unique_concatenation,
    "3.1": check_k_one_one,
    "3.2": check_prime_split,
    "3.3": check_k_onto,
    "4.1": check_E_sum,
    "4.2": check_P_sum,
    "4.3": check_P_concat,
    "4.4": check_extend_pair,
    "4.5": check_linear_through,
    "4.6": check_L_one_one,
    "4.7": _L_law("4.7", disjoint_union, lambda u, v: shuffle_sum(u, v, "linear-orders")),
    "4.8": _L_law("4.8", concatenation, concat_product),
    "5.1": check_forest_image,
    "5.2": check_tree_image,
    "5.3": _preimage_check("5.3", is_ftp_forest, is_s_forest),
    "5.4": _preimage_check("5.4", lambda r: is_ftp_tree(r) is not None, is_s_tree),
    "5.5": check_L_connected,
    "5.6": check_classes_cover,
    "5.7": check_classes_disjoint,
    "E-one-one": check_E_one_one,
    "T-one-one": check_T_one_one,
}


def run_all(max_n: int = 4, random_count: int = 0, seed: int = 0, only=None) -> list[VerificationReport]:
    ctx = Context(max_n, random_count, seed)
    ids = sorted(only if only is not None else CHECKS)
    return [CHECKS[i](ctx) for i in ids]

"""Relationships: families of relations over a common domain.

Shuffle sum and concatenation product lift ``+`` and ``*`` from relations to
families, and ``map_E``/``map_P``/``map_L`` send a relation to all of its
supersets, partial-order extensions and linear extensions respectively.

Members of a family are stored as bitmasks over ``domain x domain`` (bit
``i*n + j`` for the pair of the i-th and j-th variable in sorted order), which
keeps the exponential families of small domains cheap to build and compare.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Literal, Optional, Sequence

from .errors import BudgetExceeded, DomainOverlap, NotInDomain, NotPartialOrder, PairConflict
from .relations import Pair, Relation, is_partial_order, relation, transitive_closure

Mode = Literal["all", "partial-orders", "linear-orders"]
MODES = ("all", "partial-orders", "linear-orders")

# families of 2^(n^2) members are only built up to this domain size
EXHAUSTIVE_LIMIT = 4


def _encode(dom: tuple[str, ...], pairs: Iterable[Pair]) -> int:
    idx = {v: i for i, v in enumerate(dom)}
    n = len(dom)
    m = 0
    for a, b in pairs:
        m |= 1 << (idx[a] * n + idx[b])
    return m


def _decode(dom: tuple[str, ...], mask: int) -> frozenset[Pair]:
    n = len(dom)
    out = []
    while mask:
        low = mask & -mask
        k = low.bit_length() - 1
        out.append((dom[k // n], dom[k % n]))
        mask ^= low
    return frozenset(out)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        sub = (sub - mask) & mask
        if not sub:
            return


def _mask_is_po(mask: int, n: int) -> bool:
    row = (1 << n) - 1
    succ = [(mask >> (i * n)) & row for i in range(n)]
    for i in range(n):
        s = succ[i]
        if s >> i & 1:
            return False
        t = s
        while t:
            low = t & -t
            j = low.bit_length() - 1
            if succ[j] & ~s:
                return False
            t ^= low
    return True


def _mask_is_linear(mask: int, n: int) -> bool:
    return bin(mask).count("1") == n * (n - 1) // 2 and _mask_is_po(mask, n)


def _mask_sequence(mask: int, n: int) -> list[int]:
    # positions of a linear order, ordered by decreasing number of successors
    row = (1 << n) - 1
    return sorted(range(n), key=lambda i: -bin((mask >> (i * n)) & row).count("1"))


class Relationship:
    """A domain together with a family of pair-sets over it."""

    __slots__ = ("dom", "masks")

    def __init__(self, domain: Iterable[str], family: Iterable[Iterable[Pair]] = ()):
        dom = tuple(sorted(set(domain)))
        ds = set(dom)
        masks = set()
        for member in family:
            member = list(member)
            for a, b in member:
                if a not in ds or b not in ds:
                    raise ValueError(f"pair {(a, b)} not over domain")
            masks.add(_encode(dom, member))
        self.dom = dom
        self.masks = frozenset(masks)

    @classmethod
    def _raw(cls, dom: tuple[str, ...], masks: Iterable[int]) -> Relationship:
        obj = cls.__new__(cls)
        obj.dom = dom
        obj.masks = frozenset(masks)
        return obj

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(self.dom)

    @property
    def family(self) -> frozenset[frozenset[Pair]]:
        return frozenset(_decode(self.dom, m) for m in self.masks)

    def relations(self) -> list[Relation]:
        return [Relation(self.domain, p) for p in self._sorted_members()]

    def _sorted_members(self) -> list[tuple[Pair, ...]]:
        return sorted(tuple(sorted(_decode(self.dom, m))) for m in self.masks)

    def sequences(self) -> list[tuple[str, ...]]:
        """The members as variable sequences; all members must be linear orders."""
        n = len(self.dom)
        out = []
        for m in self.masks:
            if not _mask_is_linear(m, n):
                raise ValueError("family member is not a linear order")
            out.append(tuple(self.dom[i] for i in _mask_sequence(m, n)))
        return sorted(out)

    def __len__(self):
        return len(self.masks)

    def __eq__(self, other):
        if not isinstance(other, Relationship):
            return NotImplemented
        return self.dom == other.dom and self.masks == other.masks

    def __hash__(self):
        return hash((self.dom, self.masks))

    def __repr__(self):
        return f"Relationship(<{len(self.masks)} members>, {{{','.join(self.dom)}}})"

    def to_json(self) -> dict:
        return {
            "domain": list(self.dom),
            "family": [[list(p) for p in member] for member in self._sorted_members()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Relationship:
        try:
            return cls(obj["domain"], ([tuple(p) for p in member] for member in obj["family"]))
        except (KeyError, TypeError) as e:
            raise ValueError(f"malformed relationship JSON: {e}") from e


def singleton(r: Relation) -> Relationship:
    return Relationship(r.domain, [r.pairs])


class _Embedding:
    """Re-indexes masks of two disjoint domains into their union."""

    def __init__(self, x: tuple[str, ...], y: tuple[str, ...]):
        if set(x) & set(y):
            raise DomainOverlap(f"domains share {sorted(set(x) & set(y))}")
        self.x, self.y = x, y
        self.z = tuple(sorted(x + y))
        self.n = len(self.z)
        pos = {v: i for i, v in enumerate(self.z)}
        self._xmap = [pos[v] for v in x]
        self._ymap = [pos[v] for v in y]
        n = self.n
        self.x_times_y = sum(1 << (pos[a] * n + pos[b]) for a in x for b in y)
        self.y_times_x = sum(1 << (pos[b] * n + pos[a]) for a in x for b in y)

    def _lift(self, mask: int, k: int, table: list[int]) -> int:
        out = 0
        for bit in _bits(mask):
            i, j = divmod(bit, k)
            out |= 1 << (table[i] * self.n + table[j])
        return out

    def lift_x(self, mask: int) -> int:
        return self._lift(mask, len(self.x), self._xmap)

    def lift_y(self, mask: int) -> int:
        return self._lift(mask, len(self.y), self._ymap)


def _interleavings(a: Sequence, b: Sequence) -> Iterator[tuple]:
    n = len(a) + len(b)
    for slots in combinations(range(n), len(a)):
        out, ia, ib = [], 0, 0
        chosen = set(slots)
        for k in range(n):
            if k in chosen:
                out.append(a[ia])
                ia += 1
            else:
                out.append(b[ib])
                ib += 1
        yield tuple(out)


def shuffle_sum(u: Relationship, v: Relationship, mode: Mode = "all") -> Relationship:
    """All Q over the union domain whose restrictions lie in ``u`` and ``v``."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    emb = _Embedding(u.dom, v.dom)
    if mode == "all" and emb.n > EXHAUSTIVE_LIMIT:
        raise BudgetExceeded(f"shuffle sum over {emb.n} elements in mode 'all'")
    nx, ny = len(u.dom), len(v.dom)

    if mode == "linear-orders":
        # a shuffle of two linear orders is an interleaving of their sequences
        lx = [[u.dom[i] for i in _mask_sequence(m, nx)] for m in u.masks if _mask_is_linear(m, nx)]
        ly = [[v.dom[i] for i in _mask_sequence(m, ny)] for m in v.masks if _mask_is_linear(m, ny)]
        out = set()
        for a in lx:
            for b in ly:
                for seq in _interleavings(a, b):
                    out.add(_encode(emb.z, ((seq[i], seq[j]) for i in range(len(seq)) for j in range(i + 1, len(seq)))))
        return Relationship._raw(emb.z, out)

    us = [emb.lift_x(m) for m in u.masks if mode == "all" or _mask_is_po(m, nx)]
    vs = [emb.lift_y(m) for m in v.masks if mode == "all" or _mask_is_po(m, ny)]
    cross = emb.x_times_y | emb.y_times_x
    out = set()
    for a in us:
        for b in vs:
            base = a | b
            for c in _submasks(cross):
                q = base | c
                if mode == "all" or _mask_is_po(q, emb.n):
                    out.add(q)
    return Relationship._raw(emb.z, out)


def concat_product(u: Relationship, v: Relationship) -> Relationship:
    emb = _Embedding(u.dom, v.dom)
    xs = [emb.lift_x(m) for m in u.masks]
    ys = [emb.lift_y(m) for m in v.masks]
    return Relationship._raw(emb.z, {a | b | emb.x_times_y for a in xs for b in ys})


def _budget(r: Relation, what: str) -> None:
    if len(r.domain) > EXHAUSTIVE_LIMIT:
        raise BudgetExceeded(f"{what} over {len(r.domain)} elements (limit {EXHAUSTIVE_LIMIT})")


def _require_po(r: Relation) -> None:
    if not is_partial_order(r):
        raise NotPartialOrder(f"{r!r} is not a partial order")


def map_E(r: Relation) -> Relationship:
    """All supersets of ``r.pairs`` inside ``domain x domain``."""
    _budget(r, "map_E")
    dom = tuple(sorted(r.domain))
    n = len(dom)
    base = _encode(dom, r.pairs)
    free = ((1 << (n * n)) - 1) & ~base
    return Relationship._raw(dom, (base | s for s in _submasks(free)))


@lru_cache(maxsize=None)
def _po_masks(n: int) -> tuple[int, ...]:
    offdiag = ((1 << (n * n)) - 1) & ~sum(1 << (i * n + i) for i in range(n))
    return tuple(m for m in _submasks(offdiag) if _mask_is_po(m, n))


def map_P(r: Relation) -> Relationship:
    """All partial orders on the domain containing ``r``."""
    _require_po(r)
    _budget(r, "map_P")
    dom = tuple(sorted(r.domain))
    base = _encode(dom, r.pairs)
    return Relationship._raw(dom, (m for m in _po_masks(len(dom)) if m & base == base))


def linear_extensions(r: Relation) -> list[tuple[str, ...]]:
    """Linear extensions of a partial order as sequences, lexicographically.

    Backtracks by repeatedly choosing a minimal remaining element.
    """
    _require_po(r)
    preds = {v: 0 for v in r.domain}
    succ = r.successors()
    for _, b in r.pairs:
        preds[b] += 1
    names = sorted(r.domain)
    out = []
    prefix = []

    def rec():
        if len(prefix) == len(names):
            out.append(tuple(prefix))
            return
        for v in names:
            if preds[v] == 0:
                preds[v] = -1
                for w in succ[v]:
                    preds[w] -= 1
                prefix.append(v)
                rec()
                prefix.pop()
                for w in succ[v]:
                    preds[w] += 1
                preds[v] = 0

    rec()
    return out


def linear_order(seq: Sequence[str]) -> Relation:
    """The permutation ``seq`` as a linear-order relation."""
    return relation(seq, ((seq[i], seq[j]) for i in range(len(seq)) for j in range(i + 1, len(seq))))


def sequence_of(r: Relation) -> tuple[str, ...]:
    n = len(r.domain)
    succ = r.successors()
    seq = tuple(sorted(r.domain, key=lambda v: -len(succ[v])))
    if [len(succ[v]) for v in seq] != list(range(n - 1, -1, -1)) or not is_partial_order(r):
        raise ValueError(f"{r!r} is not a linear order")
    return seq


def map_L(r: Relation) -> Relationship:
    """All linear extensions of the partial order ``r``."""
    dom = tuple(sorted(r.domain))
    return Relationship._raw(
        dom,
        (_encode(dom, ((s[i], s[j]) for i in range(len(s)) for j in range(i + 1, len(s)))) for s in linear_extensions(r)),
    )


def extend_with_pair(r: Relation, x: str, y: str) -> Relation:
    """Transitive closure of ``r`` plus ``(x, y)``; stays a partial order."""
    _require_po(r)
    for v in (x, y):
        if v not in r.domain:
            raise NotInDomain(f"{v!r} not in domain")
    if x == y or (y, x) in r.pairs:
        raise PairConflict(f"cannot add ({x},{y})")
    return transitive_closure(r.domain, r.pairs | {(x, y)})


def linear_extension_through(r: Relation, x: str, y: str) -> Relation:
    """A linear extension of ``r`` containing ``(x, y)``, by repeated pair additions."""
    cur = extend_with_pair(r, x, y)
    names = sorted(r.domain)
    while True:
        gap = next(
            ((a, b) for a in names for b in names if a < b and (a, b) not in cur.pairs and (b, a) not in cur.pairs),
            None,
        )
        if gap is None:
            return cur
        cur = extend_with_pair(cur, *gap)


def satisfies_q2(q: Relation, r: Relation, s: Relation) -> bool:
    """Whether Q = R' u S' u (X x Y) for some R <= R' <= X^2 and S <= S' <= Y^2."""
    x, y = r.domain, s.domain
    r2 = frozenset(p for p in q.pairs if p[0] in x and p[1] in x)
    s2 = frozenset(p for p in q.pairs if p[0] in y and p[1] in y)
    xy = frozenset((a, b) for a in x for b in y)
    return r.pairs <= r2 and s.pairs <= s2 and q.pairs == r2 | s2 | xy


def find_Q1_not_Q2_witness(r: Relation, s: Relation, partial_orders_only: bool = False) -> Optional[Relation]:
    """Least Q (by bitmask) with R u S u (X x Y) <= Q that fails the
    concatenation-product shape; optionally only partial orders Q."""
    if not r.domain or not s.domain:
        raise ValueError("both domains must be nonempty")
    emb = _Embedding(tuple(sorted(r.domain)), tuple(sorted(s.domain)))
    if emb.n > EXHAUSTIVE_LIMIT:
        raise BudgetExceeded(f"witness search over {emb.n} elements")
    base = _encode(emb.z, r.pairs | s.pairs) | emb.x_times_y
    free = ((1 << (emb.n * emb.n)) - 1) & ~base
    for sub in _submasks(free):
        q = base | sub
        if partial_orders_only and not _mask_is_po(q, emb.n):
            continue
        rel = Relation(frozenset(emb.z), _decode(emb.z, q))
        if not satisfies_q2(rel, r, s):
            return rel
    return None

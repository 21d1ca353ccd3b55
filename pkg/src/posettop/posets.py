"""Finite posets stored by their cover relation.

A poset is kept as an ordered tuple of element labels plus the set of
cover pairs (the transitive reduction of the order).  The full order
relation is recovered lazily as reachability bitmasks, one Python int
per element, which keeps interval extraction, Moebius computation and
chain enumeration fast even for posets with a few thousand elements.

Posets are immutable after construction; every operation returns a new
poset and never mutates its inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Iterator, Mapping, Optional, Sequence


class PosetError(ValueError):
    """Invalid poset input: duplicate labels, unknown labels, or cycles."""


class ImpurePosetError(PosetError):
    """Raised by operations whose precondition requires a pure poset."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeLimitError(RuntimeError):
    """A configurable size cutoff was exceeded."""


class Bound:
    """Fresh bottom/top element label added by :func:`augment`."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return self.name


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def display_label(label: Any) -> str:
    """Canonical human-readable string for a poset element label."""
    if isinstance(label, str):
        return label
    if isinstance(label, bool):
        return str(label)
    if isinstance(label, int):
        return str(label)
    if isinstance(label, Bound):
        return label.name
    if isinstance(label, tuple):
        return "(" + ",".join(display_label(x) for x in label) + ")"
    if isinstance(label, (frozenset, set)):
        inner = sorted(display_label(x) for x in label)
        return "{" + ",".join(inner) + "}"
    return repr(label)


class Poset:
    """Immutable finite poset.

    ``labels`` fixes the internal element indices; ``covers`` holds index
    pairs ``(i, j)`` meaning ``labels[i]`` is covered by ``labels[j]``.
    Use :func:`build_poset` to construct from raw relations.
    """

    __slots__ = (
        "labels",
        "covers",
        "_index",
        "_up_adj",
        "_down_adj",
        "_above",
        "_below",
        "_topo",
        "_rank_result",
    )

    def __init__(self, labels: Sequence[Hashable], covers: Iterable[tuple[int, int]],
                 _validated: bool = False):
        labels = tuple(labels)
        covers = tuple(sorted(set(covers)))
        index = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise PosetError(f"duplicate label: {display_label(lab)!r}")
            index[lab] = i
        n = len(labels)
        up = [[] for _ in range(n)]
        down = [[] for _ in range(n)]
        for (i, j) in covers:
            if not (0 <= i < n and 0 <= j < n):
                raise PosetError(f"cover pair ({i},{j}) out of range")
            if i == j:
                raise PosetError(f"cycle in the relation at {display_label(labels[i])!r}")
            up[i].append(j)
            down[j].append(i)
        self.labels = labels
        self.covers = covers
        self._index = index
        self._up_adj = [tuple(a) for a in up]
        self._down_adj = [tuple(a) for a in down]
        self._above = None
        self._below = None
        self._topo = None
        self._rank_result = None
        if not _validated:
            self._validate()

    # -- basic protocol ------------------------------------------------

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self._index

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.labels == other.labels and self.covers == other.covers

    def __hash__(self):
        return hash((self.labels, self.covers))

    def __repr__(self):
        return f"Poset({len(self)} elements, {len(self.covers)} covers)"

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise PosetError(f"unknown label: {display_label(label)!r}") from None

    # -- derived structure ---------------------------------------------

    def topo_order(self) -> tuple[int, ...]:
        """Indices in some linear extension (smaller elements first)."""
        if self._topo is None:
            n = len(self.labels)
            indeg = [len(self._down_adj[i]) for i in range(n)]
            stack = [i for i in range(n) if indeg[i] == 0]
            order = []
            while stack:
                i = stack.pop()
                order.append(i)
                for j in self._up_adj[i]:
                    indeg[j] -= 1
                    if indeg[j] == 0:
                        stack.append(j)
            if len(order) != n:
                raise PosetError("cycle in the relation")
            self._topo = tuple(order)
        return self._topo

    def above_masks(self) -> list[int]:
        """``above_masks()[i]`` has bit ``j`` set iff ``labels[i] < labels[j]``."""
        if self._above is None:
            order = self.topo_order()
            masks = [0] * len(self.labels)
            for i in reversed(order):
                acc = 0
                for j in self._up_adj[i]:
                    acc |= masks[j] | (1 << j)
                masks[i] = acc
            self._above = masks
        return self._above

    def below_masks(self) -> list[int]:
        if self._below is None:
            order = self.topo_order()
            masks = [0] * len(self.labels)
            for i in order:
                acc = 0
                for j in self._down_adj[i]:
                    acc |= masks[j] | (1 << j)
                masks[i] = acc
            self._below = masks
        return self._below

    def less(self, x, y) -> bool:
        """Strict order comparison on labels."""
        i, j = self.index(x), self.index(y)
        return bool(self.above_masks()[i] >> j & 1)

    def leq(self, x, y) -> bool:
        return x == y or self.less(x, y)

    def upper_covers(self, x) -> tuple:
        return tuple(self.labels[j] for j in self._up_adj[self.index(x)])

    def lower_covers(self, x) -> tuple:
        return tuple(self.labels[j] for j in self._down_adj[self.index(x)])

    def minimal_elements(self) -> tuple:
        return tuple(self.labels[i] for i in range(len(self.labels))
                     if not self._down_adj[i])

    def maximal_elements(self) -> tuple:
        return tuple(self.labels[i] for i in range(len(self.labels))
                     if not self._up_adj[i])

    def cover_pairs(self) -> tuple:
        """Cover relation as label pairs ``(lower, upper)``."""
        return tuple((self.labels[i], self.labels[j]) for (i, j) in self.covers)

    # -- validation ------------------------------------------------------

    def _validate(self):
        self.topo_order()  # raises on cycles
        above = self.above_masks()
        for (i, j) in self.covers:
            reach2 = 0
            for k in self._up_adj[i]:
                reach2 |= above[k]
            if reach2 >> j & 1:
                raise PosetError(
                    f"covers are not transitively reduced: "
                    f"({display_label(self.labels[i])!r}, {display_label(self.labels[j])!r}) "
                    f"is implied by other covers")


@dataclass(frozen=True)
class RankInfo:
    """Rank function of a pure poset.

    Minimal elements get rank 0, every cover step raises rank by one,
    and ``top_rank`` is the common length of all maximal chains.
    """

    rank: Mapping[Hashable, int]
    top_rank: int

    def rank_set(self) -> frozenset[int]:
        return frozenset(self.rank.values())


@dataclass(frozen=True)
class PurityFailure:
    """Report of an impure poset: two maximal chains of different lengths."""

    chain_a: tuple
    chain_b: tuple

    def __bool__(self):
        return False

    @property
    def message(self):
        return (f"maximal chains of lengths {len(self.chain_a) - 1} and "
                f"{len(self.chain_b) - 1}: {self.chain_a} vs {self.chain_b}")


def build_poset(labels: Sequence[Hashable],
                cover_pairs: Iterable[tuple[Hashable, Hashable]]) -> Poset:
    """Build and validate a poset from labels and (lower, upper) pairs.

    Redundant pairs (those implied by transitivity) are dropped; cycles
    and duplicate or unknown labels raise :class:`PosetError`.

    >>> P = build_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    >>> P.less("a", "c")
    True
    """
    labels = tuple(labels)
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise PosetError(f"duplicate label: {display_label(lab)!r}")
        index[lab] = i
    n = len(labels)
    edges = set()
    for (a, b) in cover_pairs:
        if a not in index:
            raise PosetError(f"unknown label: {display_label(a)!r}")
        if b not in index:
            raise PosetError(f"unknown label: {display_label(b)!r}")
        i, j = index[a], index[b]
        if i == j:
            raise PosetError(f"cycle in the relation at {display_label(a)!r}")
        edges.add((i, j))

    up = [[] for _ in range(n)]
    indeg = [0] * n
    for (i, j) in edges:
        up[i].append(j)
        indeg[j] += 1
    stack = [i for i in range(n) if indeg[i] == 0]
    order = []
    tmp = indeg[:]
    while stack:
        i = stack.pop()
        order.append(i)
        for j in up[i]:
            tmp[j] -= 1
            if tmp[j] == 0:
                stack.append(j)
    if len(order) != n:
        stuck = sorted(set(range(n)) - set(order))
        names = ", ".join(display_label(labels[i]) for i in stuck[:4])
        raise PosetError(f"cycle in the relation involving: {names}")

    # reachability from the raw edge set, used to drop redundant pairs
    masks = [0] * n
    for i in reversed(order):
        acc = 0
        for j in up[i]:
            acc |= masks[j] | (1 << j)
        masks[i] = acc
    reduced = []
    for (i, j) in edges:
        via2 = 0
        for k in up[i]:
            if k != j:
                via2 |= masks[k]
        if not (via2 >> j & 1):
            reduced.append((i, j))
    return Poset(labels, reduced, _validated=True)


def rank_info(P: Poset):
    """Rank data of ``P`` if pure, else a :class:`PurityFailure` witness.

    The failure report names two maximal chains of different lengths.
    Raises :class:`PosetError` on the empty poset (pure by convention,
    but with no rank data).
    """
    if len(P) == 0:
        raise PosetError("rank_info is undefined on the empty poset")
    if P._rank_result is not None:
        return P._rank_result
    order = P.topo_order()
    n = len(P.labels)
    level = [0] * n
    for i in order:
        if P._down_adj[i]:
            level[i] = 1 + max(level[j] for j in P._down_adj[i])
    top = max(level)

    def chain_down_from(i):
        # longest saturated chain ending at i, as a label tuple
        out = [i]
        while P._down_adj[i]:
            i = max(P._down_adj[i], key=lambda j: level[j])
            out.append(i)
        return out[::-1]

    def chain_up_from(i):
        out = []
        while P._up_adj[i]:
            i = P._up_adj[i][0]
            out.append(i)
        return out

    result = None
    for (i, j) in P.covers:
        if level[j] != level[i] + 1:
            # two maximal chains through (i, j) of different lengths
            tail = chain_up_from(j)
            a = chain_down_from(j) + tail
            b = chain_down_from(i) + [j] + tail
            result = PurityFailure(tuple(P.labels[k] for k in a),
                                   tuple(P.labels[k] for k in b))
            break
    if result is None:
        tops = [i for i in range(n) if not P._up_adj[i]]
        short = min(tops, key=lambda i: level[i])
        if level[short] != top:
            tall = max(tops, key=lambda i: level[i])
            result = PurityFailure(tuple(P.labels[k] for k in chain_down_from(tall)),
                                   tuple(P.labels[k] for k in chain_down_from(short)))
    if result is None:
        result = RankInfo({P.labels[i]: level[i] for i in range(n)}, top)
    P._rank_result = result
    return result


def require_rank_info(P: Poset) -> RankInfo:
    """Rank data of ``P``; raises :class:`ImpurePosetError` when impure."""
    info = rank_info(P)
    if isinstance(info, PurityFailure):
        raise ImpurePosetError("poset is not pure: " + info.message, witness=info)
    return info


def is_pure(P: Poset) -> bool:
    if len(P) == 0:
        return True
    return isinstance(rank_info(P), RankInfo)


def induced_subposet(P: Poset, members: Iterable[Hashable]) -> Poset:
    """Induced subposet of ``P`` on ``members`` (order inherited)."""
    idx = [P.index(x) for x in members]
    seen = set()
    for i in idx:
        if i in seen:
            raise PosetError(f"duplicate label: {display_label(P.labels[i])!r}")
        seen.add(i)
    return _induced_by_indices(P, idx)


def _induced_by_indices(P: Poset, idx: Sequence[int]) -> Poset:
    sub_mask = 0
    for i in idx:
        sub_mask |= 1 << i
    pos = {i: k for k, i in enumerate(idx)}
    above = P.above_masks()
    below = P.below_masks()
    covers = []
    for i in idx:
        up_here = above[i] & sub_mask
        for j in iter_bits(up_here):
            if not (above[i] & below[j] & sub_mask):
                covers.append((pos[i], pos[j]))
    labels = tuple(P.labels[i] for i in idx)
    return Poset(labels, covers, _validated=True)


def open_interval(P: Poset, x, y) -> Poset:
    """Induced subposet on ``{z : x < z < y}``.  Requires ``x <= y``."""
    i, j = P.index(x), P.index(y)
    if i != j and not (P.above_masks()[i] >> j & 1):
        raise PosetError(f"{display_label(x)!r} is not below {display_label(y)!r}")
    between = P.above_masks()[i] & P.below_masks()[j]
    return _induced_by_indices(P, list(iter_bits(between)))


def closed_interval(P: Poset, x, y) -> Poset:
    """Induced subposet on ``{z : x <= z <= y}``.  Requires ``x <= y``."""
    i, j = P.index(x), P.index(y)
    if i != j and not (P.above_masks()[i] >> j & 1):
        raise PosetError(f"{display_label(x)!r} is not below {display_label(y)!r}")
    between = (P.above_masks()[i] & P.below_masks()[j]) | (1 << i) | (1 << j)
    return _induced_by_indices(P, list(iter_bits(between)))


def augment(P: Poset) -> Poset:
    """Adjoin a fresh bottom and top element, even if ``P`` is bounded."""
    bot, top = Bound("0^"), Bound("1^")
    n = len(P.labels)
    labels = (bot,) + P.labels + (top,)
    covers = [(i + 1, j + 1) for (i, j) in P.covers]
    mins = [i for i in range(n) if not P._down_adj[i]]
    maxs = [i for i in range(n) if not P._up_adj[i]]
    covers.extend((0, i + 1) for i in mins)
    covers.extend((i + 1, n + 1) for i in maxs)
    if n == 0:
        covers.append((0, 1))
    return Poset(labels, covers, _validated=True)


def bounds(P: Poset):
    """The (bottom, top) pair of a bounded poset; error if not bounded."""
    mins = P.minimal_elements()
    maxs = P.maximal_elements()
    if len(mins) != 1 or len(maxs) != 1 or len(P) == 0:
        raise PosetError("poset is not bounded")
    return mins[0], maxs[0]


def mobius(P: Poset, x=None, y=None) -> int:
    """Moebius function value ``mu(x, y)``.

    With no pair given, ``P`` must be bounded and the value over the
    whole poset ``mu(bottom, top)`` is returned.

    >>> P = build_poset([0, 1], [(0, 1)])
    >>> mobius(P, 0, 1)
    -1
    """
    if x is None and y is None:
        x, y = bounds(P)
    i, j = P.index(x), P.index(y)
    if i == j:
        return 1
    above = P.above_masks()
    if not (above[i] >> j & 1):
        raise PosetError(f"{display_label(x)!r} is not below {display_label(y)!r}")
    interval = (above[i] & P.below_masks()[j]) | (1 << i) | (1 << j)
    topo_pos = {v: k for k, v in enumerate(P.topo_order())}
    members = sorted(iter_bits(interval), key=topo_pos.__getitem__)
    mu = {i: 1}
    below = P.below_masks()
    for z in members[1:]:
        s = 0
        for w in iter_bits(below[z] & interval):
            s += mu[w]
        mu[z] = -s
    return mu[j]


def dual(P: Poset) -> Poset:
    """Same elements, reversed order."""
    return Poset(P.labels, [(j, i) for (i, j) in P.covers], _validated=True)


# -- isomorphism -------------------------------------------------------


def _joint_refine_colors(P: Poset, Q: Poset) -> tuple[list[int], list[int]]:
    """Neighbourhood color refinement with a table shared by both posets,
    so equal color numbers mean equal invariants across P and Q."""

    def start(R):
        return [(len(R._down_adj[i]), len(R._up_adj[i])) for i in range(len(R.labels))]

    def step(R, colors, table):
        new = []
        for i in range(len(R.labels)):
            sig = (colors[i],
                   tuple(sorted(colors[j] for j in R._down_adj[i])),
                   tuple(sorted(colors[j] for j in R._up_adj[i])))
            new.append(table.setdefault(sig, len(table)))
        return new

    table0: dict = {}
    cp = [table0.setdefault(s, len(table0)) for s in start(P)]
    cq = [table0.setdefault(s, len(table0)) for s in start(Q)]
    for _ in range(max(len(P.labels), len(Q.labels), 1)):
        table: dict = {}
        np_ = step(P, cp, table)
        nq = step(Q, cq, table)
        if np_ == cp and nq == cq:
            break
        cp, cq = np_, nq
    return cp, cq


def _refine_colors(P: Poset) -> list[int]:
    """Isomorphism-invariant colors of a single poset (for hashing keys)."""
    return _joint_refine_colors(P, P)[0]


def find_isomorphism(P: Poset, Q: Poset, size_limit: int = 512) -> Optional[dict]:
    """Order isomorphism ``P -> Q`` as a label dict, or ``None``.

    Backtracking search after color refinement; intended for desk-scale
    posets.  Raises :class:`SizeLimitError` above ``size_limit`` elements.
    """
    if len(P) != len(Q):
        return None
    if len(P) > size_limit:
        raise SizeLimitError(
            f"isomorphism search limited to {size_limit} elements, got {len(P)}")
    if len(P.covers) != len(Q.covers):
        return None
    cp, cq = _joint_refine_colors(P, Q)
    if sorted(cp) != sorted(cq):
        return None
    n = len(P)
    q_by_color = {}
    for j in range(n):
        q_by_color.setdefault(cq[j], []).append(j)
    # assign rarest colors first
    order = sorted(range(n), key=lambda i: (len(q_by_color[cp[i]]), i))
    p_above = P.above_masks()
    q_above = Q.above_masks()
    img = [-1] * n
    used = [False] * n

    def ok(i, j, assigned):
        for i2 in assigned:
            j2 = img[i2]
            if (p_above[i] >> i2 & 1) != (q_above[j] >> j2 & 1):
                return False
            if (p_above[i2] >> i & 1) != (q_above[j2] >> j & 1):
                return False
        return True

    assigned = []

    def search(k):
        if k == n:
            return True
        i = order[k]
        for j in q_by_color[cp[i]]:
            if used[j]:
                continue
            if ok(i, j, assigned):
                img[i] = j
                used[j] = True
                assigned.append(i)
                if search(k + 1):
                    return True
                assigned.pop()
                used[j] = False
                img[i] = -1
        return False

    if not search(0):
        return None
    return {P.labels[i]: Q.labels[img[i]] for i in range(n)}


def is_isomorphic(P: Poset, Q: Poset, size_limit: int = 512) -> bool:
    return find_isomorphism(P, Q, size_limit=size_limit) is not None


# -- poset maps --------------------------------------------------------


class PosetMap:
    """Order-preserving map from a poset to the naturals or to a poset.

    ``target`` is a :class:`Poset` or ``None`` for the natural-number
    chain.  ``strict`` records whether the map was verified strict
    (``x < y`` implies ``f(x) < f(y)``).
    """

    __slots__ = ("source", "target", "values", "strict")

    def __init__(self, source: Poset, values: Mapping, target: Optional[Poset] = None):
        self.source = source
        self.target = target
        vals = {}
        for x in source.labels:
            if x not in values:
                raise PosetError(f"map misses element {display_label(x)!r}")
            vals[x] = values[x]
        self.values = vals
        strict = True
        for (i, j) in source.covers:
            a, b = vals[source.labels[i]], vals[source.labels[j]]
            if target is None:
                if not (isinstance(a, int) and isinstance(b, int) and a >= 0 and b >= 0):
                    raise PosetError("map into the naturals must take values in N")
                if a > b:
                    raise PosetError("map is not order-preserving")
                strict = strict and a < b
            else:
                if not target.leq(a, b):
                    raise PosetError("map is not order-preserving")
                strict = strict and a != b
        if target is None:
            for x in source.labels:
                v = vals[x]
                if not (isinstance(v, int) and v >= 0):
                    raise PosetError("map into the naturals must take values in N")
        self.strict = strict

    def __call__(self, x):
        return self.values[x]

    def image(self) -> frozenset:
        return frozenset(self.values.values())


def rank_map(P: Poset) -> PosetMap:
    """The rank function of a pure poset, as a map into the naturals."""
    info = require_rank_info(P)
    return PosetMap(P, dict(info.rank))


# -- serialization ------------------------------------------------------


def poset_to_data(P: Poset) -> dict:
    """JSON-ready dict ``{"elements": [...], "covers": [[a, b], ...]}``."""
    names = [display_label(x) for x in P.labels]
    if len(set(names)) != len(names):
        raise PosetError("element display labels collide; cannot serialize")
    covers = sorted((names[i], names[j]) for (i, j) in P.covers)
    return {"elements": names, "covers": [list(c) for c in covers]}


def poset_from_data(data: Mapping) -> Poset:
    try:
        elements = data["elements"]
        covers = data["covers"]
    except (KeyError, TypeError):
        raise PosetError('poset JSON needs "elements" and "covers"') from None
    return build_poset(list(elements), [(a, b) for (a, b) in covers])


def poset_to_json(P: Poset) -> str:
    return json.dumps(poset_to_data(P), separators=(", ", ": ")) + "\n"


def poset_from_json(text: str) -> Poset:
    return poset_from_data(json.loads(text))

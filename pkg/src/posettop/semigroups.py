"""Homogeneous affine semigroups, their divisibility posets, and the
poset-theoretic Koszul test.

A semigroup is given by generator vectors in N^d together with an
integer weight vector ``w`` and a positive scale ``s`` such that
``w . g = s`` for every generator; the degree of an element is then
``w . x / s``, an exact integer.  All generators have degree one, so
membership and interval structure come from layered enumeration:
degree-m elements are sums of a degree-(m-1) element and a generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .posets import (
    Poset,
    PosetError,
    SizeLimitError,
    induced_subposet,
    _refine_colors,
    find_isomorphism,
)

DEFAULT_LAYER_CAP = 200_000


class SemigroupError(ValueError):
    pass


Vector = tuple[int, ...]


def _vec(x: Iterable[int], dim: int, what: str) -> Vector:
    v = tuple(int(a) for a in x)
    if len(v) != dim:
        raise SemigroupError(f"{what} has length {len(v)}, expected {dim}")
    return v


def _add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


class HomogeneousSemigroup:
    """Affine semigroup whose minimal generators share degree one."""

    __slots__ = ("dim", "generators", "weight", "scale", "_layers", "_layer_sets",
                 "layer_cap")

    def __init__(self, dim: int, generators: Sequence[Vector], weight: Vector,
                 scale: int, layer_cap: int = DEFAULT_LAYER_CAP):
        self.dim = dim
        self.generators = tuple(sorted(set(generators)))
        self.weight = weight
        self.scale = scale
        self.layer_cap = layer_cap
        zero = (0,) * dim
        self._layers: list[list[Vector]] = [[zero]]
        self._layer_sets: list[set] = [{zero}]

    def __repr__(self):
        return (f"HomogeneousSemigroup(dim={self.dim}, "
                f"{len(self.generators)} generators)")

    def degree(self, x: Iterable[int]) -> int:
        v = _vec(x, self.dim, "element")
        dot = sum(w * a for w, a in zip(self.weight, v))
        q, r = divmod(dot, self.scale)
        if r:
            raise SemigroupError(f"{v} has non-integral degree {dot}/{self.scale}")
        return q

    def enumerate_up_to(self, r: int) -> list[list[Vector]]:
        """Complete, duplicate-free layers of elements of degree 0..r."""
        if r < 0:
            raise SemigroupError("need r >= 0")
        while len(self._layers) <= r:
            prev = self._layers[-1]
            nxt = set()
            for x in prev:
                for g in self.generators:
                    nxt.add(_add(x, g))
            if len(nxt) > self.layer_cap:
                raise SizeLimitError(
                    f"layer {len(self._layers)} has {len(nxt)} elements, "
                    f"cap is {self.layer_cap}")
            self._layers.append(sorted(nxt))
            self._layer_sets.append(nxt)
        return [list(layer) for layer in self._layers[:r + 1]]

    def layer_set(self, m: int) -> set:
        self.enumerate_up_to(m)
        return self._layer_sets[m]

    def contains(self, x: Iterable[int], degree_hint: Optional[int] = None) -> bool:
        """Membership, decided by enumeration up to the element's degree."""
        v = _vec(x, self.dim, "element")
        if any(a < 0 for a in v):
            return False
        try:
            m = self.degree(v) if degree_hint is None else degree_hint
        except SemigroupError:
            return False
        if m < 0:
            return False
        return v in self.layer_set(m)


def build_semigroup(generators: Iterable[Iterable[int]],
                    weight: Iterable[int] | None = None,
                    scale: int | None = None,
                    layer_cap: int = DEFAULT_LAYER_CAP) -> HomogeneousSemigroup:
    """Validated homogeneous semigroup from generators and a degree
    functional ``(weight, scale)`` with ``weight . g = scale > 0`` for
    every generator.

    Without an explicit functional, the all-ones weight is used and the
    common coordinate sum of the generators is the scale.

    >>> N2 = build_semigroup([(1, 0), (0, 1)])
    >>> N2.degree((2, 3))
    5
    """
    gens = [tuple(int(a) for a in g) for g in generators]
    if not gens:
        raise SemigroupError("need at least one generator")
    dim = len(gens[0])
    seen = set()
    for g in gens:
        if len(g) != dim:
            raise SemigroupError("generators of mixed dimension")
        if any(a < 0 for a in g):
            raise SemigroupError(f"generator {g} has a negative coordinate")
        if not any(g):
            raise SemigroupError("zero generator")
        if g in seen:
            raise SemigroupError(f"duplicate generator {g}")
        seen.add(g)
    if weight is None:
        weight = (1,) * dim
    weight = _vec(weight, dim, "weight")
    values = [sum(w * a for w, a in zip(weight, g)) for g in gens]
    if scale is None:
        scale = values[0]
    if scale <= 0:
        raise SemigroupError(f"degree scale must be positive, got {scale}")
    bad = [v for v in values if v != scale]
    if bad:
        raise SemigroupError(
            f"generators are not homogeneous: functional values "
            f"{sorted(set(values))} (scaled degrees differ)")
    return HomogeneousSemigroup(dim, gens, weight, scale, layer_cap=layer_cap)


def natural_semigroup(d: int) -> HomogeneousSemigroup:
    """N^d with the unit vectors as generators."""
    if d < 1:
        raise SemigroupError("need d >= 1")
    gens = [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]
    return build_semigroup(gens)


def punctured_veronese_semigroup(d: int) -> HomogeneousSemigroup:
    """Semigroup generated by all degree-d vectors in N^d except the
    all-ones vector (the d-th Veronese of N^d with its squarefree
    generator removed).

    >>> len(punctured_veronese_semigroup(3).generators)
    9
    """
    if d < 2:
        raise SemigroupError("need d >= 2")
    import itertools
    gens = []
    ones = (1,) * d
    for comp in itertools.combinations_with_replacement(range(d), d):
        v = [0] * d
        for i in comp:
            v[i] += 1
        v = tuple(v)
        if v != ones:
            gens.append(v)
    return build_semigroup(sorted(set(gens)), weight=(1,) * d, scale=d)


def lower_interval(S: HomogeneousSemigroup, element: Iterable[int]) -> Poset:
    """Divisibility interval [0, element] as a poset; elements are the
    semigroup members below ``element``, covers add one generator."""
    lam = _vec(element, S.dim, "element")
    deg = S.degree(lam)
    if deg < 0 or not S.contains(lam, degree_hint=deg):
        raise SemigroupError(f"{lam} is not reached by enumeration")
    members = []
    for m in range(deg + 1):
        for mu in S.enumerate_up_to(deg)[m]:
            diff = _sub(lam, mu)
            if all(a >= 0 for a in diff) and S.contains(diff, degree_hint=deg - m):
                members.append(mu)
    member_set = set(members)
    labels = sorted(member_set, key=lambda v: (S.degree(v), v))
    covers = []
    for mu in labels:
        for g in S.generators:
            nu = _add(mu, g)
            if nu in member_set:
                covers.append((mu, nu))
    pos = {v: i for i, v in enumerate(labels)}
    return Poset(tuple(labels), [(pos[a], pos[b]) for (a, b) in covers],
                 _validated=True)


def open_interval_below(S: HomogeneousSemigroup, element: Iterable[int]) -> Poset:
    """The open interval (0, element) inside the divisibility order."""
    P = lower_interval(S, element)
    lam = _vec(element, S.dim, "element")
    zero = (0,) * S.dim
    inner = [x for x in P.labels if x not in (zero, lam)]
    return induced_subposet(P, inner)


# -- Koszul necessary condition -------------------------------------------


@dataclass(frozen=True)
class KoszulReport:
    """Outcome of the interval test up to a rank bound.

    ``passed`` means every open interval (0, x) with deg x <= max_rank
    is pure with homology concentrated in dimension deg(x) - 2 over the
    chosen coefficients: the poset criterion for Koszulness, verified up
    to the bound.  This is a necessary condition only; no finite bound
    certifies Koszulness.
    """

    passed: bool
    max_rank: int
    coefficients: str
    witness: Optional[tuple] = None  # (element, detail)
    elements_checked: int = 0
    homology_runs: int = 0

    def describe(self) -> str:
        if self.passed:
            return (f"consistent with Koszul up to rank {self.max_rank} "
                    f"over {self.coefficients} ({self.elements_checked} intervals, "
                    f"{self.homology_runs} homology runs)")
        x, detail = self.witness
        return f"fails at {x}: {detail}"


def koszul_necessary_test(S: HomogeneousSemigroup, max_rank: int,
                          coeffs="Q") -> KoszulReport:
    """Test the Koszul interval criterion for all elements of degree at
    most ``max_rank`` (which must be at least 2).

    Isomorphic intervals are deduplicated before homology is computed.
    """
    from .cohen_macaulay import cm_coefficient_name, parse_cm_coefficients, SPHERICAL
    from .complexes import order_complex
    from .homology import integral_homology
    from .posets import PurityFailure, rank_info

    if max_rank < 2:
        raise SemigroupError("need max_rank >= 2")
    mode = parse_cm_coefficients(coeffs)
    name = cm_coefficient_name(coeffs)
    layers = S.enumerate_up_to(max_rank)
    checked = 0
    runs = 0
    cache: dict = {}
    for m in range(2, max_rank + 1):
        for lam in layers[m]:
            checked += 1
            P = open_interval_below(S, lam)
            if len(P) == 0:
                return KoszulReport(False, max_rank, name,
                                    witness=(lam, "empty open interval"),
                                    elements_checked=checked, homology_runs=runs)
            info = rank_info(P)
            if isinstance(info, PurityFailure):
                return KoszulReport(False, max_rank, name,
                                    witness=(lam, "impure interval: " + info.message),
                                    elements_checked=checked, homology_runs=runs)
            key = (len(P.labels), len(P.covers), tuple(sorted(_refine_colors(P))))
            summary = None
            for (Q, s) in cache.get(key, ()):
                if find_isomorphism(P, Q) is not None:
                    summary = s
                    break
            if summary is None:
                summary = integral_homology(order_complex(P))
                cache.setdefault(key, []).append((P, summary))
                runs += 1
            d = m - 2
            if mode == SPHERICAL:
                ok = summary.concentrated_in(d) and summary.is_free()
                detail = str(summary)
            else:
                bad = [i for i in range(len(summary.groups) + 1)
                       if i != d and summary.field_betti(i, mode)]
                ok = not bad
                detail = (f"homology in dimensions {bad} over {name}, "
                          f"expected concentration in {d}") if bad else ""
            if not ok:
                return KoszulReport(False, max_rank, name, witness=(lam, detail),
                                    elements_checked=checked, homology_runs=runs)
    return KoszulReport(True, max_rank, name,
                        elements_checked=checked, homology_runs=runs)


# -- gradings and product semigroups ---------------------------------------


@dataclass(frozen=True)
class GradingMap:
    """Linear grading of a semigroup: ``g(x) = weight . x``, positive on
    every generator (hence on every nonzero element)."""

    weight: Vector

    def __call__(self, x: Iterable[int]) -> int:
        return sum(w * a for w, a in zip(self.weight, x))


def grading_map(S: HomogeneousSemigroup, weight: Iterable[int]) -> GradingMap:
    w = _vec(weight, S.dim, "grading weight")
    for g in S.generators:
        if sum(a * b for a, b in zip(w, g)) <= 0:
            raise SemigroupError(
                f"grading is not positive on generator {g}")
    return GradingMap(w)


class SegreSemigroupView:
    """Lazy weighted Segre product of two semigroups.

    Elements are the pairs ``(x, y)`` with ``deg(x) = g(y)``; the view
    enumerates them by the degree of the second coordinate and builds
    divisibility intervals without materializing product generators.
    """

    def __init__(self, first: HomogeneousSemigroup, second: HomogeneousSemigroup,
                 grading: GradingMap):
        self.first = first
        self.second = second
        self.grading = grading

    def degree(self, pair) -> int:
        return self.second.degree(pair[1])

    def contains(self, pair) -> bool:
        x, y = pair
        x = _vec(x, self.first.dim, "first coordinate")
        y = _vec(y, self.second.dim, "second coordinate")
        if not self.second.contains(y):
            return False
        gx = self.grading(y)
        return self.first.degree(x) == gx if self.first.contains(x) else False

    def enumerate_up_to(self, r: int) -> list[list[tuple[Vector, Vector]]]:
        layers = []
        second_layers = self.second.enumerate_up_to(r)
        for m in range(r + 1):
            layer = []
            for y in second_layers[m]:
                gy = self.grading(y)
                for x in self.first.enumerate_up_to(gy)[gy]:
                    layer.append((x, y))
            layers.append(sorted(layer))
        return layers

    def lower_interval(self, pair) -> Poset:
        lam = _vec(pair[0], self.first.dim, "first coordinate")
        gam = _vec(pair[1], self.second.dim, "second coordinate")
        if not self.contains((lam, gam)):
            raise SemigroupError(f"({lam}, {gam}) is not in the Segre product")
        deg = self.second.degree(gam)
        members = []
        for m in range(deg + 1):
            for y in self.second.enumerate_up_to(deg)[m]:
                ydiff = _sub(gam, y)
                if any(a < 0 for a in ydiff) or not self.second.contains(ydiff):
                    continue
                gy = self.grading(y)
                for x in self.first.enumerate_up_to(gy)[gy]:
                    xdiff = _sub(lam, x)
                    if all(a >= 0 for a in xdiff) and self.first.contains(xdiff):
                        members.append((x, y))
        member_set = set(members)
        labels = sorted(member_set,
                        key=lambda p: (self.second.degree(p[1]), p))
        # covers: one-step drops in the second-coordinate degree
        by_degree: dict[int, list] = {}
        for p in labels:
            by_degree.setdefault(self.second.degree(p[1]), []).append(p)
        covers = []
        for m, layer in sorted(by_degree.items()):
            for (x, y) in layer:
                for (x2, y2) in by_degree.get(m + 1, ()):
                    dx = _sub(x2, x)
                    dy = _sub(y2, y)
                    if any(a < 0 for a in dx) or any(a < 0 for a in dy):
                        continue
                    if self.second.contains(dy) and self.first.contains(dx) \
                            and self.first.degree(dx) == self.grading(dy):
                        covers.append(((x, y), (x2, y2)))
        pos = {p: i for i, p in enumerate(labels)}
        return Poset(tuple(labels), [(pos[a], pos[b]) for (a, b) in covers],
                     _validated=True)


def segre_semigroup(first: HomogeneousSemigroup, second: HomogeneousSemigroup,
                    grading: GradingMap | Iterable[int]) -> SegreSemigroupView:
    """Weighted Segre product view: pairs where the first coordinate's
    degree equals the grading of the second."""
    if not isinstance(grading, GradingMap):
        grading = grading_map(second, grading)
    else:
        for g in second.generators:
            if grading(g) <= 0:
                raise SemigroupError(f"grading is not positive on generator {g}")
    return SegreSemigroupView(first, second, grading)


def rees_semigroup(first: HomogeneousSemigroup,
                   second: HomogeneousSemigroup) -> HomogeneousSemigroup:
    """Rees product semigroup: generated by ``(a, 0)`` and ``(a, b)`` for
    degree-one ``a`` and ``b``; graded by the first coordinate's degree."""
    d, e = first.dim, second.dim
    zero2 = (0,) * e
    gens = [a + zero2 for a in first.generators]
    gens += [a + b for a in first.generators for b in second.generators]
    weight = first.weight + (0,) * e
    return build_semigroup(gens, weight=weight, scale=first.scale)


def split_pair(v: Vector, d: int) -> tuple[Vector, Vector]:
    """Split a concatenated product vector back into its two halves."""
    return tuple(v[:d]), tuple(v[d:])


# -- serialization ---------------------------------------------------------


def semigroup_to_data(S: HomogeneousSemigroup) -> dict:
    return {"dim": S.dim, "generators": [list(g) for g in S.generators],
            "weight": list(S.weight), "scale": S.scale}


def semigroup_from_data(data) -> HomogeneousSemigroup:
    try:
        return build_semigroup([tuple(g) for g in data["generators"]],
                               weight=tuple(data["weight"]),
                               scale=int(data["scale"]))
    except (KeyError, TypeError):
        raise SemigroupError(
            'semigroup JSON needs "dim", "generators", "weight", "scale"') from None


def semigroup_to_json(S: HomogeneousSemigroup) -> str:
    import json
    return json.dumps(semigroup_to_data(S), separators=(", ", ": ")) + "\n"


def semigroup_from_json(text: str) -> HomogeneousSemigroup:
    import json
    return semigroup_from_data(json.loads(text))

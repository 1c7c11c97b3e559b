"""Path graphs, Golay pairs, complementary sets of size 2^(k+1), and the
coset representatives built from per-restriction paths."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .correlation import is_complementary_set
from .errors import HypothesisError, ParameterError
from .gbf import (
    GeneralizedBooleanFunction,
    PolyphaseVector,
    RestrictionSpec,
    check_variables,
    degree,
    effective_degree,
    make_function,
    monomial,
    reconstruct,
    restrict,
    restricted_polyphase,
    to_polyphase,
)


@dataclass(frozen=True)
class PathAnalysis:
    is_quadratic: bool
    is_path: bool
    edge_labels: dict
    end_vertices: tuple[int, int] | None
    visiting_order: tuple[int, ...] | None
    reason: str = ""


def analyze_graph(f: GeneralizedBooleanFunction, vertices: Sequence[int] | None = None) -> PathAnalysis:
    """Extract the labelled graph of f and decide whether it is a path.

    ``vertices`` is the vertex set the path must span (all m variables by
    default).  A term touching a variable outside that set disqualifies f.
    """
    vertices = tuple(range(f.m)) if vertices is None else tuple(sorted(set(vertices)))
    edges = {}
    for mask, c in f.terms:
        if mask.bit_count() == 2:
            a = (mask & -mask).bit_length() - 1
            b = mask.bit_length() - 1
            edges[(a, b)] = c
    quadratic = degree(f) <= 2

    def verdict(ok, reason="", ends=None, order=None):
        return PathAnalysis(quadratic, ok, edges, ends, order, reason)

    if not quadratic:
        return verdict(False, "degree exceeds 2")
    if f.q % 2:
        return verdict(False, "q is odd")
    if not vertices:
        return verdict(False, "empty vertex set")
    outside = f.variables() - set(vertices)
    if outside:
        return verdict(False, f"variables {sorted(outside)} lie outside the vertex set")
    if len(vertices) == 1:
        v = vertices[0]
        return verdict(True, ends=(v, v), order=(v,))
    half = f.q // 2
    bad = [e for e, c in edges.items() if c != half]
    if bad:
        return verdict(False, f"edge {bad[0]} labelled {edges[bad[0]]}, not {half}")
    if len(edges) != len(vertices) - 1:
        return verdict(False, f"{len(edges)} edges on {len(vertices)} vertices")
    adj = {v: [] for v in vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    if any(len(nb) > 2 for nb in adj.values()):
        return verdict(False, "a vertex has degree above 2")
    ends = sorted(v for v, nb in adj.items() if len(nb) == 1)
    if len(ends) != 2:
        return verdict(False, "graph is not a path")
    order = [ends[0]]
    prev = None
    while len(order) < len(vertices):
        nxt = [v for v in adj[order[-1]] if v != prev]
        if not nxt:
            break
        prev = order[-1]
        order.append(nxt[0])
    if len(order) != len(vertices):
        return verdict(False, "graph is disconnected")
    return verdict(True, ends=(ends[0], ends[1]), order=tuple(order))


def _restricted_path(f, variables, d) -> PathAnalysis:
    g = restrict(f, RestrictionSpec(variables, d))
    free = [a for a in range(f.m) if a not in variables]
    info = analyze_graph(g, free)
    if not info.is_path:
        raise HypothesisError(
            f"restriction of f at {dict(zip(variables, d))} is not a path in {len(free)} vertices: {info.reason}"
        )
    return info


def golay_pair(
    f: GeneralizedBooleanFunction,
    variables: Sequence[int],
    d: Sequence[int],
    end_vertex: int | None = None,
    offset: int = 0,
) -> tuple[PolyphaseVector, PolyphaseVector]:
    """Restricted sequences of f and f + (q/2) x_a + offset at x = d."""
    variables = check_variables(variables, f.m)
    if f.m <= len(variables):
        raise ParameterError("need m > k")
    d = tuple(d)
    info = _restricted_path(f, variables, d)
    a = info.end_vertices[0] if end_vertex is None else end_vertex
    if a not in info.end_vertices:
        raise HypothesisError(f"vertex {a} is not an end vertex of the path {info.visiting_order}")
    spec = RestrictionSpec(variables, d)
    partner = f + monomial(f.m, f.q, [a], f.q // 2) + offset
    return restricted_polyphase(f, spec), restricted_polyphase(partner, spec)


@dataclass(frozen=True)
class ComplementarySetWitness:
    base: GeneralizedBooleanFunction
    variables: tuple[int, ...]
    end_vertex_choice: dict
    selector: GeneralizedBooleanFunction
    members: tuple[tuple[tuple[tuple[int, ...], int], GeneralizedBooleanFunction], ...]

    def functions(self) -> list[GeneralizedBooleanFunction]:
        return [g for _, g in self.members]

    def sequences(self) -> list[PolyphaseVector]:
        return [to_polyphase(g) for g in self.functions()]

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "variables": list(self.variables),
            "end_vertices": {"".join(map(str, d)): a for d, a in self.end_vertex_choice.items()},
            "selector": self.selector.to_json(),
            "members": [
                {"c": list(c), "c_prime": cp, "function": g.to_json()} for (c, cp), g in self.members
            ],
        }


def build_complementary_set(
    f: GeneralizedBooleanFunction,
    variables: Sequence[int],
    end_vertices: Mapping[tuple[int, ...], int] | None = None,
) -> ComplementarySetWitness:
    """The 2^(k+1) functions f + (q/2) sum c_a x_{j_a} + (q/2) c' e."""
    variables = check_variables(variables, f.m)
    k = len(variables)
    if f.q % 2:
        raise HypothesisError(f"q={f.q} is odd")
    if f.m <= k:
        raise ParameterError("need m > k")
    half = f.q // 2
    choice = {}
    for d in itertools.product((0, 1), repeat=k):
        info = _restricted_path(f, variables, d)
        a = info.end_vertices[0]
        if end_vertices is not None and d in end_vertices:
            a = end_vertices[d]
            if a not in info.end_vertices:
                raise HypothesisError(f"vertex {a} is not an end vertex for d={d}")
        choice[d] = a
    selector = reconstruct([(d, monomial(f.m, f.q, [a])) for d, a in choice.items()], variables)
    members = []
    for c in itertools.product((0, 1), repeat=k):
        shift = make_function(f.m, f.q, [(1 << j, half * ca) for j, ca in zip(variables, c)])
        for cp in (0, 1):
            members.append(((c, cp), f + shift + selector * (half * cp)))
    return ComplementarySetWitness(f, variables, choice, selector, tuple(members))


def verify_witness(witness: ComplementarySetWitness, tol: float = 1e-9):
    return is_complementary_set(witness.sequences(), tol)


# --- coset representatives ---------------------------------------------------


@dataclass(frozen=True)
class CosetRepSpec:
    m: int
    k: int
    h: int
    perms: dict

    def __post_init__(self):
        if self.m - self.k < 2 or self.k < 0:
            raise ParameterError(f"need m - k >= 2 and k >= 0, got m={self.m}, k={self.k}")
        if self.h < 1:
            raise ParameterError("h must be >= 1")
        perms = {tuple(d): tuple(p) for d, p in self.perms.items()}
        want = set(itertools.product((0, 1), repeat=self.k))
        if set(perms) != want:
            raise ParameterError("permutation table must have one entry per d in {0,1}^k")
        for d, p in perms.items():
            if sorted(p) != list(range(self.m - self.k)):
                raise ParameterError(f"pi_{d} = {p} is not a permutation of 0..{self.m - self.k - 1}")
        object.__setattr__(self, "perms", perms)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "h": self.h,
            "perms": {"".join(map(str, d)): list(p) for d, p in sorted(self.perms.items())},
        }

    @classmethod
    def from_json(cls, doc) -> CosetRepSpec:
        if isinstance(doc, str):
            doc = json.loads(doc)
        perms = {tuple(int(ch) for ch in key): tuple(p) for key, p in doc["perms"].items()}
        return cls(int(doc["m"]), int(doc["k"]), int(doc["h"]), perms)


def path_form(m: int, q: int, order: Sequence[int], coeff: int = 1) -> GeneralizedBooleanFunction:
    return make_function(m, q, [((1 << a) | (1 << b), coeff) for a, b in zip(order, order[1:])])


def coset_rep(spec: CosetRepSpec) -> GeneralizedBooleanFunction:
    q = 1 << spec.h
    tail = tuple(range(spec.m - spec.k, spec.m))
    pieces = [(d, path_form(spec.m, q, p, q // 2)) for d, p in spec.perms.items()]
    return reconstruct(pieces, tail)


@lru_cache(maxsize=None)
def canonical_perms(n: int) -> tuple[tuple[int, ...], ...]:
    """Permutations of 0..n-1 with p[0] < p[-1], in lexicographic order."""
    return tuple(p for p in itertools.permutations(range(n)) if n < 2 or p[0] < p[-1])


def free_slots(m: int, k: int, h: int, r: int) -> int:
    """Number of independent permutation slots: min(r + h - 3, k)."""
    if m - k <= 1:
        raise HypothesisError(f"need m - k > 1, got m={m}, k={k}")
    if r <= 2 - h:
        raise HypothesisError(f"need r > 2 - h, got r={r}, h={h}")
    return min(r + h - 3, k)


def rep_count(m: int, k: int, h: int, r: int) -> int:
    """Words of R(k,m,h) with effective degree at most r."""
    return (math.factorial(m - k) // 2) ** (1 << free_slots(m, k, h, r))


def _spec_from_slots(m, k, h, slots) -> CosetRepSpec:
    ell = (len(slots) - 1).bit_length()
    perms = {}
    for d in itertools.product((0, 1), repeat=k):
        head = sum(bit << j for j, bit in enumerate(d[:ell]))
        perms[d] = slots[head]
    return CosetRepSpec(m, k, h, perms)


def unrank_rep(m: int, k: int, h: int, r: int, index: int) -> CosetRepSpec:
    """The ``index``-th representative in canonical (lexicographic slot) order."""
    ell = free_slots(m, k, h, r)
    base = canonical_perms(m - k)
    count = len(base) ** (1 << ell)
    if not 0 <= index < count:
        raise ParameterError(f"index {index} out of range [0, {count})")
    slots = []
    for _ in range(1 << ell):
        index, digit = divmod(index, len(base))
        slots.append(base[digit])
    return _spec_from_slots(m, k, h, slots[::-1])


def iter_reps(m: int, k: int, h: int, r: int) -> Iterator[CosetRepSpec]:
    ell = free_slots(m, k, h, r)
    base = canonical_perms(m - k)
    for slots in itertools.product(base, repeat=1 << ell):
        yield _spec_from_slots(m, k, h, slots)


def enumerate_reps(m: int, k: int, h: int, r: int, limit: int | None = None):
    """Distinct members of R(k,m,h) with effective degree <= r, and the predicted count.

    Slot ``head`` holds pi_d for every d whose first ``ell`` bits spell
    ``head`` (little-endian), so the tail variables drop out of the result.
    """
    predicted = rep_count(m, k, h, r)
    reps = [coset_rep(spec) for spec in itertools.islice(iter_reps(m, k, h, r), limit)]
    return reps, predicted


def brute_force_rep_count(m: int, k: int, h: int, r: int) -> int:
    """Distinct functions over all permutation tables, filtered by effective degree."""
    perms = list(itertools.permutations(range(m - k)))
    ds = list(itertools.product((0, 1), repeat=k))
    seen = set()
    for table in itertools.product(perms, repeat=len(ds)):
        g = coset_rep(CosetRepSpec(m, k, h, dict(zip(ds, table))))
        if effective_degree(g) <= r:
            seen.add(g)
    return len(seen)


# --- k = 0 census ------------------------------------------------------------


@dataclass(frozen=True)
class GolayCensus:
    m: int
    q: int
    sequences: tuple[GeneralizedBooleanFunction, ...]
    predicted: int
    all_complementary: bool
    max_pmepr: float

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "q": self.q,
            "count": len(self.sequences),
            "predicted": self.predicted,
            "all_complementary": self.all_complementary,
            "max_pmepr": self.max_pmepr,
        }


def golay_census(m: int, q: int, oversampling: int = 64) -> GolayCensus:
    """All (q/2) path + affine functions in m variables, each paired and checked."""
    from .correlation import EnvelopeConfig, pmepr

    if q % 2 or m < 1:
        raise ParameterError("need even q and m >= 1")
    found = set()
    ok = True
    worst = 0.0
    cfg = EnvelopeConfig(oversampling=oversampling)
    for order in canonical_perms(m):
        quad = path_form(m, q, order, q // 2)
        for coeffs in itertools.product(range(q), repeat=m + 1):
            f = quad + make_function(m, q, [(0, coeffs[0])] + [(1 << a, coeffs[a + 1]) for a in range(m)])
            if f in found:
                continue
            found.add(f)
            pair = golay_pair(f, (), ())
            ok &= is_complementary_set(pair).complementary
            worst = max(worst, pmepr(pair[0].entries, cfg))
    predicted = math.factorial(m) // 2 * q ** (m + 1) if m > 1 else q ** (m + 1)
    return GolayCensus(m, q, tuple(sorted(found, key=lambda g: g.terms)), predicted, ok, worst)

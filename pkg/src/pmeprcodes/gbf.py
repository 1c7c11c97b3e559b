"""Generalized Boolean functions {0,1}^m -> Z_q in algebraic normal form.

A function is stored as a sparse table ``mask -> coefficient`` where bit
``alpha`` of ``mask`` marks the presence of variable ``x_alpha``.  Sequence
position ``i`` corresponds to the point whose ``alpha``-th coordinate is bit
``alpha`` of ``i`` (``x_0`` is the least significant axis).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ParameterError

#: Degree of the identically-zero function.  Compares below every integer.
BOTTOM = -math.inf


@dataclass(frozen=True)
class GeneralizedBooleanFunction:
    m: int
    q: int
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.m < 1:
            raise ParameterError(f"m must be >= 1, got {self.m}")
        if self.q < 2:
            raise ParameterError(f"q must be >= 2, got {self.q}")
        for mask, coeff in self.terms:
            if not 0 <= mask < (1 << self.m):
                raise ParameterError(f"monomial mask {mask} out of range for m={self.m}")
            if not 0 < coeff < self.q:
                raise ParameterError(f"coefficient {coeff} not a nonzero residue mod {self.q}")

    @property
    def anf(self) -> dict[int, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[int]:
        """Indices of the variables that occur in the ANF."""
        mask = 0
        for t, _ in self.terms:
            mask |= t
        return {a for a in range(self.m) if mask >> a & 1}

    def _like(self, table: Mapping[int, int]) -> GeneralizedBooleanFunction:
        return make_function(self.m, self.q, table.items())

    def _check_compatible(self, other: GeneralizedBooleanFunction):
        if (self.m, self.q) != (other.m, other.q):
            raise ParameterError(
                f"incompatible functions: (m={self.m}, q={self.q}) vs (m={other.m}, q={other.q})"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = constant(self.m, self.q, other)
        self._check_compatible(other)
        table = dict(self.terms)
        for mask, c in other.terms:
            table[mask] = table.get(mask, 0) + c
        return self._like(table)

    __radd__ = __add__

    def __neg__(self):
        return self._like({mask: -c for mask, c in self.terms})

    def __sub__(self, other):
        if isinstance(other, int):
            other = constant(self.m, self.q, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like({mask: other * c for mask, c in self.terms})
        self._check_compatible(other)
        # x_a^2 = x_a on {0,1}, so monomials multiply by OR-ing masks
        table: dict[int, int] = {}
        for ma, ca in self.terms:
            for mb, cb in other.terms:
                key = ma | mb
                table[key] = table.get(key, 0) + ca * cb
        return self._like(table)

    __rmul__ = __mul__

    def __mod__(self, modulus: int) -> GeneralizedBooleanFunction:
        """Reduce all coefficients modulo a divisor of q, staying over Z_q."""
        if modulus < 1 or self.q % modulus:
            raise ParameterError(f"{modulus} does not divide q={self.q}")
        return self._like({mask: c % modulus for mask, c in self.terms})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask, c in self.terms:
            mono = "".join(f"x{a}" for a in range(self.m) if mask >> a & 1)
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"m": self.m, "q": self.q, "terms": [[mask, c] for mask, c in self.terms]}

    @classmethod
    def from_json(cls, doc: Mapping | str) -> GeneralizedBooleanFunction:
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            return make_function(int(doc["m"]), int(doc["q"]), [(int(a), int(c)) for a, c in doc["terms"]])
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed function document: {exc}") from exc


def make_function(m: int, q: int, terms: Iterable[tuple[int, int]]) -> GeneralizedBooleanFunction:
    """Canonical constructor: sums duplicate masks, reduces mod q, drops zeros."""
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    if q < 2:
        raise ParameterError(f"q must be >= 2, got {q}")
    table: dict[int, int] = {}
    for mask, coeff in terms:
        if not 0 <= mask < (1 << m):
            raise ParameterError(f"monomial mask {mask} out of range for m={m}")
        table[mask] = table.get(mask, 0) + coeff
    canon = tuple(sorted((mask, c % q) for mask, c in table.items() if c % q))
    return GeneralizedBooleanFunction(m, q, canon)


def constant(m: int, q: int, value: int) -> GeneralizedBooleanFunction:
    return make_function(m, q, [(0, value)])


def monomial(m: int, q: int, variables: Iterable[int], coeff: int = 1) -> GeneralizedBooleanFunction:
    mask = 0
    for a in variables:
        mask |= 1 << a
    return make_function(m, q, [(mask, coeff)])


def evaluate(f: GeneralizedBooleanFunction, point: Sequence[int]) -> int:
    if len(point) != f.m:
        raise ParameterError(f"point has length {len(point)}, expected {f.m}")
    idx = 0
    for a, bit in enumerate(point):
        if bit not in (0, 1):
            raise ParameterError(f"point coordinates must be binary, got {bit}")
        idx |= bit << a
    return sum(c for mask, c in f.terms if mask & idx == mask) % f.q


def degree(f: GeneralizedBooleanFunction) -> int | float:
    """Algebraic degree; ``BOTTOM`` for the zero function."""
    if not f.terms:
        return BOTTOM
    return max(mask.bit_count() for mask, _ in f.terms)


def _log2_exact(q: int) -> int:
    h = q.bit_length() - 1
    if q != 1 << h:
        raise ParameterError(f"q={q} is not a power of two")
    return h


def effective_degree(f: GeneralizedBooleanFunction) -> int | float:
    """max over 0 <= i < h of deg(f mod 2^(i+1)) - i, for q = 2^h."""
    h = _log2_exact(f.q)
    return max(degree(f % (1 << (i + 1))) - i for i in range(h))


@dataclass(frozen=True)
class RestrictionSpec:
    variables: tuple[int, ...]
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if len(self.variables) != len(self.assignment):
            raise ParameterError("assignment length differs from variable count")
        if any(b not in (0, 1) for b in self.assignment):
            raise ParameterError("assignment must be binary")
        if any(a >= b for a, b in zip(self.variables, self.variables[1:])):
            raise ParameterError("restriction variables must be strictly increasing")

    @property
    def k(self) -> int:
        return len(self.variables)

    def validate(self, m: int):
        if self.variables and (self.variables[0] < 0 or self.variables[-1] >= m):
            raise ParameterError(f"restriction variables {self.variables} out of range for m={m}")


def check_variables(variables: Sequence[int], m: int) -> tuple[int, ...]:
    variables = tuple(variables)
    RestrictionSpec(variables, (0,) * len(variables)).validate(m)
    return variables


def restrict(f: GeneralizedBooleanFunction, spec: RestrictionSpec) -> GeneralizedBooleanFunction:
    """Substitute x_{j_a} = d_a; the result keeps the m-variable signature."""
    spec.validate(f.m)
    zero_mask = one_mask = 0
    for j, d in zip(spec.variables, spec.assignment):
        if d:
            one_mask |= 1 << j
        else:
            zero_mask |= 1 << j
    out = []
    for mask, c in f.terms:
        if mask & zero_mask:
            continue
        out.append((mask & ~one_mask, c))
    return make_function(f.m, f.q, out)


def indicator(m: int, q: int, variables: Sequence[int], assignment: Sequence[int]) -> GeneralizedBooleanFunction:
    """prod_a x_{j_a}^{d_a} (1 - x_{j_a})^{1 - d_a} expanded into ANF."""
    ones = [j for j, d in zip(variables, assignment) if d]
    zeros = [j for j, d in zip(variables, assignment) if not d]
    base = sum(1 << j for j in ones)
    terms = []
    for size in range(len(zeros) + 1):
        for sub in itertools.combinations(zeros, size):
            terms.append((base | sum(1 << j for j in sub), (-1) ** size))
    return make_function(m, q, terms)


def reconstruct(
    pieces: Iterable[tuple[Sequence[int], GeneralizedBooleanFunction]],
    variables: Sequence[int],
) -> GeneralizedBooleanFunction:
    """Rebuild f from its 2^k restrictions in the given variables."""
    pieces = [(tuple(d), g) for d, g in pieces]
    if not pieces:
        raise ParameterError("no pieces supplied")
    m, q = pieces[0][1].m, pieces[0][1].q
    variables = check_variables(variables, m)
    k = len(variables)
    seen = {}
    restricted = sum(1 << j for j in variables)
    for d, g in pieces:
        if len(d) != k or any(b not in (0, 1) for b in d):
            raise ParameterError(f"assignment {d} is not a binary word of length {k}")
        if d in seen:
            raise ParameterError(f"duplicate assignment {d}")
        if (g.m, g.q) != (m, q):
            raise ParameterError("pieces must share m and q")
        if any(mask & restricted for mask, _ in g.terms):
            raise ParameterError(f"piece for {d} depends on a restricted variable")
        seen[d] = g
    missing = [d for d in itertools.product((0, 1), repeat=k) if d not in seen]
    if missing:
        raise ParameterError(f"missing assignments {missing}")
    total = constant(m, q, 0)
    for d, g in seen.items():
        total = total + g * indicator(m, q, variables, d)
    return total


@dataclass(frozen=True)
class ZqWord:
    q: int
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(v) for v in self.entries))
        n = len(self.entries)
        if n == 0 or n & (n - 1):
            raise ParameterError(f"word length {n} is not a power of two")
        if any(not 0 <= v < self.q for v in self.entries):
            raise ParameterError(f"entries must lie in [0, {self.q})")

    def __len__(self):
        return len(self.entries)

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    @classmethod
    def from_array(cls, q: int, arr) -> ZqWord:
        return cls(q, tuple(int(v) for v in np.asarray(arr) % q))


@dataclass(frozen=True, eq=False)
class PolyphaseVector:
    entries: np.ndarray
    support: np.ndarray = field(default=None)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        support = np.ones(len(entries), dtype=bool) if self.support is None else np.asarray(self.support, dtype=bool)
        if support.shape != entries.shape:
            raise ParameterError("support mask and entries differ in shape")
        if np.any(entries[~support] != 0):
            raise ParameterError("unsupported entries must be exactly zero")
        if np.any(np.abs(np.abs(entries[support]) - 1) > 1e-12):
            raise ParameterError("supported entries must have unit magnitude")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "support", support)

    def __len__(self):
        return len(self.entries)


def truth_table(f: GeneralizedBooleanFunction) -> np.ndarray:
    """Values f_0, ..., f_{2^m - 1} as an int64 array (zeta transform of the ANF)."""
    vals = np.zeros(1 << f.m, dtype=np.int64)
    for mask, c in f.terms:
        vals[mask] = c
    v = vals.reshape((2,) * f.m)
    # axis m-1-a of the reshaped array is bit a of the index
    for a in range(f.m):
        ax = f.m - 1 - a
        hi = [slice(None)] * f.m
        lo = [slice(None)] * f.m
        hi[ax], lo[ax] = 1, 0
        v[tuple(hi)] += v[tuple(lo)]
    return vals % f.q


def from_truth_table(q: int, values) -> GeneralizedBooleanFunction:
    """Inverse of ``truth_table``: Moebius transform over Z_q."""
    vals = np.array(values, dtype=np.int64) % q
    n = len(vals)
    m = n.bit_length() - 1
    if n != 1 << m or m < 1:
        raise ParameterError(f"length {n} is not a power of two >= 2")
    v = vals.reshape((2,) * m)
    for a in range(m):
        ax = m - 1 - a
        hi = [slice(None)] * m
        lo = [slice(None)] * m
        hi[ax], lo[ax] = 1, 0
        v[tuple(hi)] -= v[tuple(lo)]
    vals %= q
    return make_function(m, q, [(i, int(c)) for i, c in enumerate(vals) if c])


def to_zq_word(f: GeneralizedBooleanFunction) -> ZqWord:
    return ZqWord(f.q, tuple(truth_table(f).tolist()))


def polyphase(values, q: int) -> np.ndarray:
    """Map residues to powers of xi = exp(2 pi i / q)."""
    values = np.asarray(values, dtype=np.int64) % q
    # exact values at the quarter points keep q in {2, 4} free of roundoff
    table = np.exp(2j * np.pi * np.arange(q) / q)
    if q % 4 == 0:
        table[0], table[q // 4], table[q // 2], table[3 * q // 4] = 1, 1j, -1, -1j
    elif q % 2 == 0:
        table[0], table[q // 2] = 1, -1
    else:
        table[0] = 1
    return table[values]


def to_polyphase(f: GeneralizedBooleanFunction) -> PolyphaseVector:
    return PolyphaseVector(polyphase(truth_table(f), f.q))


def restriction_mask(m: int, spec: RestrictionSpec) -> np.ndarray:
    idx = np.arange(1 << m)
    keep = np.ones(1 << m, dtype=bool)
    for j, d in zip(spec.variables, spec.assignment):
        keep &= ((idx >> j) & 1) == d
    return keep


def restricted_polyphase(f: GeneralizedBooleanFunction, spec: RestrictionSpec) -> PolyphaseVector:
    spec.validate(f.m)
    full = to_polyphase(f).entries
    keep = restriction_mask(f.m, spec)
    return PolyphaseVector(np.where(keep, full, 0), keep)

"""Effective-degree Reed-Muller codes over Z_{2^h}, the base codes A(k,r,m,h),
Lee/Euclidean weights, and the coset codes of Constructions 1 and 2."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .construction import CosetRepSpec, coset_rep, rep_count, unrank_rep
from .errors import BudgetError, HypothesisError, ParameterError
from .gbf import (
    GeneralizedBooleanFunction,
    ZqWord,
    effective_degree,
    make_function,
    polyphase,
    truth_table,
)

EXHAUSTIVE_BUDGET_BITS = 26
DEFAULT_SAMPLES = 10**6


def _comb(n: int, j: int) -> int:
    return math.comb(n, j) if 0 <= j <= n else 0


def log2_F(r: int, m: int, h: int) -> int:
    """log2 |F(r,m,h)|, the number of functions of effective degree <= r."""
    return sum(h * _comb(m, i) for i in range(r + 1)) + sum(
        (h - i) * _comb(m, r + i) for i in range(1, h)
    )


def f_basis(r: int, m: int, h: int, offset: int = 0) -> list[tuple[int, int]]:
    """Generators of F(r,m,h) as (monomial mask, 2-adic scale) pairs.

    Monomials of degree <= r unscaled, and 2^i times those of degree r + i.
    ``offset`` shifts the variables to x_offset .. x_{offset+m-1}.
    """
    out = []
    for mask in range(1 << m):
        deg = mask.bit_count()
        scale = max(0, deg - r)
        if scale < h:
            out.append((mask << offset, scale))
    return out


def _order_key(item):
    mask = item[0]
    return (mask.bit_count(), mask)


# --- linear algebra over Z_{2^h} -------------------------------------------


def _valuation(x: int, h: int) -> int:
    return h if x == 0 else (x & -x).bit_length() - 1


def _row_valuation(row: np.ndarray, h: int) -> int:
    nz = row[row != 0]
    return min((_valuation(int(v), h) for v in nz), default=h)


def howell_form(rows: np.ndarray, h: int) -> list[tuple[int, int, np.ndarray]]:
    """Echelon form over Z_{2^h} closed under annihilators.

    Returns ``(pivot column, pivot valuation, row)`` triples with the row's
    pivot entry equal to ``2**valuation``.
    """
    q = 1 << h
    pool = [np.asarray(r, dtype=np.int64) % q for r in rows]
    pool = [r for r in pool if r.any()]
    pivots = []
    n = len(pool[0]) if pool else 0
    for col in range(n):
        cand = [i for i, r in enumerate(pool) if r[col]]
        if not cand:
            continue
        best = min(cand, key=lambda i: _valuation(int(pool[i][col]), h))
        row = pool[best]
        v = _valuation(int(row[col]), h)
        unit = int(row[col]) >> v
        p = (row * pow(unit, -1, q)) % q
        rest = []
        for i, r in enumerate(pool):
            if i == best:
                continue
            if r[col]:
                r = (r - (int(r[col]) >> v) * p) % q
            if r.any():
                rest.append(r)
        ann = (p << (h - v)) % q
        if ann.any():
            rest.append(ann)
        pool = rest
        pivots.append((col, v, p))
    return pivots


def reduce_word(pivots, word: np.ndarray, h: int) -> np.ndarray:
    """Canonical representative of ``word`` modulo the code spanned by ``pivots``."""
    q = 1 << h
    w = np.asarray(word, dtype=np.int64) % q
    for col, v, p in pivots:
        c = int(w[col]) >> v
        if c:
            w = (w - c * p) % q
    return w


# --- codes -------------------------------------------------------------------


@dataclass(eq=False)
class LinearCode:
    """Linear code over Z_{2^h} given by scaled-monomial generators."""

    family: str
    r: int
    m: int
    h: int
    labels: tuple[GeneralizedBooleanFunction, ...]
    k: int | None = None
    erm_order: int | None = None
    generators: np.ndarray = field(init=False)

    def __post_init__(self):
        self.generators = np.array([truth_table(g) for g in self.labels], dtype=np.int64).reshape(
            len(self.labels), self.n
        )
        if sum(self.row_bits) != self.size_bits:
            raise ParameterError("generator rows are not independent")

    @property
    def q(self) -> int:
        return 1 << self.h

    @property
    def n(self) -> int:
        return 1 << self.m

    @cached_property
    def row_bits(self) -> tuple[int, ...]:
        return tuple(self.h - _row_valuation(row, self.h) for row in self.generators)

    @cached_property
    def pivots(self):
        return howell_form(self.generators, self.h)

    @cached_property
    def size_bits(self) -> int:
        return sum(self.h - v for _, v, _ in self.pivots)

    def contains(self, word) -> bool:
        if isinstance(word, ZqWord):
            word = word.entries
        return not reduce_word(self.pivots, word, self.h).any()

    def coset_leader(self, word) -> np.ndarray:
        if isinstance(word, ZqWord):
            word = word.entries
        return reduce_word(self.pivots, word, self.h)

    def encode_coefficients(self, coeffs: Sequence[int]) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=np.int64)
        return (coeffs @ self.generators) % self.q

    def span(self, rows: Sequence[int] | None = None) -> np.ndarray:
        """All combinations of the chosen rows; index = mixed-radix coefficient word,
        first row least significant."""
        rows = range(len(self.generators)) if rows is None else rows
        words = np.zeros((1, self.n), dtype=np.int64)
        for j in rows:
            order = 1 << self.row_bits[j]
            step = (np.arange(order)[:, None] * self.generators[j][None, :]) % self.q
            words = ((step[:, None, :] + words[None, :, :]) % self.q).reshape(-1, self.n)
        return words

    def distance_bounds(self) -> tuple[int, float]:
        """Lower bounds 2^(m-r) and 2^(m-r+2) sin^2(pi/2^h) from ERM(r,m,h) containment."""
        r = self.erm_order
        return 1 << (self.m - r), 2.0 ** (self.m - r + 2) * math.sin(math.pi / self.q) ** 2

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": {"r": self.r, "m": self.m, "h": self.h, "k": self.k},
            "q": self.q,
            "size_bits": self.size_bits,
            "rows": self.generators.tolist(),
            "row_bits": list(self.row_bits),
            "labels": [str(g) for g in self.labels],
        }


def _check_range(r, m, h):
    if m < 1 or h < 1 or not 0 <= r <= m:
        raise ParameterError(f"need 0 <= r <= m, m >= 1, h >= 1; got r={r}, m={m}, h={h}")


def _labels(m, h, basis) -> tuple[GeneralizedBooleanFunction, ...]:
    q = 1 << h
    return tuple(make_function(m, q, [(mask, 1 << e)]) for mask, e in sorted(basis, key=_order_key))


def erm_code(r: int, m: int, h: int) -> LinearCode:
    _check_range(r, m, h)
    return LinearCode("ERM", r, m, h, _labels(m, h, f_basis(r, m, h)), erm_order=r)


def rm_code(r: int, m: int, h: int) -> LinearCode:
    """RM_{2^h}(r,m): monomials of degree <= r with unrestricted coefficients."""
    _check_range(r, m, h)
    basis = [(mask, 0) for mask in range(1 << m) if mask.bit_count() <= r]
    return LinearCode("RM", r, m, h, _labels(m, h, basis), erm_order=r)


def zrm_code(r: int, m: int, h: int) -> LinearCode:
    """ZRM_{2^h}(r,m): degree <= r-1 unrestricted plus 2 times degree-r monomials."""
    _check_range(r, m, h)
    if h < 2:
        raise ParameterError("ZRM needs h >= 2")
    basis = [(mask, 0) for mask in range(1 << m) if mask.bit_count() < r]
    basis += [(mask, 1) for mask in range(1 << m) if mask.bit_count() == r]
    return LinearCode("ZRM", r, m, h, _labels(m, h, basis), erm_order=max(r - 1, 0))


def a_code(k: int, r: int, m: int, h: int) -> LinearCode:
    """A(k,r,m,h): sum_a x_a g_a(tail) + g(tail), g_a in F(r-1,k,h), g in F(r,k,h)."""
    if not (0 <= k < m and 0 <= r <= k + 1 and h >= 1):
        raise ParameterError(f"need 0 <= k < m, 0 <= r <= k+1, h >= 1; got k={k}, r={r}, m={m}, h={h}")
    lead = m - k
    basis = []
    for mask, e in f_basis(r - 1, k, h, offset=lead):
        basis += [(mask | 1 << a, e) for a in range(lead)]
    basis += f_basis(r, k, h, offset=lead)
    return LinearCode("A", r, m, h, _labels(m, h, basis), k=k, erm_order=r)


def a_size_bits(k: int, r: int, m: int, h: int) -> int:
    """s = (m-k) log2|F(r-1,k,h)| + log2|F(r,k,h)|."""
    return (m - k) * log2_F(r - 1, k, h) + log2_F(r, k, h)


# --- weights -------------------------------------------------------------------


def _check_power_of_two(q: int) -> int:
    h = q.bit_length() - 1
    if q != 1 << h or h < 1:
        raise ParameterError(f"q={q} is not a power of two")
    return h


def lee_table(q: int) -> np.ndarray:
    a = np.arange(q)
    return np.minimum(a, q - a)


def euclid_table(q: int) -> np.ndarray:
    return np.abs(polyphase(np.arange(q), q) - 1) ** 2


def _residues(a, q: int | None) -> tuple[np.ndarray, int]:
    """Entries and modulus of a ZqWord, or of a plain residue list with explicit q."""
    if isinstance(a, ZqWord):
        q, arr = a.q, a.as_array()
    else:
        if q is None:
            raise ParameterError("q is required for a plain residue sequence")
        arr = np.asarray(a, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= q):
            raise ParameterError(f"entries must lie in [0, {q})")
    _check_power_of_two(q)
    return arr, q


def lee_weight(a, q: int | None = None) -> int:
    arr, q = _residues(a, q)
    return int(lee_table(q)[arr].sum())


def euclid_sq_weight(a, q: int | None = None) -> float:
    arr, q = _residues(a, q)
    return float(euclid_table(q)[arr].sum())


@dataclass(frozen=True)
class WeightProfile:
    q: int
    counts: dict

    @property
    def lee(self) -> int:
        return sum(w * c for w, c in self.counts.items())

    def euclid_sq(self) -> float:
        return 4 * sum(c * math.sin(w * math.pi / self.q) ** 2 for w, c in self.counts.items())


def weight_profile(a, q: int | None = None) -> WeightProfile:
    arr, q = _residues(a, q)
    lee = lee_table(q)[arr]
    return WeightProfile(q, {w: int((lee == w).sum()) for w in range(q // 2 + 1)})


# --- minimum distance ----------------------------------------------------------


@dataclass(frozen=True)
class DistanceResult:
    lee: int
    euclid_sq: float
    exact: bool
    method: str
    lee_lower_bound: int
    euclid_sq_lower_bound: float
    samples: int = 0


def _min_weights_of_sums(left: np.ndarray, right: np.ndarray, q: int, skip_zero: bool, block: int = 64):
    """Minimum Lee and Euclidean weight over all (left_i + right_j) mod q."""
    lee_t = lee_table(q).astype(np.int32)
    euc_t = euclid_table(q)
    best_lee, best_euc = None, None
    for start in range(0, len(left), block):
        words = (left[start : start + block, None, :] + right[None, :, :]) % q
        lee = lee_t[words].sum(-1)
        euc = euc_t[words].sum(-1)
        if skip_zero and start == 0:
            lee[0, 0] = np.iinfo(np.int32).max
            euc[0, 0] = np.inf
        lo, eo = int(lee.min()), float(euc.min())
        best_lee = lo if best_lee is None else min(best_lee, lo)
        best_euc = eo if best_euc is None else min(best_euc, eo)
    return best_lee, best_euc


def _to_planes(words: np.ndarray, h: int) -> list[np.ndarray]:
    """Bit-plane packing: plane b holds bit b of every entry, entry i at bit i."""
    weights = np.left_shift(np.uint64(1), np.arange(words.shape[1], dtype=np.uint64))
    return [(((words >> b) & 1).astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64) for b in range(h)]


def _lee_class_counts(planes: list[np.ndarray]) -> dict[int, np.ndarray]:
    """Number of entries of each nonzero Lee weight, for h <= 3."""
    pc = np.bitwise_count
    if len(planes) == 1:
        return {1: pc(planes[0])}
    if len(planes) == 2:
        a0, a1 = planes
        return {1: pc(a0), 2: pc(a1 & ~a0)}
    a0, a1, a2 = planes
    same = ~(a1 ^ a2)
    return {
        1: pc(a0 & same),
        3: pc(a0 & ~same),
        2: pc(~a0 & a1),
        4: pc(~a0 & ~a1 & a2),
    }


def _min_weights_planes(left: np.ndarray, right: np.ndarray, h: int, skip_zero: bool):
    """Same as ``_min_weights_of_sums`` on bit-packed words (n <= 64, h <= 3)."""
    q = 1 << h
    lp, rp = _to_planes(left, h), _to_planes(right, h)
    euc = {w: 4 * math.sin(w * math.pi / q) ** 2 for w in range(1, q // 2 + 1)}
    block = max(1, (1 << 22) // len(right))
    best_lee, best_euc = None, None
    for start in range(0, len(left), block):
        a = [p[start : start + block, None] for p in lp]
        b = [p[None, :] for p in rp]
        planes, carry = [], np.zeros((1, 1), dtype=np.uint64)
        for x, y in zip(a, b):
            planes.append(x ^ y ^ carry)
            carry = (x & y) | (carry & (x ^ y))
        counts = _lee_class_counts(planes)
        lee = sum(w * c.astype(np.int64) for w, c in counts.items())
        e = sum(euc[w] * c for w, c in counts.items())
        if skip_zero and start == 0:
            lee[0, 0] = np.iinfo(np.int64).max
            e[0, 0] = np.inf
        lo, eo = int(lee.min()), float(e.min())
        best_lee = lo if best_lee is None else min(best_lee, lo)
        best_euc = eo if best_euc is None else min(best_euc, eo)
    return best_lee, best_euc


def _split_spans(code: LinearCode):
    bits = code.row_bits
    total, acc, cut = sum(bits), 0, 0
    while cut < len(bits) and acc + bits[cut] <= total // 2:
        acc += bits[cut]
        cut += 1
    rows = list(range(len(bits)))
    return code.span(rows[:cut]), code.span(rows[cut:])


def _exhaustive_linear(code: LinearCode, shift: np.ndarray | None = None):
    left, right = _split_spans(code)
    if shift is not None:
        left = (left + shift) % code.q
    if code.h <= 3 and code.n <= 64:
        return _min_weights_planes(left, right, code.h, skip_zero=shift is None)
    return _min_weights_of_sums(left, right, code.q, skip_zero=shift is None)


def _sampled_linear(code: LinearCode, samples: int, seed: int):
    rng = np.random.default_rng(seed)
    orders = np.array([1 << b for b in code.row_bits])
    lee_t = lee_table(code.q)
    euc_t = euclid_table(code.q)
    # generator rows are codewords too, which tightens the bound cheaply
    best_lee = int(lee_t[code.generators].sum(-1).min())
    best_euc = float(euc_t[code.generators].sum(-1).min())
    done = 0
    while done < samples:
        chunk = min(1 << 16, samples - done)
        coeffs = rng.integers(0, orders, size=(chunk, len(orders)))
        words = (coeffs @ code.generators) % code.q
        nonzero = words.any(axis=1)
        if nonzero.any():
            best_lee = min(best_lee, int(lee_t[words[nonzero]].sum(-1).min()))
            best_euc = min(best_euc, float(euc_t[words[nonzero]].sum(-1).min()))
        done += chunk
    return best_lee, best_euc


def min_distance(
    code, method: str = "exhaustive", samples: int = DEFAULT_SAMPLES, seed: int = 0
) -> DistanceResult:
    """Minimum Lee and squared Euclidean distance of a LinearCode or CosetCode."""
    base = code.base if isinstance(code, CosetCode) else code
    lb_lee, lb_euc = base.distance_bounds()
    if method == "exhaustive":
        if base.size_bits > EXHAUSTIVE_BUDGET_BITS:
            raise BudgetError(
                f"exhaustive search over 2^{base.size_bits} codewords exceeds budget 2^{EXHAUSTIVE_BUDGET_BITS}"
            )
        lee, euc = _exhaustive_linear(base)
        if isinstance(code, CosetCode):
            # distance between cosets i and j is the min weight of (rep_i - rep_j) + A
            reps = [np.array(code.reps[i].entries) for i in range(len(code.reps))]
            for i in range(len(reps)):
                for j in range(i + 1, len(reps)):
                    lo, eo = _exhaustive_linear(base, (reps[i] - reps[j]) % base.q)
                    lee, euc = min(lee, lo), min(euc, eo)
        return DistanceResult(lee, euc, True, method, lb_lee, lb_euc)
    if method == "sampled":
        if isinstance(code, CosetCode):
            raise ParameterError("sampled distance is only provided for linear codes")
        lee, euc = _sampled_linear(base, samples, seed)
        return DistanceResult(lee, euc, False, method, lb_lee, lb_euc, samples)
    raise ParameterError(f"unknown method {method!r}")


def min_lee_distance(code, method: str = "exhaustive", **kw) -> int:
    return min_distance(code, method, **kw).lee


def min_euclid_sq_distance(code, method: str = "exhaustive", **kw) -> float:
    return min_distance(code, method, **kw).euclid_sq


# --- coset codes ----------------------------------------------------------------


class RepList(Sequence):
    """Lazily generated coset representatives in canonical enumeration order."""

    def __init__(self, m, k, h, r, length):
        self.m, self.k, self.h, self.r = m, k, h, r
        self._len = length

    def __len__(self):
        return self._len

    def spec(self, i: int) -> CosetRepSpec:
        return unrank_rep(self.m, self.k, self.h, self.r, i)

    def function(self, i: int) -> GeneralizedBooleanFunction:
        return coset_rep(self.spec(i))

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        return ZqWord(1 << self.h, truth_table(self.function(i)))


@dataclass(eq=False)
class CosetCode:
    base: LinearCode
    reps: Sequence[ZqWord]
    k: int
    r: int
    r_base: int
    m: int
    h: int
    construction: int

    @property
    def t(self) -> int:
        return len(self.reps).bit_length() - 1

    @property
    def s(self) -> int:
        return self.base.size_bits

    @property
    def q(self) -> int:
        return 1 << self.h

    @property
    def n(self) -> int:
        return 1 << self.m

    def to_json(self) -> dict:
        doc = self.base.to_json()
        doc.update(
            {
                "construction": self.construction,
                "params": {"k": self.k, "r": self.r, "r_base": self.r_base, "m": self.m, "h": self.h},
                "s": self.s,
                "t": self.t,
                "reps": [list(self.reps[i].entries) for i in range(len(self.reps))],
            }
        )
        return doc


def construction1(k: int, r: int, m: int, h: int, spec: CosetRepSpec) -> CosetCode:
    """One coset of A(k,r,m,h) through a word of R(k,m,h)."""
    base = a_code(k, r, m, h)
    if (spec.m, spec.k, spec.h) != (m, k, h):
        raise ParameterError("coset representative parameters do not match the code")
    rep = ZqWord(1 << h, truth_table(coset_rep(spec)))
    return CosetCode(base, [rep], k, r, r, m, h, 1)


def construction2_params(k: int, r: int, m: int, h: int) -> tuple[int, int]:
    """(r', t) for Construction 2, after checking its hypotheses."""
    if m - k <= 1 or k < 0:
        raise HypothesisError(f"need m - k > 1, got m={m}, k={k}")
    if h == 1 and not 2 <= r <= k + 2:
        raise HypothesisError(f"for h = 1 need 2 <= r <= k+2, got r={r}")
    if h > 1 and not 1 <= r <= k + 1:
        raise HypothesisError(f"for h > 1 need 1 <= r <= k+1, got r={r}")
    if h < 1:
        raise ParameterError("h must be >= 1")
    return min(r, k + 1), rep_count(m, k, h, r).bit_length() - 1


DISTINCTNESS_FULL_LIMIT = 1 << 12


def construction2(k: int, r: int, m: int, h: int, seed: int = 0) -> CosetCode:
    """Union of 2^t cosets of A(k,r',m,h) through R-words of effective degree <= r."""
    r_base, t = construction2_params(k, r, m, h)
    base = a_code(k, r_base, m, h)
    reps = RepList(m, k, h, r, 1 << t)
    if len(reps) <= DISTINCTNESS_FULL_LIMIT:
        check = range(len(reps))
    else:
        rng = np.random.default_rng(seed)
        check = sorted(set(rng.integers(0, len(reps), DISTINCTNESS_FULL_LIMIT).tolist()) | {0})
    leaders = set()
    for i in check:
        g = reps.function(i)
        if effective_degree(g) > r:
            raise HypothesisError(f"representative {i} exceeds effective degree {r}")
        leader = tuple(base.coset_leader(truth_table(g)).tolist())
        if leader in leaders:
            raise HypothesisError(f"representative {i} repeats a coset")
        leaders.add(leader)
    return CosetCode(base, reps, k, r, r_base, m, h, 2)


# --- tables ----------------------------------------------------------------------


def two_decimals(x: Fraction | float) -> str:
    """Round half up, as the printed tables do (5/8 renders as 0.63)."""
    if isinstance(x, Fraction):
        d = Decimal(x.numerator) / Decimal(x.denominator)
    else:
        d = Decimal(repr(x))
    return str(d.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class TableRow:
    m: int
    h: int
    r: int
    k: int
    s: int
    t: int
    R1: Fraction | None
    R2: Fraction
    dL: int
    dE2: float

    def rendered(self) -> dict:
        return {
            "m": self.m,
            "h": self.h,
            "r": self.r,
            "s": self.s,
            "t": self.t,
            "R1": None if self.R1 is None else two_decimals(self.R1),
            "R2": two_decimals(self.R2),
            "dL": self.dL,
            "dE2": two_decimals(self.dE2),
        }

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "h": self.h,
            "r": self.r,
            "k": self.k,
            "s": self.s,
            "t": self.t,
            "R1": None if self.R1 is None else float(self.R1),
            "R2": float(self.R2),
            "dL": self.dL,
            "dE2": self.dE2,
        }


def table_row(m: int, h: int, r: int, k: int) -> TableRow:
    r_base, t = construction2_params(k, r, m, h)
    s = a_size_bits(k, r_base, m, h)
    n = 1 << m
    return TableRow(
        m,
        h,
        r,
        k,
        s,
        t,
        Fraction(s, n) if r == r_base else None,
        Fraction(s + t, n),
        1 << (m - r),
        2.0 ** (m - r + 2) * math.sin(math.pi / (1 << h)) ** 2,
    )


def table_rows(pmepr_bound: int) -> list[TableRow]:
    """Coding options with PMEPR at most 4 (k = 1) or 8 (k = 2)."""
    if pmepr_bound not in (4, 8):
        raise ParameterError("pmepr bound must be 4 or 8")
    k = 1 if pmepr_bound == 4 else 2
    rows = []
    for m in ((4, 5, 6) if k == 1 else (5, 6)):
        for h in (1, 2, 3):
            lo = 2 if h == 1 else 1
            for r in range(lo, k + (3 if h == 1 else 2)):
                rows.append(table_row(m, h, r, k))
    return rows

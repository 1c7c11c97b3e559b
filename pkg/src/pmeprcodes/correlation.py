"""Aperiodic correlations, complementary sets and OFDM envelope power."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParameterError
from .gbf import (
    GeneralizedBooleanFunction,
    PolyphaseVector,
    RestrictionSpec,
    ZqWord,
    check_variables,
    polyphase,
    restricted_polyphase,
    to_polyphase,
)

DEFAULT_OVERSAMPLING = 64
DEFAULT_SET_TOL = 1e-9


def _as_array(seq) -> np.ndarray:
    if isinstance(seq, PolyphaseVector):
        return seq.entries
    arr = np.asarray(seq, dtype=complex)
    if arr.ndim != 1 or arr.size == 0:
        raise ParameterError("sequence must be a nonempty 1-d list of numbers")
    if not np.all(np.isfinite(arr)):
        raise ParameterError("sequence entries must be finite")
    return arr


def cross_correlation(a, b, shift: int) -> complex:
    """C(A, B)(l) = sum_i A_{i+l} conj(B_i), zero for |l| >= n."""
    a, b = _as_array(a), _as_array(b)
    n = len(a)
    if len(b) != n:
        raise ParameterError(f"length mismatch: {n} vs {len(b)}")
    if abs(shift) >= n:
        return 0j
    if shift >= 0:
        return complex(np.dot(a[shift:], np.conj(b[: n - shift])))
    return complex(np.dot(a[: n + shift], np.conj(b[-shift:])))


def auto_correlation(a, shift: int) -> complex:
    return cross_correlation(a, a, shift)


def autocorrelation_sum(members: Sequence) -> np.ndarray:
    """Sum of aperiodic autocorrelations of all members at shifts -(n-1)..n-1.

    Entry ``n - 1 + l`` holds the value at shift ``l``.
    """
    arrs = [_as_array(s) for s in members]
    n = len(arrs[0])
    if any(len(a) != n for a in arrs):
        raise ParameterError("complementary-set members must have equal length")
    size = 1 << (2 * n - 1).bit_length()
    power = np.zeros(size)
    for a in arrs:
        power += np.abs(np.fft.fft(a, size)) ** 2
    # circular autocorrelation of the zero-padded block equals the aperiodic one
    corr = np.fft.ifft(power)
    return np.concatenate([corr[size - n + 1 :], corr[:n]])


@dataclass(frozen=True)
class SetReport:
    complementary: bool
    size: int
    max_residual: float
    tol: float


def is_complementary_set(members: Sequence, tol: float = DEFAULT_SET_TOL) -> SetReport:
    if not members:
        raise ParameterError("empty set")
    sums = autocorrelation_sum(members)
    n = (len(sums) + 1) // 2
    off_peak = np.delete(sums, n - 1)
    resid = float(np.max(np.abs(off_peak))) if off_peak.size else 0.0
    return SetReport(resid <= tol, len(members), resid, tol)


def expansion_identity_check(f: GeneralizedBooleanFunction, variables: Sequence[int], shift: int) -> float:
    """|A(F)(l) - [sum_d A(F|d)(l) + sum_{d1 != d2} C(F|d1, F|d2)(l)]|."""
    variables = check_variables(variables, f.m)
    n = 1 << f.m
    if abs(shift) >= n:
        raise ParameterError(f"shift {shift} out of range for length {n}")
    lhs = auto_correlation(to_polyphase(f), shift)
    parts = [
        restricted_polyphase(f, RestrictionSpec(variables, d))
        for d in itertools.product((0, 1), repeat=len(variables))
    ]
    rhs = sum(auto_correlation(p, shift) for p in parts)
    for i, j in itertools.permutations(range(len(parts)), 2):
        rhs += cross_correlation(parts[i], parts[j], shift)
    return abs(lhs - rhs)


@dataclass(frozen=True)
class EnvelopeConfig:
    zeta: float = 0.0
    oversampling: int = DEFAULT_OVERSAMPLING

    def __post_init__(self):
        if self.oversampling < 2:
            raise ParameterError(f"oversampling must be >= 2, got {self.oversampling}")
        if self.zeta < 0:
            raise ParameterError("zeta must be nonnegative")


def _symbols(word) -> np.ndarray:
    if isinstance(word, ZqWord):
        return polyphase(word.entries, word.q)
    return _as_array(word)


def envelope(word, theta: float, cfg: EnvelopeConfig = EnvelopeConfig()) -> complex:
    """S(C)(theta) = sum_i C_i exp(2 pi sqrt(-1) (i + zeta) theta)."""
    c = _symbols(word)
    i = np.arange(len(c))
    return complex(np.sum(c * np.exp(2j * np.pi * (i + cfg.zeta) * theta)))


def envelope_power_grid(word, oversampling: int = DEFAULT_OVERSAMPLING) -> np.ndarray:
    """|S(C)(j / (n L))|^2 for j = 0 .. nL - 1, by a zero-padded FFT."""
    if oversampling < 2:
        raise ParameterError(f"oversampling must be >= 2, got {oversampling}")
    c = _symbols(word)
    size = len(c) * oversampling
    return np.abs(np.fft.ifft(c, size) * size) ** 2


@dataclass(frozen=True)
class PmeprReport:
    n: int
    L: int
    pmepr: float
    argmax_theta: float

    def to_json(self) -> dict:
        return {"n": self.n, "L": self.L, "pmepr": self.pmepr, "argmax_theta": self.argmax_theta}


def pmepr_report(word, cfg: EnvelopeConfig = EnvelopeConfig()) -> PmeprReport:
    # |S| does not depend on zeta, so the grid ignores it
    power = envelope_power_grid(word, cfg.oversampling)
    n = len(power) // cfg.oversampling
    j = int(np.argmax(power))
    return PmeprReport(n, cfg.oversampling, float(power[j] / n), j / len(power))


def pmepr(word, cfg: EnvelopeConfig = EnvelopeConfig()) -> float:
    """Oversampled-grid PMEPR, a lower bound on the true supremum."""
    return pmepr_report(word, cfg).pmepr

"""Bit-level encoding onto coset codes and supercode maximum-likelihood decoding."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codes import CosetCode, LinearCode
from .errors import BudgetError, ParameterError
from .gbf import ZqWord, polyphase

DECODE_BUDGET = 1 << 26  # base codewords times length


@dataclass(frozen=True)
class MessageBits:
    """``bits[:t]`` select the coset (little-endian), ``bits[t:]`` feed the base code."""

    bits: tuple[int, ...]
    t: int = 0

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise ParameterError("message bits must be 0 or 1")
        if not 0 <= self.t <= len(self.bits):
            raise ParameterError("coset-selector width exceeds message length")

    @classmethod
    def from_int(cls, value: int, length: int, t: int = 0) -> MessageBits:
        if not 0 <= value < 1 << length:
            raise ParameterError(f"message value {value} does not fit in {length} bits")
        return cls(tuple(value >> i & 1 for i in range(length)), t)

    @property
    def value(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    @property
    def coset_index(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits[: self.t]))

    @property
    def base_value(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits[self.t :]))

    def to_hex(self) -> str:
        return format(self.value, "x")


def _as_coset_code(code) -> CosetCode:
    if isinstance(code, LinearCode):
        zero = ZqWord(code.q, (0,) * code.n)
        return CosetCode(code, [zero], code.k or 0, code.r, code.r, code.m, code.h, 1)
    return code


def base_coefficients(base: LinearCode, value: int) -> np.ndarray:
    """Split a base-code message into per-generator coefficients, first row least significant."""
    coeffs = np.empty(len(base.row_bits), dtype=np.int64)
    for j, b in enumerate(base.row_bits):
        coeffs[j] = value & ((1 << b) - 1)
        value >>= b
    return coeffs


def encode(code, msg: MessageBits | int) -> ZqWord:
    code = _as_coset_code(code)
    length = code.s + code.t
    if isinstance(msg, int):
        msg = MessageBits.from_int(msg, length, code.t)
    if len(msg.bits) != length:
        raise ParameterError(f"message has {len(msg.bits)} bits, code encodes {length}")
    if msg.t != code.t:
        msg = MessageBits(msg.bits, code.t)
    rep = np.array(code.reps[msg.coset_index].entries, dtype=np.int64)
    word = (rep + code.base.encode_coefficients(base_coefficients(code.base, msg.base_value))) % code.q
    return ZqWord(code.q, word)


@dataclass(frozen=True)
class DecodeResult:
    message: MessageBits
    word: ZqWord
    metric: float

    def to_json(self) -> dict:
        return {"bits": self.message.to_hex(), "metric": self.metric, "word": list(self.word.entries)}


class ExhaustiveDecoder:
    """Nearest-codeword decoder for a linear code by full enumeration.

    Row ``i`` of ``words`` is the encoding of base message ``i``.
    """

    def __init__(self, base: LinearCode):
        if (1 << base.size_bits) * base.n > DECODE_BUDGET:
            raise BudgetError(f"base code with 2^{base.size_bits} words exceeds the decoding budget")
        self.base = base
        self.words = base.span()
        symbols = polyphase(self.words, base.q)
        # real form of the symbols so that Re(y . conj(p)) becomes one matmul
        self._basis = np.concatenate([symbols.real, symbols.imag], axis=1).T

    def correlations(self, y: np.ndarray) -> np.ndarray:
        """Re(sum_i y_i conj(p_i)) for each codeword p; y has shape (batch, n)."""
        return np.concatenate([y.real, y.imag], axis=1) @ self._basis


def _received(rx, n: int) -> np.ndarray:
    y = np.asarray(rx, dtype=complex)
    if y.ndim == 1:
        y = y[None, :]
    if y.shape[-1] != n:
        raise ParameterError(f"received vector has length {y.shape[-1]}, expected {n}")
    if not np.all(np.isfinite(y)):
        raise ParameterError("received samples must be finite")
    return y


def decode_many(code, rx, decoder: ExhaustiveDecoder | None = None) -> list[DecodeResult]:
    """Supercode decoding: strip each representative, decode in the base code, keep the best.

    Ties resolve to the smallest coset index, then the smallest base message.
    """
    code = _as_coset_code(code)
    y = _received(rx, code.n)
    decoder = decoder or ExhaustiveDecoder(code.base)
    batch = max(1, (1 << 22) // len(decoder.words))
    if len(y) > batch:
        out = []
        for start in range(0, len(y), batch):
            out += decode_many(code, y[start : start + batch], decoder)
        return out
    energy = np.sum(np.abs(y) ** 2, axis=1) + code.n
    best_metric = np.full(len(y), np.inf)
    best_coset = np.zeros(len(y), dtype=np.int64)
    best_base = np.zeros(len(y), dtype=np.int64)
    for ci in range(len(code.reps)):
        rep = np.array(code.reps[ci].entries)
        corr = decoder.correlations(y * np.conj(polyphase(rep, code.q)))
        j = np.argmax(corr, axis=1)
        metric = energy - 2 * corr[np.arange(len(y)), j]
        better = metric < best_metric
        best_metric[better] = metric[better]
        best_coset[better] = ci
        best_base[better] = j[better]
    out = []
    for metric, ci, bi in zip(best_metric, best_coset, best_base):
        value = int(ci) | int(bi) << code.t
        msg = MessageBits.from_int(value, code.s + code.t, code.t)
        rep = np.array(code.reps[int(ci)].entries)
        word = ZqWord(code.q, (rep + decoder.words[bi]) % code.q)
        out.append(DecodeResult(msg, word, float(max(metric, 0.0))))
    return out


def decode(code, rx: Sequence[complex], decoder: ExhaustiveDecoder | None = None) -> DecodeResult:
    return decode_many(code, rx, decoder)[0]


def codebook(code) -> np.ndarray:
    """Every codeword, row ``v`` being the encoding of message value ``v``."""
    code = _as_coset_code(code)
    base = code.base.span()
    reps = np.array([code.reps[i].entries for i in range(len(code.reps))])
    # value = coset | base << t, so the coset index varies fastest
    return ((base[:, None, :] + reps[None, :, :]) % code.q).reshape(-1, code.n)


def brute_force_decode(code, rx) -> tuple[int, float]:
    """Oracle: (message value, metric) minimising sum |rx - xi^w|^2 over the whole codebook."""
    code = _as_coset_code(code)
    y = _received(rx, code.n)[0]
    words = codebook(code)
    metrics = np.sum(np.abs(y[None, :] - polyphase(words, code.q)) ** 2, axis=1)
    v = int(np.argmin(metrics))
    return v, float(metrics[v])

"""Output alphabets, threshold quantization maps and symbolic texts.

A return series is turned into a text over an even-cardinality alphabet by a
threshold map: 2N-1 strictly increasing breakpoints split the real line into
2N intervals, the outer two unbounded (inputs are clamped into the first and
last letter).  Letters are rendered as the digit characters '0', '1', ...,
'A', 'B', ... in interval order, so texts stay printable and diff-able.
"""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateReturns, NonMonotoneThresholds
from .ingest import ReturnSeries

_DIGITS = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"

TIE_LOWER = "lower"
TIE_UPPER = "upper"


def _default_letters(n_half: int) -> tuple[str, ...]:
    size = 2 * n_half
    if size > len(_DIGITS):
        raise ValueError(f"cardinality {size} exceeds the printable digit set")
    return tuple(_DIGITS[:size])


@dataclass(frozen=True)
class Alphabet:
    """Ordered letter set of cardinality 2N, indexed by {-N..-1, 1..N}.

    Index 0 is deliberately absent: the first N letters carry negative
    indexes (down moves), the last N positive ones (up moves).
    """

    n_half: int
    letters: tuple[str, ...]

    def __post_init__(self):
        if self.n_half < 1:
            raise ValueError("n_half must be >= 1")
        if len(self.letters) != 2 * self.n_half:
            raise ValueError("alphabet must hold exactly 2N letters")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("alphabet letters must be distinct")
        if any(len(c) != 1 for c in self.letters):
            raise ValueError("letters must be single characters")

    @classmethod
    def of_half_size(cls, n_half: int) -> "Alphabet":
        return cls(n_half, _default_letters(n_half))

    @property
    def cardinality(self) -> int:
        return 2 * self.n_half

    def position_of(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise KeyError(f"letter {letter!r} not in alphabet") from None

    def index_of_position(self, position: int) -> int:
        """Signed index in {-N..-1, 1..N} of the letter at `position`."""
        if not 0 <= position < self.cardinality:
            raise IndexError(position)
        return position - self.n_half if position < self.n_half else position - self.n_half + 1

    def position_of_index(self, index: int) -> int:
        if index == 0 or not -self.n_half <= index <= self.n_half:
            raise IndexError(index)
        return index + self.n_half if index < 0 else index + self.n_half - 1


@dataclass(frozen=True)
class QuantizationMap:
    """Total mapping from reals to alphabet letters via ordered thresholds.

    With tie_policy 'lower' a value equal to a threshold falls into the
    interval below it; with 'upper' into the one above.
    """

    alphabet: Alphabet
    thresholds: tuple[float, ...]
    tie_policy: str = TIE_LOWER

    def __post_init__(self):
        expected = self.alphabet.cardinality - 1
        if len(self.thresholds) != expected:
            raise ValueError(
                f"need {expected} thresholds for cardinality {self.alphabet.cardinality}, "
                f"got {len(self.thresholds)}")
        arr = np.asarray(self.thresholds, dtype=np.float64)
        if not np.all(np.diff(arr) > 0):
            raise NonMonotoneThresholds(
                f"thresholds must be strictly increasing, got {list(self.thresholds)}")
        if self.tie_policy not in (TIE_LOWER, TIE_UPPER):
            raise ValueError(f"unknown tie_policy {self.tie_policy!r}")

    def positions(self, values) -> np.ndarray:
        """Letter positions (0-based) for an array of real values."""
        arr = np.asarray(values, dtype=np.float64)
        side = "left" if self.tie_policy == TIE_LOWER else "right"
        return np.searchsorted(np.asarray(self.thresholds), arr, side=side).astype(np.int64)

    def letter_for(self, value: float) -> str:
        return self.alphabet.letters[int(self.positions([value])[0])]

    def to_json_dict(self) -> dict:
        return {
            "N": self.alphabet.n_half,
            "thresholds": list(self.thresholds),
            "tie_policy": self.tie_policy,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, payload: dict) -> "QuantizationMap":
        alphabet = Alphabet.of_half_size(int(payload["N"]))
        return cls(alphabet,
                   tuple(float(t) for t in payload["thresholds"]),
                   payload.get("tie_policy", TIE_LOWER))

    @classmethod
    def from_json(cls, text: str) -> "QuantizationMap":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class SymbolText:
    """A quantized series: letter positions over an alphabet, optional dates.

    `looped` texts are read circularly when counting n-grams (the window set
    wraps around the end); market texts are never looped.
    """

    codes: np.ndarray
    alphabet: Alphabet
    looped: bool = False
    dates: tuple[dt.date, ...] | None = None

    def __post_init__(self):
        codes = np.ascontiguousarray(self.codes, dtype=np.int64)
        if codes.ndim != 1 or codes.shape[0] < 1:
            raise ValueError("text must be a non-empty 1-d sequence")
        if codes.min() < 0 or codes.max() >= self.alphabet.cardinality:
            raise ValueError("letter position out of alphabet range")
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)
        if self.dates is not None and len(self.dates) != codes.shape[0]:
            raise ValueError("dates must align one-to-one with letters")

    @classmethod
    def from_letters(cls, letters: str, alphabet: Alphabet, looped: bool = False,
                     dates: tuple[dt.date, ...] | None = None) -> "SymbolText":
        codes = np.fromiter((alphabet.position_of(c) for c in letters),
                            dtype=np.int64, count=len(letters))
        return cls(codes, alphabet, looped=looped, dates=dates)

    def __len__(self) -> int:
        return int(self.codes.shape[0])

    @property
    def letters(self) -> str:
        table = self.alphabet.letters
        return "".join(table[c] for c in self.codes)

    def between(self, start: dt.date, end: dt.date) -> "SymbolText":
        """Sub-text of letters dated within [start, end] (never looped)."""
        if self.dates is None:
            raise ValueError("text carries no dates")
        keep = [i for i, d in enumerate(self.dates) if start <= d <= end]
        if not keep:
            raise ValueError(f"no letters dated within {start}..{end}")
        idx = np.asarray(keep, dtype=np.int64)
        return SymbolText(self.codes[idx], self.alphabet, looped=False,
                          dates=tuple(self.dates[i] for i in keep))


def make_binary_alphabet() -> tuple[Alphabet, QuantizationMap]:
    """The two-letter up/down alphabet: '0' for p <= 0, '1' for p > 0."""
    alphabet = Alphabet.of_half_size(1)
    return alphabet, QuantizationMap(alphabet, (0.0,), TIE_LOWER)


def make_threshold_map(n_half: int, thresholds, tie_policy: str = TIE_LOWER) -> QuantizationMap:
    """Quantization map of cardinality 2N from 2N-1 increasing thresholds."""
    alphabet = Alphabet.of_half_size(n_half)
    return QuantizationMap(alphabet, tuple(float(t) for t in thresholds), tie_policy)


def quantize_series(returns: ReturnSeries, qmap: QuantizationMap) -> SymbolText:
    """Map every return through the quantization intervals, keeping dates."""
    if len(returns.values) == 0:
        raise ValueError("empty return series")
    codes = qmap.positions(returns.values)
    return SymbolText(codes, qmap.alphabet, looped=False, dates=returns.dates)


def staircase_alphabets(k_max: int, returns: ReturnSeries) -> list[QuantizationMap]:
    """Equal-mass quantile maps of cardinality 2^k for k = 1..k_max.

    Thresholds are empirical quantiles of the returns so that every letter
    gets roughly equal mass even for heavy-tailed inputs; the middle
    threshold is forced to 0 to preserve the up/down split.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    values = np.asarray(returns.values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("empty return series")
    maps = []
    for k in range(1, k_max + 1):
        size = 2 ** k
        qs = np.quantile(values, np.arange(1, size) / size)
        qs[size // 2 - 1] = 0.0
        if not np.all(np.diff(qs) > 0):
            raise DegenerateReturns(
                f"too few distinct return values for {size} equal-mass letters (k={k})")
        maps.append(make_threshold_map(size // 2, qs))
    return maps

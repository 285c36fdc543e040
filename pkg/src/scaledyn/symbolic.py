"""Symbol sequences over a metric alphabet and the shift dynamics on them.

A multiscale function is encoded by the word obtained from expanding its
block pattern: parameter a_1 repeated N_1 times, then a_2 repeated N_2 times,
and so on.  An infinite final block becomes a declared constant tail, which
makes the sequence conceptually infinite; a sequence without a declared tail
is a finite observation window and operations that need symbols past its end
raise an insufficient-data error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InsufficientDataError, ScaleDynError
from .scale_functions import INFINITE, MultiscalePattern
from .timescale import as_fraction

# tail kinds: None (finite window), ("const", c), ("period", (c1, ..., cp))


@dataclass(frozen=True)
class SymbolSequence:
    prefix: tuple
    tail: tuple | None = None

    def __post_init__(self):
        if self.tail is not None:
            kind = self.tail[0]
            if kind == "const":
                pass
            elif kind == "period":
                if not self.tail[1]:
                    raise ScaleDynError("declared period must be nonempty")
            else:
                raise ScaleDynError(f"unknown tail kind {kind!r}")

    @property
    def infinite(self) -> bool:
        return self.tail is not None

    def __len__(self) -> int:
        if self.infinite:
            raise ScaleDynError("sequence with a declared tail has no finite length")
        return len(self.prefix)

    def symbol_at(self, i: int):
        """1-based lookup, expanding the declared tail when i runs past the prefix."""
        if i < 1:
            raise ScaleDynError(f"symbol index must be >= 1, got {i}")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        if self.tail is None:
            raise InsufficientDataError(
                f"index {i} past a finite window of {len(self.prefix)} symbols")
        if self.tail[0] == "const":
            return self.tail[1]
        period = self.tail[1]
        return period[(i - 1 - len(self.prefix)) % len(period)]

    def window(self, n: int) -> tuple:
        return tuple(self.symbol_at(i) for i in range(1, n + 1))


def expand_pattern(pattern: MultiscalePattern) -> SymbolSequence:
    """The canonical word of a block pattern; infinite last block becomes a tail."""
    prefix: list = []
    tail = None
    for a, c in zip(pattern.params, pattern.counts):
        if c == INFINITE:
            tail = ("const", a)
        else:
            prefix.extend([a] * c)
    return SymbolSequence(tuple(prefix), tail)


def _d01(x, y) -> float:
    d = abs(float(x) - float(y))
    return d / (1 + d)


def sequence_metric(s: SymbolSequence, s2: SymbolSequence, truncation: int):
    """Truncated metric sum_{i<=N} 2**-i d(s_i, s2_i)/(1 + d), with tail bound 2**-N.

    Each summand is at most 2**-i, so dropping everything past N costs at most
    2**-N; the bound is returned alongside the value.
    """
    if truncation < 1:
        raise ScaleDynError("truncation must be a positive integer")
    total = 0.0
    for i in range(1, truncation + 1):
        total += 2.0 ** -i * _d01(s.symbol_at(i), s2.symbol_at(i))
    return total, 2.0 ** -truncation


def shift(s: SymbolSequence) -> SymbolSequence:
    """Drop the first symbol.  Declared tails shift through unchanged."""
    if s.prefix:
        return SymbolSequence(s.prefix[1:], s.tail)
    if s.tail is None:
        raise ScaleDynError("cannot shift an empty sequence")
    if s.tail[0] == "const":
        return s
    period = s.tail[1]
    return SymbolSequence((), ("period", period[1:] + period[:1]))


def _same_symbol(x, y, tol: float) -> bool:
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        return x == y
    return abs(float(x) - float(y)) <= tol


@dataclass(frozen=True)
class ClassificationReport:
    status: str  # "eventually-periodic" | "no-period-detected-within-horizon"
    period: int | None = None
    preperiod: int | None = None
    horizon: int = 0

    @property
    def inconclusive(self) -> bool:
        # finite data can refute periodicity within the horizon, never certify
        # aperiodicity
        return self.status == "no-period-detected-within-horizon"


def classify(s: SymbolSequence, horizon: int, tol: float = 1e-12) -> ClassificationReport:
    """Scan for eventual periodicity within the first ``horizon`` symbols.

    Brute force over preperiod q <= H/2 and period p <= H/2: the window must
    satisfy s[q+i] == s[q+i+p] wherever both indices fit.  The smallest (q, p)
    in lexicographic order wins.  No detection is reported as inconclusive.
    """
    if horizon < 2:
        raise ScaleDynError("horizon must be >= 2")
    word = s.window(horizon)
    half = horizon // 2
    for q in range(0, half + 1):
        for p in range(1, half + 1):
            span = horizon - q - p
            if span < 1:
                break
            if all(_same_symbol(word[q + i], word[q + i + p], tol)
                   for i in range(span)):
                return ClassificationReport("eventually-periodic", period=p,
                                            preperiod=q, horizon=horizon)
    return ClassificationReport("no-period-detected-within-horizon", horizon=horizon)


def read_sequence(path: str) -> SymbolSequence:
    """One symbol per line, decimal or p/q rational literal; finite window."""
    syms = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                syms.append(as_fraction(line))
            except (ValueError, ZeroDivisionError):
                syms.append(float(line))
    return SymbolSequence(tuple(syms))

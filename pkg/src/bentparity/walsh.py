"""Walsh-Hadamard spectrum, nonlinearity and bentness on the full space."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BooleanFunction, hamming_weight


def signed(bits: np.ndarray) -> np.ndarray:
    """Map bits to the +1/-1 table ``(-1)^bit`` as int32."""
    return 1 - 2 * np.asarray(bits, dtype=np.int32)


def fwht(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard butterfly along the last axis.

    Works on a copy; leading axes are a batch. Entries stay within
    ``[-2^n, 2^n]`` so int32 suffices up to n = 30.
    """
    v = np.array(values, dtype=np.int32, copy=True)
    size = v.shape[-1]
    lead = v.shape[:-1]
    h = 1
    while h < size:
        blocks = v.reshape(*lead, -1, 2, h)
        lo = blocks[..., 0, :].copy()
        blocks[..., 0, :] += blocks[..., 1, :]
        lo -= blocks[..., 1, :]
        blocks[..., 1, :] = lo
        h <<= 1
    return v


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    values: np.ndarray

    def __getitem__(self, a: int) -> int:
        return int(self.values[a])

    def max_abs(self) -> int:
        return int(np.abs(self.values).max())

    def parseval_sum(self) -> int:
        return int(np.sum(self.values.astype(np.int64) ** 2))


def walsh_spectrum(f: BooleanFunction) -> WalshSpectrum:
    values = fwht(signed(f.bits))
    values.setflags(write=False)
    return WalshSpectrum(f.n, values)


def nonlinearity_from_spectrum(spec: WalshSpectrum) -> int:
    return (1 << (spec.n - 1)) - spec.max_abs() // 2


def nonlinearity(f: BooleanFunction) -> int:
    return nonlinearity_from_spectrum(walsh_spectrum(f))


def bent_nonlinearity(n: int) -> int:
    """The bent bound ``2^(n-1) - 2^(n/2 - 1)`` for even n."""
    return (1 << (n - 1)) - (1 << (n // 2 - 1))


def is_bent_spectrum(spec: WalshSpectrum) -> bool:
    if spec.n % 2:
        return False
    return bool(np.all(np.abs(spec.values) == 1 << (spec.n // 2)))


def is_bent(f: BooleanFunction) -> bool:
    """Flat spectrum test; always False for odd n."""
    return f.n % 2 == 0 and is_bent_spectrum(walsh_spectrum(f))


def first_non_flat_position(f: BooleanFunction) -> int | None:
    """First ``a`` with ``|W_f(a)| != 2^(n/2)``, or None when f is bent.

    For odd n position 0 is returned, since no flat spectrum exists.
    """
    if f.n % 2:
        return 0
    spec = walsh_spectrum(f).values
    bad = np.flatnonzero(np.abs(spec) != 1 << (f.n // 2))
    return int(bad[0]) if bad.size else None


@dataclass(frozen=True)
class SpectrumSummary:
    n: int
    weight: int
    max_abs: int
    nonlinearity: int
    bent: bool


def summarize(f: BooleanFunction) -> SpectrumSummary:
    spec = walsh_spectrum(f)
    return SpectrumSummary(
        n=f.n,
        weight=hamming_weight(f),
        max_abs=spec.max_abs(),
        nonlinearity=nonlinearity_from_spectrum(spec),
        bent=is_bent_spectrum(spec),
    )

"""Weight-parity classes, restricted balancedness and restricted Walsh sums.

``C_0`` (even Hamming weight) is the [n, n-1, 2] single-parity-check code and
``C_1`` (odd weight) its only other coset. Most queries here are about how a
function splits across these two classes, or how it behaves when only the
points of an affine subspace are kept while linear masks still range over
all of F_2^n.
"""

from __future__ import annotations

import concurrent.futures
import os
from dataclasses import dataclass, field

import numpy as np

from .core import BooleanFunction, _check_n, format_hex, hamming_weight, parity_of, point_indices
from .errors import DomainError, PreconditionError
from .walsh import WalshSpectrum, fwht, is_bent_spectrum, nonlinearity_from_spectrum, signed, walsh_spectrum


# ------------------------------------------------------------------ subspaces


def _echelon(vectors) -> dict[int, int]:
    """Reduce vectors over F_2; maps leading bit -> reduced vector."""
    pivots: dict[int, int] = {}
    for v in vectors:
        v = int(v)
        while v:
            lead = v.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = v
                break
            v ^= pivots[lead]
    return pivots


def _reduce(v: int, pivots: dict[int, int]) -> int:
    while v:
        lead = v.bit_length() - 1
        if lead not in pivots:
            return v
        v ^= pivots[lead]
    return 0


@dataclass(frozen=True)
class AffineSubspace:
    """``offset + span(basis)`` inside F_2^n.

    ``parity`` is set only for the two weight-parity classes built by
    :meth:`even_weight` / :meth:`odd_weight`; their points are then listed by
    a popcount filter instead of walking the basis.
    """

    n: int
    basis: tuple[int, ...]
    offset: int = 0
    parity: int | None = field(default=None, compare=False)

    def __post_init__(self):
        _check_n(self.n)
        limit = 1 << self.n
        for v in (*self.basis, self.offset):
            if not 0 <= v < limit:
                raise DomainError(f"vector {v} is not in F_2^{self.n}")
        if len(_echelon(self.basis)) != len(self.basis):
            raise DomainError("basis vectors are linearly dependent")
        if self.parity is not None:
            if len(self.basis) != self.n - 1 or any(b.bit_count() % 2 for b in self.basis):
                raise DomainError("parity class needs an even-weight basis of size n-1")
            if self.offset.bit_count() % 2 != self.parity:
                raise DomainError("offset weight does not match the parity class")

    @classmethod
    def full(cls, n: int) -> "AffineSubspace":
        return cls(n, tuple(1 << j for j in range(_check_n(n))))

    @classmethod
    def even_weight(cls, n: int) -> "AffineSubspace":
        n = _check_n(n)
        return cls(n, tuple(3 << j for j in range(n - 1)), 0, parity=0)

    @classmethod
    def odd_weight(cls, n: int) -> "AffineSubspace":
        n = _check_n(n)
        return cls(n, tuple(3 << j for j in range(n - 1)), 1, parity=1)

    @property
    def m(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return 1 << self.m

    def points(self) -> np.ndarray:
        """All 2^m points; reflected Gray-code order over the basis."""
        if self.parity is not None:
            idx = point_indices(self.n)
            return idx[parity_of(idx) == self.parity]
        pts = np.array([self.offset], dtype=np.int64)
        for v in self.basis:
            pts = np.concatenate([pts, pts[::-1] ^ v])
        return pts

    def contains(self, x: int) -> bool:
        x = int(x)
        if not 0 <= x < 1 << self.n:
            return False
        if self.parity is not None:
            return x.bit_count() % 2 == self.parity
        return _reduce(x ^ self.offset, _echelon(self.basis)) == 0

    def mask(self) -> np.ndarray:
        out = np.zeros(1 << self.n, dtype=bool)
        out[self.points()] = True
        return out


@dataclass(frozen=True)
class RestrictedFunction:
    """A function known only on the points of ``domain``.

    ``base`` is any function on the ambient space that agrees with it there;
    its values off the domain are never read.
    """

    base: BooleanFunction
    domain: AffineSubspace

    def __post_init__(self):
        if self.base.n != self.domain.n:
            raise DomainError("ambient dimensions of function and subspace differ")

    def __call__(self, x: int) -> int:
        if not self.domain.contains(x):
            raise DomainError(f"point {x} is outside the restricted domain")
        return self.base[x]

    def values(self) -> np.ndarray:
        return self.base.bits[self.domain.points()]


def _resolve(f, c: AffineSubspace | None) -> tuple[BooleanFunction, AffineSubspace]:
    if isinstance(f, RestrictedFunction):
        base, dom = f.base, f.domain
        if c is not None and c != dom:
            raise DomainError("explicit subspace differs from the function's domain")
        return base, dom
    if c is None:
        raise DomainError("a subspace is required for an unrestricted function")
    if f.n != c.n:
        raise DomainError(f"function on {f.n} variables, subspace of F_2^{c.n}")
    return f, c


# --------------------------------------------------------- parity partition


@dataclass(frozen=True, eq=False)
class WeightParityPartition:
    n: int
    even_set: np.ndarray
    odd_set: np.ndarray

    def _member(self, which: np.ndarray) -> np.ndarray:
        mask = np.zeros(1 << self.n, dtype=bool)
        mask[which] = True
        return mask

    def is_xor_closed(self) -> bool:
        """Every pairwise XOR of even-set points lands back in the even set."""
        inside = self._member(self.even_set)
        ev = self.even_set
        # row-chunked to bound memory at n = 12 (2048 x 2048)
        for start in range(0, ev.size, 512):
            if not inside[ev[start:start + 512, None] ^ ev[None, :]].all():
                return False
        return True

    def contains_zero(self) -> bool:
        return bool(self._member(self.even_set)[0])

    def min_nonzero_weight(self) -> int:
        nz = self.even_set[self.even_set != 0]
        if nz.size == 0:
            return 0
        return int(np.bitwise_count(nz).min())

    def coset_is_odd_set(self, b: int) -> bool:
        """Whether ``b xor even_set`` is exactly the odd set."""
        shifted = np.sort(self.even_set ^ b)
        return shifted.size == self.odd_set.size and bool(np.array_equal(shifted, np.sort(self.odd_set)))


def partition(n: int) -> WeightParityPartition:
    n = _check_n(n)
    idx = point_indices(n)
    par = parity_of(idx)
    even, odd = idx[par == 0], idx[par == 1]
    even.setflags(write=False)
    odd.setflags(write=False)
    return WeightParityPartition(n, even, odd)


# ---------------------------------------------------------------- balance


@dataclass(frozen=True)
class RestrictedBalanceReport:
    zeros_even: int
    ones_even: int
    zeros_odd: int
    ones_odd: int

    @property
    def balanced_even(self) -> bool:
        return self.zeros_even == self.ones_even

    @property
    def balanced_odd(self) -> bool:
        return self.zeros_odd == self.ones_odd

    @property
    def balanced_class(self) -> str:
        """One of ``"even"``, ``"odd"``, ``"both"``, ``"none"``."""
        if self.balanced_even and self.balanced_odd:
            return "both"
        if self.balanced_even:
            return "even"
        if self.balanced_odd:
            return "odd"
        return "none"


def restricted_balance(f: BooleanFunction) -> RestrictedBalanceReport:
    odd = parity_of(point_indices(f.n)).astype(bool)
    bits = f.bits
    half = 1 << (f.n - 1)
    ones_even = int(bits[~odd].sum())
    ones_odd = int(bits[odd].sum())
    return RestrictedBalanceReport(half - ones_even, ones_even, half - ones_odd, ones_odd)


def balance_from_spectrum(spec: WalshSpectrum) -> RestrictedBalanceReport:
    """Class counts recovered from two spectral values.

    Summing ``(-1)^f`` over one parity class gives ``(W(0) +- W(1...1)) / 2``,
    which together with the class size fixes both counts.
    """
    n = spec.n
    allones = (1 << n) - 1
    half = 1 << (n - 1)
    even_sum = (spec[0] + spec[allones]) // 2
    odd_sum = (spec[0] - spec[allones]) // 2
    return RestrictedBalanceReport(
        (half + even_sum) // 2, (half - even_sum) // 2, (half + odd_sum) // 2, (half - odd_sum) // 2
    )


# ----------------------------------------------------------- restricted Walsh


def restricted_walsh(f, c: AffineSubspace | None, a: int) -> int:
    """Signed sum of ``(-1)^(f(x) xor a.x)`` over the points of ``c`` only."""
    base, dom = _resolve(f, c)
    if not 0 <= a < 1 << dom.n:
        raise DomainError(f"mask {a} is not in F_2^{dom.n}")
    pts = dom.points()
    exps = base.bits[pts] ^ parity_of(pts & a)
    return int(signed(exps).sum())


def restricted_walsh_spectrum(f, c: AffineSubspace | None = None) -> np.ndarray:
    """Restricted Walsh values for every ambient mask ``a``.

    Zeroing the signed table off ``c`` and running the ordinary butterfly
    gives all 2^n sums at once.
    """
    base, dom = _resolve(f, c)
    table = np.zeros(1 << dom.n, dtype=np.int32)
    pts = dom.points()
    table[pts] = signed(base.bits[pts])
    return fwht(table)


def restricted_nonlinearity(f, c: AffineSubspace | None = None) -> int:
    _, dom = _resolve(f, c)
    peak = int(np.abs(restricted_walsh_spectrum(f, c)).max())
    return (dom.size - peak) // 2


def restricted_bent_bound(m: int) -> int:
    return ((1 << m) - (1 << (m // 2))) // 2


def is_restricted_bent(f, c: AffineSubspace | None = None) -> bool:
    _, dom = _resolve(f, c)
    if dom.m % 2 or dom.m == 0:
        raise DomainError(f"restricted bentness needs an even subspace dimension >= 2, got m={dom.m}")
    return restricted_nonlinearity(f, c) == restricted_bent_bound(dom.m)


# ---------------------------------------------------------- verification


def _theorem4_chunk(n: int, count: int, seed_seq: np.random.SeedSequence):
    from .construct import random_bent_sample
    from .oracle import EnumerationSummary

    rng = np.random.default_rng(seed_seq)
    summary = EnumerationSummary(n=n)
    for _ in range(count):
        f = random_bent_sample(n, rng)
        spec = walsh_spectrum(f)
        rep = restricted_balance(f)
        summary.record(f, is_bent_spectrum(spec), rep)
    return summary


def verify_parity_balance_theorem(
    n: int,
    *,
    samples: int = 10_000,
    rng_seed: int = 0,
    sampled: bool | None = None,
    threads: int | None = None,
    chunk: int = 1000,
):
    """Check that every bent function is balanced on one weight-parity class.

    n in {2, 4} is exhaustive unless ``sampled`` is forced; larger even n is
    sampled from Maiorana-McFarland seeds under random affine equivalence.
    Returns an :class:`~bentparity.oracle.EnumerationSummary`. The result
    does not depend on ``threads``: work is split into fixed chunks whose
    RNG streams are spawned from ``rng_seed``.
    """
    from .oracle import EnumerationSummary, enumerate_bent

    n = _check_n(n)
    if n % 2:
        raise DomainError(f"bent functions need an even variable count, got n={n}")
    if sampled is None:
        sampled = n > 4
    if not sampled:
        if n > 4:
            raise DomainError(f"exhaustive verification is limited to n <= 4, got n={n}")
        return enumerate_bent(n, threads=threads)
    if n > 16:
        raise DomainError("sampled verification supports n <= 16")

    counts = [min(chunk, samples - i) for i in range(0, samples, chunk)]
    seeds = np.random.SeedSequence(rng_seed).spawn(len(counts))
    workers = threads or os.cpu_count() or 1
    total = EnumerationSummary(n=n)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(lambda args: _theorem4_chunk(n, *args), zip(counts, seeds)):
            total = total.merge(part)
    return total


@dataclass
class CorollaryReport:
    """Per-position outcome of the spectral sign relations between g and its lifts.

    ``item2_failures`` / ``item3_failures`` are evaluated as literally stated,
    conditioned on which weight class of ``g`` itself is balanced. The
    ``exact_failures`` list checks the identities that the lifts satisfy by
    direct computation::

        W_ge0(a, 1) ==  W_g(a ^ 1...1)
        W_ge1(a, 1) == -W_g(a ^ 1...1)
    """

    n: int
    balanced_class: str
    item1_failures: list[int] = field(default_factory=list)
    item2_failures: list[int] = field(default_factory=list)
    item3_failures: list[int] = field(default_factory=list)
    exact_failures: list[int] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not (self.item1_failures or self.item2_failures or self.item3_failures)


def verify_spectral_sign_corollary(g: BooleanFunction) -> CorollaryReport:
    from .construct import lift_even, lift_odd

    spec = walsh_spectrum(g)
    if not is_bent_spectrum(spec):
        raise PreconditionError("spectral sign relations need a bent g")
    k = 1 << (g.n // 2)
    allones = (1 << g.n) - 1
    top = 1 << g.n
    w_g = spec.values
    w_e0 = restricted_walsh_spectrum(lift_even(g))
    w_e1 = restricted_walsh_spectrum(lift_odd(g))
    bal = balance_from_spectrum(spec)
    report = CorollaryReport(g.n, restricted_balance(g).balanced_class)
    for a in range(1 << g.n):
        if not (w_g[a] == w_e0[a] == w_e1[a]):
            report.item1_failures.append(a)
        e0, e1 = int(w_e0[a | top]), int(w_e1[a | top])
        if bal.balanced_even and (w_g[a] == k) != (e0 == -k and e1 == k):
            report.item2_failures.append(a)
        if bal.balanced_odd and (w_g[a] == -k) != (e0 == k and e1 == -k):
            report.item3_failures.append(a)
        if e0 != w_g[a ^ allones] or e1 != -w_g[a ^ allones]:
            report.exact_failures.append(a)
    return report


# --------------------------------------------------------------- reporting

CSV_COLUMNS = ("function_hex", "wH", "Nl", "bent", "balanced_even", "balanced_odd", "zeros_even", "zeros_odd")


def report_row(f: BooleanFunction) -> dict:
    spec = walsh_spectrum(f)
    rep = restricted_balance(f)
    return {
        "function_hex": format_hex(f),
        "wH": hamming_weight(f),
        "Nl": nonlinearity_from_spectrum(spec),
        "bent": is_bent_spectrum(spec),
        "balanced_even": rep.balanced_even,
        "balanced_odd": rep.balanced_odd,
        "zeros_even": rep.zeros_even,
        "zeros_odd": rep.zeros_odd,
    }

"""Brute-force references for the fast paths and for the construction.

Nothing here calls into the butterfly transforms or the construction code:
bits are pulled straight out of the truth-table integer and dot products
are recounted with ``bin(...).count("1")``.
"""

from __future__ import annotations

import concurrent.futures
import os
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .core import BooleanFunction
from .errors import DomainError, PreconditionError, ResourceError

NAIVE_WALSH_MAX_N = 16
NAIVE_NL_MAX_N = 12


def _dot(a: int, x: int) -> int:
    return bin(a & x).count("1") & 1


def _table(f: BooleanFunction) -> list[int]:
    t = f.to_int()
    return [(t >> x) & 1 for x in range(1 << f.n)]


def naive_walsh(f: BooleanFunction, a: int) -> int:
    """Definitional sum of ``(-1)^(f(x) xor a.x)``, one point at a time."""
    if f.n > NAIVE_WALSH_MAX_N:
        raise ResourceError(f"naive Walsh limited to n <= {NAIVE_WALSH_MAX_N}")
    if not 0 <= a < 1 << f.n:
        raise DomainError(f"mask {a} out of range")
    total = 0
    for x, fx in enumerate(_table(f)):
        total += -1 if fx ^ _dot(a, x) else 1
    return total


def character_matrix(n: int) -> np.ndarray:
    """``H[a, x] = (-1)^(a.x)``, one popcount per entry."""
    idx = np.arange(1 << n)
    return 1 - 2 * (np.bitwise_count(np.bitwise_and.outer(idx, idx)) & 1).astype(np.int64)


def naive_walsh_batch(tables: np.ndarray, n: int) -> np.ndarray:
    """Definitional spectra of many functions at once, as a plain matrix product.

    ``tables`` has shape ``(k, 2^n)`` with 0/1 entries. The product runs in
    float64, which is exact because every partial sum is an integer below 2^13.
    """
    if n > 12:
        raise ResourceError("batched naive Walsh limited to n <= 12")
    signs = 1.0 - 2.0 * np.asarray(tables, dtype=np.float64)
    chars = character_matrix(n).astype(np.float64)
    return np.rint(signs @ chars.T).astype(np.int64)


def _affine_tables(n: int) -> np.ndarray:
    size = 1 << n
    rows = []
    for a0 in (0, 1):
        for a in range(size):
            rows.append([_dot(a, x) ^ a0 for x in range(size)])
    return np.array(rows, dtype=np.int64)


def naive_nonlinearity(f: BooleanFunction) -> int:
    """Minimum Hamming distance to each of the 2^(n+1) affine functions."""
    if f.n > NAIVE_NL_MAX_N:
        raise ResourceError(f"naive nonlinearity limited to n <= {NAIVE_NL_MAX_N}")
    t = np.array(_table(f), dtype=np.uint8)
    best = 1 << f.n
    size = 1 << f.n
    xs = np.arange(size)
    dots = np.array([bin(v).count("1") & 1 for v in range(size)], dtype=np.uint8)
    for a in range(size):
        lin = dots[xs & a]
        d = int(np.count_nonzero(t != lin))
        best = min(best, d, size - d)
    return best


def naive_nonlinearity_batch(tables: np.ndarray, n: int) -> np.ndarray:
    if n > 8:
        raise ResourceError("batched naive nonlinearity limited to n <= 8")
    t = np.asarray(tables, dtype=np.int64)
    aff = _affine_tables(n)
    dist = t.sum(axis=1)[:, None] + aff.sum(axis=1)[None, :] - 2 * (t @ aff.T)
    return dist.min(axis=1)


def definitional_anf(f: BooleanFunction) -> list[int]:
    """``a_u = XOR of f(x) over x <= u`` (bitwise dominance), quadratic time."""
    t = _table(f)
    size = 1 << f.n
    return [
        sum(t[x] for x in range(size) if x & u == x) & 1
        for u in range(size)
    ]


# ---------------------------------------------------------------- enumeration


@dataclass
class EnumerationSummary:
    """Counts over a function population; balance counts cover bent functions only."""

    n: int
    total_functions: int = 0
    bent_count: int = 0
    even_balanced_count: int = 0
    odd_balanced_count: int = 0
    both_balanced_count: int = 0
    counterexamples: list[int] = field(default_factory=list)
    bent_weights: Counter = field(default_factory=Counter)
    bent_nonlinearities: Counter = field(default_factory=Counter)

    def record(self, f: BooleanFunction, bent: bool, report) -> None:
        self.total_functions += 1
        if not bent:
            self.counterexamples.append(f.to_int())
            return
        self._count_bent(f.to_int(), report.balanced_even, report.balanced_odd,
                         report.ones_even + report.ones_odd, None)

    def _count_bent(self, table: int, even: bool, odd: bool, weight: int, nl: int | None) -> None:
        self.bent_count += 1
        self.even_balanced_count += even
        self.odd_balanced_count += odd
        self.both_balanced_count += even and odd
        self.bent_weights[weight] += 1
        if nl is not None:
            self.bent_nonlinearities[nl] += 1
        if not (even or odd):
            self.counterexamples.append(table)

    def merge(self, other: "EnumerationSummary") -> "EnumerationSummary":
        if other.n != self.n:
            raise DomainError("cannot merge summaries for different n")
        return EnumerationSummary(
            self.n,
            self.total_functions + other.total_functions,
            self.bent_count + other.bent_count,
            self.even_balanced_count + other.even_balanced_count,
            self.odd_balanced_count + other.odd_balanced_count,
            self.both_balanced_count + other.both_balanced_count,
            self.counterexamples + other.counterexamples,
            self.bent_weights + other.bent_weights,
            self.bent_nonlinearities + other.bent_nonlinearities,
        )

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def lines(self) -> list[str]:
        return [
            f"n={self.n}",
            f"total_functions={self.total_functions}",
            f"bent_count={self.bent_count}",
            f"even_balanced_count={self.even_balanced_count}",
            f"odd_balanced_count={self.odd_balanced_count}",
            f"both_balanced_count={self.both_balanced_count}",
            f"bent_weights={dict(sorted(self.bent_weights.items()))}",
            f"counterexamples={len(self.counterexamples)}",
        ]


def _all_tables(n: int, start: int, stop: int) -> np.ndarray:
    ids = np.arange(start, stop, dtype=np.int64)
    return ((ids[:, None] >> np.arange(1 << n)) & 1).astype(np.uint8)


def _scan_range(n: int, start: int, stop: int) -> tuple[EnumerationSummary, list[int]]:
    tables = _all_tables(n, start, stop)
    nl = naive_nonlinearity_batch(tables, n)
    bent_nl = (1 << (n - 1)) - (1 << (n // 2 - 1))
    even_mask = np.array([bin(x).count("1") % 2 == 0 for x in range(1 << n)])
    half = 1 << (n - 2)
    ones_even = tables[:, even_mask].sum(axis=1)
    ones_odd = tables[:, ~even_mask].sum(axis=1)
    summary = EnumerationSummary(n, total_functions=stop - start)
    bent_ids = []
    for i in np.flatnonzero(nl == bent_nl):
        table = start + int(i)
        bent_ids.append(table)
        summary._count_bent(table, bool(ones_even[i] == half), bool(ones_odd[i] == half),
                            int(ones_even[i] + ones_odd[i]), int(nl[i]))
    return summary, bent_ids


def _scan(n: int, threads: int | None):
    if n not in (2, 4):
        raise DomainError(f"exhaustive enumeration supports n in {{2, 4}}, got n={n}")
    total = 1 << (1 << n)
    step = 8192
    ranges = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    workers = threads or os.cpu_count() or 1
    summary = EnumerationSummary(n)
    bent: list[int] = []
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        for part, ids in pool.map(lambda r: _scan_range(n, *r), ranges):
            summary = summary.merge(part)
            bent.extend(ids)
    return summary, bent


def enumerate_bent(n: int, threads: int | None = None) -> EnumerationSummary:
    """Scan every truth table on n in {2, 4} variables.

    Bentness is decided by the brute-force affine distance; a bent function
    balanced on neither weight class is recorded as a counterexample.
    """
    return _scan(n, threads)[0]


def all_bent_functions(n: int, threads: int | None = None) -> list[BooleanFunction]:
    return [BooleanFunction.from_int(t, n) for t in _scan(n, threads)[1]]


# ------------------------------------------------------- literal algorithms


def _naive_is_bent(g: BooleanFunction) -> bool:
    if g.n % 2:
        return False
    return all(abs(naive_walsh(g, a)) == 1 << (g.n // 2) for a in range(1 << g.n))


def _place(x: int, ybar: int, y: int, m: int) -> int:
    return x | (ybar << 1) | (y << (m + 1))


def literal_algorithm1(g: BooleanFunction, end: int | None = None) -> BooleanFunction:
    """Flip-table form of the extension, repeated until ``end`` variables.

    A step complements ``g(ybar)`` exactly when (ybar even, x=1, y=1) or
    (ybar odd, x=1, y=0), and copies it otherwise. ``end`` defaults to one step.
    """
    if not _naive_is_bent(g):
        raise PreconditionError("literal algorithm needs a bent seed")
    end = g.n + 2 if end is None else end
    if end <= g.n or (end - g.n) % 2:
        raise DomainError(f"end={end} is not reachable from n={g.n} in steps of 2")
    new = g.n
    table = _table(g)
    while new != end:
        out = [0] * (1 << (new + 2))
        for ybar in range(1 << new):
            even = bin(ybar).count("1") % 2 == 0
            for x in (0, 1):
                for y in (0, 1):
                    if (even and x == 1 and y == 1) or (not even and x == 1 and y == 0):
                        out[_place(x, ybar, y, new)] = 1 ^ table[ybar]
                    else:
                        out[_place(x, ybar, y, new)] = table[ybar]
        table = out
        new += 2
    return BooleanFunction.from_bits(np.array(table, dtype=np.uint8), new)


def _flip_block(a0: int, a: int, even: bool, x: int, y: int) -> bool:
    if a0 == 0 and a == 0:
        return (even and x == 1 and y == 1) or (not even and x == 1 and y == 0)
    if a0 == 0 and a == 1:
        return (even and x == 0 and y == 1) or (
            not even and ((x == 0 and y == 1) or (x == 1 and y == 0) or (x == 1 and y == 1))
        )
    if a0 == 1 and a == 0:
        return (even and x == 1 and y == 0) or (not even and x == 1 and y == 1)
    return (even and ((x == 0 and y == 1) or (x == 1 and y == 0) or (x == 1 and y == 1))) or (
        not even and x == 0 and y == 1
    )


def literal_algorithm2(g: BooleanFunction, off) -> BooleanFunction:
    """Four-block flip-table form of the offset extension.

    ``off`` is a :class:`~bentparity.construct.LinearOffset`; the base value at
    each point is ``(g ^ l_abar)(ybar)`` and the block picked by ``(a0, a_s)``
    decides which of the four ``(x, y)`` positions complement it.
    """
    if not _naive_is_bent(g):
        raise PreconditionError("literal algorithm needs a bent seed")
    m = g.n
    if off.m != m:
        raise DomainError("offset dimension does not match the seed")
    t = _table(g)
    shifted = [t[ybar] ^ _dot(off.a_bar, ybar) for ybar in range(1 << m)]
    out = [0] * (1 << (m + 2))
    for ybar in range(1 << m):
        even = bin(ybar).count("1") % 2 == 0
        for x in (0, 1):
            for y in (0, 1):
                flip = _flip_block(off.a0, off.a_s, even, x, y)
                out[_place(x, ybar, y, m)] = shifted[ybar] ^ flip
    return BooleanFunction.from_bits(np.array(out, dtype=np.uint8), m + 2)


@dataclass(frozen=True)
class Discrepancy:
    block: str
    index: int
    literal: int
    closed_form: int


def compare_tables(literal: BooleanFunction, closed: BooleanFunction, block: str) -> list[Discrepancy]:
    lt, ct = _table(literal), _table(closed)
    return [Discrepancy(block, i, a, b) for i, (a, b) in enumerate(zip(lt, ct)) if a != b]


def compare_algorithm1(g: BooleanFunction) -> list[Discrepancy]:
    from .construct import extend

    return compare_tables(literal_algorithm1(g), extend(g), "a0=0,a=0")


def compare_algorithm2(g: BooleanFunction, off) -> list[Discrepancy]:
    from .construct import extend_with_offset

    block = f"a0={off.a0},a={off.a_s}"
    return compare_tables(literal_algorithm2(g, off), extend_with_offset(g, off), block)

"""Parity-based extended Maiorana-McFarland construction (one new x variable).

From a bent ``g`` on ``m = s - 1`` variables the extension builds::

    f(x, y_1 .. y_m, y_s) = x * (y_1 ^ ... ^ y_m ^ y_s) ^ g(y_1 .. y_m)

on ``m + 2`` variables. Index layout: ``x`` is bit 0, ``y_1 .. y_m`` are bits
1..m (the old variables shifted up by one) and ``y_s`` is bit ``m + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import BooleanFunction, _check_n, parity_of, point_indices
from .errors import ConsistencyError, DomainError, PreconditionError
from .restricted import AffineSubspace, RestrictedFunction, restricted_balance
from .walsh import first_non_flat_position, is_bent, walsh_spectrum


@dataclass(frozen=True)
class LinearOffset:
    """The vector ``b = (a_0, a_bar, a_s)`` of the linear function added after extension.

    ``a_bar`` is an integer whose bit ``j - 1`` is the coefficient of ``y_j``;
    ``m`` is the number of old variables.
    """

    m: int
    a0: int = 0
    a_bar: int = 0
    a_s: int = 0

    def __post_init__(self):
        if self.a0 not in (0, 1) or self.a_s not in (0, 1):
            raise DomainError("a0 and a_s must be bits")
        if self.m < 1 or not 0 <= self.a_bar < 1 << self.m:
            raise DomainError(f"a_bar={self.a_bar} is not a vector of F_2^{self.m}")

    def pack(self) -> int:
        return self.a0 | (self.a_bar << 1) | (self.a_s << (self.m + 1))

    @classmethod
    def unpack(cls, b: int, m: int) -> "LinearOffset":
        if not 0 <= b < 1 << (m + 2):
            raise DomainError(f"offset {b:#x} does not fit in F_2^{m + 2}")
        return cls(m, b & 1, (b >> 1) & ((1 << m) - 1), b >> (m + 1))

    def __str__(self):
        abar = "".join(str(self.a_bar >> j & 1) for j in range(self.m))
        return f"({self.a0},{abar},{self.a_s})"


def expected_balanced_class(off: LinearOffset) -> str:
    """Weight class on which ``extend(g) ^ l_b`` is balanced, for any bent g.

    Both classes' signed sums come from ``W_f(b)`` and ``W_f(b ^ 1...1)``,
    which equal ``2 W_g(c)`` up to the signs ``(-1)^(a0 a_s)`` and
    ``(-1)^((1 ^ a0)(1 ^ a_s))``. The even class cancels exactly when
    ``a0 == a_s``.
    """
    return "even" if off.a0 == off.a_s else "odd"


def _require_bent(g: BooleanFunction) -> None:
    bad = first_non_flat_position(g)
    if bad is not None:
        if g.n % 2:
            raise PreconditionError(f"seed on n={g.n} variables cannot be bent (odd n)")
        value = walsh_spectrum(g)[bad]
        raise PreconditionError(
            f"seed is not bent: W({bad:#x}) = {value}, expected +-{1 << (g.n // 2)}"
        )


def _lift(g: BooleanFunction, parity: int) -> RestrictedFunction:
    s = g.n + 1
    _check_n(s)
    base = BooleanFunction.from_bits(np.tile(g.bits, 2), s)
    dom = AffineSubspace.even_weight(s) if parity == 0 else AffineSubspace.odd_weight(s)
    return RestrictedFunction(base, dom)


def lift_even(g: BooleanFunction) -> RestrictedFunction:
    """``g_e0`` on ``C_0``: the point ``(x | x_s)`` with ``x_s`` the parity of x maps to g(x)."""
    return _lift(g, 0)


def lift_odd(g: BooleanFunction) -> RestrictedFunction:
    return _lift(g, 1)


def _extension_bits(g: BooleanFunction) -> np.ndarray:
    m = g.n
    idx = point_indices(m + 2)
    x = idx & 1
    ybar = (idx >> 1) & ((1 << m) - 1)
    ys = idx >> (m + 1)
    phi = parity_of(ybar) ^ ys
    return (x & phi).astype(np.uint8) ^ g.bits[ybar]


def extend(g: BooleanFunction) -> BooleanFunction:
    _require_bent(g)
    return BooleanFunction.from_bits(_extension_bits(g), g.n + 2)


def extend_with_offset(g: BooleanFunction, off: LinearOffset) -> BooleanFunction:
    if off.m != g.n:
        raise DomainError(f"offset built for m={off.m} old variables, seed has n={g.n}")
    _require_bent(g)
    bits = _extension_bits(g) ^ parity_of(point_indices(g.n + 2) & off.pack())
    return BooleanFunction.from_bits(bits, g.n + 2)


# ------------------------------------------------------------------- chains


@dataclass(frozen=True)
class TraceStep:
    offset: LinearOffset | None
    n: int
    bent: bool
    balanced_class: str
    nonlinearity: int


@dataclass
class ConstructionTrace:
    seed: BooleanFunction
    steps: list[TraceStep] = field(default_factory=list)
    final: BooleanFunction | None = None

    def csv_rows(self) -> list[dict]:
        return [
            {
                "step": i + 1,
                "offset_hex": "" if st.offset is None else format(st.offset.pack(), "x"),
                "offset": "" if st.offset is None else str(st.offset),
                "n": st.n,
                "bent": st.bent,
                "balanced_class": st.balanced_class,
                "Nl": st.nonlinearity,
            }
            for i, st in enumerate(self.steps)
        ]


TRACE_COLUMNS = ("step", "offset_hex", "offset", "n", "bent", "balanced_class", "Nl")


def build_chain(
    seed: BooleanFunction, target_n: int, offsets: list[LinearOffset] | None = None
) -> ConstructionTrace:
    """Repeat the extension (with optional per-step offsets) until ``target_n``."""
    _require_bent(seed)
    if target_n % 2 or target_n <= seed.n:
        raise DomainError(f"target n must be even and larger than {seed.n}, got {target_n}")
    _check_n(target_n)
    steps = (target_n - seed.n) // 2
    if offsets is not None and len(offsets) != steps:
        raise DomainError(f"{steps} extension steps need {steps} offsets, got {len(offsets)}")

    trace = ConstructionTrace(seed)
    f = seed
    for i in range(steps):
        off = offsets[i] if offsets is not None else None
        f = extend(f) if off is None else extend_with_offset(f, off)
        spec = walsh_spectrum(f)
        bent = is_bent(f)
        if not bent:
            raise ConsistencyError(f"extension step {i + 1} produced a non-bent function")
        trace.steps.append(
            TraceStep(off, f.n, bent, restricted_balance(f).balanced_class,
                      (1 << (f.n - 1)) - spec.max_abs() // 2)
        )
    trace.final = f
    return trace


# -------------------------------------------------------------------- seeds


def maiorana_mcfarland(perm, h) -> BooleanFunction:
    """Classic ``x . perm(y) ^ h(y)`` with x the low half and y the high half of the index."""
    perm = np.asarray(perm, dtype=np.int64)
    h = np.asarray(h, dtype=np.uint8)
    k = perm.size.bit_length() - 1
    if perm.size != 1 << k or h.size != perm.size:
        raise DomainError("permutation and h must both have length 2^k")
    if not np.array_equal(np.sort(perm), np.arange(perm.size)):
        raise DomainError("perm is not a permutation")
    idx = point_indices(2 * k)
    x = idx & ((1 << k) - 1)
    y = idx >> k
    return BooleanFunction.from_bits(parity_of(x & perm[y]) ^ h[y], 2 * k)


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def seed_bent(n: int, rng_seed=0) -> BooleanFunction:
    if n % 2 or not 2 <= n <= 16:
        raise DomainError(f"seed_bent needs even n in [2, 16], got {n}")
    rng = _rng(rng_seed)
    half = 1 << (n // 2)
    f = maiorana_mcfarland(rng.permutation(half), rng.integers(0, 2, half))
    if not is_bent(f):
        raise ConsistencyError("Maiorana-McFarland seed failed the bentness check")
    return f


def random_invertible_matrix(n: int, rng) -> list[int]:
    """Columns of a uniformly random invertible n x n matrix over F_2."""
    rng = _rng(rng)
    while True:
        cols = [int(c) for c in rng.integers(0, 1 << n, n)]
        pivots: dict[int, int] = {}
        ok = True
        for v in cols:
            while v and (v.bit_length() - 1) in pivots:
                v ^= pivots[v.bit_length() - 1]
            if not v:
                ok = False
                break
            pivots[v.bit_length() - 1] = v
        if ok:
            return cols


def affine_equivalent(f: BooleanFunction, cols: list[int], shift: int = 0) -> BooleanFunction:
    """``x -> f(A x ^ shift)`` where ``cols[j]`` is the image of the j-th unit vector."""
    if len(cols) != f.n:
        raise DomainError("matrix size does not match the function")
    image = np.zeros(1, dtype=np.int64)
    for c in cols:
        image = np.concatenate([image, image ^ c])
    return BooleanFunction.from_bits(f.bits[image ^ shift], f.n)


def random_bent_sample(n: int, rng) -> BooleanFunction:
    """A seed under a random affine change of variables plus a random affine function."""
    rng = _rng(rng)
    f = seed_bent(n, rng)
    f = affine_equivalent(f, random_invertible_matrix(n, rng), int(rng.integers(0, 1 << n)))
    a = int(rng.integers(0, 1 << n))
    a0 = int(rng.integers(0, 2))
    lin = parity_of(point_indices(n) & a) ^ a0
    return BooleanFunction.from_bits(f.bits ^ lin, n)


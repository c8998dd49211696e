"""Truth tables, algebraic normal form and affine functions.

A point ``x = (x_1, ..., x_n)`` of F_2^n is identified with the integer
``sum(x_j << (j - 1))``, so ``x_1`` is the least significant bit. Truth
tables and ANF coefficient tables share this indexing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator

import numpy as np

from .errors import DomainError, FormatError

MAX_VARS = 30


def _check_n(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DomainError(f"variable count must be an integer, got {n!r}")
    n = int(n)
    if not 1 <= n <= MAX_VARS:
        raise DomainError(f"variable count must be in [1, {MAX_VARS}], got {n}")
    return n


def _pack(bits: np.ndarray) -> np.ndarray:
    packed = np.packbits(bits.astype(np.uint8, copy=False), bitorder="little")
    packed.setflags(write=False)
    return packed


def parity_of(values: np.ndarray) -> np.ndarray:
    """Elementwise parity of the popcount of non-negative integers."""
    return (np.bitwise_count(values) & 1).astype(np.uint8)


def point_indices(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


class _BitTable:
    """Shared storage for a length-2^n bit table kept packed in bytes."""

    __slots__ = ()
    n: int
    packed: np.ndarray

    @classmethod
    def from_bits(cls, bits, n: int | None = None):
        arr = np.asarray(bits)
        if arr.ndim != 1:
            raise DomainError("bit table must be one-dimensional")
        size = arr.size
        if n is None:
            if size < 2 or size & (size - 1):
                raise DomainError(f"bit table length {size} is not a power of two >= 2")
            n = size.bit_length() - 1
        n = _check_n(n)
        if size != 1 << n:
            raise DomainError(f"bit table length {size} does not match n={n} (expected {1 << n})")
        if arr.dtype != np.bool_ and np.any((arr != 0) & (arr != 1)):
            raise DomainError("bit table entries must be 0 or 1")
        return cls(n, _pack(arr != 0))

    @classmethod
    def from_int(cls, value: int, n: int):
        n = _check_n(n)
        size = 1 << n
        if value < 0 or value >> size:
            raise DomainError(f"integer does not fit in a {size}-bit table")
        nbytes = max(1, size // 8)
        raw = np.frombuffer(int(value).to_bytes(nbytes, "little"), dtype=np.uint8).copy()
        raw.setflags(write=False)
        return cls(n, raw)

    @classmethod
    def zeros(cls, n: int):
        return cls.from_int(0, n)

    def _validate(self):
        _check_n(self.n)
        if self.packed.size != max(1, self.size // 8):
            raise DomainError("packed table has the wrong byte length")
        if self.size < 8 and int(self.packed[0]) >> self.size:
            raise DomainError("padding bits of a packed table must be zero")

    @property
    def size(self) -> int:
        return 1 << self.n

    @cached_property
    def bits(self) -> np.ndarray:
        out = np.unpackbits(self.packed, bitorder="little", count=self.size)
        out.setflags(write=False)
        return out

    def to_int(self) -> int:
        return int.from_bytes(self.packed.tobytes(), "little")

    def __getitem__(self, x: int) -> int:
        if not 0 <= x < self.size:
            raise DomainError(f"point index {x} out of range for n={self.n}")
        return (int(self.packed[x >> 3]) >> (x & 7)) & 1

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self.packed.tobytes() == other.packed.tobytes()

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.packed.tobytes()))


@dataclass(frozen=True, eq=False)
class BooleanFunction(_BitTable):
    """Truth table of ``f: F_2^n -> F_2``.

    Build instances with :meth:`from_bits`, :meth:`from_int`,
    :meth:`from_callable` or :func:`parse_truth_table`; the raw constructor
    expects an already packed little-endian byte array.
    """

    n: int
    packed: np.ndarray

    def __post_init__(self):
        self._validate()

    @classmethod
    def from_callable(cls, fn: Callable[[int], int], n: int) -> "BooleanFunction":
        """Tabulate ``fn`` over all point indices ``0 .. 2^n - 1``."""
        n = _check_n(n)
        return cls.from_bits(np.fromiter((fn(x) & 1 for x in range(1 << n)), np.uint8, 1 << n), n)

    @classmethod
    def ones(cls, n: int) -> "BooleanFunction":
        return cls.from_bits(np.ones(1 << _check_n(n), np.uint8))

    def __xor__(self, other: "BooleanFunction") -> "BooleanFunction":
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        if other.n != self.n:
            raise DomainError(f"cannot combine functions on {self.n} and {other.n} variables")
        return BooleanFunction(self.n, _frozen(np.bitwise_xor(self.packed, other.packed)))

    def __repr__(self):
        return f"BooleanFunction(n={self.n}, hex={format_hex(self)!r})"


@dataclass(frozen=True, eq=False)
class AnfPolynomial(_BitTable):
    """ANF coefficient table; bit ``u`` is the coefficient of ``x^u``."""

    n: int
    packed: np.ndarray

    def __post_init__(self):
        self._validate()

    def monomials(self) -> list[int]:
        return [int(u) for u in np.flatnonzero(self.bits)]

    def degree(self) -> int:
        """Algebraic degree; the zero polynomial is given degree 0."""
        support = np.flatnonzero(self.bits)
        if support.size == 0:
            return 0
        return int(np.bitwise_count(support).max())

    def __repr__(self):
        return f"AnfPolynomial(n={self.n}, {format_anf(self)!r})"


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class AffineFunctionSpec:
    """The affine function ``l(x) = a . x xor a0`` on F_2^n."""

    n: int
    a: int = 0
    a0: int = 0

    def __post_init__(self):
        _check_n(self.n)
        if not 0 <= self.a < 1 << self.n:
            raise DomainError(f"linear part {self.a} is not a vector of F_2^{self.n}")
        if self.a0 not in (0, 1):
            raise DomainError("constant term must be 0 or 1")

    def table(self) -> BooleanFunction:
        bits = parity_of(point_indices(self.n) & self.a) ^ self.a0
        return BooleanFunction.from_bits(bits, self.n)


def all_affine_specs(n: int) -> Iterator[AffineFunctionSpec]:
    """Yield all 2^(n+1) affine specs, linear ones (a0 = 0) first."""
    n = _check_n(n)
    for a0 in (0, 1):
        for a in range(1 << n):
            yield AffineFunctionSpec(n, a, a0)


def evaluate(f: BooleanFunction, x: int) -> int:
    return f[x]


def moebius_transform(bits: np.ndarray) -> np.ndarray:
    """Binary Moebius transform along the last axis (in-place butterfly on a copy).

    The transform is an involution, so the same routine maps truth tables to
    ANF coefficients and back. Leading axes are treated as a batch.
    """
    v = np.array(bits, dtype=np.uint8, copy=True)
    size = v.shape[-1]
    lead = v.shape[:-1]
    h = 1
    while h < size:
        blocks = v.reshape(*lead, -1, 2, h)
        blocks[..., 1, :] ^= blocks[..., 0, :]
        h <<= 1
    return v


def truth_table_to_anf(f: BooleanFunction) -> AnfPolynomial:
    return AnfPolynomial.from_bits(moebius_transform(f.bits), f.n)


def anf_to_truth_table(p: AnfPolynomial) -> BooleanFunction:
    return BooleanFunction.from_bits(moebius_transform(p.bits), p.n)


def hamming_weight(f: BooleanFunction) -> int:
    return int(np.bitwise_count(f.packed).sum())


def hamming_distance(f: BooleanFunction, g: BooleanFunction) -> int:
    return hamming_weight(f ^ g)


def affine_eval(spec: AffineFunctionSpec, x: int) -> int:
    if not 0 <= x < 1 << spec.n:
        raise DomainError(f"point index {x} out of range for n={spec.n}")
    return ((spec.a & x).bit_count() & 1) ^ spec.a0


def add_affine(f: BooleanFunction, spec: AffineFunctionSpec) -> BooleanFunction:
    if spec.n != f.n:
        raise DomainError(f"affine function on {spec.n} variables added to function on {f.n}")
    return f ^ spec.table()


def algebraic_degree(f: BooleanFunction) -> int:
    return truth_table_to_anf(f).degree()


def variables_product(n: int, *indices: int) -> BooleanFunction:
    """Monomial ``x_i * x_j * ...`` (1-based variable indices) on F_2^n."""
    mask = 0
    for i in indices:
        if not 1 <= i <= n:
            raise DomainError(f"variable x{i} does not exist for n={n}")
        mask |= 1 << (i - 1)
    idx = point_indices(_check_n(n))
    return BooleanFunction.from_bits((idx & mask) == mask, n)


# ---------------------------------------------------------------- text formats

_HEADER = re.compile(r"\s*n\s*=\s*(\d+)\s*$")
_HEXCHARS = set("0123456789abcdefABCDEF")


def hex_digits(n: int) -> int:
    return -(-(1 << n) // 4)


def format_hex(f: BooleanFunction) -> str:
    return format(f.to_int(), f"0{hex_digits(f.n)}x")


def parse_hex(digits: str, n: int, *, line: int | None = None, column: int = 1) -> BooleanFunction:
    n = _check_n(n)
    for offset, ch in enumerate(digits):
        if ch not in _HEXCHARS:
            raise FormatError(f"invalid hex digit {ch!r}", line, column + offset)
    want = hex_digits(n)
    if len(digits) != want:
        raise FormatError(f"expected {want} hex digits for n={n}, got {len(digits)}", line)
    value = int(digits, 16)
    if value >> (1 << n):
        raise FormatError(f"hex value has bits set beyond the {1 << n}-bit table", line)
    return BooleanFunction.from_int(value, n)


def format_truth_table(f: BooleanFunction) -> str:
    return f"n={f.n}\n{format_hex(f)}\n"


def _parse_header(line: str, lineno: int) -> int:
    m = _HEADER.match(line)
    if not m:
        raise FormatError("expected header 'n=<int>'", lineno, 1)
    try:
        return _check_n(int(m.group(1)))
    except DomainError as exc:
        raise FormatError(str(exc), lineno, line.index("=") + 2) from None


def parse_truth_table(text: str) -> BooleanFunction:
    """Parse the ``n=<int>`` header plus hex body format.

    The hex body may be split over several lines; blank lines are ignored.
    """
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise FormatError("empty input", 1, 1)
    lineno, header = lines[0]
    n = _parse_header(header, lineno)
    digits = []
    first_line = None
    for lineno, ln in lines[1:]:
        stripped = ln.strip()
        col = ln.index(stripped[0]) + 1
        for off, ch in enumerate(stripped):
            if ch not in _HEXCHARS:
                raise FormatError(f"invalid hex digit {ch!r}", lineno, col + off)
        digits.append(stripped)
        first_line = first_line or lineno
    if not digits:
        raise FormatError(f"missing hex body (expected {hex_digits(n)} digits)", lineno + 1, 1)
    return parse_hex("".join(digits), n, line=first_line)


def format_anf(p: AnfPolynomial) -> str:
    terms = p.monomials()
    if not terms:
        return "0"
    terms.sort(key=lambda u: (-u.bit_count(), [j for j in range(p.n) if u >> j & 1]))
    out = []
    for u in terms:
        if u == 0:
            out.append("1")
        else:
            out.append("*".join(f"x{j + 1}" for j in range(p.n) if u >> j & 1))
    return " + ".join(out)


_TOKEN = re.compile(r"x(\d+)|(\d+)|(\+)|(\*)")


def _tokenize(expr: str, lineno: int) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(expr):
        if expr[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(expr, pos)
        if not m:
            raise FormatError(f"unexpected character {expr[pos]!r}", lineno, pos + 1)
        col = pos + 1
        if m.group(1) is not None:
            tokens.append(("var", int(m.group(1)), col))
        elif m.group(2) is not None:
            if m.group(2) not in ("0", "1"):
                raise FormatError(f"constant must be 0 or 1, got {m.group(2)}", lineno, col)
            tokens.append(("const", int(m.group(2)), col))
        elif m.group(3):
            tokens.append(("+", None, col))
        else:
            tokens.append(("*", None, col))
        pos = m.end()
    return tokens


def parse_anf(text: str, n: int | None = None) -> AnfPolynomial:
    """Parse ASCII ANF such as ``x1*x2 + x3 + 1``.

    An optional first line ``n=<int>`` fixes the variable count; otherwise
    ``n`` comes from the argument, else from the highest variable index used
    (at least 1). Repeated monomials cancel; ``x1*x1`` reduces to ``x1``.
    """
    lines = text.splitlines() or [""]
    start = 0
    while start < len(lines) and not lines[start].strip():
        start += 1
    if start < len(lines) and _HEADER.match(lines[start]):
        header_n = _parse_header(lines[start], start + 1)
        if n is not None and n != header_n:
            raise FormatError(f"header says n={header_n} but n={n} was requested", start + 1)
        n = header_n
        start += 1
    body = [(i + 1, ln) for i, ln in enumerate(lines) if i >= start and ln.strip()]
    if not body:
        raise FormatError("empty polynomial (write '0' for the zero polynomial)", start + 1, 1)

    terms: list[set[int] | None] = []
    current: set[int] | None = set()
    expect_factor = True
    last = (body[0][0], 1)
    for lineno, ln in body:
        for kind, value, col in _tokenize(ln, lineno):
            last = (lineno, col)
            if expect_factor:
                if kind == "var":
                    if value < 1:
                        raise FormatError("variables are numbered from x1", lineno, col)
                    current.add(value)
                elif kind == "const":
                    if value == 0:
                        current = None
                else:
                    raise FormatError(f"expected a variable or constant, got {kind!r}", lineno, col)
                expect_factor = False
            elif kind == "*":
                expect_factor = True
            elif kind == "+":
                terms.append(current)
                current = set()
                expect_factor = True
            else:
                raise FormatError("expected '+' or '*' between factors", lineno, col)
    if expect_factor:
        raise FormatError("expression ends with an operator", *last)
    terms.append(current)

    highest = max((max(t) for t in terms if t), default=1)
    if n is None:
        n = highest
    n = _check_n(n)
    if highest > n:
        raise FormatError(f"variable x{highest} exceeds n={n}", body[0][0])
    coeffs = np.zeros(1 << n, dtype=np.uint8)
    for t in terms:
        if t is None:
            continue
        u = 0
        for j in t:
            u |= 1 << (j - 1)
        coeffs[u] ^= 1
    return AnfPolynomial.from_bits(coeffs, n)

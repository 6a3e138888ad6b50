# gbf.py
"""
Truth tables for generalized Boolean functions f: F_2^n -> Z_(2^k) and for
plain Boolean functions.

Index convention, shared by every module: the input (x_1, ..., x_n) sits at
index sum x_i * 2^(i-1), so x_1 is the least significant bit. The Gray image
of f puts x in bits 0..n-1 and y_j in bit n+j-1.

Text formats:
  "k:n:v0,v1,..."   decimal values, index ascending
  "k:n:0123abcd"    one hex digit per value (k <= 4 only)
JSON form: {"n": ..., "k": ..., "values": [...]}
"""

import json
import string
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from cyclotomic import check_level
from errors import GbentError, LevelError, PreconditionError, ShapeError, TableFormatError
from settings import MAX_N


def check_n(n):
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= MAX_N:
        raise ShapeError(f"n must be an integer in [0, {MAX_N}], got {n!r}")
    return int(n)


def parity(a):
    """Bitwise parity of every entry of a non-negative integer array (< 2^32)."""
    a = np.asarray(a, dtype=np.int64).copy()
    for shift in (16, 8, 4, 2, 1):
        a ^= a >> shift
    return (a & 1).astype(np.uint8)


def dot(u, x):
    """u . x over F_2 for integers or integer arrays."""
    return parity(np.bitwise_and(u, x))


def _frozen(arr):
    arr = np.ascontiguousarray(arr, dtype=np.uint8)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BoolTable:
    n: int
    bits: np.ndarray

    def __post_init__(self):
        check_n(self.n)
        bits = np.asarray(self.bits)
        if bits.shape != (1 << self.n,):
            raise ShapeError(f"BoolTable on {self.n} variables needs {1 << self.n} bits, got shape {bits.shape}")
        if bits.size and (bits.min() < 0 or bits.max() > 1):
            raise TableFormatError("BoolTable entries must be 0 or 1")
        object.__setattr__(self, "bits", _frozen(bits))

    @classmethod
    def zeros(cls, n):
        return cls(n, np.zeros(1 << n, dtype=np.uint8))

    @classmethod
    def variable(cls, n, i):
        """The coordinate function x_i, 1-based."""
        if not 1 <= i <= n:
            raise ShapeError(f"variable index {i} outside 1..{n}")
        idx = np.arange(1 << n, dtype=np.int64)
        return cls(n, (idx >> (i - 1)) & 1)

    @classmethod
    def linear(cls, n, a, c=0):
        """a . x xor c."""
        idx = np.arange(1 << n, dtype=np.int64)
        return cls(n, dot(idx, a) ^ (c & 1))

    def _same_shape(self, other):
        if not isinstance(other, BoolTable):
            return NotImplemented
        if other.n != self.n:
            raise ShapeError(f"Boolean tables on {self.n} and {other.n} variables")
        return other

    def __xor__(self, other):
        if isinstance(other, int):
            return BoolTable(self.n, self.bits ^ (other & 1))
        other = self._same_shape(other)
        if other is NotImplemented:
            return other
        return BoolTable(self.n, self.bits ^ other.bits)

    def __and__(self, other):
        other = self._same_shape(other)
        if other is NotImplemented:
            return other
        return BoolTable(self.n, self.bits & other.bits)

    def __invert__(self):
        return BoolTable(self.n, self.bits ^ 1)

    def __eq__(self, other):
        if not isinstance(other, BoolTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.n, self.bits.tobytes()))

    def signs(self):
        """(-1)^b as int64."""
        return 1 - 2 * self.bits.astype(np.int64)

    def weight(self):
        return int(self.bits.sum())

    def __repr__(self):
        return f"BoolTable(n={self.n}, bits={''.join(map(str, self.bits.tolist()))})"


@dataclass(frozen=True, eq=False)
class GbfTable:
    n: int
    k: int
    values: np.ndarray

    def __post_init__(self):
        check_n(self.n)
        check_level(self.k)
        values = np.asarray(self.values)
        if values.shape != (1 << self.n,):
            raise ShapeError(f"table on {self.n} variables needs {1 << self.n} values, got shape {values.shape}")
        if values.dtype.kind not in "iu":
            raise LevelError(f"table values must be integers, got dtype {values.dtype}")
        values = values.astype(np.int64)
        if values.size and (values.min() < 0 or values.max() >= 1 << self.k):
            bad = int(values[(values < 0) | (values >= 1 << self.k)][0])
            raise LevelError(f"value {bad} outside Z_{1 << self.k}")
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def constant(cls, n, k, c=0):
        return cls(n, k, np.full(1 << n, c % (1 << k), dtype=np.int64))

    @classmethod
    def from_bool(cls, b: BoolTable, k):
        """2^(k-1) * b, the Boolean function viewed in Z_(2^k)."""
        return cls(b.n, k, b.bits.astype(np.int64) << (k - 1))

    @property
    def q(self):
        return 1 << self.k

    def __eq__(self, other):
        if not isinstance(other, GbfTable):
            return NotImplemented
        return self.n == other.n and self.k == other.k and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.n, self.k, self.values.tobytes()))

    def __add__(self, other):
        """Pointwise sum mod 2^k."""
        if isinstance(other, int):
            return GbfTable(self.n, self.k, (self.values.astype(np.int64) + other) % self.q)
        if not isinstance(other, GbfTable):
            return NotImplemented
        if (other.n, other.k) != (self.n, self.k):
            raise ShapeError(f"cannot add tables ({self.n},{self.k}) and ({other.n},{other.k})")
        return GbfTable(self.n, self.k, (self.values.astype(np.int64) + other.values) % self.q)

    def scale(self, c):
        return GbfTable(self.n, self.k, (self.values.astype(np.int64) * c) % self.q)

    def to_dict(self):
        return {"n": self.n, "k": self.k, "values": self.values.tolist()}

    def __repr__(self):
        return f"GbfTable({gbf_serialize(self)!r})"


def gbf_parse(text: str) -> GbfTable:
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise TableFormatError(f"expected 'k:n:values', got {text!r}")
    try:
        k, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise TableFormatError(f"malformed header in {text!r}")
    body = parts[2].strip()
    size = 1 << n if 0 <= n <= MAX_N else -1
    try:
        if "," in body or size == 1 or len(body) != size:
            values = [int(v) for v in body.split(",")] if body else []
        else:
            if k > 4:
                raise TableFormatError("hex form needs k <= 4; use comma-separated values")
            if any(ch not in string.hexdigits for ch in body):
                raise TableFormatError(f"non-hex digit in {body!r}")
            values = [int(ch, 16) for ch in body]
        return GbfTable(n, k, values)
    except TableFormatError:
        raise
    except (ValueError, GbentError) as exc:
        raise TableFormatError(f"bad table {text!r}: {exc}") from exc


def gbf_serialize(f: GbfTable, hex_form=False) -> str:
    """Decimal form, or hex when asked; a one-entry table is always decimal."""
    if hex_form and f.values.size > 1:
        if f.k > 4:
            raise TableFormatError("hex form needs k <= 4")
        return f"{f.k}:{f.n}:" + "".join(format(v, "x") for v in f.values.tolist())
    return f"{f.k}:{f.n}:" + ",".join(str(v) for v in f.values.tolist())


def _json_int(value, field):
    # bool is an int subclass; 1.0 and "1" are not table entries
    if isinstance(value, bool) or not isinstance(value, int):
        raise TableFormatError(f"JSON {field} must be an integer, got {value!r}")
    return value


def gbf_from_json(obj) -> GbfTable:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise TableFormatError(f"invalid JSON table: {exc}") from exc
    if not isinstance(obj, dict):
        raise TableFormatError(f"JSON table must be an object, got {type(obj).__name__}")
    try:
        n, k, values = obj["n"], obj["k"], obj["values"]
    except KeyError as exc:
        raise TableFormatError(f"JSON table lacks {exc}") from exc
    if not isinstance(values, list):
        raise TableFormatError("JSON values must be a list")
    n, k = _json_int(n, "n"), _json_int(k, "k")
    values = [_json_int(v, "value") for v in values]
    try:
        return GbfTable(n, k, np.array(values, dtype=np.int64))
    except (OverflowError, GbentError) as exc:
        raise TableFormatError(f"bad JSON table: {exc}") from exc


def components(f: GbfTable):
    """The bit-planes (a_1, ..., a_k), with f = sum 2^(i-1) a_i."""
    return tuple(BoolTable(f.n, (f.values >> i) & 1) for i in range(f.k))


def combine(parts: Sequence[BoolTable], k) -> GbfTable:
    k = check_level(k)
    if len(parts) != k:
        raise ShapeError(f"need {k} bit-planes, got {len(parts)}")
    n = parts[0].n
    values = np.zeros(1 << n, dtype=np.int64)
    for i, part in enumerate(parts):
        if part.n != n:
            raise ShapeError(f"bit-plane {i + 1} has {part.n} variables, expected {n}")
        values |= part.bits.astype(np.int64) << i
    return GbfTable(n, k, values)


def regroup(f: GbfTable, j):
    """Split f = low + 2^j * high, low in Z_(2^j), high in Z_(2^(k-j))."""
    if not 1 <= j < f.k:
        raise LevelError(f"split point j={j} outside 1..{f.k - 1}")
    low = GbfTable(f.n, j, f.values & ((1 << j) - 1))
    high = GbfTable(f.n, f.k - j, f.values >> j)
    return low, high


def component_combination(f: GbfTable, c):
    """g_c = c_1 a_1 xor ... xor c_(k-1) a_(k-1) xor a_k, c_1 the low bit of c."""
    low_mask = (1 << (f.k - 1)) - 1
    bits = dot(f.values & low_mask, c & low_mask) ^ ((f.values >> (f.k - 1)) & 1)
    return BoolTable(f.n, bits)


def gray_map(f: GbfTable) -> BoolTable:
    """psi(f)(x, y) = a_1(x)y_1 xor ... xor a_(k-1)(x)y_(k-1) xor a_k(x)."""
    if f.k < 2:
        raise PreconditionError("the Gray map needs k >= 2")
    # row y of the image is g_y
    rows = [component_combination(f, y).bits for y in range(1 << (f.k - 1))]
    return BoolTable(f.n + f.k - 1, np.concatenate(rows))

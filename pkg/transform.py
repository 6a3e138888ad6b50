# transform.py
"""
Generalized and plain Walsh-Hadamard transforms, value distributions and
correlations.

gwht runs the in-place butterfly on an int64 array of shape (2^n, L), one
power-basis coefficient vector per point; entries of a spectrum are bounded
by 2^n in absolute value and squared moduli by L * 4^n, so int64 is exact for
every n this toolkit accepts. gwht_naive evaluates the defining double sum and
serves as the oracle.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from cyclotomic import CycInt, batch_norm_sq, cyc_from_array, root_table
from errors import InvariantViolation, PreconditionError, ShapeError
from gbf import BoolTable, GbfTable, dot
from settings import GBENT_NAIVE_MAX_N

logger = logging.getLogger("gbent.transform")


def _frozen(arr):
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GwhtSpectrum:
    n: int
    k: int
    values: np.ndarray
    moduli_sq: np.ndarray = None

    def __post_init__(self):
        values = _frozen(self.values)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "moduli_sq", _frozen(batch_norm_sq(values)))
        total = self.moduli_sq.sum(axis=0)
        if total[0] != 4 ** self.n or total[1:].any():
            logger.error("Parseval failed for a level-%d spectrum on %d variables: %s", self.k, self.n, total.tolist())
            raise InvariantViolation(f"Parseval sum is {total.tolist()}, expected {4 ** self.n}")

    def __len__(self):
        return 1 << self.n

    def value(self, u) -> CycInt:
        return cyc_from_array(self.k, self.values[u])

    def modulus_sq(self, u) -> CycInt:
        return cyc_from_array(self.k, self.moduli_sq[u])

    def __eq__(self, other):
        if not isinstance(other, GwhtSpectrum):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and np.array_equal(self.values, other.values)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class IntSpectrum:
    n: int
    values: np.ndarray

    def __post_init__(self):
        values = _frozen(self.values)
        object.__setattr__(self, "values", values)
        if int(np.dot(values, values)) != 4 ** self.n:
            logger.error("Parseval failed for a Walsh spectrum on %d variables", self.n)
            raise InvariantViolation(f"Walsh Parseval sum is {int(np.dot(values, values))}, expected {4 ** self.n}")

    def __getitem__(self, u):
        return int(self.values[u])

    def __len__(self):
        return 1 << self.n

    def __eq__(self, other):
        if not isinstance(other, IntSpectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    __hash__ = None


@dataclass(frozen=True)
class ValueDistribution:
    counts: Tuple[int, ...]
    u: int

    def as_cyc(self, k) -> CycInt:
        """sum_j b_j zeta^j."""
        return cyc_from_array(k, np.asarray(self.counts, dtype=np.int64) @ root_table(k))


def butterfly(arr, n):
    """Unnormalized Hadamard butterfly along axis 0 of a (2^n, ...) array."""
    tail = arr.shape[1:]
    out = np.array(arr, dtype=np.int64)
    for i in range(n):
        h = 1 << i
        pairs = out.reshape((-1, 2, h) + tail)
        lo, hi = pairs[:, 0], pairs[:, 1]
        out = np.stack((lo + hi, lo - hi), axis=1).reshape(out.shape)
    return out


def gwht(f: GbfTable) -> GwhtSpectrum:
    spectrum = butterfly(root_table(f.k)[f.values], f.n)
    return GwhtSpectrum(f.n, f.k, spectrum)


def gwht_naive(f: GbfTable) -> GwhtSpectrum:
    if f.n > GBENT_NAIVE_MAX_N:
        raise PreconditionError(f"naive transform limited to n <= {GBENT_NAIVE_MAX_N}, got n={f.n}")
    roots = root_table(f.k)[f.values]
    idx = np.arange(1 << f.n, dtype=np.int64)
    out = np.empty_like(roots)
    for u in range(1 << f.n):
        signs = 1 - 2 * dot(u, idx).astype(np.int64)
        out[u] = signs @ roots
    return GwhtSpectrum(f.n, f.k, out)


def inverse_gwht(spectrum: GwhtSpectrum) -> GbfTable:
    """Recover f from its spectrum: the butterfly applied twice gives 2^n zeta^f(x)."""
    n, k = spectrum.n, spectrum.k
    scaled = butterfly(spectrum.values, n)
    size = 1 << n
    if np.any(scaled % size):
        raise PreconditionError("not the spectrum of a generalized Boolean function")
    rows = scaled // size
    half = rows.shape[1]
    pos = np.argmax(np.abs(rows), axis=1)
    sign = rows[np.arange(size), pos]
    exps = np.where(sign < 0, pos + half, pos)
    if not np.array_equal(root_table(k)[exps], rows):
        raise PreconditionError("not the spectrum of a generalized Boolean function")
    return GbfTable(n, k, exps)


def wht(b: BoolTable) -> IntSpectrum:
    return IntSpectrum(b.n, butterfly(b.signs(), b.n))


def _check_point(n, u, name):
    if isinstance(u, bool) or not isinstance(u, (int, np.integer)) or not 0 <= u < 1 << n:
        raise PreconditionError(f"{name} must be an integer in [0, 2^{n}), got {u!r}")
    return int(u)


def value_distribution(f: GbfTable, u) -> ValueDistribution:
    u = _check_point(f.n, u, "u")
    idx = np.arange(1 << f.n, dtype=np.int64)
    shifted = (f.values.astype(np.int64) + (dot(u, idx).astype(np.int64) << (f.k - 1))) % f.q
    counts = np.bincount(shifted, minlength=f.q)
    return ValueDistribution(tuple(int(c) for c in counts), int(u))


def _check_pair(f, g):
    if (f.n, f.k) != (g.n, g.k):
        raise ShapeError(f"tables ({f.n},{f.k}) and ({g.n},{g.k}) differ in shape")


def crosscorrelation(f: GbfTable, g: GbfTable, z) -> CycInt:
    """C_(f,g)(z) = sum_x zeta^(f(x) - g(x xor z))."""
    _check_pair(f, g)
    z = _check_point(f.n, z, "z")
    idx = np.arange(1 << f.n, dtype=np.int64)
    exps = (f.values.astype(np.int64) - g.values[idx ^ z]) % f.q
    return cyc_from_array(f.k, root_table(f.k)[exps].sum(axis=0))


def autocorrelation(f: GbfTable) -> np.ndarray:
    """C_f(z) for every shift z, as rows of coefficient vectors."""
    idx = np.arange(1 << f.n, dtype=np.int64)
    roots = root_table(f.k)
    out = np.empty((1 << f.n, roots.shape[1]), dtype=np.int64)
    for z in range(1 << f.n):
        out[z] = roots[(f.values.astype(np.int64) - f.values[idx ^ z]) % f.q].sum(axis=0)
    return out


def bool_autocorrelation(b: BoolTable) -> np.ndarray:
    """r_b(z) = sum_x (-1)^(b(x) xor b(x xor z))."""
    idx = np.arange(1 << b.n, dtype=np.int64)
    signs = b.signs()
    return np.array([int(signs @ signs[idx ^ z]) for z in range(1 << b.n)], dtype=np.int64)


def complementary_autocorrelation(f: BoolTable, g: BoolTable) -> bool:
    if f.n != g.n:
        raise ShapeError(f"Boolean tables on {f.n} and {g.n} variables")
    total = bool_autocorrelation(f) + bool_autocorrelation(g)
    return not total[1:].any()

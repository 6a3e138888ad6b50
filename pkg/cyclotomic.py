# cyclotomic.py
"""
Exact arithmetic in Z[zeta] for zeta a primitive 2^k-th root of unity.

Elements are coefficient vectors in the power basis 1, zeta, ..., zeta^(L-1)
with L = 2^(k-1); the ring is Z[x]/(x^L + 1), so zeta^L = -1. The power basis
is a basis of Q(zeta), hence two elements are equal iff their coefficient
vectors are equal. Every classification decision in the toolkit is made on
these vectors; the complex rendering is for display only.

CycInt holds Python ints. The batch_* helpers are the numpy twins used on
whole spectra (arrays of shape (..., L)); they must agree with CycInt exactly.
"""

import cmath
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from errors import LevelError
from settings import MAX_K


def check_level(k):
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= MAX_K:
        raise LevelError(f"level k must be an integer in [1, {MAX_K}], got {k!r}")
    return int(k)


def basis_size(k):
    return 1 << (check_level(k) - 1)


@dataclass(frozen=True)
class CycInt:
    k: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        check_level(self.k)
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != 1 << (self.k - 1):
            raise LevelError(
                f"level {self.k} needs {1 << (self.k - 1)} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    # constructors

    @classmethod
    def zero(cls, k):
        return cls(k, (0,) * basis_size(k))

    @classmethod
    def from_int(cls, k, c):
        out = [0] * basis_size(k)
        out[0] = int(c)
        return cls(k, tuple(out))

    @classmethod
    def root_power(cls, k, e):
        """zeta^e, reduced with zeta^(2^(k-1)) = -1."""
        half = basis_size(k)
        e %= 2 * half
        out = [0] * half
        out[e % half] = -1 if e >= half else 1
        return cls(k, tuple(out))

    # ring operations

    def _same_level(self, other):
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.k != self.k:
            raise LevelError(f"level mismatch: {self.k} vs {other.k}")
        return other

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.k, other)
        other = self._same_level(other)
        if other is NotImplemented:
            return other
        return CycInt(self.k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.k, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.k, other)
        other = self._same_level(other)
        if other is NotImplemented:
            return other
        return CycInt(self.k, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return CycInt(self.k, tuple(int(other) * a for a in self.coeffs))
        other = self._same_level(other)
        if other is NotImplemented:
            return other
        size = len(self.coeffs)
        out = [0] * size
        # schoolbook negacyclic convolution
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                m = i + j
                if m < size:
                    out[m] += a * b
                else:
                    out[m - size] -= a * b
        return CycInt(self.k, tuple(out))

    __rmul__ = __mul__

    def conj(self):
        """Complex conjugation zeta -> zeta^-1."""
        c = self.coeffs
        size = len(c)
        out = [0] * size
        out[0] = c[0]
        for j in range(1, size):
            out[size - j] = -c[j]
        return CycInt(self.k, tuple(out))

    def norm_sq(self):
        return self * self.conj()

    def is_real(self):
        return self.conj() == self

    def as_integer(self) -> Optional[int]:
        """The rational integer this element equals, or None if irrational."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def embed(self, k_target):
        """Lift into Z[zeta_(2^k_target)] via zeta_(2^k) = zeta_(2^k_target)^(2^(k_target-k))."""
        k_target = check_level(k_target)
        if k_target < self.k:
            raise LevelError(f"cannot embed level {self.k} into lower level {k_target}")
        step = 1 << (k_target - self.k)
        out = [0] * basis_size(k_target)
        for j, c in enumerate(self.coeffs):
            out[j * step] = c
        return CycInt(k_target, tuple(out))

    # display

    def to_complex(self):
        q = 1 << self.k
        return sum(c * cmath.exp(2j * cmath.pi * e / q) for e, c in enumerate(self.coeffs))

    def to_list(self):
        return list(self.coeffs)

    def __str__(self):
        terms = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            if e == 0:
                terms.append(str(c))
            elif e == 1:
                terms.append(f"{c}·ζ")
            else:
                terms.append(f"{c}·ζ^{e}")
        z = self.to_complex()
        body = " + ".join(terms) if terms else "0"
        return f"{body}  (≈ {z.real:.6g}{z.imag:+.6g}i)"


def cyc_from_array(k, row):
    return CycInt(k, tuple(int(c) for c in row))


# numpy twins over arrays of shape (..., L)

@lru_cache(maxsize=None)
def root_table(k):
    """Row e holds the coefficient vector of zeta^e, e in [0, 2^k)."""
    half = basis_size(k)
    table = np.zeros((2 * half, half), dtype=np.int64)
    for e in range(2 * half):
        table[e, e % half] = -1 if e >= half else 1
    table.setflags(write=False)
    return table


def batch_conj(a):
    out = np.empty_like(a)
    out[..., 0] = a[..., 0]
    out[..., 1:] = -a[..., :0:-1]
    return out


def batch_mul(a, b):
    """Negacyclic product along the last axis, broadcast over the rest."""
    size = a.shape[-1]
    a, b = np.broadcast_arrays(a, b)
    out = np.zeros(a.shape, dtype=np.int64)
    for i in range(size):
        # b multiplied by zeta^i
        shifted = np.concatenate((-b[..., size - i:], b[..., :size - i]), axis=-1)
        out += a[..., i:i + 1] * shifted
    return out


def batch_norm_sq(a):
    return batch_mul(a, batch_conj(a))


def batch_embed(a, k_from, k_to):
    step = 1 << (k_to - k_from)
    out = np.zeros(a.shape[:-1] + (basis_size(k_to),), dtype=np.int64)
    out[..., ::step] = a
    return out


def batch_as_integer(a):
    """Per-row rational integer value, and a mask of the rows that are rational."""
    rational = ~np.any(a[..., 1:], axis=-1)
    return a[..., 0], rational

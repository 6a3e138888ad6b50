# classify.py
"""
Spectral classification of generalized and plain Boolean functions.

Every decision is taken on exact coefficient vectors: a squared modulus is a
rational integer iff its non-constant coefficients vanish, and the dual of a
regular gbent function is read off by exact pattern matching.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from cyclotomic import batch_as_integer, root_table
from errors import InvariantViolation, PreconditionError
from gbf import BoolTable, GbfTable
from transform import GwhtSpectrum, IntSpectrum, butterfly, gwht, wht

logger = logging.getLogger("gbent.classify")

_MATCH_CHUNK = 4096


@dataclass(frozen=True)
class PlateauResult:
    kind: str  # "plateaued" | "not_plateaued"
    s: Optional[int] = None
    witness: Optional[int] = None

    @property
    def is_plateaued(self):
        return self.kind == "plateaued"

    @property
    def label(self):
        return f"plateaued({self.s})" if self.is_plateaued else "not_plateaued"


@dataclass(frozen=True)
class DualResult:
    kind: str  # "regular" | "not_representable"
    dual: Optional[GbfTable] = None

    @property
    def is_regular(self):
        return self.kind == "regular"


@dataclass(frozen=True)
class BooleanClass:
    kind: str  # "bent" | "plateaued" | "not_plateaued"
    s: Optional[int] = None
    witness: Optional[int] = None

    @property
    def is_bent(self):
        return self.kind == "bent"

    @property
    def is_semibent(self):
        return self.kind == "plateaued" and self.s in (1, 2)

    @property
    def label(self):
        if self.kind == "plateaued":
            return "semibent" if self.s in (1, 2) else f"plateaued({self.s})"
        return self.kind


def _single_level(n, squares):
    """(s, None) if the nonzero entries are all 2^(n+s), else (None, witness)."""
    nonzero = np.flatnonzero(squares)
    if nonzero.size == 0:
        return None, 0
    first = int(squares[nonzero[0]])
    off = nonzero[squares[nonzero] != first]
    if off.size:
        return None, int(off[0])
    if first & (first - 1) or first < 1 << n:
        return None, int(nonzero[0])
    return first.bit_length() - 1 - n, None


def plateau_level(f: GbfTable, spectrum: Optional[GwhtSpectrum] = None) -> PlateauResult:
    if spectrum is None:
        spectrum = gwht(f)
    squares, rational = batch_as_integer(spectrum.moduli_sq)
    if not rational.all():
        return PlateauResult("not_plateaued", witness=int(np.flatnonzero(~rational)[0]))
    s, witness = _single_level(f.n, squares)
    if s is None:
        return PlateauResult("not_plateaued", witness=witness)
    return PlateauResult("plateaued", s=s)


def is_gbent(f: GbfTable, spectrum: Optional[GwhtSpectrum] = None) -> bool:
    if spectrum is None:
        spectrum = gwht(f)
    ms = spectrum.moduli_sq
    return bool((ms[:, 0] == 1 << f.n).all() and not ms[:, 1:].any())


def is_gsemibent(f: GbfTable, spectrum: Optional[GwhtSpectrum] = None) -> bool:
    result = plateau_level(f, spectrum)
    return result.is_plateaued and result.s == 1


def dual_patterns(n, k):
    """Row j is the coefficient vector of 2^(n/2) zeta^j, or None if it has none."""
    roots = root_table(k)
    if n % 2 == 0:
        return roots << (n // 2)
    if k < 3:
        return None
    # sqrt(2) = zeta_8 + zeta_8^-1
    m = 1 << (k - 3)
    q = 1 << k
    j = np.arange(q)
    return (roots[(j + m) % q] + roots[(j - m) % q]) << ((n - 1) // 2)


def regular_dual(f: GbfTable, spectrum: Optional[GwhtSpectrum] = None) -> DualResult:
    if spectrum is None:
        spectrum = gwht(f)
    if not is_gbent(f, spectrum):
        raise PreconditionError("regular_dual needs a gbent function")
    targets = dual_patterns(f.n, f.k)
    if targets is None:
        logger.info("dual of a level-%d gbent function on %d variables is not representable", f.k, f.n)
        return DualResult("not_representable")
    values = spectrum.values
    dual = np.empty(len(values), dtype=np.int64)
    for start in range(0, len(values), _MATCH_CHUNK):
        chunk = values[start:start + _MATCH_CHUNK]
        hits = (chunk[:, None, :] == targets[None, :, :]).all(axis=2)
        found = hits.any(axis=1)
        if not found.all():
            u = start + int(np.flatnonzero(~found)[0])
            logger.error("gbent function %r is not regular at u=%d", f, u)
            raise InvariantViolation(f"gbent function has no dual value at u={u}")
        dual[start:start + len(chunk)] = hits.argmax(axis=1)
    return DualResult("regular", GbfTable(f.n, f.k, dual))


def distribution_counts(f: GbfTable) -> np.ndarray:
    """b_j^(u) for every u, shape (2^n, 2^k)."""
    q, half = f.q, f.q >> 1
    n_j = np.bincount(f.values, minlength=q)
    indicators = (f.values[:, None] == np.arange(q)[None, :]).astype(np.int64)
    w = butterfly(indicators, f.n)
    plus = (n_j[None, :] + w) // 2   # #{f = j, u.x = 0}
    minus = (n_j[None, :] - w) // 2  # #{f = j, u.x = 1}
    return plus + np.roll(minus, half, axis=1)


def gbent_by_distribution(f: GbfTable) -> bool:
    if f.n % 2:
        raise PreconditionError("the distribution criterion needs n even")
    counts = distribution_counts(f)
    half = f.q >> 1
    diffs = counts[:, half:] - counts[:, :half]
    nonzero = np.count_nonzero(diffs, axis=1)
    if (nonzero != 1).any():
        return False
    return bool((np.abs(diffs).sum(axis=1) == 1 << (f.n // 2)).all())


def boolean_class(b: BoolTable) -> BooleanClass:
    return spectrum_class(wht(b))


def spectrum_class(spectrum: IntSpectrum) -> BooleanClass:
    s, witness = _single_level(spectrum.n, spectrum.values * spectrum.values)
    if s is None:
        return BooleanClass("not_plateaued", witness=witness)
    if s == 0:
        return BooleanClass("bent", s=0)
    return BooleanClass("plateaued", s=s)


def expected_gray_plateau(n, k):
    """Plateau level of psi(f) for gbent f: k-2 for odd n, k-1 for even n."""
    return k - 2 if n % 2 else k - 1

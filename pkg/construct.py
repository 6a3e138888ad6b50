# construct.py
"""
Generators of bent and gbent witnesses.

Families (used by `search --mode construct` and the verify suites):
  mm      2^(k-1) * b for a Maiorana-McFarland bent b (n even)
  sparse  a_1 + 2^(k-1) a_k with a_k bent and a_1 xor a_k bent (n even)
  gray    gray_preimage of a bent function on n+1 variables (n odd)

gray_slice enumerates a fixed structured set of odd-n gbent tables for the
verify suites.
"""

import itertools
import logging
import math

import numpy as np

from classify import boolean_class
from errors import PreconditionError, ShapeError
from gbf import BoolTable, GbfTable, combine, dot

logger = logging.getLogger("gbent.construct")


def mm_bent(m, perm, h=None) -> BoolTable:
    """x . pi(y) xor h(y) on 2m variables; x is the low m bits, y the high m bits."""
    size = 1 << m
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (size,) or not np.array_equal(np.sort(perm), np.arange(size)):
        raise PreconditionError(f"perm must be a permutation of range({size})")
    if h is None:
        h = BoolTable.zeros(m)
    if h.n != m:
        raise ShapeError(f"h must have {m} variables, got {h.n}")
    idx = np.arange(1 << (2 * m), dtype=np.int64)
    x, y = idx & (size - 1), idx >> m
    return BoolTable(2 * m, dot(x, perm[y]) ^ h.bits[y])


def sparse_gbent(a1: BoolTable, ak: BoolTable, k, strict=False) -> GbfTable:
    """f = a_1 + 2^(k-1) a_k; gbent at k = 4 when n is even and a_k, a_1 xor a_k are bent."""
    if a1.n != ak.n:
        raise ShapeError(f"a1 has {a1.n} variables, ak has {ak.n}")
    if k < 2:
        raise PreconditionError("sparse_gbent needs k >= 2")
    if strict:
        want = "bent" if a1.n % 2 == 0 else "semibent"
        for name, b in (("a_k", ak), ("a_1+a_k", a1 ^ ak)):
            if boolean_class(b).label != want:
                raise PreconditionError(f"{name} must be {want} on {a1.n} variables")
    parts = [a1] + [BoolTable.zeros(a1.n)] * (k - 2) + [ak]
    return combine(parts, k)


def negated_plane(a1: BoolTable, a4: BoolTable) -> GbfTable:
    """a_1 + 2 not(a_1) + 8 a_4 at level 16."""
    return combine([a1, ~a1, BoolTable.zeros(a1.n), a4], 4)


def gray_preimage(F: BoolTable, k) -> GbfTable:
    """2^(k-2) (a_1 + 2 a_2) with a_2 = F(x, 0), a_1 = F(x, 0) xor F(x, 1); y is the top variable.

    At k = 2 the Gray image of the result is F itself.
    """
    if k < 2:
        raise PreconditionError("gray_preimage needs k >= 2")
    if F.n < 1:
        raise ShapeError("F needs at least one variable")
    half = 1 << (F.n - 1)
    at0, at1 = F.bits[:half], F.bits[half:]
    a1, a2 = at0 ^ at1, at0
    values = (a1.astype(np.int64) + 2 * a2.astype(np.int64)) << (k - 2)
    return GbfTable(F.n - 1, k, values)


def random_gbf(n, k, seed=None) -> GbfTable:
    rng = np.random.default_rng(seed)
    return GbfTable(n, k, rng.integers(0, 1 << k, size=1 << n))


def random_affine(n, rng) -> BoolTable:
    return BoolTable.linear(n, int(rng.integers(0, 1 << n)), int(rng.integers(0, 2)))


def random_mm_bent(n, rng) -> BoolTable:
    if n % 2:
        raise PreconditionError(f"bent functions need n even, got {n}")
    m = n // 2
    h = BoolTable(m, rng.integers(0, 2, size=1 << m))
    return mm_bent(m, rng.permutation(1 << m), h)


def _mm_family(n, k, rng):
    return GbfTable.from_bool(random_mm_bent(n, rng), k)


def _sparse_family(n, k, rng):
    ak = random_mm_bent(n, rng)
    if rng.integers(0, 2):
        a1 = random_affine(n, rng)
    else:
        a1 = ak ^ random_mm_bent(n, rng)
    return sparse_gbent(a1, ak, k)


def _gray_family(n, k, rng):
    if n % 2 == 0:
        raise PreconditionError("the gray family needs n odd")
    return gray_preimage(random_mm_bent(n + 1, rng), k)


FAMILIES = {
    "mm": _mm_family,
    "sparse": _sparse_family,
    "gray": _gray_family,
}


def family_member(name, n, k, seed, index) -> GbfTable:
    """Member number index of a named family; each index has its own generator stream."""
    try:
        build = FAMILIES[name]
    except KeyError:
        raise PreconditionError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    return build(n, k, np.random.default_rng([seed, index]))


def construct_family(name, n, k, count, seed=0, start=0):
    logger.debug("family %s: %d members at n=%d, k=%d, seed=%s", name, count, n, k, seed)
    for index in range(start, start + count):
        yield family_member(name, n, k, seed, index)


SLICE_MAX_M = 2


def slice_size(n, k):
    """Number of tables in gray_slice(n, k), or 0 where the slice is not defined."""
    m = (n + 1) // 2
    if n % 2 == 0 or k < 2 or m > SLICE_MAX_M:
        return 0
    return math.factorial(1 << m) * (1 << k) * (1 << n)


def gray_slice(n, k):
    """Every gray_preimage(mm_bent(m, pi), k) + c + 2^(k-1) a.x, 2m = n + 1.

    pi runs over all permutations of F_2^m, c over Z_(2^k) and a over F_2^n.
    Every table is gbent. The constant shift multiplies each spectral value by
    every 2^k-th root of unity in turn, which reaches every row of the odd-n
    component and Z_4 tables.
    """
    if not slice_size(n, k):
        raise PreconditionError(f"the Gray slice needs odd n <= {2 * SLICE_MAX_M - 1} and k >= 2, got n={n}, k={k}")
    m = (n + 1) // 2
    idx = np.arange(1 << n, dtype=np.int64)
    linears = [dot(idx, a).astype(np.int64) << (k - 1) for a in range(1 << n)]
    for perm in itertools.permutations(range(1 << m)):
        base = gray_preimage(mm_bent(m, perm), k).values.astype(np.int64)
        for c in range(1 << k):
            for linear in linears:
                yield GbfTable(n, k, (base + c + linear) % (1 << k))

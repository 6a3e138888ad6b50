# theorems.py
"""
Checkers for the characterizations of gbent, gsemibent and plateaued
functions in terms of their Boolean components, and for the exact identities
relating the generalized transform to plain Walsh spectra.

Component functions are indexed by an integer c in [0, 2^(k-1)), c_1 its low
bit: g_c = c_1 a_1 xor ... xor c_(k-1) a_(k-1) xor a_k. At k = 4 the named
transforms are

  A = W_(a4)        c = 0      B = W_(a1+a4)        c = 1
  C = W_(a2+a4)     c = 2      X = W_(a1+a2+a4)     c = 3
  D = W_(a3+a4)     c = 4      Y = W_(a1+a3+a4)     c = 5
  W = W_(a2+a3+a4)  c = 6      Z = W_(a1+a2+a3+a4)  c = 7

and tuples are listed in the order (A, C, D, W, B, X, Y, Z).

Checkers that test a condition in two encodings (product identities and
tuple membership, or two equivalent criteria) raise InvariantViolation when
the encodings disagree.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from classify import (BooleanClass, boolean_class, expected_gray_plateau, is_gbent, regular_dual,
                      spectrum_class)
from cyclotomic import CycInt, batch_conj, batch_embed, batch_mul, root_table
from errors import InvariantViolation, PreconditionError
from gbf import GbfTable, component_combination, gray_map, parity, regroup
from transform import IntSpectrum, butterfly, complementary_autocorrelation, gwht, wht

logger = logging.getLogger("gbent.theorems")


@dataclass
class TheoremVerdict:
    name: str
    holds: bool
    detail: Dict[Any, Any] = field(default_factory=dict)
    failure_witness: Optional[Dict[str, Any]] = None

    def to_dict(self):
        return {
            "holds": self.holds,
            "detail": {str(key): _plain(val) for key, val in self.detail.items()},
            "failure_witness": _plain(self.failure_witness),
        }


def _plain(obj):
    if isinstance(obj, dict):
        return {str(key): _plain(val) for key, val in obj.items()}
    if isinstance(obj, (tuple, list)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _disagree(name, f, first, second):
    logger.error("%s: encodings disagree on %r (%s vs %s)", name, f, first, second)
    raise InvariantViolation(f"{name}: encodings disagree ({first} vs {second}) on {f!r}")


def _require_k(f, allowed, name):
    if f.k not in allowed:
        raise PreconditionError(f"{name} is defined for k in {sorted(allowed)}, got k={f.k}")


# hardcoded solution tables

# level 8, even n: 2^(-n/2) (W_a3, W_a3+a1, W_a3+a2, W_a3+a2+a1)
K3_EVEN = (
    (-1, -1, -1, -1), (-1, 1, -1, 1), (-1, -1, 1, 1), (-1, 1, 1, -1),
    (1, -1, -1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, 1, 1, 1),
)

# level 8, odd n: 2^(-(n+1)/2) (same order)
K3_ODD = (
    (-1, -1, 0, 0), (0, 0, -1, -1), (-1, 1, 0, 0), (0, 0, -1, 1),
    (0, 0, 1, -1), (1, -1, 0, 0), (0, 0, 1, 1), (1, 1, 0, 0),
)

K3_ORDER = (0, 1, 2, 3)

# level 16, even n: 2^(-n/2) (A, C, D, W, B, X, Y, Z)
K4_EVEN = (
    (-1, -1, -1, -1, -1, -1, -1, -1), (-1, -1, 1, 1, -1, -1, 1, 1),
    (-1, 1, -1, 1, -1, 1, -1, 1), (-1, 1, 1, -1, -1, 1, 1, -1),
    (-1, -1, -1, -1, 1, 1, 1, 1), (-1, -1, 1, 1, 1, 1, -1, -1),
    (-1, 1, -1, 1, 1, -1, 1, -1), (-1, 1, 1, -1, 1, -1, -1, 1),
    (1, -1, -1, 1, -1, 1, 1, -1), (1, -1, 1, -1, -1, 1, -1, 1),
    (1, 1, -1, -1, -1, -1, 1, 1), (1, 1, 1, 1, -1, -1, -1, -1),
    (1, -1, -1, 1, 1, -1, -1, 1), (1, -1, 1, -1, 1, -1, 1, -1),
    (1, 1, -1, -1, 1, 1, -1, -1), (1, 1, 1, 1, 1, 1, 1, 1),
)

# level 16, odd n: 2^(-(n+1)/2) (A, C, D, W, B, X, Y, Z)
K4_ODD = (
    (-1, -1, 0, 0, -1, -1, 0, 0), (-1, 1, 0, 0, -1, 1, 0, 0),
    (-1, -1, 0, 0, 1, 1, 0, 0), (-1, 1, 0, 0, 1, -1, 0, 0),
    (0, 0, -1, -1, 0, 0, -1, -1), (0, 0, -1, 1, 0, 0, -1, 1),
    (0, 0, -1, -1, 0, 0, 1, 1), (0, 0, -1, 1, 0, 0, 1, -1),
    (0, 0, 1, -1, 0, 0, -1, 1), (0, 0, 1, 1, 0, 0, -1, -1),
    (0, 0, 1, -1, 0, 0, 1, -1), (0, 0, 1, 1, 0, 0, 1, 1),
    (1, -1, 0, 0, -1, 1, 0, 0), (1, 1, 0, 0, -1, -1, 0, 0),
    (1, -1, 0, 0, 1, -1, 0, 0), (1, 1, 0, 0, 1, 1, 0, 0),
)

K4_ORDER = (0, 2, 4, 6, 1, 3, 5, 7)
K4_NAMES = "ACDWBXYZ"


def _neg(z):
    return (-z[0], -z[1])


def _conj(z):
    return (z[0], -z[1])


def _z4_even_rows():
    # Gaussian integers as (re, im)
    rows = []
    for e in (1, -1):
        one, i = (e, 0), (0, e)
        rows += [
            (one, one, one, one),
            (one, one, _neg(one), _neg(one)),
            (one, _neg(one), i, _neg(i)),
            (one, _neg(one), _neg(i), i),
            (i, i, i, i),
            (i, i, _neg(i), _neg(i)),
            (i, _neg(i), _neg(one), one),
            (_neg(i), i, _neg(one), one),
        ]
    return tuple(rows)


def _z4_odd_rows():
    rows = []
    for e in (1, -1):
        for m in (1, -1):
            x = (e, m)
            rows += [
                (x, x, x, x),
                (x, x, _neg(x), _neg(x)),
                (x, _neg(x), _conj(x), _neg(_conj(x))),
                (x, _neg(x), _neg(_conj(x)), _conj(x)),
            ]
    return tuple(rows)


# 2^(-n/2) or 2^(-(n-1)/2) (H_(3b1+b2), H_(b1+b2), H_(2b1+b2), H_(b2))
Z4_EVEN = _z4_even_rows()
Z4_ODD = _z4_odd_rows()

Z4_MULTIPLIERS = (3, 1, 2, 0)


# component spectra

@dataclass(frozen=True, eq=False)
class ComponentSpectra:
    n: int
    k: int
    matrix: np.ndarray  # row c is W_(g_c)

    def __getitem__(self, c) -> IntSpectrum:
        return IntSpectrum(self.n, self.matrix[c])

    def __len__(self):
        return len(self.matrix)

    def ordered(self, order):
        return self.matrix[list(order)]

    def named(self):
        """The k = 4 letters A..Z mapped to their spectra."""
        if self.k != 4:
            raise PreconditionError("letter names exist only for k = 4")
        return {name: self[c] for name, c in zip(K4_NAMES, K4_ORDER)}


def component_spectra(f: GbfTable) -> ComponentSpectra:
    if f.k < 2:
        raise PreconditionError("component spectra need k >= 2")
    cs = np.arange(1 << (f.k - 1), dtype=np.int64)
    vals = f.values.astype(np.int64)
    low = vals & ((1 << (f.k - 1)) - 1)
    top = (vals >> (f.k - 1)) & 1
    bits = parity(low[None, :] & cs[:, None]) ^ top[None, :]
    signs = 1 - 2 * bits.astype(np.int64)
    matrix = butterfly(signs.T, f.n).T
    return ComponentSpectra(f.n, f.k, np.ascontiguousarray(matrix))


def _match_table(cols, norm, table):
    """Per-u membership of the normalized columns in table."""
    table = set(table)
    detail = {}
    divisible = ~(cols % norm).any(axis=0)
    scaled = (cols // norm).T.tolist()
    for u, row in enumerate(scaled):
        key = tuple(row)
        if not divisible[u] or key not in table:
            return False, detail, {"u": u, "observed": cols[:, u].tolist()}
        detail[u] = key
    return True, detail, None


def _classes(spectra):
    return [spectrum_class(spectra[c]) for c in range(len(spectra))]


def check_k2(f: GbfTable, spectra: Optional[ComponentSpectra] = None) -> TheoremVerdict:
    """Even n: a2 and a1+a2 bent. Odd n: the Gray image is bent."""
    _require_k(f, {2}, "check_k2")
    if spectra is None:
        spectra = component_spectra(f)
    image = gray_classify(f)
    if f.n % 2 == 0:
        classes = _classes(spectra)
        holds = classes[0].is_bent and classes[1].is_bent
        # psi(f) semibent with a2, a1+a2 complementary
        alternative = image.is_semibent and complementary_autocorrelation(
            component_combination(f, 0), component_combination(f, 1))
        if holds != alternative:
            _disagree("check_k2", f, holds, alternative)
        witness = {"a2": classes[0].label, "a1+a2": classes[1].label}
        norm = 1 << (f.n // 2)
        table = [(a, b) for a in (-1, 1) for b in (-1, 1)]
    else:
        holds = image.is_bent
        witness = {"gray_class": image.label}
        norm = 1 << ((f.n + 1) // 2)
        table = [(a, 0) for a in (-1, 1)] + [(0, b) for b in (-1, 1)]
    if not holds:
        return TheoremVerdict("k2", False, failure_witness=witness)
    matched, detail, _ = _match_table(spectra.matrix, norm, table)
    if not matched:
        _disagree("check_k2", f, holds, matched)
    return TheoremVerdict("k2", True, detail)


def check_k3(f: GbfTable, spectra: Optional[ComponentSpectra] = None) -> TheoremVerdict:
    _require_k(f, {3}, "check_k3")
    if spectra is None:
        spectra = component_spectra(f)
    if f.n % 2 == 0:
        norm, table = 1 << (f.n // 2), K3_EVEN
    else:
        norm, table = 1 << ((f.n + 1) // 2), K3_ODD
    holds, detail, witness = _match_table(spectra.ordered(K3_ORDER), norm, table)
    return TheoremVerdict("k3", holds, detail, witness)


def _k4_letters(spectra):
    m = spectra.matrix
    return m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7]


def _k4_even_identities(spectra):
    A, B, C, X, D, Y, W, Z = _k4_letters(spectra)
    return (A * C == D * W) & (D * W == B * X) & (B * X == Y * Z) & (A * D == B * Y)


def check_k4_gbent(f: GbfTable, spectra: Optional[ComponentSpectra] = None) -> TheoremVerdict:
    _require_k(f, {4}, "check_k4_gbent")
    if spectra is None:
        spectra = component_spectra(f)
    classes = _classes(spectra)
    A, B, C, X, D, Y, W, Z = _k4_letters(spectra)
    if f.n % 2 == 0:
        per_u = _k4_even_identities(spectra)
        literal = all(c.is_bent for c in classes) and bool(per_u.all())
        norm, table = 1 << (f.n // 2), K4_EVEN
    else:
        line = 1 << (f.n + 1)
        first = (A * C == B * X) & (np.abs(A * C) == line) & (D == 0) & (W == 0) & (Y == 0) & (Z == 0)
        second = (A == 0) & (C == 0) & (B == 0) & (X == 0) & (D * W == Y * Z) & (np.abs(D * W) == line)
        literal = all(c.is_semibent for c in classes) and bool((first | second).all())
        norm, table = 1 << ((f.n + 1) // 2), K4_ODD
    holds, detail, witness = _match_table(spectra.ordered(K4_ORDER), norm, table)
    if holds != literal:
        _disagree("check_k4_gbent", f, literal, holds)
    return TheoremVerdict("k4", holds, detail, witness)


def z4_functions(f: GbfTable):
    """(3b1+b2, b1+b2, 2b1+b2, b2) mod 4 for f = b1 + 4 b2."""
    _require_k(f, {4}, "z4_functions")
    b1, b2 = regroup(f, 2)
    return tuple(b2 + b1.scale(j) for j in Z4_MULTIPLIERS)


def check_k4_z4(f: GbfTable) -> TheoremVerdict:
    _require_k(f, {4}, "check_k4_z4")
    funcs = z4_functions(f)
    spectra = [gwht(h) for h in funcs]
    for j, h, s in zip(Z4_MULTIPLIERS, funcs, spectra):
        if not is_gbent(h, s):
            return TheoremVerdict("k4-z4", False, failure_witness={"not_gbent": f"{j}b1+b2"})
    if f.n % 2 == 0:
        norm, table = 1 << (f.n // 2), set(Z4_EVEN)
    else:
        norm, table = 1 << ((f.n - 1) // 2), set(Z4_ODD)
    stacked = np.stack([s.values for s in spectra], axis=1)  # (2^n, 4, 2)
    detail = {}
    for u in range(1 << f.n):
        row = stacked[u]
        if (row % norm).any():
            return TheoremVerdict("k4-z4", False, detail, {"u": u, "observed": row.tolist()})
        key = tuple((int(re) // norm, int(im) // norm) for re, im in row)
        if key not in table:
            return TheoremVerdict("k4-z4", False, detail, {"u": u, "observed": row.tolist()})
        detail[u] = key
    return TheoremVerdict("k4-z4", True, detail)


def check_k4_gsemibent(f: GbfTable, spectra: Optional[ComponentSpectra] = None) -> TheoremVerdict:
    """gsemibent (n odd) or generalized 2-plateaued (n even) at level 16."""
    _require_k(f, {4}, "check_k4_gsemibent")
    if spectra is None:
        spectra = component_spectra(f)
    classes = _classes(spectra)
    zero = ~spectra.matrix.any(axis=0)
    full = spectra.matrix.all(axis=0)
    literal = (all(c.is_semibent for c in classes)
               and bool((zero | (full & _k4_even_identities(spectra))).all()))
    norm = 1 << ((f.n + (1 if f.n % 2 else 2)) // 2)
    table = K4_EVEN + ((0,) * 8,)
    holds, detail, witness = _match_table(spectra.ordered(K4_ORDER), norm, table)
    if holds != literal:
        _disagree("check_k4_gsemibent", f, literal, holds)
    return TheoremVerdict("gsemibent", holds, detail, witness)


def inductive_split(f: GbfTable):
    """(h, h + 2^(k-2) g) for f = g + 2h."""
    g, h = regroup(f, 1)
    shifted = GbfTable(f.n, f.k - 1, (h.values.astype(np.int64) + (g.values.astype(np.int64) << (f.k - 2))) % h.q)
    return h, shifted


def check_inductive(f: GbfTable) -> TheoremVerdict:
    if f.k < 2:
        raise PreconditionError("check_inductive needs k >= 2")
    h, shifted = inductive_split(f)
    sh, ss = gwht(h), gwht(shifted)
    if not is_gbent(h, sh):
        return TheoremVerdict("inductive", False, failure_witness={"not_gbent": "h"})
    if not is_gbent(shifted, ss):
        return TheoremVerdict("inductive", False, failure_witness={"not_gbent": "h+2^(k-2)g"})
    product = batch_mul(batch_conj(sh.values), ss.values)
    real = (product == batch_conj(product)).all(axis=1)
    if not real.all():
        u = int(np.flatnonzero(~real)[0])
        return TheoremVerdict("inductive", False, failure_witness={"u": u, "product": product[u].tolist()})
    return TheoremVerdict("inductive", True, {u: "real" for u in range(1 << f.n)})


def components_bent_necessary(f: GbfTable, spectra: Optional[ComponentSpectra] = None) -> TheoremVerdict:
    if f.n % 2:
        raise PreconditionError("the component criterion is stated for n even")
    if f.k < 2:
        raise PreconditionError("the component criterion needs k >= 2")
    if spectra is None:
        spectra = component_spectra(f)
    matrix = spectra.matrix
    # detail[u] lists W_(g_c)(u) over c
    detail = {u: tuple(int(v) for v in matrix[:, u]) for u in range(1 << f.n)}
    off = np.argwhere(np.abs(matrix) != 1 << (f.n // 2))
    if not off.size:
        return TheoremVerdict("components-bent", True, detail)
    c, u = (int(i) for i in off[0])
    witness = {"u": u, "c": c, "value": int(matrix[c, u]), "class": spectrum_class(spectra[c]).label}
    return TheoremVerdict("components-bent", False, detail, witness)


# exact identities

def decomposition_weights(k):
    """alpha_c = prod_i (1 + (-1)^(c_i) zeta^(2^(i-1))) at level k, row c."""
    roots = root_table(k)
    one = CycInt.from_int(k, 1)
    rows = []
    for c in range(1 << (k - 1)):
        alpha = one
        for i in range(k - 1):
            term = CycInt(k, tuple(roots[1 << i]))
            alpha = alpha * (one - term if (c >> i) & 1 else one + term)
        rows.append(alpha.coeffs)
    return np.array(rows, dtype=np.int64)


def _points(n, u):
    return np.arange(1 << n) if u is None else np.atleast_1d(u)


def verify_walsh_decomposition(f: GbfTable, u=None) -> bool:
    """2^(k-1) H_f(u) = sum_c alpha_c W_(g_c)(u); every u when u is None."""
    _require_k(f, {2, 3, 4}, "verify_walsh_decomposition")
    points = _points(f.n, u)
    weights = decomposition_weights(f.k)
    spectra = component_spectra(f)
    lhs = gwht(f).values[points] << (f.k - 1)
    rhs = spectra.matrix[:, points].T @ weights
    return bool(np.array_equal(lhs, rhs))


def verify_recursive_split(f: GbfTable, u=None) -> bool:
    """2 H_f = (1 + zeta) H_h + (1 - zeta) H_(h + 2^(k-2) g), both lifted to level k."""
    if f.k < 2:
        raise PreconditionError("verify_recursive_split needs k >= 2")
    points = _points(f.n, u)
    h, shifted = inductive_split(f)
    roots = root_table(f.k)
    lifted_h = batch_embed(gwht(h).values[points], f.k - 1, f.k)
    lifted_s = batch_embed(gwht(shifted).values[points], f.k - 1, f.k)
    rhs = batch_mul(lifted_h, roots[0] + roots[1]) + batch_mul(lifted_s, roots[0] - roots[1])
    return bool(np.array_equal(2 * gwht(f).values[points], rhs))


def verify_gray_wht(f: GbfTable, u=None, v=None) -> bool:
    """W_psi(f)(u, v) = sum_alpha (-1)^(alpha.v) W_(g_alpha)(u)."""
    if f.k < 2:
        raise PreconditionError("verify_gray_wht needs k >= 2")
    us = _points(f.n, u)
    vs = _points(f.k - 1, v)
    image = wht(gray_map(f)).values.reshape(1 << (f.k - 1), 1 << f.n)
    alphas = np.arange(1 << (f.k - 1))
    signs = 1 - 2 * parity(vs[:, None] & alphas[None, :]).astype(np.int64)
    predicted = signs @ component_spectra(f).matrix[:, us]
    return bool(np.array_equal(image[np.ix_(vs, us)], predicted))


def gray_classify(f: GbfTable) -> BooleanClass:
    return boolean_class(gray_map(f))


# orchestration shared by search, verify and the report

def theorem_verdicts(f: GbfTable) -> Dict[str, TheoremVerdict]:
    """Every checker defined at (n, k), keyed by name."""
    verdicts = {}
    if f.k < 2:
        return verdicts
    spectra = component_spectra(f)
    if f.k == 2:
        verdicts["k2"] = check_k2(f, spectra)
    elif f.k == 3:
        verdicts["k3"] = check_k3(f, spectra)
    elif f.k == 4:
        verdicts["k4"] = check_k4_gbent(f, spectra)
        verdicts["k4-z4"] = check_k4_z4(f)
        verdicts["gsemibent"] = check_k4_gsemibent(f, spectra)
    verdicts["inductive"] = check_inductive(f)
    if f.n % 2 == 0:
        verdicts["components-bent"] = components_bent_necessary(f, spectra)
    return verdicts


def theorem_discrepancies(f: GbfTable, verdicts, gbent, plateau):
    """Names of the relations between checkers and spectral definitions that fail for f."""
    problems = []
    for name in ("k2", "k3", "k4", "k4-z4"):
        if name in verdicts and verdicts[name].holds != gbent:
            problems.append(name)
    if "gsemibent" in verdicts:
        level = 1 if f.n % 2 else 2
        if verdicts["gsemibent"].holds != (plateau.is_plateaued and plateau.s == level):
            problems.append("gsemibent")
    if "inductive" in verdicts:
        holds = verdicts["inductive"].holds
        if (f.n % 2 == 0 and holds != gbent) or (holds and not gbent):
            problems.append("inductive")
    if "components-bent" in verdicts and gbent and not verdicts["components-bent"].holds:
        problems.append("components-bent")
    if gbent and 2 <= f.k <= 4:
        image = gray_classify(f)
        if image.kind == "not_plateaued" or image.s != expected_gray_plateau(f.n, f.k):
            problems.append("gray")
    if gbent and not regularity_holds(f):
        problems.append("regularity")
    return problems


def regularity_holds(f: GbfTable) -> bool:
    """For gbent f with a representable dual: the dual is gbent and (f*)* = f."""
    result = regular_dual(f)
    if not result.is_regular:
        return True
    dual = result.dual
    if not is_gbent(dual):
        return False
    return regular_dual(dual).dual == f

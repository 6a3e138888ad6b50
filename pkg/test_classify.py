import numpy as np
import pytest

from classify import (boolean_class, distribution_counts, dual_patterns, expected_gray_plateau,
                      gbent_by_distribution, is_gbent, is_gsemibent, plateau_level, regular_dual)
from construct import construct_family, random_gbf
from errors import PreconditionError
from gbf import BoolTable, GbfTable, gbf_parse, gray_map
from search import exhaustive_tables
from transform import gwht, value_distribution, wht


def var(n, i):
    return BoolTable.variable(n, i)


def test_plateau_of_constant_is_n():
    result = plateau_level(GbfTable.constant(2, 3))
    assert result.is_plateaued and result.s == 2
    assert result.label == "plateaued(2)"


def test_two_point_function_is_gbent():
    f = gbf_parse("2:1:0,1")
    assert plateau_level(f).s == 0
    assert is_gbent(f)


def test_gray_image_of_x1_2x2_4x3_is_semibent():
    image = gray_map(gbf_parse("3:3:01234567"))
    result = boolean_class(image)
    assert result.is_semibent and result.s == 1
    assert set(np.abs(wht(image).values).tolist()) == {0, 8}


def test_not_plateaued_has_witness():
    # x1 + 2x2 + 4x3 at level 8 mixes an irrational squared modulus into the spectrum
    f = gbf_parse("3:3:01234567")
    result = plateau_level(f)
    assert not result.is_plateaued
    assert result.witness is not None
    assert not is_gbent(f)


def test_known_non_gbent():
    x = [var(4, i) for i in range(1, 5)]
    f = GbfTable(4, 4, x[0].bits + 2 * x[1].bits.astype(int) + 4 + 8 * (x[2] ^ x[3]).bits.astype(int))
    assert not is_gbent(f)


def test_top_plane_of_bent_is_gbent():
    b = (var(4, 1) & var(4, 2)) ^ (var(4, 3) & var(4, 4))
    for k in range(1, 7):
        assert is_gbent(GbfTable.from_bool(b, k))


def test_gbent_iff_plateau_zero():
    for f in exhaustive_tables(2, 3, 0, 4096):
        assert is_gbent(f) == (plateau_level(f).s == 0)


def test_gsemibent():
    # 2^(k-1) x1 on one variable has |H| in {0, 2}
    f = GbfTable.from_bool(var(1, 1), 3)
    assert is_gsemibent(f)
    assert not is_gsemibent(gbf_parse("2:1:0,1"))


def test_dual_of_2x1x2():
    result = regular_dual(gbf_parse("2:2:0,0,0,2"))
    assert result.is_regular
    assert result.dual.values.tolist() == [0, 0, 0, 2]


def test_dual_not_representable_at_level_4_odd_n():
    result = regular_dual(gbf_parse("2:1:0,1"))
    assert result.kind == "not_representable" and result.dual is None


def test_dual_odd_n_level_8():
    f = gbf_parse("3:1:0,2")
    dual = regular_dual(f).dual
    assert dual.values.tolist() == [1, 7]
    assert is_gbent(dual)
    assert regular_dual(dual).dual == f


def test_dual_needs_gbent():
    with pytest.raises(PreconditionError):
        regular_dual(GbfTable.constant(2, 2))


@pytest.mark.parametrize("family, n, k", [("mm", 4, 4), ("sparse", 4, 3), ("gray", 3, 3), ("gray", 3, 4),
                                          ("mm", 6, 2), ("sparse", 2, 4)])
def test_constructed_duals_are_involutive(family, n, k):
    for f in construct_family(family, n, k, count=10, seed=5):
        result = regular_dual(f)
        assert result.is_regular
        assert is_gbent(result.dual)
        assert regular_dual(result.dual).dual == f


def test_dual_patterns_shape():
    assert dual_patterns(2, 2).tolist() == [[2, 0], [0, 2], [-2, 0], [0, -2]]
    assert dual_patterns(3, 2) is None
    assert dual_patterns(3, 3).shape == (8, 4)


def test_distribution_examples():
    assert gbent_by_distribution(gbf_parse("2:2:0,0,0,2"))
    assert not gbent_by_distribution(GbfTable.constant(2, 2))
    with pytest.raises(PreconditionError):
        gbent_by_distribution(gbf_parse("2:1:0,1"))


def test_distribution_counts_match_value_distribution():
    f = random_gbf(4, 3, seed=2)
    counts = distribution_counts(f)
    for u in range(16):
        assert tuple(counts[u].tolist()) == value_distribution(f, u).counts


@pytest.mark.parametrize("k", [2, 3])
def test_distribution_agrees_with_is_gbent(k):
    for f in exhaustive_tables(2, k, 0, 1 << (k << 2)):
        assert gbent_by_distribution(f) == is_gbent(f)


@pytest.mark.slow
def test_distribution_agrees_with_is_gbent_level_16():
    for f in exhaustive_tables(2, 4, 0, 1 << 16):
        assert gbent_by_distribution(f) == is_gbent(f)


def test_boolean_class_examples():
    assert boolean_class(var(2, 1) & var(2, 2)).label == "bent"
    x1 = boolean_class(var(1, 1))
    assert x1.kind == "plateaued" and x1.s == 1 and x1.label == "semibent"
    assert boolean_class(BoolTable.zeros(3)).s == 3


def test_boolean_class_of_level_16_image():
    x = [var(4, i) for i in range(1, 5)]
    f = GbfTable(4, 4, x[0].bits + 2 * x[1].bits.astype(int) + 4 + 8 * (x[2] ^ x[3]).bits.astype(int))
    image = gray_map(f)
    result = boolean_class(image)
    assert result.kind == "plateaued" and result.s == 3
    assert set(wht(image).values.tolist()) <= {0, 32, -32}


def test_non_plateaued_boolean():
    # weight-1 function on 3 variables: |W| in {6, 2}
    b = BoolTable(3, [1, 0, 0, 0, 0, 0, 0, 0])
    assert boolean_class(b).kind == "not_plateaued"


def test_expected_gray_plateau():
    assert [expected_gray_plateau(3, k) for k in (2, 3, 4)] == [0, 1, 2]
    assert [expected_gray_plateau(4, k) for k in (2, 3, 4)] == [1, 2, 3]


def test_gwht_spectrum_reused():
    f = random_gbf(3, 4, seed=1)
    spectrum = gwht(f)
    assert plateau_level(f, spectrum) == plateau_level(f)

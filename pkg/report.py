# report.py
"""
The Report emitted by `cli analyze` and `cli gray`: an echo of the input, its
classification, the Gray image class, every applicable theorem verdict and the
spectrum as exact coefficient vectors per u.
"""

import json
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel

from classify import gbent_by_distribution, is_gbent, plateau_level, regular_dual
from gbf import GbfTable, gray_map
from theorems import (gray_classify, theorem_verdicts, verify_gray_wht, verify_recursive_split,
                      verify_walsh_decomposition)
from transform import gwht, wht


class TableEcho(BaseModel):
    n: int
    k: int
    values: List[int]


class Classification(BaseModel):
    gbent: bool
    plateau: str
    regular: Optional[bool] = None
    dual_kind: Optional[str] = None
    dual: Optional[List[int]] = None
    gbent_by_distribution: Optional[bool] = None


class GrayReport(BaseModel):
    variables: int
    image_class: str
    spectrum: Dict[str, int]  # Walsh value -> multiplicity
    max_abs: int


class SpectrumReport(BaseModel):
    values: List[List[int]]
    moduli_sq: List[List[int]]
    approx: Optional[List[List[float]]] = None


class Report(BaseModel):
    input: TableEcho
    classification: Optional[Classification] = None
    gray: Optional[GrayReport] = None
    theorems: Optional[Dict[str, Any]] = None
    identities: Optional[Dict[str, bool]] = None
    spectrum: Optional[SpectrumReport] = None

    def to_json(self):
        return json.dumps(self.model_dump(exclude_none=True), sort_keys=True)


def classification(f: GbfTable, spectrum=None) -> Classification:
    if spectrum is None:
        spectrum = gwht(f)
    gbent = is_gbent(f, spectrum)
    result = Classification(gbent=gbent, plateau=plateau_level(f, spectrum).label)
    if gbent:
        dual = regular_dual(f, spectrum)
        result.dual_kind = dual.kind
        result.regular = dual.is_regular
        if dual.is_regular:
            result.dual = dual.dual.values.tolist()
    if f.n % 2 == 0:
        result.gbent_by_distribution = gbent_by_distribution(f)
    return result


def gray_report(f: GbfTable) -> Optional[GrayReport]:
    if f.k < 2:
        return None
    image = gray_map(f)
    values, counts = np.unique(wht(image).values, return_counts=True)
    return GrayReport(
        variables=image.n,
        image_class=gray_classify(f).label,
        spectrum={str(int(v)): int(c) for v, c in zip(values, counts)},
        max_abs=int(np.abs(values).max()),
    )


def spectrum_report(spectrum, approx=False) -> SpectrumReport:
    report = SpectrumReport(values=spectrum.values.tolist(), moduli_sq=spectrum.moduli_sq.tolist())
    if approx:
        points = [spectrum.value(u).to_complex() for u in range(len(spectrum))]
        report.approx = [[round(z.real, 6), round(z.imag, 6)] for z in points]
    return report


def analyze(f: GbfTable, approx=False, gray_only=False) -> Report:
    report = Report(input=TableEcho(**f.to_dict()), gray=gray_report(f))
    if gray_only:
        return report
    spectrum = gwht(f)
    report.classification = classification(f, spectrum)
    report.spectrum = spectrum_report(spectrum, approx)
    if f.k >= 2:
        report.theorems = {name: v.to_dict() for name, v in theorem_verdicts(f).items()}
    if 2 <= f.k <= 4:
        report.identities = {
            "walsh-decomposition": verify_walsh_decomposition(f),
            "recursive-split": verify_recursive_split(f),
            "gray-wht": verify_gray_wht(f),
        }
    return report

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from mdsc_ldpc.ensemble import EnsembleParams, SectionIndex, as_fraction
from mdsc_ldpc.exceptions import DegenerateCoupling, ParameterError, UsageError
from mdsc_ldpc.io import load_params, params_from_mapping, save_params


def test_density_is_exact_rational():
    assert as_fraction(0.05) == Fraction(1, 20)
    assert as_fraction("1/3") == Fraction(1, 3)
    assert as_fraction(1) == Fraction(1)
    with pytest.raises(ParameterError):
        as_fraction(True)
    with pytest.raises(ParameterError):
        as_fraction("a third")


def test_coupling_weights_sum_to_one(md_params):
    total = md_params.gamma1 * (md_params.in_weight + (md_params.gamma2 - 1) * md_params.off_weight)
    assert total == 1
    assert md_params.in_weight == Fraction(9, 20)
    assert md_params.off_weight == Fraction(1, 20)


@pytest.mark.parametrize(
    "changes",
    [
        {"dl": 0},
        {"gamma1": 31},
        {"gamma2": 4},
        {"T": Fraction(3, 2)},
        {"T": -0.1},
        {"M": 3},
    ],
)
def test_invalid_parameters_rejected(md_params, changes):
    with pytest.raises(ParameterError):
        md_params.replace(**changes)


def test_density_without_neighbouring_segments_is_degenerate():
    with pytest.raises(DegenerateCoupling):
        EnsembleParams(dl=4, dr=8, L1=30, gamma1=2, L2=3, gamma2=1, T=0.1)


def test_cns_per_section_requires_divisibility(md_params):
    assert md_params.cns_per_section(64) == 32
    with pytest.raises(ParameterError):
        md_params.cns_per_section(3)
    with pytest.raises(ParameterError):
        md_params.cns_per_section()


def test_section_index_wraps_segments_only():
    at = SectionIndex.of(-1, 5, 3)
    assert at == SectionIndex(-1, 2)
    assert at.shifted(2, -3, 3) == SectionIndex(1, 2)


def test_one_dimensional_view(md_params):
    one_d = md_params.one_d()
    assert (one_d.L2, one_d.gamma2, one_d.T) == (1, 1, 0)
    assert one_d.is_one_dimensional
    assert not md_params.is_one_dimensional


def test_params_json_roundtrip(tmp_path, md_params):
    target = tmp_path / "p.json"
    save_params(md_params.replace(M=64), target)
    assert json.loads(target.read_text())["T"] == 0.1
    assert load_params(target) == md_params.replace(M=64)


def test_params_json_keeps_non_decimal_density(tmp_path, md_params):
    target = tmp_path / "third.json"
    third = md_params.replace(L2=4, gamma2=4, T=Fraction(1, 3))
    save_params(third, target)
    assert json.loads(target.read_text())["T"] == "1/3"
    assert load_params(target).T == Fraction(1, 3)


def test_unknown_key_rejected():
    with pytest.raises(ParameterError, match="colour"):
        params_from_mapping({"dl": 4, "dr": 8, "L1": 30, "gamma1": 2, "colour": "red"})


@pytest.mark.parametrize(
    "data",
    [
        {"dl": "4", "dr": 8, "L1": 30, "gamma1": 2},
        {"dl": 4, "dr": 8, "L1": 30},
        {"dl": 4, "dr": 8, "L1": 30, "gamma1": 0},
        {"dl": 4, "dr": 8, "L1": 30, "gamma1": 2, "T": True},
    ],
)
def test_malformed_documents_rejected(data):
    with pytest.raises(ParameterError):
        params_from_mapping(data)


def test_load_params_errors(tmp_path):
    with pytest.raises(UsageError):
        load_params(tmp_path / "absent.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ParameterError):
        load_params(broken)
    listed = tmp_path / "list.json"
    listed.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ParameterError):
        load_params(listed)

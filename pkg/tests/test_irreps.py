import pytest

from src.irreps import (
    central_character, conjecture_check, exceptional_gram_audit,
    exceptional_list, exceptional_structure, ExceptionalSpec,
    expected_character, negative_control_audit, Verdict
)
from src.pathbasis import build_B1, exceptional_points, Path
from src.scalars import derive_params, HalfExponent, Parity, qnum
from src.wordrep import ModuleSpec


def _assert_passed(report):
    failure = report.first_failure()
    assert report.passed, f"{report.name}: {failure.identity} ({failure.deviation})"


def test_invalid_exceptional_spec():
    with pytest.raises(ValueError):
        ExceptionalSpec(2, 1, 2, 1, 1)
    with pytest.raises(ValueError):
        ExceptionalSpec(4, 1, 0, 1, 1)


def test_dimensions_and_labels():
    assert ExceptionalSpec(2, 1, 1, 1, -1).dims == (1, 3)
    assert ExceptionalSpec(4, -1, 1, 1, 1).dims == (5, 11)
    assert ExceptionalSpec(3, 1, 0, 1, -1).dims == (4, 4)
    assert ExceptionalSpec(3, 1, 0, 1, -1).label == "V^(3)_-"
    assert ExceptionalSpec(4, 1, 3, -1, 1).label == "V^(4,3)_-+"


def test_exceptional_list(point):
    entries = exceptional_list(3, point)
    assert len(entries) == len(exceptional_points(3))
    assert all("central_character" in entry for entry in entries)
    assert "central_character" not in exceptional_list(3)[0]


def test_invariant_block_at_two_sites(point):
    espec = ExceptionalSpec(2, 1, 1, 1, -1)
    pair = exceptional_structure(espec, point)
    _assert_passed(pair.report)
    assert pair.dims == (1, 3)

    special = espec.point(point)
    params = derive_params(special, Parity.EVEN)
    assert params.b == params.s1
    e0, e1, e2 = (X[0, 0] for X in pair.sub)
    assert e0 == 0 and e1 == 0
    assert e2 == params.s2

    # Basis order is )), )(*, (), ((
    basis = build_B1(ModuleSpec.big(2, params))
    vector = basis.vectors[Path((0, 1, 2))]
    assert vector[0] == 0 and vector[2] == 0
    assert vector[3] == -params.s1*vector[1]


@pytest.mark.parametrize(
    "n", [2, 3],
    ids=["N2", "N3"]
)
def test_every_exceptional_point_splits(point, n):
    for case in exceptional_points(n):
        espec = ExceptionalSpec(n, *case)
        pair = exceptional_structure(espec, point)
        _assert_passed(pair.report)
        assert pair.dims == espec.dims


@pytest.mark.slow
def test_exceptional_points_at_four_sites(point):
    for case in exceptional_points(4):
        _assert_passed(exceptional_structure(ExceptionalSpec(4, *case), point).report)


def test_central_character(point):
    espec = ExceptionalSpec(3, 1, 2, -1, 1)
    pair = exceptional_structure(espec, point)
    special = espec.point(point)
    assert central_character(pair.sub, special) == expected_character(espec, special)
    x = espec.character_argument
    assert expected_character(espec, special) == (
        qnum(HalfExponent.of(3), special)*qnum(x*2, special)/qnum(x, special)
    )


def test_gram_determinant_vanishes_only_at_exceptional_points(point):
    _assert_passed(exceptional_gram_audit(2, point, controls=8))


def test_negative_controls(point):
    for case in exceptional_points(2):
        _assert_passed(negative_control_audit(ExceptionalSpec(2, *case), point))


@pytest.mark.parametrize(
    "n,k,eps1,eps2",
    [(2, 1, 1, 1), (2, 1, 1, -1), (2, 1, -1, 1), (3, 2, 1, 1), (3, 2, -1, -1),
     (3, 0, 1, 1)],
    ids=["N2+,+", "N2+,-", "N2-,+", "N3k2+,+", "N3k2-,-", "N3k0+"]
)
def test_conjecture_holds_at_desk_scale(point, n, k, eps1, eps2):
    result = conjecture_check(n, k, eps1, eps2, point, seed=1)
    assert result.verdict == Verdict.EQUIVALENT, result.note
    assert result.dims[0] == result.dims[1]
    assert result.to_json()["status"] == "checked at desk scale"
    assert result.trace_words_checked > 0


def test_conjecture_without_diagram_module(point):
    # W^(2,1)_{-,-} would need zero through lines
    result = conjecture_check(2, 1, -1, -1, point)
    assert result.verdict == Verdict.NOT_DECIDED
    assert result.note

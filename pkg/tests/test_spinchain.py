from fractions import Fraction

import numpy as np
import pytest

from src.audit import Status
from src.scalars import HalfExponent, qpow
from src.spinchain import (
    bitstring, dense, ebar, ebar_audit, equivalence_audit, kron_dense,
    local_application_audit, spin_generator, spin_generators,
    spin_relation_audit, u1_audit, unit_vector, vector_to_json
)
from src.wordrep import audit_relations


def _assert_passed(report):
    failure = report.first_failure()
    assert report.passed, f"{report.name}: {failure.identity} ({failure.deviation})"


def test_bulk_generator_on_up_down(point):
    q = qpow(HalfExponent.of(1), point)
    # Site 1 up, site 2 down
    image = spin_generator(1, 2, point).apply(unit_vector(0b01, 2, point))
    assert image[0b01] == 1/q
    assert image[0b10] == -1
    assert image[0b00] == 0 and image[0b11] == 0


def test_bulk_generator_kills_aligned_spins(point):
    op = spin_generator(2, 3, point)
    for state in (0b000, 0b110, 0b111, 0b001):
        assert not any(op.apply(unit_vector(state, 3, point)))


def test_generator_sites(point):
    ops = spin_generators(4, point)
    assert [op.sites for op in ops] == [(1,), (1, 2), (2, 3), (3, 4), (4,)]
    assert [op.name for op in ops] == ["e0", "e1", "e2", "e3", "e4"]
    with pytest.raises(ValueError):
        spin_generator(5, 4, point)


@pytest.mark.parametrize("n", [2, 3, 4], ids=["N2", "N3", "N4"])
def test_local_application_matches_kronecker(point, n):
    _assert_passed(local_application_audit(n, point))


def test_kronecker_form_of_boundary_generator(point):
    op = spin_generator(0, 2, point)
    assert np.array_equal(dense(op), kron_dense(op))


@pytest.mark.parametrize("n", [2, 3, 4], ids=["N2", "N3", "N4"])
def test_spin_chain_relations(params_for, n):
    _assert_passed(spin_relation_audit(n, params_for(n)))


@pytest.mark.parametrize("n", [2, 3], ids=["N2", "N3"])
def test_local_relations_agree_with_dense_matrices(params_for, n):
    params = params_for(n)
    local = spin_relation_audit(n, params)
    e = tuple(dense(op) for op in spin_generators(n, params.point))
    full = audit_relations(e, params, params.b)
    assert [(c.identity, c.status) for c in local.checks] == \
        [(c.identity, c.status) for c in full.checks]


def test_bulk_generator_squares_to_delta(params_for):
    params = params_for(3)
    report = spin_relation_audit(3, params.corrupted(delta=params.delta + 1))
    assert report.first_failure().identity == "e1^2 = c e1"
    assert report.first_failure().deviation.startswith("state ")
    checks = {c.identity: c.status for c in spin_relation_audit(3, params).checks}
    assert checks["e1^2 = c e1"] == checks["e1 e0 e1 = e1"] == Status.PASS


@pytest.mark.slow
def test_spin_chain_relations_at_five_sites(params_for):
    _assert_passed(spin_relation_audit(5, params_for(5)))


@pytest.mark.parametrize("n", [2, 3, 4], ids=["N2", "N3", "N4"])
def test_u1_symmetry(point, n):
    _assert_passed(u1_audit(n, point))
    _assert_passed(u1_audit(n, point, Fraction(5, 7)))


@pytest.mark.parametrize("n", [2, 3, 4], ids=["N2", "N3", "N4"])
def test_ebar(params_for, n):
    report = ebar_audit(n, params_for(n))
    _assert_passed(report)
    assert len(report.data["ebar"]) == 2**n


def test_ebar_amplitudes(point):
    vector = ebar(2, point)
    a = qpow(HalfExponent.of(w1=1), point)
    assert vector[0b00] == 1
    assert vector[0b01] == 1/a
    assert vector[0b10] == a*qpow(HalfExponent.of(1), point)


@pytest.mark.parametrize("n", [2, 3], ids=["N2", "N3"])
def test_equivalence_with_big_module(point, n):
    _assert_passed(equivalence_audit(n, point))


@pytest.mark.slow
@pytest.mark.parametrize("n", [4, 5, 6], ids=["N4", "N5", "N6"])
def test_equivalence_on_longer_chains(point, n):
    _assert_passed(equivalence_audit(n, point))


def test_vector_json(point):
    vector = unit_vector(0b011, 3, point)*Fraction(-2, 3)
    assert vector_to_json(vector) == {"110": "-2/3"}
    assert bitstring(0b100, 3) == "001"

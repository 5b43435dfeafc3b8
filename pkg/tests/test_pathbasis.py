import numpy as np
import pytest

from src.errors import BasisError, SingularArgumentError
from src.linalg import determinant, matmul
from src.pathbasis import (
    action_audit_B1, all_paths, annihilation_audit, build_B1,
    closed_form_factors, closed_form_symmetry_audit, Direction,
    determinant_normalisation, e_chain_murphy_audit, exceptional_points,
    fixed_height_gram, fundamental_vector, gram_closed_form, gram_diag_B1,
    gram_transport_audit, idempotent_E, k_coeff, murphy_audit_B1,
    murphy_eigenvalue, Path, path_counting_audit, path_gram_value, r_coeff,
    tile_chain, TileEvent, TileOrder, ybe_audit
)
from src.scalars import (
    derive_params, exceptional_point, HalfExponent, Parity, qnum, W1
)
from src.wordrep import generator_matrices, gram_matrix, ModuleSpec

SMALL = [2, 3, 4]
SMALL_IDS = [f"N{n}" for n in SMALL]


@pytest.fixture(scope="module")
def basis_for(big):
    cache = {}

    def build(n: int, order: TileOrder = TileOrder.LOWEST):
        if (n, order) not in cache:
            cache[n, order] = build_B1(big(n), order)
        return cache[n, order]
    return build


def _assert_passed(report):
    failure = report.first_failure()
    assert report.passed, f"{report.name}: {failure.identity} ({failure.deviation})"


def test_coefficient_poles(point):
    with pytest.raises(SingularArgumentError):
        r_coeff(HalfExponent.of(0), point)
    with pytest.raises(SingularArgumentError):
        k_coeff(HalfExponent.of(0), point)
    assert r_coeff(HalfExponent.of(1), point) == qnum(HalfExponent.of(2), point)


@pytest.mark.parametrize("n", [3, 4], ids=["N3", "N4"])
def test_yang_baxter_and_reflection(big, point, n):
    _assert_passed(ybe_audit(generator_matrices(big(n)), point))


def test_paths():
    assert Path.fundamental(4).heights == (0, -1, 0, -1, 0)
    path = Path((0, 1, 2, 1))
    assert path.end == 1 and path.n == 3
    assert path.flipped(2) == Path((0, 1, 0, 1))
    assert path.flipped(3) == Path((0, 1, 2, 3))
    assert path.has_slope(1) and not path.has_slope(2)
    assert str(path) == "(0,1,2,1)"
    with pytest.raises(ValueError):
        Path((0, 2))
    with pytest.raises(ValueError):
        Path((1, 0))


@pytest.mark.parametrize("n", range(1, 7), ids=[f"N{n}" for n in range(1, 7)])
def test_every_path_reduces(n):
    paths = all_paths(n)
    assert len(paths) == 2**n
    assert paths[0] == Path.fundamental(n)
    for path in paths:
        for order in TileOrder:
            current = Path.fundamental(n)
            for event in tile_chain(path, order):
                current = current.flipped(event.position)
            assert current == path


def test_fundamental_vector(big):
    for n in SMALL:
        vector = fundamental_vector(big(n))
        assert vector[0] == 1
        E = idempotent_E(n, big(n))
        assert all(x == y for x, y in zip(E.dot(vector), vector))


def test_path_basis_needs_big_module(params_for):
    with pytest.raises(BasisError):
        build_B1(ModuleSpec.through_lines(3, params_for(3), 0, 1, 1))


@pytest.mark.parametrize("n", SMALL, ids=SMALL_IDS)
def test_tile_order_independence(basis_for, n):
    lowest, highest = basis_for(n), basis_for(n, TileOrder.HIGHEST)
    for path in lowest.paths:
        assert all(
            x == y for x, y in zip(lowest.vectors[path], highest.vectors[path])
        ), path


@pytest.mark.parametrize("n", SMALL, ids=SMALL_IDS)
def test_generator_action(basis_for, n):
    _assert_passed(action_audit_B1(basis_for(n)))


@pytest.mark.parametrize("n", SMALL, ids=SMALL_IDS)
def test_murphy_eigenbasis(basis_for, n):
    _assert_passed(murphy_audit_B1(basis_for(n)))


def test_murphy_eigenvalue_of_fundamental_path():
    path = Path.fundamental(3)
    assert murphy_eigenvalue(path, 0) == -W1
    assert murphy_eigenvalue(path, 1) == W1


@pytest.mark.parametrize("n", SMALL, ids=SMALL_IDS)
def test_gram_transport(basis_for, big, n):
    report = gram_transport_audit(basis_for(n), gram_matrix(big(n)))
    _assert_passed(report)
    assert report.data["fundamental_norm"] != "0"


@pytest.mark.parametrize("n", SMALL, ids=SMALL_IDS)
def test_determinant_normalisation(basis_for, big, n):
    _assert_passed(determinant_normalisation(basis_for(n), big(n)))


@pytest.mark.parametrize("n", [3, 4], ids=["N3", "N4"])
def test_gram_determinant_over_seeds(seeded_point, n):
    spec = ModuleSpec.big(n, derive_params(seeded_point, Parity.of(n)))
    report = determinant_normalisation(build_B1(spec), spec)
    _assert_passed(report)
    assert gram_closed_form(n, seeded_point) != 0
    assert report.data["brute_over_closed"] != "0/1"


@pytest.mark.parametrize(
    "n,theta",
    [(2, (1, 1, 1, -1)), (3, (1, 0, 1, 1)), (3, (-1, 2, 1, -1))],
    ids=["N2 +1+-", "N3 +0++", "N3 -2+-"]
)
def test_determinant_normalisation_at_exceptional_theta(point, n, theta):
    special = exceptional_point(point, *theta)
    spec = ModuleSpec.big(n, derive_params(special, Parity.of(n)))
    report = determinant_normalisation(build_B1(spec), spec)
    _assert_passed(report)
    assert report.data["brute_over_closed"] is None
    assert report.data["matches_s1_power"] is None


@pytest.mark.slow
@pytest.mark.parametrize("n", [5, 6], ids=["N5", "N6"])
def test_determinant_normalisation_large(big, n):
    basis = build_B1(big(n))
    _assert_passed(determinant_normalisation(basis, big(n)))
    _assert_passed(action_audit_B1(basis))


def test_gram_diagonal_matches_recursion(basis_for, point):
    d = gram_diag_B1(basis_for(3))
    assert d[Path.fundamental(3)] == 1
    assert all(d[path] == path_gram_value(path, point) for path in d)


def test_closed_form_matches_brute_force_at_two_sites(big, point):
    spec = big(2)
    brute = determinant(gram_matrix(spec), point)
    closed = gram_closed_form(2, point)
    basis = build_B1(spec)
    norm = gram_matrix(spec)[0, 0]
    det_P = determinant(basis.change_of_basis(), point)
    assert brute == norm**4 * closed / det_P**2


def test_closed_form_factor_exponents(point):
    factors = closed_form_factors(4, point)
    exponents = [factor["exponent"] for factor in factors]
    assert exponents[1:] == [5, 1]
    assert exponents[0] < 0


@pytest.mark.parametrize("n", [2, 3, 4], ids=SMALL_IDS)
def test_closed_form_vanishes_at_exceptional_points(point, n):
    for sign, k, eps1, eps2 in exceptional_points(n):
        special = exceptional_point(point, sign, k, eps1, eps2)
        assert gram_closed_form(n, special) == 0, (sign, k, eps1, eps2)
    assert gram_closed_form(n, point) != 0


def test_exceptional_point_counts():
    assert len(exceptional_points(2)) == 8
    assert len(exceptional_points(3)) == 12
    assert len(exceptional_points(4)) == 16
    assert (1, 0, 1, -1) in exceptional_points(3)
    assert all(k % 2 == 1 for _, k, _, _ in exceptional_points(4))


def _f(h, point):
    return TileEvent(1, Direction.ABOVE, False, h).gram_factor(point)


def test_fixed_height_gram(point):
    assert fixed_height_gram(3, 3, point) == 1
    assert fixed_height_gram(3, 1, point) == _f(0, point)**2 * _f(1, point)
    assert fixed_height_gram(4, 0, point) != 0
    with pytest.raises(ValueError):
        fixed_height_gram(3, 2, point)


def _fixed_height_block_det(basis, G, h_n, point):
    """ Determinant of the Gram block of the path vectors ending at h_n, the
    lowest path normalised to 1.
    """
    paths = [path for path in basis.paths if path.end == h_n]
    P = np.column_stack([basis.vectors[path] for path in paths])
    block = matmul(P.T, G, P)
    lowest = paths.index(min(paths, key=lambda path: sum(path.heights)))
    return determinant(block, point) / block[lowest, lowest]**len(paths)


@pytest.mark.parametrize(
    "n", [2, 3, 4, pytest.param(5, marks=pytest.mark.slow)],
    ids=["N2", "N3", "N4", "N5"]
)
def test_fixed_height_gram_against_brute_force(basis_for, big, point, n):
    basis = basis_for(n)
    G = gram_matrix(big(n))
    for h_n in range(-n, n + 1, 2):
        assert _fixed_height_block_det(basis, G, h_n, point) == \
            fixed_height_gram(n, h_n, point), h_n


@pytest.mark.parametrize("n", range(2, 7), ids=[f"N{n}" for n in range(2, 7)])
def test_path_counting(n):
    _assert_passed(path_counting_audit(n))


@pytest.mark.parametrize("n", SMALL, ids=SMALL_IDS)
def test_closed_form_symmetries(point, n):
    _assert_passed(closed_form_symmetry_audit(n, point))


@pytest.mark.parametrize("n", SMALL, ids=SMALL_IDS)
def test_idempotent_chain(big, n):
    _assert_passed(e_chain_murphy_audit(big(n)))


@pytest.mark.parametrize("n", SMALL, ids=SMALL_IDS)
def test_fundamental_vector_is_annihilated(basis_for, params_for, n):
    basis = basis_for(n)
    params = params_for(n)
    start = basis.vectors[Path.fundamental(n)]
    _assert_passed(annihilation_audit(basis.e, params, start, params.b))


def test_annihilation_sees_wrong_b(basis_for, params_for):
    basis = basis_for(2)
    params = params_for(2)
    start = basis.vectors[Path.fundamental(2)]
    assert not annihilation_audit(basis.e, params, start, params.b + 1).passed

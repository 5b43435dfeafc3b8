""" The spin chain representation on (C^2)^N.

States are indexed by bit strings: bit i-1 of the index is 1 when site i is
up. Generators act on one site (e_0 on site 1, e_N on site N) or on the pair
of sites (i, i+1), and are applied locally without building 2^N x 2^N
matrices unless asked.

Classes:

    SpinOperator

Functions:

    spin_generator(i, n, p)
    spin_generators(n, p)
    unit_vector(state, n, p)
    dense(op)
    kron_dense(op)
    ebar(n, p)
    vector_to_json(vector)
    u1_twist(alpha, n, p)
    spin_relation_audit(n, params)
    local_application_audit(n, p)
    u1_audit(n, p, alpha)
    ebar_audit(n, params)
    equivalence_audit(n, p)
"""

from __future__ import annotations  # NOTE: This is necessary below Python 3.10

# For local operators
from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Dict, Sequence, Tuple

import numpy as np

from .audit import AuditReport
from .diagrams import idempotent_words
from .errors import BasisError, SingularArgumentError
from .hecke import central_scalar, centre_audit, lift_matrices
from .linalg import identity, matmul
from .pathbasis import (
    annihilation_audit, build_B1, build_basis, idempotent_chain, k_coeff
)
from .scalars import (
    derive_params, DerivedParams, format_scalar, HalfExponent, ONE, Parity,
    PointLike, qpow, Scalar, THETA, W1, W2
)
from .wordrep import generator_matrices, ModuleSpec

logger = logging.getLogger(__name__)

# Local states are ordered (up, down), matching the 2x2 matrices below
UP, DOWN = 0, 1


@dataclass(frozen=True)
class SpinOperator:
    """ A 2x2 matrix on one site or a 4x4 matrix on two neighbouring sites.

    The 4x4 basis is up-up, up-down, down-up, down-down with the lower site
    first.
    """
    n: int
    sites: Tuple[int, ...]
    local: np.ndarray
    point: PointLike
    name: str = ""

    @property
    def size(self) -> int:
        return 2**self.n

    def _local_index(self, state: int) -> int:
        index = 0
        for site in self.sites:
            up = (state >> (site - 1)) & 1
            index = 2*index + (UP if up else DOWN)
        return index

    def _with_local(self, state: int, index: int) -> int:
        for site in reversed(self.sites):
            bit = 1 << (site - 1)
            if index % 2 == UP:
                state |= bit
            else:
                state &= ~bit
            index //= 2
        return state

    def apply(self, vector: np.ndarray) -> np.ndarray:
        """ The image of a state vector. """
        out = np.full(self.size, self.point.zero, dtype=object)
        rows = self.local.shape[0]
        for state, amplitude in enumerate(vector):
            if not amplitude:
                continue
            column = self._local_index(state)
            for row in range(rows):
                entry = self.local[row, column]
                if entry:
                    target = self._with_local(state, row)
                    out[target] = out[target] + amplitude*entry
        return out

    def dense(self) -> np.ndarray:
        return dense(self)


def _boundary_denominator(omega: HalfExponent, p: PointLike) -> Scalar:
    shifted = omega + ONE
    denominator = qpow(shifted, p) - qpow(-shifted, p)
    if not denominator:
        raise SingularArgumentError("q^(w+1) - q^-(w+1)", shifted)
    return denominator


def _local_matrix(rows, p: PointLike) -> np.ndarray:
    return np.array(
        [[p.coerce(x) if isinstance(x, (int, Fraction)) else x for x in row]
         for row in rows],
        dtype=object
    )


def spin_generator(i: int, n: int, p: PointLike) -> SpinOperator:
    """ Local operator for e_i on the chain of n sites.

    Parameters:

        i: int - generator index, 0 to n

        n: int - number of sites

        p: ParamPoint or SymbolicPoint - the point

    Returns:

        e_0 on site 1, e_n on site n (with the q^(+-theta) twist), e_i on
        sites i and i + 1 otherwise

        SpinOperator
    """
    if n < 1 or not 0 <= i <= n:
        raise ValueError(f"no generator e{i} on {n} sites")
    zero, one = p.zero, p.one
    if i == 0:
        A = qpow(W1, p)
        C = _boundary_denominator(W1, p)
        local = _local_matrix([[-1/A, one], [-one, A]], p)*(1/C)
        return SpinOperator(n, (1,), local, p, "e0")
    if i == n:
        B = qpow(W2, p)
        T = qpow(THETA, p)
        C = _boundary_denominator(W2, p)
        local = _local_matrix([[B, -T], [1/T, -1/B]], p)*(1/C)
        return SpinOperator(n, (n,), local, p, f"e{n}")
    q = qpow(HalfExponent.of(1), p)
    # Signs chosen so that e_i^2 = [2] e_i
    local = _local_matrix([
        [zero, zero, zero, zero],
        [zero, 1/q, -one, zero],
        [zero, -one, q, zero],
        [zero, zero, zero, zero]
    ], p)
    return SpinOperator(n, (i, i + 1), local, p, f"e{i}")


def spin_generators(n: int, p: PointLike) -> Tuple[SpinOperator, ...]:
    return tuple(spin_generator(i, n, p) for i in range(n + 1))


def unit_vector(state: int, n: int, p: PointLike) -> np.ndarray:
    vector = np.full(2**n, p.zero, dtype=object)
    vector[state] = p.one
    return vector


def dense(op: SpinOperator) -> np.ndarray:
    """ Materialise op by applying it to every basis state. """
    return np.column_stack([
        op.apply(unit_vector(state, op.n, op.point)) for state in range(op.size)
    ])


def _kron(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    a, b = X.shape
    c, d = Y.shape
    return np.multiply.outer(X, Y).transpose(0, 2, 1, 3).reshape(a*c, b*d)


def kron_dense(op: SpinOperator) -> np.ndarray:
    """ Materialise op as a Kronecker product, then reorder into bit indexing. """
    p = op.point
    before = identity(2**(op.sites[0] - 1), p)
    after = identity(2**(op.n - op.sites[-1]), p)
    X = _kron(_kron(before, op.local), after)
    # Kronecker index: site 1 most significant, 0 meaning up
    order = []
    for state in range(op.size):
        index = 0
        for site in range(1, op.n + 1):
            index = 2*index + (UP if (state >> (site - 1)) & 1 else DOWN)
        order.append(index)
    return X[np.ix_(order, order)]


def ebar(n: int, p: PointLike) -> np.ndarray:
    """ The product state with q^-w1 up + down on odd sites and
    q^(w1+1) up + down on even sites.
    """
    odd = qpow(-W1, p)
    even = qpow(W1 + ONE, p)
    vector = np.full(2**n, p.one, dtype=object)
    for state in range(2**n):
        amplitude = p.one
        for site in range(1, n + 1):
            if (state >> (site - 1)) & 1:
                amplitude = amplitude * (odd if site % 2 else even)
        vector[state] = amplitude
    return vector


def bitstring(state: int, n: int) -> str:
    """ Site 1 first, 1 for up. """
    return "".join(str((state >> (site - 1)) & 1) for site in range(1, n + 1))


def vector_to_json(vector: np.ndarray) -> Dict[str, str]:
    """ Sparse JSON form of a state vector. """
    n = len(vector).bit_length() - 1
    return {
        bitstring(state, n): format_scalar(amplitude)
        for state, amplitude in enumerate(vector) if amplitude
    }


def u1_twist(alpha: Scalar, n: int, p: PointLike) -> np.ndarray:
    """ The diagonal operator alpha^(ups - downs). """
    U = identity(2**n, p)
    for state in range(2**n):
        ups = bin(state).count("1")
        U[state, state] = p.coerce(Fraction(alpha)**(2*ups - n))
    return U


def _word_image(
    ops: Sequence[SpinOperator],
    letters: Sequence[int],
    vector: np.ndarray
) -> np.ndarray:
    """ e_{l1} e_{l2} ... applied to vector, last letter first. """
    for i in reversed(letters):
        vector = ops[i].apply(vector)
    return vector


def spin_relation_audit(n: int, params: DerivedParams) -> AuditReport:
    """ Defining relations and the double quotient on the spin chain.

    Both sides of every relation are applied locally to each basis state, so
    no 2^N x 2^N matrix is built.
    """
    p = params.point
    ops = spin_generators(n, p)
    states = [unit_vector(state, n, p) for state in range(2**n)]
    report = AuditReport(f"relations on the spin chain, N={n}")

    def check(identity: str, lhs: Sequence[int], rhs: Sequence[int], c: Scalar):
        for state, vector in enumerate(states):
            left = _word_image(ops, lhs, vector)
            right = _word_image(ops, rhs, vector)*c
            if any(x != y for x, y in zip(left, right)):
                return report.record(identity, False, f"state {bitstring(state, n)}")
        return report.record(identity, True)

    for i in range(n + 1):
        scalar = params.s1 if i == 0 else params.s2 if i == n else params.delta
        check(f"e{i}^2 = c e{i}", (i, i), (i,), scalar)
    for i in range(1, n):
        for j in (i - 1, i + 1):
            check(f"e{i} e{j} e{i} = e{i}", (i, j, i), (i,), p.one)
    for i in range(n + 1):
        for j in range(i + 2, n + 1):
            check(f"e{i} e{j} = e{j} e{i}", (i, j), (j, i), p.one)
    w1, w2 = idempotent_words(n)
    I1, I2 = w1.letters, w2.letters
    check("I1 I2 I1 = b I1", I1 + I2 + I1, I1, params.b)
    check("I2 I1 I2 = b I2", I2 + I1 + I2, I2, params.b)
    return report


def local_application_audit(n: int, p: PointLike) -> AuditReport:
    """ Local application agrees with the Kronecker form. """
    report = AuditReport(f"local spin operators, N={n}")
    for op in spin_generators(n, p):
        report.matrices_equal(f"{op.name} local = Kronecker", dense(op), kron_dense(op))
    return report


def u1_audit(n: int, p: PointLike, alpha: Scalar = Fraction(3, 2)) -> AuditReport:
    """ Bulk generators commute with the twist U. """
    report = AuditReport(f"U(1) symmetry, N={n}")
    U = u1_twist(alpha, n, p)
    U_inv = u1_twist(1/alpha, n, p)
    for op in spin_generators(n, p)[1:n]:
        X = dense(op)
        report.matrices_equal(f"U {op.name} U^-1 = {op.name}", matmul(U, X, U_inv), X)
    return report


def ebar_audit(n: int, params: DerivedParams) -> AuditReport:
    """ E_i Ebar = Ebar for i <= N and e_0 Ebar = s1 Ebar. """
    p = params.point
    ops = spin_generators(n, p)
    vector = ebar(n, p)
    report = AuditReport(f"Ebar identities, N={n}")
    chain = idempotent_chain(tuple(dense(op) for op in ops), params)
    for i, E in enumerate(chain):
        report.record(
            f"E{i} Ebar = Ebar",
            all(x == y for x, y in zip(E.dot(vector), vector)),
            "vectors differ"
        )
    report.record(
        "e0 Ebar = s1 Ebar",
        all(x == y for x, y in zip(ops[0].apply(vector), vector*params.s1)),
        "vectors differ"
    )
    report.data["ebar"] = vector_to_json(vector)
    return report


def equivalence_audit(n: int, p: PointLike) -> AuditReport:
    """ The spin chain is equivalent to W^(N)(b), b fixed by theta and the
    parity of N.

    The path basis is grown a second time from Ebar with the same tile
    operators, and every generator must have the same matrix in both path
    bases. Also checked: the boundary identities for Ebar and the scalar
    action of Z_N.
    """
    params = derive_params(p, Parity.of(n))
    spin = tuple(dense(op) for op in spin_generators(n, p))
    start = ebar(n, p)
    report = AuditReport(f"spin chain equivalence, N={n}")

    minus_one = HalfExponent.of(-1)
    if n % 2 == 0:
        identity_id, argument = f"e{n - 1} K{n}(-w1-1) Ebar = 0", -W1 + minus_one
    else:
        identity_id, argument = f"e{n - 1} K{n}(w1) Ebar = 0", W1
    image = spin[n].dot(start) - start*k_coeff(argument, p)
    report.record(identity_id, not any(spin[n - 1].dot(image)), "nonzero entries")
    report.extend(annihilation_audit(spin, params, start, params.b), "Ebar")

    spin_basis = build_basis(spin, params, start)
    try:
        spin_basis.change_of_basis_inverse()
    except BasisError as error:
        raise BasisError(f"the Ebar path vectors do not span at N={n}") from error
    spec = ModuleSpec.big(n, params)
    big_basis = build_B1(spec)
    big = generator_matrices(spec)
    for i in range(n + 1):
        report.matrices_equal(
            f"e{i} agrees in the two path bases",
            spin_basis.in_basis(spin[i]), big_basis.in_basis(big[i])
        )
    report.extend(centre_audit(lift_matrices(spin, p), central_scalar(n, p)), "spin chain")
    logger.info("spin chain equivalence at N=%d: %s", n,
                "holds" if report.passed else "fails")
    return report

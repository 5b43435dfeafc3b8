""" Hecke generators and Murphy elements inside a representation.

The generators are images of e_0, ..., e_N under the surjection from the
affine Hecke algebra of type C, so everything here is a matrix identity in
whichever representation supplied the e's.

Classes:

    HeckeGenSet
    MurphyKind
    MurphyFamily

Functions:

    lift_matrices(e, p)
    lift_to_hecke(spec)
    murphy(kind, gens)
    hecke_audit(gens)
    auxiliary_audit(gens)
    murphy_audit(family, gens)
    type_b_centrality_audit(gens)
    equivalent_presentation_audit(gens)
    central_element(family)
    central_scalar(n, p)
    centre_audit(gens, expected)
    iji_audit(spec)
"""

from __future__ import annotations  # NOTE: This is necessary below Python 3.10

# For generator sets
from dataclasses import dataclass
from enum import auto, Enum
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from .audit import AuditReport
from .diagrams import idempotent_words
from .linalg import commutator, identity, matmul
from .scalars import (
    HalfExponent, ONE, Parity, PointLike, q_minus_qinv, qnum, qpow, Scalar,
    THETA, W1, W2
)
from .wordrep import generator_matrices, ModuleKind, ModuleSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HeckeGenSet:
    """ g_0, ..., g_N, their inverses and the e's they came from. """
    n: int
    point: PointLike
    e: Tuple[np.ndarray, ...]
    g: Tuple[np.ndarray, ...]
    g_inv: Tuple[np.ndarray, ...]

    @property
    def one(self) -> np.ndarray:
        return identity(self.e[0].shape[0], self.point)

    def word(self, letters: List[int]) -> np.ndarray:
        """ Product of g's; a negative letter -i-1 stands for g_i^-1. """
        factors = [self.g[i] if i >= 0 else self.g_inv[-i - 1] for i in letters]
        return matmul(*factors) if factors else self.one


def _boundary_generator(
    e: np.ndarray,
    omega: HalfExponent,
    sign: int,
    p: PointLike
) -> np.ndarray:
    """ q^(sign w) - (q^(sign(1+w)) - q^(-sign(1+w))) e. """
    one = identity(e.shape[0], p)
    shifted = (ONE + omega)*sign
    return one*qpow(omega*sign, p) - e*(qpow(shifted, p) - qpow(-shifted, p))


def lift_matrices(e: Tuple[np.ndarray, ...], p: PointLike) -> HeckeGenSet:
    """ Hecke generators from the matrices of e_0, ..., e_N.

    Parameters:

        e: tuple of matrices - e_0, ..., e_N

        p: ParamPoint or SymbolicPoint - the point the matrices live at

    Returns:

        g_i^(+-1) = e_i - q^(-+1) in the bulk, and the boundary generators
        built from q^w1 and q^w2

        HeckeGenSet
    """
    n = len(e) - 1
    one = identity(e[0].shape[0], p)
    g = []
    g_inv = []
    for i in range(n + 1):
        if i == 0:
            g.append(_boundary_generator(e[0], W1, 1, p))
            g_inv.append(_boundary_generator(e[0], W1, -1, p))
        elif i == n:
            g.append(_boundary_generator(e[n], W2, 1, p))
            g_inv.append(_boundary_generator(e[n], W2, -1, p))
        else:
            g.append(e[i] - one*qpow(-ONE, p))
            g_inv.append(e[i] - one*qpow(ONE, p))
    return HeckeGenSet(n, p, tuple(e), tuple(g), tuple(g_inv))


def lift_to_hecke(spec: ModuleSpec) -> HeckeGenSet:
    return lift_matrices(generator_matrices(spec), spec.params.point)


class MurphyKind(Enum):
    A = auto()
    B = auto()
    C = auto()


@dataclass(frozen=True)
class MurphyFamily:
    """ J_i and J_i^-1 keyed by index (type A starts at 1, B and C at 0). """
    kind: MurphyKind
    J: Dict[int, np.ndarray]
    J_inv: Dict[int, np.ndarray]

    @property
    def indices(self) -> List[int]:
        return sorted(self.J)


def murphy(kind: MurphyKind, gens: HeckeGenSet) -> MurphyFamily:
    """ Build the family J_i = g_i J_{i-1} g_i from its first element. """
    n = gens.n
    g, g_inv = gens.g, gens.g_inv
    if kind == MurphyKind.A:
        start = 1
        J = {1: matmul(g[1], g[1])} if n > 1 else {}
        J_inv = {1: matmul(g_inv[1], g_inv[1])} if n > 1 else {}
    elif kind == MurphyKind.B:
        start = 0
        J, J_inv = {0: g[0]}, {0: g_inv[0]}
    else:
        start = 0
        bulk = list(range(1, n))
        J = {0: gens.word(
            [-i - 1 for i in bulk] + [n] + list(reversed(bulk)) + [0]
        )}
        J_inv = {0: gens.word(
            [-1] + [-i - 1 for i in bulk] + [-n - 1] + list(reversed(bulk))
        )}
    for i in range(start + 1, n):
        J[i] = matmul(g[i], J[i - 1], g[i])
        J_inv[i] = matmul(g_inv[i], J_inv[i - 1], g_inv[i])
    logger.debug("built %d type %s Murphy elements", len(J), kind.name)
    return MurphyFamily(kind, J, J_inv)


def hecke_audit(gens: HeckeGenSet) -> AuditReport:
    """ Inverses, quadratic relations, braid relations and the kernel of the
    surjection onto the two-boundary algebra.
    """
    n, p = gens.n, gens.point
    g, g_inv, one = gens.g, gens.g_inv, gens.one
    report = AuditReport("hecke relations")
    q, qi = qpow(ONE, p), qpow(-ONE, p)
    A, B = qpow(W1, p), qpow(W2, p)

    for i in range(n + 1):
        report.matrices_equal(f"g{i} g{i}^-1 = 1", matmul(g[i], g_inv[i]), one)
        if i == 0:
            roots = (A, 1/A)
        elif i == n:
            roots = (B, 1/B)
        else:
            roots = (q, -qi)
        report.matrix_zero(
            f"quadratic relation of g{i}",
            matmul(g[i] - one*roots[0], g[i] - one*roots[1])
        )

    for i in range(1, n - 1):
        j = i + 1
        report.matrices_equal(
            f"g{i} g{j} g{i} = g{j} g{i} g{j}",
            matmul(g[i], g[j], g[i]), matmul(g[j], g[i], g[j])
        )
        report.matrix_zero(
            f"bulk kernel relation at {i}",
            matmul(g[i], g[j], g[i])
            + (matmul(g[i], g[j]) + matmul(g[j], g[i]))*qi
            + (g[i] + g[j])*qi**2 + one*qi**3
        )
    for a, c in ((0, 1), (n, n - 1)):
        report.matrices_equal(
            f"g{a} g{c} g{a} g{c} = g{c} g{a} g{c} g{a}",
            matmul(g[a], g[c], g[a], g[c]), matmul(g[c], g[a], g[c], g[a])
        )
    for i in range(n + 1):
        for j in range(i + 2, n + 1):
            report.matrix_zero(f"[g{i}, g{j}] = 0", commutator(g[i], g[j]))

    for side, a, c, X in (("left", 0, 1, A), ("right", n, n - 1, B)):
        trace = X + 1/X
        report.matrix_zero(
            f"{side} kernel relation",
            matmul(g[c], g[a], g[c])
            + (matmul(g[a], g[c]) + matmul(g[c], g[a]))*qi
            - g[c]*(qi*trace) + g[a]*qi**2 - one*(qi**2*trace)
        )
    return report


def auxiliary_audit(gens: HeckeGenSet) -> AuditReport:
    """ Products of e's and g's that collapse to shorter products of e's. """
    n, p = gens.n, gens.point
    e, g, g_inv = gens.e, gens.g, gens.g_inv
    report = AuditReport("auxiliary identities")
    qi = qpow(-ONE, p)
    for i in range(1, n):
        for j in (i - 1, i + 1):
            if not 1 <= j <= n - 1:
                continue
            report.matrices_equal(
                f"e{i} g{j} g{i} = -q^-1 e{i} e{j}",
                matmul(e[i], g[j], g[i]), matmul(e[i], e[j])*(-qi)
            )
            report.matrices_equal(
                f"g{i} g{j} e{i} = -q^-1 e{j} e{i}",
                matmul(g[i], g[j], e[i]), matmul(e[j], e[i])*(-qi)
            )
    one = gens.one
    if n >= 2:
        B = W2
        inner = one*qpow(-B, p) + e[n - 1]*(qpow(B - ONE, p) - qpow(ONE - B, p))
        report.matrices_equal(
            f"e{n} g{n - 1}^-1 g{n} g{n - 1} e{n}",
            matmul(e[n], g_inv[n - 1], g[n], g[n - 1], e[n]),
            matmul(e[n], inner, e[n])
        )
        inner = one*qpow(-ONE - W1, p) + e[1]*(qpow(W1, p) - qpow(-W1, p))
        report.matrices_equal(
            "e0 g1 g0 g1 e0",
            matmul(e[0], g[1], g[0], g[1], e[0]),
            matmul(e[0], inner, e[0])*qi
        )
    return report


def murphy_audit(family: MurphyFamily, gens: HeckeGenSet) -> AuditReport:
    """ Commutation of the family with itself and with the generators. """
    g = gens.g
    J, J_inv = family.J, family.J_inv
    kind = family.kind.name
    report = AuditReport(f"type {kind} Murphy elements")
    indices = family.indices
    for a in indices:
        report.matrices_equal(
            f"J{a} J{a}^-1 = 1", matmul(J[a], J_inv[a]), gens.one
        )
        for b in indices:
            if b > a:
                report.matrix_zero(f"[J{a}, J{b}] = 0", commutator(J[a], J[b]))

    first = 1
    for i in range(first, gens.n):
        for j in indices:
            if family.kind == MurphyKind.A and i == 1:
                report.matrix_zero(f"[g1, J{j}] = 0", commutator(g[1], J[j]))
            elif j not in (i - 1, i):
                report.matrix_zero(f"[g{i}, J{j}] = 0", commutator(g[i], J[j]))
        if i - 1 in J and i in J:
            report.matrix_zero(
                f"[g{i}, J{i - 1} J{i}] = 0",
                commutator(g[i], matmul(J[i - 1], J[i]))
            )
            report.matrix_zero(
                f"[g{i}, J{i - 1} + J{i}] = 0", commutator(g[i], J[i - 1] + J[i])
            )

    if family.kind == MurphyKind.C:
        for j in indices:
            if j != 0:
                report.matrix_zero(f"[g0, J{j}] = 0", commutator(g[0], J[j]))
        report.matrix_zero(
            "[g0, J0 + J0^-1] = 0", commutator(g[0], J[0] + J_inv[0])
        )
    return report


def type_b_centrality_audit(gens: HeckeGenSet) -> AuditReport:
    """ Elementary symmetric polynomials in the type B Murphy elements commute
    with g_0, ..., g_{N-1}.
    """
    family = murphy(MurphyKind.B, gens)
    report = AuditReport("type B symmetric polynomials")
    one = gens.one
    elementary = [one] + [one*gens.point.zero]*len(family.J)
    for J in (family.J[i] for i in family.indices):
        for k in range(len(elementary) - 1, 0, -1):
            elementary[k] = elementary[k] + matmul(elementary[k - 1], J)
    for k, E in enumerate(elementary[1:], start=1):
        for i in range(gens.n):
            report.matrix_zero(
                f"[g{i}, elementary symmetric {k}] = 0", commutator(gens.g[i], E)
            )
    return report


def equivalent_presentation_audit(gens: HeckeGenSet) -> AuditReport:
    """ Relations presenting the affine algebra through g_0, g_1, ..., J_0,
    and g_N rebuilt from J_0.
    """
    n, p = gens.n, gens.point
    g, g_inv = gens.g, gens.g_inv
    family = murphy(MurphyKind.C, gens)
    J0, J0_inv = family.J[0], family.J_inv[0]
    report = AuditReport("equivalent affine presentation")
    for i in range(2, n):
        report.matrix_zero(f"[g{i}, J0] = 0", commutator(g[i], J0))
    if n >= 2:
        report.matrices_equal(
            "J0 g1 J0 g1 = g1 J0 g1 J0",
            matmul(J0, g[1], J0, g[1]), matmul(g[1], J0, g[1], J0)
        )
        report.matrices_equal(
            "g0 g1 J0 g1 = g1 J0 g1 g0",
            matmul(g[0], g[1], J0, g[1]), matmul(g[1], J0, g[1], g[0])
        )
    one = gens.one
    X = matmul(J0, g_inv[0])
    B = qpow(W2, p)
    report.matrix_zero(
        "(J0 g0^-1 - q^w2)(J0 g0^-1 - q^-w2) = 0",
        matmul(X - one*B, X - one*(1/B))
    )
    bulk = list(range(1, n))
    rebuilt = matmul(
        gens.word(list(reversed(bulk))), J0, g_inv[0],
        gens.word([-i - 1 for i in bulk])
    )
    report.matrices_equal(f"g{n} rebuilt from J0", rebuilt, g[n])
    report.matrices_equal(
        "J0^-1 = (q^w2 + q^-w2) g0^-1 - g0^-1 J0 g0^-1",
        J0_inv, g_inv[0]*(B + 1/B) - matmul(g_inv[0], J0, g_inv[0])
    )
    return report


def central_element(family: MurphyFamily) -> np.ndarray:
    """ Z_N, the sum of J_i + J_i^-1 over the type C family. """
    Z = None
    for i in family.indices:
        term = family.J[i] + family.J_inv[i]
        Z = term if Z is None else Z + term
    return Z


def central_scalar(n: int, p: PointLike) -> Scalar:
    """ [N][2 theta]/[theta]. """
    return qnum(HalfExponent.of(n), p) * qnum(THETA*2, p) / qnum(THETA, p)


def centre_audit(
    gens: HeckeGenSet,
    expected: Optional[Scalar] = None
) -> AuditReport:
    """ Z_N commutes with every e_i; with expected set, Z_N = expected * 1. """
    Z = central_element(murphy(MurphyKind.C, gens))
    report = AuditReport("central element")
    for i, e in enumerate(gens.e):
        report.matrix_zero(f"[Z, e{i}] = 0", commutator(Z, e))
    if expected is not None:
        report.matrices_equal("Z scalar", Z, gens.one*expected)
    return report


def _evaluations(
    n: int,
    p: PointLike,
    sign: int
) -> Dict[str, Tuple[int, int, Scalar, Scalar]]:
    """ Printed values of I J_k I as a I + c I I' I, for J (sign 1) or J^-1
    (sign -1, every power of q inverted).

    Keys name the identity; values are (which I, k, a, c).
    """
    def qp(x: HalfExponent) -> Scalar:
        return qpow(x*sign, p)

    def qn(x: HalfExponent) -> Scalar:
        return qnum(x, p)

    d = q_minus_qinv(p)*sign
    two = qn(HalfExponent.of(2))
    s1 = qn(W1)/qn(W1 + ONE)
    s2 = qn(W2)/qn(W2 + ONE)
    w12 = W1 + W2
    out = {}
    if n % 2 == 0:
        half = (n - 2)//2
        scale = qp(HalfExponent.of(-2))*two**half
        out["I1 J0 I1"] = (
            1, 0,
            scale*qn((w12 + ONE)*2)/qn(w12 + ONE),
            -scale*d**2*qn(W1 + ONE)*qn(W2 + ONE)
        )
        scale = qp(-W1)*two**half
        out["I2 J0 I2"] = (2, 0, scale*qp(-W2)*s1*s2, scale*d*qn(W2 - ONE))
        if n >= 4:
            scale = qp(HalfExponent.of(-3))*two**((n - 4)//2)
            out["I2 J1 I2"] = (
                2, 1,
                scale*qn(W1)*qn(W2)*qn(w12*2)
                / (qn(W1 + ONE)*qn(W2 + ONE)*qn(w12)),
                -scale*d**2*qn(W1)*qn(W2 - ONE)
            )
        scale = qp(-W2 - HalfExponent.of(n - 1))*two**half
        out[f"I2 J{n - 1} I2"] = (
            2, n - 1,
            scale*qp(-ONE - W1)*s1*s2,
            scale*d*qn(W1)
        )
    else:
        scale = qp(HalfExponent.of(-2))*two**((n - 3)//2)
        out["I1 J0 I1"] = (
            1, 0,
            scale*qn(W2)*qn((ONE + W1 - W2)*2)
            / (qn(W2 + ONE)*qn(ONE + W1 - W2)),
            -scale*d**2*qn(ONE + W1)*qn(ONE - W2)
        )
        scale = qp(-W2 - HalfExponent.of(n - 1))*two**((n - 1)//2)
        out[f"I1 J{n - 1} I1"] = (
            1, n - 1, scale*qp(W1)*s2, -scale*d*qn(ONE + W1)
        )
        scale = qp(-W1)*two**((n - 1)//2)
        out["I2 J0 I2"] = (2, 0, scale*qp(W2)*s1, -scale*d*qn(ONE + W2))
        scale = qp(HalfExponent.of(-3))*two**((n - 3)//2)
        out["I2 J1 I2"] = (
            2, 1,
            scale*qn(W1)*qn((W1 - W2)*2)/(qn(W1 + ONE)*qn(W1 - W2)),
            scale*d**2*qn(W1)*qn(W2 + ONE)
        )
    return out


def iji_audit(spec: ModuleSpec) -> AuditReport:
    """ The double quotient relations I1 I2 I1 = b I1 and I2 I1 I2 = b I2 in
    W^(N)(b) together with the pieces they are assembled from.

    Checked: the recursions between I J_k I for neighbouring k, the
    normalisations of I1^2 and I2^2, Z_N on the module and the assembled
    relations. The closed evaluations of I J_k^(+-1) I are checked as well
    and listed under data["evaluations"].
    """
    if spec.kind != ModuleKind.BIG:
        raise ValueError("the double quotient lives on W^(N)(b)")
    n, params = spec.n, spec.params
    p = params.point
    gens = lift_to_hecke(spec)
    family = murphy(MurphyKind.C, gens)
    e, J = gens.e, family.J
    w1, w2 = idempotent_words(n)
    I = {
        1: matmul(*[e[i] for i in w1.letters]),
        2: matmul(*[e[i] for i in w2.letters])
    }
    report = AuditReport(f"double quotient on {spec.name}")
    q2 = qpow(HalfExponent.of(2), p)

    def sandwich(which: int, X: np.ndarray) -> np.ndarray:
        return matmul(I[which], X, I[which])

    # Last i for which each recursion holds: I -> (q^2 step, q^-2 step)
    if Parity.of(n) == Parity.EVEN:
        last = {1: ((n - 2)//2, (n - 4)//2), 2: ((n - 4)//2, (n - 6)//2)}
    else:
        last = {1: ((n - 3)//2, (n - 5)//2), 2: ((n - 3)//2, (n - 5)//2)}
    for which, (up, down) in last.items():
        # I1 recursions start from J0, I2 recursions from J1
        for i in range(up + 1):
            k = 2*i + which - 1
            report.matrices_equal(
                f"I{which} J{k + 1} I{which} = q^2 I{which} J{k} I{which}",
                sandwich(which, J[k + 1]), sandwich(which, J[k])*q2
            )
        for i in range(down + 1):
            k = 2*i + which - 1
            report.matrices_equal(
                f"I{which} J{k + 2} I{which} = q^-2 I{which} J{k} I{which}",
                sandwich(which, J[k + 2]), sandwich(which, J[k])/q2
            )

    two = qnum(HalfExponent.of(2), p)
    if Parity.of(n) == Parity.EVEN:
        norms = (two**(n//2), two**((n - 2)//2)*params.s1*params.s2)
    else:
        norms = (two**((n - 1)//2)*params.s2, two**((n - 1)//2)*params.s1)
    for which, c in zip((1, 2), norms):
        report.matrices_equal(
            f"I{which}^2 normalisation", matmul(I[which], I[which]), I[which]*c
        )

    report.extend(centre_audit(gens, central_scalar(n, p)))

    b = spec.quotient_b
    report.matrices_equal("I1 I2 I1 = b I1", matmul(I[1], I[2], I[1]), I[1]*b)
    report.matrices_equal("I2 I1 I2 = b I2", matmul(I[2], I[1], I[2]), I[2]*b)

    evaluations = []
    for sign, J_used in ((1, family.J), (-1, family.J_inv)):
        for name, (which, k, a, c) in _evaluations(n, p, sign).items():
            other = 3 - which
            target = I[which]*a + matmul(I[which], I[other], I[which])*c
            label = name if sign > 0 else name.replace(f"J{k}", f"J{k}^-1")
            holds = report.matrices_equal(label, sandwich(which, J_used[k]), target)
            evaluations.append({"identity": label, "holds": holds})
    report.data["evaluations"] = evaluations
    return report

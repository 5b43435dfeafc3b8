""" Exceptional points of W^(N)(b): invariant subspaces, the irreducible
pieces they split off and the comparison with the half-diagram modules.

Classes:

    ExceptionalSpec
    SubQuotientPair
    Verdict
    ConjectureResult

Functions:

    exceptional_list(n, p)
    detect_invariant(basis, espec)
    exceptional_structure(espec, p)
    central_character(e, p)
    expected_character(espec, p)
    exceptional_gram_audit(n, p, controls)
    negative_control_audit(espec, p)
    conjecture_check(n, k, eps1, eps2, p, seed)
"""

from __future__ import annotations  # NOTE: This is necessary below Python 3.10

# For exceptional cases
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import logging
import random
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .audit import AuditReport
from .errors import GenericityError, InvariantSubspaceError, KernelError
from .hecke import central_element, lift_matrices, murphy, MurphyKind
from .linalg import determinant, identity, matmul
from .pathbasis import BasisB1, build_B1, exceptional_points, gram_closed_form
from .scalars import (
    derive_params, exceptional_point, exceptional_relation, format_scalar,
    HalfExponent, Parity, ParamPoint, PointLike, qnum, Scalar
)
from .wordrep import (
    audit_relations, generator_matrices, gram_matrix, irrep_dim, ModuleSpec
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExceptionalSpec:
    """ theta = sign*(-k + eps1*w1 + eps2*w2) on the chain of n sites. """
    n: int
    sign: int
    k: int
    eps1: int
    eps2: int

    def __post_init__(self):
        if (self.sign, self.k, self.eps1, self.eps2) not in exceptional_points(self.n):
            raise ValueError(
                f"theta = {self.sign}*(-{self.k} {self.eps1:+}w1 {self.eps2:+}w2) "
                f"is not exceptional at N={self.n}"
            )

    @property
    def parity(self) -> Parity:
        return Parity.of(self.n)

    @property
    def relation(self) -> HalfExponent:
        return exceptional_relation(self.sign, self.k, self.eps1, self.eps2)

    @property
    def character_argument(self) -> HalfExponent:
        """ -k + eps1 w1 + eps2 w2. """
        return HalfExponent.of(-self.k, self.eps1, self.eps2)

    @property
    def upper(self) -> bool:
        """ True when the invariant paths are those with h_N >= k + 1. """
        return self.eps1 == 1

    def in_block(self, end: int) -> bool:
        if self.upper:
            return end >= self.k + 1
        return end <= -self.k - 1

    @property
    def dims(self) -> Tuple[int, int]:
        if self.k == 0:
            half = 2**(self.n - 1)
            return half, half
        sub = irrep_dim(self.n, self.k)
        return sub, 2**self.n - sub

    @property
    def label(self) -> str:
        if self.k == 0:
            return f"V^({self.n})_{'+' if self.eps2 > 0 else '-'}"
        signs = "".join("+" if eps > 0 else "-" for eps in (self.eps1, self.eps2))
        return f"V^({self.n},{self.k})_{signs}"

    def point(self, p: ParamPoint) -> ParamPoint:
        return exceptional_point(p, self.sign, self.k, self.eps1, self.eps2)

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "n": self.k,
            "eps": [self.eps1, self.eps2],
            "label": self.label,
            "dims": list(self.dims)
        }


def exceptional_list(n: int, p: Optional[PointLike] = None) -> List[dict]:
    """ Every exceptional theta for n sites, with dimensions and, at p, the
    central character of the pieces.
    """
    entries = []
    for sign, k, eps1, eps2 in exceptional_points(n):
        espec = ExceptionalSpec(n, sign, k, eps1, eps2)
        entry = espec.to_json()
        if p is not None:
            entry["central_character"] = format_scalar(expected_character(espec, p))
        entries.append(entry)
    return entries


@dataclass
class SubQuotientPair:
    """ Generator matrices on the invariant block and on the quotient. """
    espec: ExceptionalSpec
    sub: Tuple[np.ndarray, ...]
    quo: Tuple[np.ndarray, ...]
    report: AuditReport = field(repr=False, default=None)

    @property
    def dims(self) -> Tuple[int, int]:
        return self.sub[0].shape[0], self.quo[0].shape[0]


def detect_invariant(basis: BasisB1, espec: ExceptionalSpec) -> SubQuotientPair:
    """ Split W^(N)(b) along the block of paths the exceptional theta makes
    invariant.

    Parameters:

        basis: BasisB1 - path basis built at the exceptional point

        espec: ExceptionalSpec - which exceptional theta

    Returns:

        The restricted and quotient generator families, with relation audits
        on both in the report

        SubQuotientPair
    """
    block = [j for j, path in enumerate(basis.paths) if espec.in_block(path.end)]
    rest = [j for j in range(len(basis.paths)) if j not in block]
    sub, quo = [], []
    for i, e in enumerate(basis.e):
        A = basis.in_basis(e)
        leak = next(
            ((r, c) for r in rest for c in block if A[r, c]), None
        )
        if leak is not None:
            raise InvariantSubspaceError(
                f"e{i} maps {basis.paths[leak[1]]} onto {basis.paths[leak[0]]} "
                f"outside the block of {espec.label}"
            )
        sub.append(A[np.ix_(block, block)])
        quo.append(A[np.ix_(rest, rest)])
    sub, quo = tuple(sub), tuple(quo)
    report = AuditReport(f"invariant block of {espec.label}")
    report.record(
        "block dimensions",
        (len(block), len(rest)) == espec.dims,
        f"{(len(block), len(rest))} != {espec.dims}"
    )
    params = basis.params
    report.extend(audit_relations(sub, params, params.b, name="sub"), "sub")
    report.extend(audit_relations(quo, params, params.b, name="quotient"), "quotient")
    logger.debug("%s splits as %d + %d", espec.label, len(block), len(rest))
    return SubQuotientPair(espec, sub, quo, report)


def exceptional_structure(espec: ExceptionalSpec, p: ParamPoint) -> SubQuotientPair:
    """ Move p to the exceptional theta, build B1 there and split it. """
    point = espec.point(p)
    spec = ModuleSpec.big(espec.n, derive_params(point, espec.parity))
    pair = detect_invariant(build_B1(spec), espec)
    expected = expected_character(espec, point)
    for name, family in (("sub", pair.sub), ("quotient", pair.quo)):
        value = central_character(family, point)
        pair.report.record(
            f"Z_N on the {name} is the expected scalar",
            value is not None and value == expected,
            "not scalar" if value is None else
            f"{format_scalar(value)} != {format_scalar(expected)}"
        )
    return pair


def central_character(e: Tuple[np.ndarray, ...], p: PointLike) -> Optional[Scalar]:
    """ The scalar by which Z_N acts, or None when it is not scalar. """
    Z = central_element(murphy(MurphyKind.C, lift_matrices(e, p)))
    value = Z[0, 0]
    if all(x == y for x, y in zip(Z.flat, (identity(Z.shape[0], p)*value).flat)):
        return value
    logger.warning("Z_N is not scalar on a %d-dimensional family", Z.shape[0])
    return None


def expected_character(espec: ExceptionalSpec, p: PointLike) -> Scalar:
    """ [N][2x]/[x] with x = -k + eps1 w1 + eps2 w2. """
    x = espec.character_argument
    return qnum(HalfExponent.of(espec.n), p) * qnum(x*2, p) / qnum(x, p)


def _control_points(p: ParamPoint, count: int, seed: int) -> Iterator[ParamPoint]:
    """ Generic points sharing s, a, v with p and a fresh t. """
    rng = random.Random(seed)
    found = 0
    while found < count:
        t = Fraction(rng.randint(1, 97), rng.randint(1, 97))
        candidate = p.replace(t=t, relation=None)
        try:
            candidate.check_generic()
        except GenericityError:
            continue
        found += 1
        yield candidate


def exceptional_gram_audit(
    n: int,
    p: ParamPoint,
    controls: int = 16,
    seed: int = 0
) -> AuditReport:
    """ det G(W^(N)(b)) vanishes at every exceptional theta and at none of
    the control values.
    """
    parity = Parity.of(n)
    report = AuditReport(f"exceptional Gram determinants, N={n}")
    for sign, k, eps1, eps2 in exceptional_points(n):
        espec = ExceptionalSpec(n, sign, k, eps1, eps2)
        try:
            point = espec.point(p)
        except GenericityError as error:
            report.record(f"det G = 0 at {espec.label}, sign {sign}", False, str(error))
            continue
        G = gram_matrix(ModuleSpec.big(n, derive_params(point, parity)))
        value = determinant(G, point)
        report.scalars_equal(f"det G = 0 at {espec.label}, sign {sign}", value, point.zero)
        report.scalars_equal(
            f"closed form = 0 at {espec.label}, sign {sign}",
            gram_closed_form(n, point), point.zero
        )
    for j, point in enumerate(_control_points(p, controls, seed)):
        G = gram_matrix(ModuleSpec.big(n, derive_params(point, parity)))
        value = determinant(G, point)
        report.record(f"det G != 0 at control {j}", bool(value), "determinant vanishes")
    return report


def negative_control_audit(espec: ExceptionalSpec, p: ParamPoint) -> AuditReport:
    """ At a generic theta the block of espec is not invariant. """
    report = AuditReport(f"no invariant block away from {espec.label}")
    point = next(_control_points(p, 1, espec.k))
    spec = ModuleSpec.big(espec.n, derive_params(point, espec.parity))
    try:
        detect_invariant(build_B1(spec), espec)
    except InvariantSubspaceError:
        report.record("block not invariant at generic theta", True)
    else:
        report.record("block not invariant at generic theta", False,
                      "block invariant at a generic point")
    return report


class Verdict(Enum):
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not equivalent"
    NOT_DECIDED = "not decided"


# Words up to this length are enumerated exhaustively, longer ones sampled
MAX_EXHAUSTIVE_LENGTH = 6
RANDOM_WORDS = 64


@dataclass
class ConjectureResult:
    case: str
    dims: Tuple[int, int]
    central_match: bool
    murphy_match: bool
    trace_words_checked: int
    traces_match: bool
    verdict: Verdict
    note: str = ""

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "dims": list(self.dims),
            "central_match": self.central_match,
            "murphy_match": self.murphy_match,
            "trace_words_checked": self.trace_words_checked,
            "verdict": self.verdict.value,
            "status": "checked at desk scale",
            "note": self.note
        }


def _trace(X: np.ndarray, p: PointLike) -> Scalar:
    total = p.zero
    for i in range(X.shape[0]):
        total = total + X[i, i]
    return total


def _exhaustive_words(letters: int, length: int) -> Iterator[List[int]]:
    """ Words with no letter repeated twice in a row, shortest first. """
    level = [[]]
    for _ in range(length):
        level = [
            word + [letter] for word in level for letter in range(letters)
            if not word or word[-1] != letter
        ]
        yield from level


def _trace_battery(
    first: Tuple[np.ndarray, ...],
    second: Tuple[np.ndarray, ...],
    p: PointLike,
    seed: int
) -> Tuple[int, bool]:
    letters = len(first)
    n = letters - 1
    words = list(_exhaustive_words(letters, min(2*n, MAX_EXHAUSTIVE_LENGTH)))
    rng = random.Random(seed)
    for _ in range(RANDOM_WORDS):
        length = rng.randint(1, 4*n)
        words.append([rng.randrange(letters) for _ in range(length)])
    checked = 0
    for word in words:
        checked += 1
        a = _trace(matmul(*[first[i] for i in word]), p)
        b = _trace(matmul(*[second[i] for i in word]), p)
        if a != b:
            logger.info("traces differ on e%s", ",e".join(map(str, word)))
            return checked, False
    return checked, True


def _murphy_spectra_match(
    first: Tuple[np.ndarray, ...],
    second: Tuple[np.ndarray, ...],
    p: PointLike
) -> bool:
    """ Equal traces of every power up to the dimension, for every type B
    Murphy element, so equal eigenvalue multisets.
    """
    one = murphy(MurphyKind.B, lift_matrices(first, p))
    two = murphy(MurphyKind.B, lift_matrices(second, p))
    dim = first[0].shape[0]
    for k in one.indices:
        X, Y = one.J[k], two.J[k]
        power_x, power_y = X, Y
        for _ in range(dim):
            if _trace(power_x, p) != _trace(power_y, p):
                return False
            power_x, power_y = matmul(power_x, X), matmul(power_y, Y)
    return True


def conjecture_check(
    n: int,
    k: int,
    eps1: int,
    eps2: int,
    p: ParamPoint,
    seed: int = 0
) -> ConjectureResult:
    """ Compare W^(N,k)_{eps1,eps2} with the invariant block of W^(N)(b) at
    theta = -k + eps1 w1 + eps2 w2.

    Evidence only: dimensions, Z_N, type B Murphy spectra and traces over a
    battery of words.
    """
    case = f"N={n}, n={k}, eps=({eps1:+d},{eps2:+d})"
    try:
        espec = ExceptionalSpec(n, 1, k, eps1, eps2)
        point = espec.point(p)
        pair = exceptional_structure(espec, p)
        params = derive_params(point, espec.parity)
        diagram = generator_matrices(
            ModuleSpec.through_lines(n, params, k, eps1, eps2)
        )
    except (KernelError, ValueError) as error:
        logger.info("%s: %s", case, error)
        return ConjectureResult(case, (0, 0), False, False, 0, False,
                                Verdict.NOT_DECIDED, str(error))

    dims = (diagram[0].shape[0], pair.dims[0])
    if dims[0] != dims[1]:
        return ConjectureResult(case, dims, False, False, 0, False,
                                Verdict.NOT_EQUIVALENT, "dimensions differ")
    on_diagram = central_character(diagram, point)
    on_block = central_character(pair.sub, point)
    central_match = on_diagram is not None and on_diagram == on_block
    murphy_match = _murphy_spectra_match(diagram, pair.sub, point)
    checked, traces_match = _trace_battery(diagram, pair.sub, point, seed)
    if central_match and murphy_match and traces_match:
        verdict = Verdict.EQUIVALENT
    elif on_diagram is None or on_block is None:
        verdict = Verdict.NOT_DECIDED
    else:
        verdict = Verdict.NOT_EQUIVALENT
    logger.info("%s: %s", case, verdict.value)
    return ConjectureResult(case, dims, central_match, murphy_match, checked,
                            traces_match, verdict)

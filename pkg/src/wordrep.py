""" Matrix representations on the half-diagram modules.

W^(N,n)_{eps1,eps2} has the half-diagrams with n + (eps1+eps2)/2 through
lines and the given boundary parities; W^(N)(b) has all 2^N half-diagrams
without through lines, in the double quotient with parameter b. Matrices act
on the left: column j holds the image of the j-th basis vector.

Classes:

    ModuleKind
    ModuleSpec
    ModuleEntry

Functions:

    ballot(m, n)
    irrep_dim(m, n)
    tl_count(m, n)
    one_boundary_count(m, n)
    count_half_diagrams(m, through, left, right)
    enumerate_basis(spec)
    generator_matrix(spec, i)
    generator_matrices(spec)
    bilinear(x, y, spec)
    gram_matrix(spec)
    gram_det_bruteforce(spec)
    audit_relations(e, params, b, idempotents_vanish)
    relation_audit(spec, expected)
    module_lattice(n, params)
    radical_check(spec)
"""

from __future__ import annotations  # NOTE: This is necessary below Python 3.10

# For module records
from dataclasses import dataclass, replace
from enum import auto, Enum
from functools import lru_cache
from itertools import product
import logging
from math import comb
from typing import List, Optional, Tuple

import numpy as np

from .audit import AuditReport
from .diagrams import (
    act_on_half, compose, FullDiagram, HalfDiagram, idempotent_words, LEFT,
    RIGHT, THROUGH
)
from .errors import DiagramError
from .linalg import determinant, matmul, rank, zeros
from .scalars import DerivedParams, format_scalar, Scalar

logger = logging.getLogger(__name__)


def ballot(m: int, n: int) -> int:
    """ B_{m,n} = C(m, (m-n)/2), zero when m-n is odd or |n| > m. """
    if m < 0 or abs(n) > m or (m - n) % 2:
        return 0
    return comb(m, (m - n)//2)


def irrep_dim(m: int, n: int) -> int:
    """ M_m(n), the dimension of W^(m,n). """
    top = (m + 1 - abs(n))//2
    return sum(ballot(m, abs(n) + 2*i - 1) for i in range(1, top + 1))


def tl_count(m: int, n: int) -> int:
    """ Half-diagrams of size m with n through lines and no boundary arcs. """
    return ballot(m, n) - ballot(m, n + 2)


def one_boundary_count(m: int, n: int) -> int:
    """ Half-diagrams of size m with n through lines and no right boundary arcs. """
    return ballot(m, n) if (m - n) % 2 == 0 else ballot(m, n + 1)


@lru_cache(maxsize=None)
def _all_halves(m: int) -> Tuple[HalfDiagram, ...]:
    halves = []
    for letters in product((LEFT, RIGHT, THROUGH), repeat=m):
        try:
            halves.append(HalfDiagram("".join(letters)))
        except DiagramError:
            continue
    return tuple(halves)


def count_half_diagrams(
    m: int,
    through: int,
    left: bool = True,
    right: bool = True
) -> int:
    """ Enumerate and count, optionally forbidding boundary arcs. """
    return sum(
        1 for x in _all_halves(m)
        if x.through_count == through
        and (left or x.left_count == 0)
        and (right or x.right_count == 0)
    )


class ModuleKind(Enum):
    THROUGH_LINES = auto()
    BIG = auto()


@dataclass(frozen=True)
class ModuleSpec:
    """ A named half-diagram module over the parameters params.

    For THROUGH_LINES, label is the n of W^(N,n)_{eps1,eps2}; for BIG, b is
    the quotient parameter (the parity's b from params when unset).
    """
    n: int
    params: DerivedParams
    kind: ModuleKind = ModuleKind.BIG
    label: int = 0
    eps1: int = 1
    eps2: int = 1
    b: Optional[Scalar] = None

    def __post_init__(self):
        if self.n < 1:
            raise DiagramError(f"chain length {self.n} < 1")
        if self.kind == ModuleKind.THROUGH_LINES:
            if self.eps1 not in (1, -1) or self.eps2 not in (1, -1):
                raise DiagramError("boundary parities must be +1 or -1")
            through = self.through
            if (
                self.label < 0
                or (self.label - self.n + 1) % 2
                or not 1 <= through <= self.n
                or irrep_dim(self.n, self.label) == 0
            ):
                raise DiagramError(f"no module {self.name}")

    @classmethod
    def big(
        cls,
        n: int,
        params: DerivedParams,
        b: Optional[Scalar] = None
    ) -> ModuleSpec:
        return cls(n, params, ModuleKind.BIG, b=b)

    @classmethod
    def through_lines(
        cls,
        n: int,
        params: DerivedParams,
        label: int,
        eps1: int,
        eps2: int
    ) -> ModuleSpec:
        return cls(n, params, ModuleKind.THROUGH_LINES, label, eps1, eps2)

    @property
    def through(self) -> int:
        if self.kind == ModuleKind.BIG:
            return 0
        return self.label + (self.eps1 + self.eps2)//2

    @property
    def quotient_b(self) -> Optional[Scalar]:
        if self.kind == ModuleKind.THROUGH_LINES:
            return None
        return self.b if self.b is not None else self.params.b

    @property
    def name(self) -> str:
        if self.kind == ModuleKind.BIG:
            return f"W^({self.n})(b)"
        signs = "".join("+" if e > 0 else "-" for e in (self.eps1, self.eps2))
        return f"W^({self.n},{self.label})_{signs}"

    def with_params(self, params: DerivedParams) -> ModuleSpec:
        return replace(self, params=params)

    def contains(self, x: HalfDiagram) -> bool:
        if x.n != self.n or x.through_count != self.through:
            return False
        if self.kind == ModuleKind.BIG:
            return True
        return x.eps1 == self.eps1 and x.eps2 == self.eps2


def enumerate_basis(spec: ModuleSpec) -> List[HalfDiagram]:
    """ The module's half-diagrams in canonical order. """
    basis = [x for x in _all_halves(spec.n) if spec.contains(x)]
    logger.debug("%s has dimension %d", spec.name, len(basis))
    return basis


def generator_matrix(spec: ModuleSpec, i: int) -> np.ndarray:
    """ Matrix of e_i in the canonical basis. """
    return generator_matrices(spec)[i]


@lru_cache(maxsize=64)
def generator_matrices(spec: ModuleSpec) -> Tuple[np.ndarray, ...]:
    """ Matrices of e_0, ..., e_N. Cached per spec; treat them as read-only. """
    basis = enumerate_basis(spec)
    index = {x.text: j for j, x in enumerate(basis)}
    p = spec.params.point
    matrices = []
    for i in range(spec.n + 1):
        M = zeros(len(basis), len(basis), p)
        for j, x in enumerate(basis):
            coeff, y = act_on_half(i, x, spec.params, spec.quotient_b)
            if coeff:
                M[index[y.text], j] = M[index[y.text], j] + coeff
        matrices.append(M)
    return tuple(matrices)


def bilinear(x: HalfDiagram, y: HalfDiagram, spec: ModuleSpec) -> Scalar:
    """ <x|y>: the coefficient of the reduced diagram of <x| stacked on |y>.

    In W^(N)(b) the halves are closed off with )))...; elsewhere each half is
    doubled, and losing a through line gives zero.
    """
    params = spec.params
    if spec.kind == ModuleKind.BIG:
        cap = HalfDiagram(LEFT*spec.n)
        A = FullDiagram(cap, x, int(x.hline))
        B = FullDiagram(y, cap, int(y.hline))
        D = compose(A, B, params, spec.quotient_b)
        return D.coeff if D.hlines == 0 else params.point.zero
    D = compose(FullDiagram(x, x, 0), FullDiagram(y, y, 0), params, None)
    if D.bottom.through_count < spec.through:
        return params.point.zero
    return D.coeff


def gram_matrix(spec: ModuleSpec) -> np.ndarray:
    basis = enumerate_basis(spec)
    G = zeros(len(basis), len(basis), spec.params.point)
    for i, x in enumerate(basis):
        for j, y in enumerate(basis[i:], start=i):
            G[i, j] = bilinear(x, y, spec)
            G[j, i] = G[i, j]
    return G


def gram_det_bruteforce(spec: ModuleSpec) -> Scalar:
    return determinant(gram_matrix(spec), spec.params.point)


def audit_relations(
    e: Tuple[np.ndarray, ...],
    params: DerivedParams,
    b: Optional[Scalar] = None,
    idempotents_vanish: bool = False,
    name: str = "relations"
) -> AuditReport:
    """ Check the defining relations of the two-boundary algebra on e_0..e_N.

    Parameters:

        e: tuple of matrices - e_0, ..., e_N in some representation

        params: DerivedParams - the parameters the relations are checked against

        b: Scalar or None - when set, also check I1 I2 I1 = b I1 and I2 I1 I2 = b I2

        idempotents_vanish: bool - check I1 = I2 = 0 instead

        name: str - report name

    Returns:

        One check per relation

        AuditReport
    """
    n = len(e) - 1
    report = AuditReport(name)
    for i in range(n + 1):
        scalar = params.s1 if i == 0 else params.s2 if i == n else params.delta
        report.matrices_equal(f"e{i}^2 = c e{i}", matmul(e[i], e[i]), e[i]*scalar)
    for i in range(1, n):
        for j in (i - 1, i + 1):
            report.matrices_equal(
                f"e{i} e{j} e{i} = e{i}", matmul(e[i], e[j], e[i]), e[i]
            )
    for i in range(n + 1):
        for j in range(i + 2, n + 1):
            report.matrices_equal(
                f"e{i} e{j} = e{j} e{i}", matmul(e[i], e[j]), matmul(e[j], e[i])
            )

    w1, w2 = idempotent_words(n)
    I1 = matmul(*[e[i] for i in w1.letters])
    I2 = matmul(*[e[i] for i in w2.letters])
    if idempotents_vanish:
        report.matrix_zero("I1 = 0", I1)
        report.matrix_zero("I2 = 0", I2)
    elif b is not None:
        report.matrices_equal("I1 I2 I1 = b I1", matmul(I1, I2, I1), I1*b)
        report.matrices_equal("I2 I1 I2 = b I2", matmul(I2, I1, I2), I2*b)
    return report


def relation_audit(
    spec: ModuleSpec,
    expected: Optional[DerivedParams] = None
) -> AuditReport:
    """ Defining relations on the module's matrices, checked against expected
    parameters (spec.params unless a corrupted copy is passed).
    """
    expected = expected if expected is not None else spec.params
    b = expected.b if spec.b is None else spec.b
    return audit_relations(
        generator_matrices(spec),
        expected,
        b if spec.kind == ModuleKind.BIG else None,
        spec.kind == ModuleKind.THROUGH_LINES,
        f"relations on {spec.name}"
    )


@dataclass(frozen=True)
class ModuleEntry:
    """ One row of the module table. """
    name: str
    label: Optional[int]
    eps1: Optional[int]
    eps2: Optional[int]
    through: int
    dim: int

    def to_json(self) -> dict:
        return {
            "module": self.name,
            "n": self.label,
            "eps": [self.eps1, self.eps2] if self.eps1 is not None else None,
            "through_lines": self.through,
            "dim": self.dim
        }


def module_lattice(n: int, params: DerivedParams) -> List[ModuleEntry]:
    """ Every module of size n, most through lines first, W^(N)(b) last. """
    entries = []
    for label in range(n):
        for eps1, eps2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            try:
                spec = ModuleSpec.through_lines(n, params, label, eps1, eps2)
            except DiagramError:
                continue
            entries.append(ModuleEntry(
                spec.name, label, eps1, eps2, spec.through,
                len(enumerate_basis(spec))
            ))
    entries.sort(key=lambda entry: (-entry.through, -entry.eps1, -entry.eps2))
    big = ModuleSpec.big(n, params)
    entries.append(ModuleEntry(
        big.name, None, None, None, 0, len(enumerate_basis(big))
    ))
    return entries


def radical_check(spec: ModuleSpec) -> AuditReport:
    """ Nondegeneracy of the bilinear form at this point only. """
    report = AuditReport(f"radical of {spec.name}")
    G = gram_matrix(spec)
    r = rank(G)
    report.data["dim"] = G.shape[0]
    report.data["gram_rank"] = r
    report.record(
        "Gram form nondegenerate at this point",
        r == G.shape[0],
        f"rank {r} < {G.shape[0]}"
    )
    return report


def gram_csv_rows(spec: ModuleSpec) -> List[List[str]]:
    """ Gram matrix with a header row and column of basis labels. """
    basis = enumerate_basis(spec)
    G = gram_matrix(spec)
    rows = [[""] + [str(x) for x in basis]]
    for x, row in zip(basis, G):
        rows.append([str(x)] + [format_scalar(entry) for entry in row])
    return rows

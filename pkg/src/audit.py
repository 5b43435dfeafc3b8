""" Identity checks and the reports that collect them.

Classes:

    Status
    Check
    AuditReport
"""

from __future__ import annotations  # NOTE: This is necessary below Python 3.10

# For check records
from dataclasses import dataclass, field
from enum import auto, Enum
import logging
from typing import Any, Dict, List, Optional

import numpy as np

from .linalg import first_difference, is_zero
from .scalars import format_scalar, Scalar

logger = logging.getLogger(__name__)


class Status(Enum):
    PASS = auto()
    FAIL = auto()


@dataclass
class Check:
    """ One identity and whether it held exactly. """
    identity: str
    status: Status
    # "0" when the identity holds, else where it first fails
    deviation: str = "0"

    @property
    def passed(self) -> bool:
        return self.status == Status.PASS

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "status": self.status.name.lower(),
            "deviation": self.deviation
        }


@dataclass
class AuditReport:
    """ Ordered list of checks plus any values worth reporting. """
    name: str
    checks: List[Check] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    def record(self, identity: str, ok: bool, deviation: str = "0") -> bool:
        check = Check(identity, Status.PASS if ok else Status.FAIL,
                      "0" if ok else deviation)
        self.checks.append(check)
        if ok:
            logger.debug("%s: %s holds", self.name, identity)
        else:
            logger.warning("%s: %s fails (%s)", self.name, identity, deviation)
        return ok

    def matrices_equal(self, identity: str, X: np.ndarray, Y: np.ndarray) -> bool:
        """ Record whether X == Y entry by entry. """
        if X.shape != Y.shape:
            return self.record(identity, False, f"shapes {X.shape} != {Y.shape}")
        index = first_difference(X, Y)
        if index is None:
            return self.record(identity, True)
        return self.record(
            identity,
            False,
            f"entry {index}: {format_scalar(X[index])} != "
            f"{format_scalar(Y[index])}"
        )

    def matrix_zero(self, identity: str, X: np.ndarray) -> bool:
        if is_zero(X):
            return self.record(identity, True)
        index = next(i for i in np.ndindex(*X.shape) if X[i])
        return self.record(
            identity, False, f"entry {index} = {format_scalar(X[index])}"
        )

    def scalars_equal(self, identity: str, x: Scalar, y: Scalar) -> bool:
        return self.record(
            identity, x == y, f"{format_scalar(x)} != {format_scalar(y)}"
        )

    def extend(self, other: AuditReport, prefix: Optional[str] = None):
        """ Append the checks of other, optionally prefixing their ids. """
        for check in other.checks:
            identity = f"{prefix}: {check.identity}" if prefix else check.identity
            self.checks.append(Check(identity, check.status, check.deviation))
        self.data.update(other.data)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def first_failure(self) -> Optional[Check]:
        return next((check for check in self.checks if not check.passed), None)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [check.to_json() for check in self.checks],
            "data": self.data
        }

""" Exact coefficient field: half-integer exponents of q, q^w1, q^w2 and q^theta,
their evaluation at rational parameter points, q-numbers and the derived
Temperley-Lieb parameters.

Classes:

    HalfExponent
    Parity
    ParamPoint
    SymbolicPoint
    DerivedParams

Functions:

    qpow(x, p)
    qnum(x, p)
    q_minus_qinv(p)
    derive_params(p, parity)
    make_param_point(seed, genericity_bound)
    exceptional_point(p, sign, k, eps1, eps2)
    specialize(value, p)
    format_scalar(value)
"""

from __future__ import annotations  # NOTE: This is necessary below Python 3.10

# For parameter records
from dataclasses import dataclass, replace
# For even/odd chain lengths
from enum import auto, Enum
from fractions import Fraction
from math import gcd
import logging
import random
from typing import Dict, List, Optional, Tuple, Union

import sympy
from sympy.polys.domains import QQ
from sympy.polys.fields import field as fraction_field, FracElement

from .errors import GenericityError, SingularArgumentError

logger = logging.getLogger(__name__)

# Rational function field used by the symbolic backend
SYMBOLIC_FIELD, SYM_S, SYM_A, SYM_V, SYM_T = fraction_field("s,a,v,t", QQ)

Scalar = Union[Fraction, FracElement]


@dataclass(frozen=True)
class HalfExponent:
    """ The exponent x = (m + c1*w1 + c2*w2 + c3*theta)/2.

    Every entry is stored doubled, so q^x = s^m a^c1 v^c2 t^c3 where s, a, v, t
    are the values of q^(1/2), q^(w1/2), q^(w2/2), q^(theta/2).
    """
    m: int = 0
    c1: int = 0
    c2: int = 0
    c3: int = 0

    @classmethod
    def of(
        cls,
        const: Union[int, Fraction] = 0,
        w1: Union[int, Fraction] = 0,
        w2: Union[int, Fraction] = 0,
        theta: Union[int, Fraction] = 0
    ) -> HalfExponent:
        """ Build const + w1*w1 + w2*w2 + theta*theta from (half-)integer
        coefficients.
        """
        entries = []
        for coefficient in (const, w1, w2, theta):
            doubled = Fraction(coefficient) * 2
            if doubled.denominator != 1:
                raise ValueError(f"{coefficient} is not a half-integer")
            entries.append(int(doubled))
        return cls(*entries)

    def __add__(self, other: HalfExponent) -> HalfExponent:
        return HalfExponent(
            self.m + other.m,
            self.c1 + other.c1,
            self.c2 + other.c2,
            self.c3 + other.c3
        )

    def __neg__(self) -> HalfExponent:
        return HalfExponent(-self.m, -self.c1, -self.c2, -self.c3)

    def __sub__(self, other: HalfExponent) -> HalfExponent:
        return self + (-other)

    def __mul__(self, k: int) -> HalfExponent:
        return HalfExponent(k*self.m, k*self.c1, k*self.c2, k*self.c3)

    __rmul__ = __mul__

    def halved(self) -> HalfExponent:
        """ x/2, defined only when every stored entry is even. """
        if any(entry % 2 for entry in self.entries):
            raise ValueError(f"{self} cannot be halved exactly")
        return HalfExponent(self.m//2, self.c1//2, self.c2//2, self.c3//2)

    @property
    def entries(self) -> Tuple[int, int, int, int]:
        return (self.m, self.c1, self.c2, self.c3)

    @property
    def height(self) -> int:
        """ Largest absolute stored entry, the quantity the scan bounds. """
        return max(abs(entry) for entry in self.entries)

    def is_zero(self) -> bool:
        return self.entries == (0, 0, 0, 0)

    def __str__(self) -> str:
        terms = []
        for coefficient, name in zip(self.entries, ("", "w1", "w2", "th")):
            if coefficient == 0:
                continue
            value = Fraction(coefficient, 2)
            if name and abs(value) == 1:
                text = ("-" if value < 0 else "+") + name
            else:
                # Fraction only accepts sign specs from Python 3.12
                text = ("+" if value > 0 else "") + str(value)
                text += f"*{name}" if name else ""
            terms.append(text)
        return "".join(terms).lstrip("+") or "0"


# Frequently used exponents
ONE = HalfExponent.of(1)
W1 = HalfExponent.of(w1=1)
W2 = HalfExponent.of(w2=1)
THETA = HalfExponent.of(theta=1)


class Parity(Enum):
    EVEN = auto()
    ODD = auto()

    @staticmethod
    def of(n: int) -> Parity:
        return Parity.EVEN if n % 2 == 0 else Parity.ODD


def _prime_exponents(value: Fraction) -> Dict[int, int]:
    """ Prime exponent vector of |value|. """
    exponents: Dict[int, int] = {}
    for prime, power in sympy.factorint(abs(value.numerator)).items():
        exponents[prime] = exponents.get(prime, 0) + power
    for prime, power in sympy.factorint(value.denominator).items():
        exponents[prime] = exponents.get(prime, 0) - power
    return exponents


def _exponent_kernel(values: Tuple[Fraction, ...]) -> List[Tuple[int, ...]]:
    """ Basis of the integer vectors k with prod |values[i]|^k[i] = 1.

    A one dimensional kernel is returned as its primitive generator.
    """
    columns = [_prime_exponents(value) for value in values]
    primes = sorted(set().union(*columns))
    if not primes:
        # Every value is +-1
        return [tuple(int(i == j) for i in range(len(values)))
                for j in range(len(values))]
    matrix = sympy.Matrix(
        len(primes),
        len(values),
        [column.get(prime, 0) for prime in primes for column in columns]
    )
    kernel = []
    for vector in matrix.nullspace():
        scale = 1
        for entry in vector:
            scale = scale*int(entry.q) // gcd(scale, int(entry.q))
        integral = [int(entry*scale) for entry in vector]
        divisor = 0
        for entry in integral:
            divisor = gcd(divisor, entry)
        kernel.append(tuple(entry//divisor for entry in integral))
    return kernel


@dataclass(frozen=True)
class ParamPoint:
    """ Exact rational values of q^(1/2), q^(w1/2), q^(w2/2) and q^(theta/2).

    A point may declare one relation: a HalfExponent whose q-number is meant
    to vanish (an exceptional theta). The genericity scan tolerates exactly
    the multiples of that relation.
    """
    s: Fraction
    a: Fraction
    v: Fraction
    t: Fraction
    bound: int
    relation: Optional[HalfExponent] = None

    symbolic = False

    def __post_init__(self):
        for name in ("s", "a", "v", "t"):
            value = Fraction(getattr(self, name))
            if value == 0:
                raise GenericityError(f"{name} must be nonzero")
            # Frozen dataclass, so go around __setattr__
            object.__setattr__(self, name, value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value: Union[int, Fraction]) -> Fraction:
        return Fraction(value)

    def monomial(self, x: HalfExponent) -> Fraction:
        """ q^x at this point. """
        return self.s**x.m * self.a**x.c1 * self.v**x.c2 * self.t**x.c3

    def check_generic(self):
        """ Raise GenericityError if some [x] with height <= bound vanishes,
        other than the declared relation.
        """
        kernel = _exponent_kernel((self.s, self.a, self.v, self.t))
        if not kernel:
            return
        if len(kernel) > 1:
            raise GenericityError(
                f"{len(kernel)} independent multiplicative relations among "
                f"s, a, v, t"
            )
        relation = HalfExponent(*kernel[0])
        if self.relation is not None and relation in (
            self.relation, -self.relation
        ):
            return
        if relation.height <= self.bound:
            raise GenericityError(f"[{relation}] vanishes at this point")

    def replace(self, **changes) -> ParamPoint:
        return replace(self, **changes)

    def to_json(self) -> dict:
        data = {
            name: f"{value.numerator}/{value.denominator}"
            for name, value in (
                ("s", self.s), ("a", self.a), ("v", self.v), ("t", self.t)
            )
        }
        data["bound"] = self.bound
        if self.relation is not None:
            data["relation"] = list(self.relation.entries)
        return data

    @classmethod
    def from_json(cls, data: dict) -> ParamPoint:
        relation = data.get("relation")
        return cls(
            Fraction(data["s"]),
            Fraction(data["a"]),
            Fraction(data["v"]),
            Fraction(data["t"]),
            int(data["bound"]),
            HalfExponent(*relation) if relation is not None else None
        )


@dataclass(frozen=True)
class SymbolicPoint:
    """ The generic point: s, a, v, t are the generators of Q(s, a, v, t).

    Shares the interface of ParamPoint, so every construction in the kernel
    can run over either backend.
    """
    bound: int = 0
    relation: Optional[HalfExponent] = None

    symbolic = True

    @property
    def zero(self) -> FracElement:
        return SYMBOLIC_FIELD.zero

    @property
    def one(self) -> FracElement:
        return SYMBOLIC_FIELD.one

    def coerce(self, value: Union[int, Fraction]) -> FracElement:
        value = Fraction(value)
        return SYMBOLIC_FIELD(value.numerator) / value.denominator

    def monomial(self, x: HalfExponent) -> FracElement:
        return SYM_S**x.m * SYM_A**x.c1 * SYM_V**x.c2 * SYM_T**x.c3

    def check_generic(self):
        """ Indeterminates are generic. """

    def to_json(self) -> dict:
        return {"s": "s", "a": "a", "v": "v", "t": "t", "bound": self.bound}


PointLike = Union[ParamPoint, SymbolicPoint]


def specialize(value: Scalar, p: ParamPoint) -> Fraction:
    """ Evaluate a symbolic scalar at a numeric point. """
    if not isinstance(value, FracElement):
        return Fraction(value)
    substitutions = {
        symbol: sympy.Rational(number.numerator, number.denominator)
        for symbol, number in zip(
            SYMBOLIC_FIELD.symbols, (p.s, p.a, p.v, p.t)
        )
    }
    result = sympy.Rational(value.as_expr().subs(substitutions))
    return Fraction(int(result.p), int(result.q))


def format_scalar(value: Scalar) -> str:
    """ Report form of a scalar: "p/q" for rationals, an expression otherwise. """
    if isinstance(value, FracElement):
        return str(value.as_expr())
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def qpow(x: HalfExponent, p: PointLike) -> Scalar:
    """ The monomial q^x. """
    return p.monomial(x)


def q_minus_qinv(p: PointLike) -> Scalar:
    """ q - q^-1, the denominator of every q-number. """
    return p.monomial(ONE) - p.monomial(-ONE)


def qnum(x: HalfExponent, p: PointLike) -> Scalar:
    """ The q-number [x] = (q^x - q^-x)/(q - q^-1).

    Parameters:

        x: HalfExponent - the argument

        p: ParamPoint or SymbolicPoint - where to evaluate

    Returns:

        The exact value of [x]

        Scalar
    """
    denominator = q_minus_qinv(p)
    if not denominator:
        raise SingularArgumentError("q - 1/q", "s^4 = 1")
    return (p.monomial(x) - p.monomial(-x)) / denominator


@dataclass(frozen=True)
class DerivedParams:
    """ Temperley-Lieb parameters at a point. """
    point: PointLike
    delta: Scalar
    s1: Scalar
    s2: Scalar
    b_even: Scalar
    b_odd: Scalar
    parity: Parity = Parity.EVEN

    @property
    def b(self) -> Scalar:
        """ The quotient parameter tied to theta for this parity. """
        return self.b_even if self.parity == Parity.EVEN else self.b_odd

    def corrupted(self, **changes) -> DerivedParams:
        """ A copy with some parameters replaced (negative controls). """
        return replace(self, **changes)


def derive_params(p: PointLike, parity: Parity) -> DerivedParams:
    """ delta, s1, s2 and both quotient parameters b at p. """
    w1_plus = qnum(W1 + ONE, p)
    w2_plus = qnum(W2 + ONE, p)
    if not w1_plus or not w2_plus:
        raise SingularArgumentError("[w+1]", "a vanishing boundary q-number")
    b_even = (
        qnum(HalfExponent(1, 1, 1, 1), p) * qnum(HalfExponent(1, 1, 1, -1), p)
        / (w1_plus * w2_plus)
    )
    b_odd = -(
        qnum(HalfExponent(0, 1, -1, 1), p) * qnum(HalfExponent(0, 1, -1, -1), p)
        / (w1_plus * w2_plus)
    )
    return DerivedParams(
        point=p,
        delta=qnum(HalfExponent.of(2), p),
        s1=qnum(W1, p) / w1_plus,
        s2=qnum(W2, p) / w2_plus,
        b_even=b_even,
        b_odd=b_odd,
        parity=parity
    )


class _Draw:
    """ Small rational draws from a seeded generator. """
    MAX_HEIGHT = 97

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def rational(self) -> Fraction:
        while True:
            numerator = self.rng.randint(1, self.MAX_HEIGHT)
            denominator = self.rng.randint(1, self.MAX_HEIGHT)
            if gcd(numerator, denominator) == 1:
                return Fraction(numerator, denominator)


# Number of candidate points tried before giving up
RETRY_BUDGET = 64


def make_param_point(seed: int, genericity_bound: int) -> ParamPoint:
    """ Deterministic generic point for the seed; redraws until the scan passes. """
    draw = _Draw(seed)
    for attempt in range(RETRY_BUDGET):
        candidate = (
            draw.rational(), draw.rational(), draw.rational(), draw.rational()
        )
        try:
            point = ParamPoint(*candidate, bound=genericity_bound)
            point.check_generic()
        except GenericityError as error:
            logger.debug("seed %d draw %d rejected: %s", seed, attempt, error)
            continue
        logger.debug("seed %d accepted after %d draws", seed, attempt + 1)
        return point
    raise GenericityError(
        f"no generic point for seed {seed} within {RETRY_BUDGET} draws "
        f"at bound {genericity_bound}"
    )


def exceptional_relation(sign: int, k: int, eps1: int, eps2: int) -> HalfExponent:
    """ The exponent theta - sign*(-k + eps1*w1 + eps2*w2), in doubled form
    (s^(sign k) a^(-sign eps1) v^(-sign eps2) t).
    """
    return HalfExponent(sign*k, -sign*eps1, -sign*eps2, 1)


def exceptional_point(
    p: ParamPoint,
    sign: int,
    k: int,
    eps1: int,
    eps2: int
) -> ParamPoint:
    """ Copy of p with theta = sign*(-k + eps1*w1 + eps2*w2).

    The result is rescanned; a second relation (two exceptional values of
    theta coinciding) raises GenericityError.
    """
    if sign not in (1, -1) or eps1 not in (1, -1) or eps2 not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    t = (p.s**(-k) * p.a**eps1 * p.v**eps2) ** sign
    point = p.replace(t=t, relation=exceptional_relation(sign, k, eps1, eps2))
    point.check_generic()
    return point

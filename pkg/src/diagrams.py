""" Reduced diagrams of the two-boundary Temperley-Lieb algebra.

Half-diagrams are written in parenthesis notation: ')' is a site joined to
the left boundary, '(' a site joined to the right boundary, a matched "()" a
pair of sites joined to each other and '|' a through line. A trailing '*'
marks the horizontal line carried by a half-diagram with an odd number of
right boundary connections.

Classes:

    HalfDiagram
    FullDiagram
    AlgebraElement
    Word

Functions:

    parse_half(text)
    generator_diagram(i, n)
    identity_diagram(n)
    compose(A, B, params, quotient_b)
    word_to_element(w, params, quotient_b)
    act_on_half(i, x, params, quotient_b)
    transpose(D)
    idempotents(n, params, quotient_b)
    half_decomposition(D, b)
"""

from __future__ import annotations  # NOTE: This is necessary below Python 3.10

# For diagram records
from dataclasses import dataclass, field
from enum import auto, Enum
import logging
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import DiagramError
from .scalars import DerivedParams, format_scalar, Scalar

logger = logging.getLogger(__name__)

LEFT = ")"
RIGHT = "("
THROUGH = "|"
HLINE_MARK = "*"


class SiteKind(Enum):
    LEFT_END = auto()
    RIGHT_END = auto()
    PAIR_OPEN = auto()
    PAIR_CLOSE = auto()
    THROUGH = auto()


@dataclass(frozen=True)
class HalfDiagram:
    """ One edge of a reduced diagram, stored as its parenthesis text. """
    text: str

    # Derived from text in __post_init__
    kinds: Tuple[SiteKind, ...] = field(init=False, repr=False, compare=False)
    partner: Tuple[Optional[int], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        kinds, partner = _parse_sites(self.text)
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "partner", partner)

    @property
    def n(self) -> int:
        return len(self.text)

    def sites_of(self, kind: SiteKind) -> List[int]:
        return [j for j, k in enumerate(self.kinds) if k == kind]

    @property
    def left_count(self) -> int:
        return len(self.sites_of(SiteKind.LEFT_END))

    @property
    def right_count(self) -> int:
        return len(self.sites_of(SiteKind.RIGHT_END))

    @property
    def through_count(self) -> int:
        return len(self.sites_of(SiteKind.THROUGH))

    @property
    def hline(self) -> bool:
        """ Set iff there are no through lines and an odd number of right
        boundary connections.
        """
        return self.through_count == 0 and self.right_count % 2 == 1

    @property
    def eps1(self) -> int:
        """ +1 for an even number of left boundary connections, else -1. """
        return 1 if self.left_count % 2 == 0 else -1

    @property
    def eps2(self) -> int:
        return 1 if self.right_count % 2 == 0 else -1

    def __str__(self) -> str:
        return self.text + (HLINE_MARK if self.hline else "")


def _parse_sites(
    text: str
) -> Tuple[Tuple[SiteKind, ...], Tuple[Optional[int], ...]]:
    """ Match parentheses and check planarity against the through lines. """
    kinds: List[Optional[SiteKind]] = [None]*len(text)
    partner: List[Optional[int]] = [None]*len(text)
    stack: List[int] = []
    seen_through = False
    for j, char in enumerate(text):
        if char == RIGHT:
            stack.append(j)
        elif char == LEFT:
            if stack:
                i = stack.pop()
                kinds[i], kinds[j] = SiteKind.PAIR_OPEN, SiteKind.PAIR_CLOSE
                partner[i], partner[j] = j, i
            elif seen_through:
                raise DiagramError(
                    f"{text!r}: left boundary connection right of a through line"
                )
            else:
                kinds[j] = SiteKind.LEFT_END
        elif char == THROUGH:
            if stack:
                raise DiagramError(
                    f"{text!r}: through line under an arc or right of a "
                    f"right boundary connection"
                )
            seen_through = True
            kinds[j] = SiteKind.THROUGH
        else:
            raise DiagramError(f"{text!r}: unexpected character {char!r}")
    for i in stack:
        kinds[i] = SiteKind.RIGHT_END
    return tuple(kinds), tuple(partner)


def parse_half(text: str) -> HalfDiagram:
    """ Parse the text form, checking a trailing '*' against the derived flag. """
    marked = text.endswith(HLINE_MARK)
    x = HalfDiagram(text.rstrip(HLINE_MARK))
    if marked and not x.hline:
        raise DiagramError(f"{text!r} carries no horizontal line")
    return x


@dataclass(frozen=True)
class FullDiagram:
    """ A reduced diagram |bottom><top| with horizontal lines and a coefficient. """
    bottom: HalfDiagram
    top: HalfDiagram
    hlines: int = 0
    coeff: Optional[Scalar] = field(default=None, compare=False)

    def __post_init__(self):
        if self.bottom.n != self.top.n:
            raise DiagramError("top and bottom have different sizes")
        if self.bottom.through_count != self.top.through_count:
            raise DiagramError("through lines do not match up")
        if self.hlines and self.bottom.through_count:
            raise DiagramError("horizontal lines cross the through lines")

    @property
    def n(self) -> int:
        return self.bottom.n

    @property
    def shape(self) -> Tuple[str, str, int]:
        """ Key of the diagram in an element's term map. """
        return (self.bottom.text, self.top.text, self.hlines)

    def with_coeff(self, coeff: Scalar) -> FullDiagram:
        return FullDiagram(self.bottom, self.top, self.hlines, coeff)

    def to_json(self) -> dict:
        return {
            "bottom": self.bottom.text,
            "top": self.top.text,
            "hlines": self.hlines,
            "coeff": format_scalar(self.coeff) if self.coeff is not None
            else "1/1"
        }


def identity_diagram(n: int) -> FullDiagram:
    line = HalfDiagram(THROUGH*n)
    return FullDiagram(line, line, 0)


def generator_diagram(i: int, n: int) -> FullDiagram:
    """ The diagram of e_i, 0 <= i <= n. """
    if n < 1 or not 0 <= i <= n:
        raise DiagramError(f"no generator e_{i} at N={n}")
    sites = [THROUGH]*n
    if i == 0:
        sites[0] = LEFT
    elif i == n:
        sites[n - 1] = RIGHT
    else:
        sites[i - 1], sites[i] = RIGHT, LEFT
    half = HalfDiagram("".join(sites))
    return FullDiagram(half, half, 0)


def transpose(D: FullDiagram) -> FullDiagram:
    """ Reflection in the horizontal axis. """
    return FullDiagram(D.top, D.bottom, D.hlines, D.coeff)


def _boundary_points(D: FullDiagram, side: str) -> List[Tuple[str, int]]:
    """ Marked points of one side of D from bottom to top.

    Bottom connections nest outwards from the corner, so on the left they
    rise with the site index and on the right they fall; the top edge is the
    mirror image.
    """
    if side == LEFT:
        kind = SiteKind.LEFT_END
        bottom = D.bottom.sites_of(kind)
        top = list(reversed(D.top.sites_of(kind)))
    else:
        kind = SiteKind.RIGHT_END
        bottom = list(reversed(D.bottom.sites_of(kind)))
        top = D.top.sites_of(kind)
    return (
        [("bottom", j) for j in bottom]
        + [("hline", k) for k in range(D.hlines)]
        + [("top", j) for j in top]
    )


class _Graph:
    """ Multigraph of the glued diagram; every node has degree one or two. """

    def __init__(self):
        self.adjacent: Dict[tuple, List[Tuple[tuple, int]]] = {}
        self.edges = 0

    def connect(self, u: tuple, v: tuple):
        self.adjacent.setdefault(u, []).append((v, self.edges))
        self.adjacent.setdefault(v, []).append((u, self.edges))
        self.edges += 1

    def walk(self, start: tuple) -> Tuple[tuple, List[tuple]]:
        """ Follow the strand from a degree one node to its other end. """
        visited = [start]
        node, edge = start, None
        while True:
            step = [(v, e) for v, e in self.adjacent[node] if e != edge]
            if not step:
                return node, visited
            node, edge = step[0]
            visited.append(node)


def _add_edge_half(
    graph: _Graph,
    half: HalfDiagram,
    node: str,
    points: Dict[Tuple[str, str, int], tuple],
    role: str
):
    """ Arcs of one half of a diagram. role is "bottom" or "top". """
    for j, kind in enumerate(half.kinds):
        if kind == SiteKind.PAIR_OPEN:
            graph.connect((node, j), (node, half.partner[j]))
        elif kind == SiteKind.LEFT_END:
            graph.connect((node, j), points[(LEFT, role, j)])
        elif kind == SiteKind.RIGHT_END:
            graph.connect((node, j), points[(RIGHT, role, j)])


def _add_diagram(
    graph: _Graph,
    D: FullDiagram,
    lower: str,
    upper: str,
    left_offset: int,
    right_offset: int
) -> Tuple[int, int]:
    """ Wire D between the node rows lower and upper; returns the number of
    left and right boundary points it used.
    """
    points: Dict[Tuple[str, str, int], tuple] = {}
    left_hlines: List[tuple] = []
    right_hlines: List[tuple] = []
    for side, offset, hlines in (
        (LEFT, left_offset, left_hlines),
        (RIGHT, right_offset, right_hlines)
    ):
        for index, (role, j) in enumerate(_boundary_points(D, side)):
            point = (side, offset + index)
            if role == "hline":
                hlines.append(point)
            else:
                points[(side, role, j)] = point
    for u, v in zip(left_hlines, right_hlines):
        graph.connect(u, v)

    _add_edge_half(graph, D.bottom, lower, points, "bottom")
    _add_edge_half(graph, D.top, upper, points, "top")
    for jb, jt in zip(
        D.bottom.sites_of(SiteKind.THROUGH), D.top.sites_of(SiteKind.THROUGH)
    ):
        graph.connect((lower, jb), (upper, jt))

    return (
        D.bottom.left_count + D.hlines + D.top.left_count,
        D.bottom.right_count + D.hlines + D.top.right_count
    )


def compose(
    A: FullDiagram,
    B: FullDiagram,
    params: DerivedParams,
    quotient_b: Optional[Scalar] = None
) -> FullDiagram:
    """ The product AB: A placed below B, then reduced.

    Closed loops give delta, boundary arcs give 1 when even and s1 (left) or
    s2 (right) when odd. An arc is odd when an odd number of marked points
    lies below its lowest end. With quotient_b set, pairs of horizontal lines
    are removed with a factor b each.

    Parameters:

        A: FullDiagram - the lower diagram

        B: FullDiagram - the upper diagram

        params: DerivedParams - delta, s1, s2 at the working point

        quotient_b: Scalar or None - the double quotient parameter

    Returns:

        The reduced diagram with its coefficient

        FullDiagram
    """
    if A.n != B.n:
        raise DiagramError(f"cannot compose N={A.n} with N={B.n}")
    n = A.n
    p = params.point

    graph = _Graph()
    left_used, right_used = _add_diagram(graph, A, "b", "m", 0, 0)
    _add_diagram(graph, B, "m", "t", left_used, right_used)

    coeff = p.one
    if A.coeff is not None:
        coeff = coeff * A.coeff
    if B.coeff is not None:
        coeff = coeff * B.coeff

    bottom = [""]*n
    top = [""]*n
    hlines = 0
    visited = set()
    ends = [("b", j) for j in range(n)] + [("t", j) for j in range(n)] + [
        node for node in graph.adjacent if node[0] in (LEFT, RIGHT)
    ]
    for start in ends:
        if start in visited:
            continue
        end, strand = graph.walk(start)
        visited.update(strand)
        kinds = {start[0], end[0]}
        if start[0] in (LEFT, RIGHT) and end[0] == start[0]:
            # Boundary arc, odd when an odd number of points lies below it
            if min(start[1], end[1]) % 2 == 1:
                coeff = coeff * (params.s1 if start[0] == LEFT else params.s2)
        elif kinds == {LEFT, RIGHT}:
            hlines += 1
        else:
            outer, other = (start, end) if start[0] in ("b", "t") else (end, start)
            row = bottom if outer[0] == "b" else top
            if other[0] == LEFT:
                row[outer[1]] = LEFT
            elif other[0] == RIGHT:
                row[outer[1]] = RIGHT
            elif other[0] == outer[0]:
                i, j = sorted((outer[1], other[1]))
                row[i], row[j] = RIGHT, LEFT
            else:
                row[outer[1]] = THROUGH
                (top if row is bottom else bottom)[other[1]] = THROUGH

    # What is left are closed loops through the middle row
    for node in graph.adjacent:
        if node[0] == "m" and node not in visited:
            visited.update(_loop(graph, node))
            coeff = coeff * params.delta

    if quotient_b is not None:
        while hlines >= 2:
            hlines -= 2
            coeff = coeff * quotient_b

    return FullDiagram(
        HalfDiagram("".join(bottom)), HalfDiagram("".join(top)), hlines, coeff
    )


def _loop(graph: _Graph, start: tuple) -> List[tuple]:
    """ Nodes of the closed loop through start. """
    strand = [start]
    node, edge = start, None
    while True:
        v, e = next((v, e) for v, e in graph.adjacent[node] if e != edge)
        if v == start:
            return strand
        strand.append(v)
        node, edge = v, e


def format_half(x: HalfDiagram) -> str:
    return str(x)


@dataclass
class AlgebraElement:
    """ Finite linear combination of reduced diagrams.

    terms maps a diagram shape (bottom, top, hlines) to its coefficient; zero
    coefficients are never stored.
    """
    n: int
    params: DerivedParams
    quotient_b: Optional[Scalar] = None
    terms: Dict[Tuple[str, str, int], Scalar] = field(default_factory=dict)

    @classmethod
    def from_diagram(
        cls,
        D: FullDiagram,
        params: DerivedParams,
        quotient_b: Optional[Scalar] = None
    ) -> AlgebraElement:
        element = cls(D.n, params, quotient_b)
        element._accumulate(D.shape, D.coeff if D.coeff is not None
                            else params.point.one)
        return element

    def _accumulate(self, shape: Tuple[str, str, int], coeff: Scalar):
        total = self.terms.get(shape, self.params.point.zero) + coeff
        if total:
            self.terms[shape] = total
        else:
            self.terms.pop(shape, None)

    def _empty(self) -> AlgebraElement:
        return AlgebraElement(self.n, self.params, self.quotient_b)

    def diagrams(self) -> Iterable[FullDiagram]:
        for (bottom, top, hlines), coeff in sorted(
            self.terms.items(), key=lambda item: item[0]
        ):
            yield FullDiagram(
                HalfDiagram(bottom), HalfDiagram(top), hlines, coeff
            )

    def coefficient(self, D: FullDiagram) -> Scalar:
        return self.terms.get(D.shape, self.params.point.zero)

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        result = self._empty()
        for element in (self, other):
            for shape, coeff in element.terms.items():
                result._accumulate(shape, coeff)
        return result

    def __neg__(self) -> AlgebraElement:
        return self.scale(-self.params.point.one)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, c: Scalar) -> AlgebraElement:
        result = self._empty()
        for shape, coeff in self.terms.items():
            result._accumulate(shape, coeff * c)
        return result

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        """ Product self*other: every diagram of self below every one of other. """
        if self.n != other.n:
            raise DiagramError(f"cannot multiply N={self.n} by N={other.n}")
        result = self._empty()
        for A in self.diagrams():
            for B in other.diagrams():
                D = compose(A, B, self.params, self.quotient_b)
                result._accumulate(D.shape, D.coeff)
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> list:
        return [D.to_json() for D in self.diagrams()]


@dataclass(frozen=True)
class Word:
    """ A product e_{i1} e_{i2} ... of generators of the chain of size n. """
    letters: Tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for i in self.letters:
            if not 0 <= i <= self.n:
                raise DiagramError(f"no generator e_{i} at N={self.n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(f"e{i}" for i in self.letters) or "1"


def word_to_element(
    w: Word,
    params: DerivedParams,
    quotient_b: Optional[Scalar] = None
) -> AlgebraElement:
    """ Left-to-right product of the generator diagrams of w. """
    D = identity_diagram(w.n).with_coeff(params.point.one)
    for i in w.letters:
        D = compose(D, generator_diagram(i, w.n), params, quotient_b)
        if not D.coeff:
            break
    return AlgebraElement.from_diagram(D, params, quotient_b)


def act_on_half(
    i: int,
    x: HalfDiagram,
    params: DerivedParams,
    quotient_b: Optional[Scalar] = None
) -> Tuple[Scalar, HalfDiagram]:
    """ e_i acting on the half-diagram x.

    Half-diagrams without through lines are read as |x><)))...| in the double
    quotient (quotient_b defaults to the parity's b). With through lines x is
    read as |x><x|, and a zero scalar is returned when e_i would lower the
    number of through lines.

    Parameters:

        i: int - the generator index

        x: HalfDiagram - the basis vector acted on

        params: DerivedParams - the parameters at the working point

        quotient_b: Scalar or None - b for the module without through lines

    Returns:

        The scalar and the resulting half-diagram

        (Scalar, HalfDiagram)
    """
    n = x.n
    E = generator_diagram(i, n)
    if x.through_count == 0:
        b = quotient_b if quotient_b is not None else params.b
        D = FullDiagram(x, HalfDiagram(LEFT*n), 1 if x.hline else 0)
        result = compose(E, D, params, b)
    else:
        result = compose(E, FullDiagram(x, x, 0), params, None)
        if result.bottom.through_count < x.through_count:
            return params.point.zero, x
    return result.coeff, result.bottom


def idempotent_words(n: int) -> Tuple[Word, Word]:
    """ Words of I1 and I2: generators of one index parity, with e_N joining
    the word whose indices share its parity.
    """
    odd = [i for i in range(1, n + 1) if i % 2 == 1]
    even = [i for i in range(0, n + 1) if i % 2 == 0]
    return Word(odd, n), Word(even, n)


def idempotents(
    n: int,
    params: DerivedParams,
    quotient_b: Optional[Scalar] = None
) -> Tuple[AlgebraElement, AlgebraElement]:
    """ (I1, I2) as algebra elements. """
    w1, w2 = idempotent_words(n)
    return (
        word_to_element(w1, params, quotient_b),
        word_to_element(w2, params, quotient_b)
    )


def half_decomposition(
    D: FullDiagram,
    b: Scalar
) -> Tuple[Scalar, str, str]:
    """ Write D = c|x><y| in the double quotient.

    Each half-diagram with an odd number of right boundary connections carries
    one horizontal line, so two flagged halves hold one line more than D and
    cost a factor 1/b.

    Parameters:

        D: FullDiagram - a diagram without through lines, hlines <= 1

        b: Scalar - the quotient parameter

    Returns:

        The scalar c and the text forms of x and y

        (Scalar, str, str)
    """
    if D.bottom.through_count:
        raise DiagramError("only diagrams without through lines decompose")
    carried = int(D.bottom.hline) + int(D.top.hline)
    if (carried - D.hlines) % 2:
        raise DiagramError(
            f"{D.hlines} horizontal lines do not match the halves "
            f"{D.bottom}, {D.top}"
        )
    coeff = D.coeff if D.coeff is not None else b / b
    for _ in range((carried - D.hlines) // 2):
        coeff = coeff / b
    for _ in range((D.hlines - carried) // 2):
        coeff = coeff * b
    return coeff, str(D.bottom), str(D.top)

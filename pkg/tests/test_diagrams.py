from hypothesis import given, settings, strategies as st
import pytest

from src.diagrams import (
    act_on_half, AlgebraElement, compose, FullDiagram, generator_diagram,
    half_decomposition, HalfDiagram, identity_diagram, idempotents, parse_half,
    transpose, Word, word_to_element
)
from src.errors import DiagramError


def element(letters, n, params, b=None):
    return word_to_element(Word(letters, n), params, b)


@pytest.mark.parametrize(
    "text,through,left,right,hline",
    [
        ("))", 0, 2, 0, False),
        (")(*", 0, 1, 1, True),
        ("()(*", 0, 0, 1, True),
        ("((", 0, 0, 2, False),
        (")|(", 1, 1, 1, False),
        ("|||", 3, 0, 0, False)
    ],
    ids=["two-left", "left-right", "pair-right", "two-right", "through", "identity"]
)
def test_parse_half(text, through, left, right, hline):
    x = parse_half(text)
    assert (x.through_count, x.left_count, x.right_count, x.hline) == (
        through, left, right, hline
    )
    assert str(x) == text


@pytest.mark.parametrize(
    "text", ["))*", "|)", "(|", "x)"], ids=["bad-flag", "left-after-line",
                                           "line-under-right", "junk"]
)
def test_parse_rejects(text):
    with pytest.raises(DiagramError):
        parse_half(text)


def test_generator_diagrams():
    assert generator_diagram(0, 3).bottom.text == ")||"
    assert generator_diagram(2, 3).bottom.text == "|()"
    assert generator_diagram(3, 3).bottom.text == "||("
    with pytest.raises(DiagramError):
        generator_diagram(4, 3)


def test_identity_is_neutral(params_for):
    params = params_for(3)
    one = identity_diagram(3)
    for i in range(4):
        E = generator_diagram(i, 3)
        assert compose(one, E, params).shape == E.shape
        assert compose(E, one, params).coeff == params.point.one


@pytest.mark.parametrize("n", [2, 3, 4], ids=["N2", "N3", "N4"])
def test_defining_relations_on_diagrams(params_for, n):
    params = params_for(n)
    for i in range(n + 1):
        c = params.s1 if i == 0 else params.s2 if i == n else params.delta
        assert element([i, i], n, params) == element([i], n, params).scale(c)
    for i in range(1, n):
        for j in (i - 1, i + 1):
            assert element([i, j, i], n, params) == element([i], n, params)
    for i in range(n + 1):
        for j in range(i + 2, n + 1):
            assert element([i, j], n, params) == element([j, i], n, params)


def test_horizontal_lines_accumulate(params_for):
    params = params_for(2)
    for power in (1, 2, 3):
        product = element([1, 0, 2]*power, 2, params)
        (D,) = list(product.diagrams())
        assert D.hlines == 2*power - 1


@pytest.mark.parametrize("n", [2, 3, 4], ids=["N2", "N3", "N4"])
def test_double_quotient(params_for, n):
    params = params_for(n)
    I1, I2 = idempotents(n, params, params.b)
    assert I1*I2*I1 == I1.scale(params.b)
    assert I2*I1*I2 == I2.scale(params.b)


@pytest.mark.parametrize(
    "letters,expected",
    [
        ([0, 1, 0, 2, 1, 0], (1, ")))", ")))")),
        ([1, 3], ("1/b", "()(*", "()(*")),
        ([1, 3, 0, 2], (1, "()(*", ")()")),
        ([0, 2], (1, ")()", ")()"))
    ],
    ids=["e0e1e0e2e1e0", "e1e3", "e1e3e0e2", "e0e2"]
)
def test_half_decomposition_at_three_sites(params_for, letters, expected):
    params = params_for(3)
    b = params.b
    (D,) = list(element(letters, 3, params, b).diagrams())
    coeff, bottom, top = half_decomposition(D, b)
    scale = 1/b if expected[0] == "1/b" else expected[0]
    assert (coeff, bottom, top) == (scale, expected[1], expected[2])


def test_transpose_is_an_involution(params_for):
    params = params_for(3)
    (D,) = list(element([1, 3, 0, 2], 3, params, params.b).diagrams())
    assert transpose(transpose(D)).shape == D.shape


def test_element_arithmetic(params_for):
    params = params_for(2)
    e1 = element([1], 2, params)
    assert (e1 - e1).is_zero()
    assert e1 + e1 == e1.scale(2)
    assert (-e1).scale(-1) == e1
    with pytest.raises(DiagramError):
        e1 * element([1], 3, params_for(3))


def test_action_drops_through_lines(params_for):
    params = params_for(2)
    x = HalfDiagram(")|")
    coeff, y = act_on_half(1, x, params)
    assert coeff == 0
    coeff, y = act_on_half(2, x, params)
    assert y.text == ")|" and coeff == 0
    coeff, y = act_on_half(0, x, params)
    assert (coeff, y.text) == (params.s1, ")|")


def test_words_are_checked():
    with pytest.raises(DiagramError):
        Word([0, 5], 3)
    assert str(Word([1, 0], 2)) == "e1e0"
    assert str(Word([], 2)) == "1"


def test_mismatched_halves():
    with pytest.raises(DiagramError):
        FullDiagram(HalfDiagram("|"), HalfDiagram("||"))
    assert AlgebraElement


def test_action_closes_two_left_arcs(params_for):
    params = params_for(3)
    coeff, y = act_on_half(1, HalfDiagram("))|"), params)
    assert (coeff, y.text) == (1, "()|")
    coeff, y = act_on_half(1, HalfDiagram("()|"), params)
    assert (coeff, y.text) == (params.delta, "()|")


def test_loop_and_odd_arc_in_one_product(params_for):
    params = params_for(3)
    A = word_to_element(Word([0, 2], 3), params)
    (D,) = list(A.diagrams())
    product = compose(D, D, params)
    assert product.shape == D.shape
    assert product.coeff == params.delta*params.s1


words = st.lists(st.integers(0, 4), max_size=4)


@pytest.mark.parametrize("n", [2, 3, 4], ids=["N2", "N3", "N4"])
@pytest.mark.parametrize("quotient", [False, True], ids=["free", "quotient"])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_composition_is_associative(params_for, n, quotient, data):
    params = params_for(n)
    b = params.b if quotient else None
    u, v, w = (
        [i for i in data.draw(words) if i <= n] for _ in range(3)
    )
    A, B, C = (element(letters, n, params, b) for letters in (u, v, w))
    assert (A*B)*C == A*(B*C)
    assert A*B == element(u + v, n, params, b)

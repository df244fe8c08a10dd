import itertools
from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from kralcove.weyl import (AffineElement, act, compose, element_from_json,
                           element_to_json, from_word, has_left_descent,
                           identity, inverse, left_mult, length,
                           omega_component, reduced_word, right_mult,
                           simple_reflection, tau, translation_element,
                           waff_part)


@st.composite
def elements(draw, n=None):
    n = n or draw(st.integers(2, 5))
    t = draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    w = draw(st.permutations(range(n)))
    return AffineElement(tuple(t), tuple(w))


def bfs_lengths(n, radius):
    """Word length in the Coxeter generators by breadth-first search."""
    start = identity(n)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if dist[x] == radius:
            continue
        for i in range(n):
            y = left_mult(i, x)
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def test_action_convention():
    x = AffineElement((1, 0), (1, 0))
    assert act(x, (2, 3)) == (4, 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_simple_reflections_are_involutions(n):
    for i in range(n):
        s = simple_reflection(n, i)
        assert compose(s, s) == identity(n)
        assert length(s) == 1


def test_s0_is_affine_reflection():
    s0 = simple_reflection(3, 0)
    # v -> v - (v_1 - v_n - 1)(e_1 - e_n)
    assert act(s0, (5, 0, 2)) == (3, 0, 4)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tau_has_length_zero_and_rotates_vertices(n):
    t = tau(n)
    assert length(t) == 0
    assert omega_component(t) == 1
    assert act(t, (0,) * n) == (1,) + (0,) * (n - 1)
    assert compose(tau(n, n), identity(n)) == translation_element((1,) * n)


@pytest.mark.parametrize("n,radius", [(2, 8), (3, 6), (4, 5)])
def test_length_matches_breadth_first_search(n, radius):
    for x, d in bfs_lengths(n, radius).items():
        assert length(x) == d
        for r in (-1, 1, 2):
            assert length(compose(x, tau(n, r))) == d


@pytest.mark.parametrize("mu", [(1, 0), (2, 1, 0), (1, 1, 0, 0), (2, 0, -1), (3, 1, 1, 0)])
def test_translation_length_closed_form(mu):
    # l(t_mu) = sum over pairs |mu_a - mu_b|
    expected = sum(abs(a - b) for a, b in itertools.combinations(mu, 2))
    for p in set(itertools.permutations(mu)):
        assert length(translation_element(p)) == expected


@given(elements(), elements(), st.data())
def test_compose_is_associative_and_acts(x, y, data):
    n = x.n
    y = data.draw(elements(n))
    z = data.draw(elements(n))
    assert compose(compose(x, y), z) == compose(x, compose(y, z))
    v = tuple(data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n)))
    assert act(compose(x, y), v) == act(x, act(y, v))
    assert compose(x, inverse(x)) == identity(n)


@given(elements())
def test_reduced_word_round_trip(x):
    word = reduced_word(x)
    assert len(word) == length(x)
    assert from_word(word, x.n, omega_component(x)) == x
    assert length(waff_part(x)) == length(x)
    assert omega_component(waff_part(x)) == 0


@given(elements(), st.data())
def test_descents_match_length(x, data):
    i = data.draw(st.integers(0, x.n - 1))
    s = simple_reflection(x.n, i)
    assert left_mult(i, x) == compose(s, x)
    assert right_mult(x, i) == compose(x, s)
    assert has_left_descent(x, i) == (length(left_mult(i, x)) < length(x))
    assert abs(length(right_mult(x, i)) - length(x)) == 1


@given(elements())
def test_json_round_trip(x):
    assert element_from_json(element_to_json(x)) == x


def test_build_validates():
    with pytest.raises(ValueError):
        AffineElement.build((0, 0), (0, 0))
    with pytest.raises(ValueError):
        AffineElement.build((0, 0, 0), (0, 1))
    assert AffineElement.build((0, 0), (2, 1), one_based=True).w == (1, 0)

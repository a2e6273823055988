import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SMALL, group, images, model
from singular_bruhat import (
    CapExceeded,
    CoxeterMatrix,
    InvalidMatrix,
    ParseError,
    build_group,
    format_word,
    parse_group_file,
    parse_word,
    preset_matrix,
    reduce_word,
)
from singular_bruhat.coxeter import braid_orbit, subword_products

KNOWN_ORDERS = {"A1": 2, "A1xA1": 4, "A2": 6, "B2": 8, "I2(5)": 10, "I2(7)": 14,
                "A3": 24, "B3": 48, "H3": 120}


# -- construction -----------------------------------------------------------


@pytest.mark.parametrize("name,order", sorted(KNOWN_ORDERS.items()))
def test_group_orders(name, order):
    assert group(name).size == order


def test_rank_two_longest_lengths(A2, B2):
    assert A2.length_of(A2.longest_element({0, 1})) == 3
    assert B2.length_of(B2.longest_element({0, 1})) == 4


def test_index_order_is_shortlex():
    g = group("B3")
    keys = [(len(w), w) for w in g.words]
    assert keys == sorted(keys)
    assert g.words[0] == ()


@pytest.mark.parametrize("name", SMALL)
def test_lengths_and_products_match_concrete_model(name):
    g, m, img = group(name), model(name), images(name)
    assert len(set(img)) == g.size
    assert [m.length[x] for x in img] == g.length.tolist()
    lookup = {x: k for k, x in enumerate(img)}
    expected = np.array([[lookup[m.mul(a, b)] for b in img] for a in img])
    assert np.array_equal(g.mult_table, expected)
    assert [lookup[m.inverse(x)] for x in img] == g.inverse.tolist()


def test_cap_exceeded_for_infinite_group():
    affine = CoxeterMatrix.from_entries(3, {(0, 1): 3, (1, 2): 3, (0, 2): 3})
    with pytest.raises(CapExceeded):
        build_group(affine, cap=500)


def test_cap_smaller_than_group():
    with pytest.raises(CapExceeded):
        build_group(preset_matrix("B3"), cap=47)
    assert build_group(preset_matrix("B3"), cap=48).size == 48


@pytest.mark.parametrize("entries", [{(0, 1): 1}, {(0, 0): 2}])
def test_invalid_matrix(entries):
    with pytest.raises(InvalidMatrix):
        CoxeterMatrix.from_entries(2, entries)


def test_group_file_roundtrip():
    text = "# type B3\nrank 3\nm 1 2 4\nm 2 3 3\n"
    assert parse_group_file(text) == preset_matrix("B3")


@pytest.mark.parametrize("text,token", [
    ("m 1 2 3\n", "before"),
    ("rank 2\nm 1 2 1\n", "must be >= 2"),
    ("rank 2\nm 1 5 3\n", "bad generator pair"),
    ("rank 2\nm 1 two 3\n", "bad integer"),
    ("rank 2\nbogus\n", "bogus"),
    ("", "missing"),
])
def test_group_file_errors(text, token):
    with pytest.raises(ParseError, match=token):
        parse_group_file(text)


# -- words ------------------------------------------------------------------


def test_word_formatting():
    assert format_word(()) == "e"
    assert format_word((0, 1, 0)) == "1-2-1"
    assert parse_word("1-2-1") == (0, 1, 0)
    assert parse_word("aba") == (0, 1, 0)
    assert parse_word("e") == parse_word("-") == parse_word("") == ()
    with pytest.raises(ParseError, match="x"):
        parse_word("1-x")
    with pytest.raises(ParseError, match="3"):
        parse_word("1-3", rank=2)


def test_braid_orbit_of_longest_a2():
    m = preset_matrix("A2")
    assert braid_orbit((0, 1, 0), m) == {(0, 1, 0), (1, 0, 1)}


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["A2", "B2", "I2(5)", "A3", "B3"]), st.data())
def test_reduce_word_agrees_with_cayley_table(name, data):
    g = group(name)
    word = data.draw(st.lists(st.integers(0, g.rank - 1), max_size=14))
    reduced = reduce_word(word, g.matrix)
    assert g.index_of(reduced) == g.index_of(word)
    assert len(reduced) == g.length_of(g.index_of(word))


# -- products ---------------------------------------------------------------


def test_multiply_examples(A2):
    e, a, ab, ba, aba, b = (A2.element(w) for w in ["e", "a", "ab", "ba", "aba", "b"])
    assert a * a == e
    assert ab * a == aba
    assert a * ba == aba
    assert aba * b == ba


def test_demazure_examples(A2, H3):
    a, ab, aba, b = (A2.element(w) for w in ["a", "ab", "aba", "b"])
    assert a @ a == a
    assert ab @ a == aba
    assert aba @ b == aba
    for w in range(H3.size):
        assert H3.demazure(0, w) == w


@pytest.mark.parametrize("name", SMALL)
def test_demazure_matches_model_fold(name):
    g, m, img = group(name), model(name), images(name)
    lookup = {x: k for k, x in enumerate(img)}
    for x in range(g.size):
        for y in range(g.size):
            assert g.star_table[x, y] == lookup[m.demazure(img[x], g.word(y))]


def test_demazure_independent_of_reduced_word(H3):
    rng = np.random.default_rng(7)
    for x, y in rng.integers(0, H3.size, size=(300, 2)):
        for word in list(H3.reduced_words(y))[:4]:
            w = int(x)
            for s in word:
                v = H3.multiply(w, H3.generators[s])
                w = v if H3.length_of(v) > H3.length_of(w) else w
            assert w == H3.demazure(x, y)


def test_star_descent_containment_counterexample(A2):
    """The right descents of x*x need not equal those of x; they only contain them."""
    ab = A2.element("ab")
    sq = ab @ ab
    assert sq == A2.element("aba")
    assert A2.right_descents(ab) < A2.right_descents(sq)


# -- Bruhat order -----------------------------------------------------------


def test_bruhat_examples(A2):
    e, a, b, ab = (A2.element(w) for w in ["e", "a", "b", "ab"])
    assert all(e <= w for w in (A2.element(x) for x in A2.words))
    assert a <= ab
    assert not a <= b


def test_intro_example_ss_below_sts(A2):
    s, t = 0, 1
    ss = A2.index_of((s, s))
    sts = A2.index_of((s, t, s))
    assert ss == A2.identity
    assert A2.bruhat_leq(ss, sts) and ss != sts
    assert A2.bruhat_leq(A2.index_of((s,)), sts) and A2.index_of((s,)) != sts


@pytest.mark.parametrize("name", SMALL)
def test_bruhat_matches_reflection_order(name):
    g, m, img = group(name), model(name), images(name)
    expected = np.array([[m.leq(a, b) for b in img] for a in img])
    assert np.array_equal(g.leq_table, expected)


@pytest.mark.parametrize("name", SMALL + ["H3"])
def test_bruhat_matches_subword_oracle(name):
    g = group(name)
    for y in range(g.size):
        below = subword_products(g, g.word(y))
        assert set(np.flatnonzero(g.leq_table[:, y]).tolist()) == below


def test_longest_and_parabolic(A2, B2):
    assert A2.longest_element(()) == 0
    assert A2.longest_element({0, 1}) == A2.index_of((0, 1, 0))
    assert A2.parabolic_elements(()) == (0,)
    assert A2.parabolic_elements({0}) == (0, A2.generators[0])
    assert A2.parabolic_elements({0, 1}) == tuple(range(6))
    assert B2.genset_length({0, 1}) == 4


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_longest_element_matches_model(name):
    g, m, img = group(name), model(name), images(name)
    for I in g.all_gensets:
        assert img[g.longest_element(I)] == m.longest(I)
        assert {img[x] for x in g.parabolic_elements(I)} == m.subgroup(I)
        w = g.longest_element(I)
        assert g.demazure(w, w) == w

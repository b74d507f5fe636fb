import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidmono.braid_core import (
    BraidError,
    BraidWord,
    CanonicalForm,
    Permutation,
    band_conjugator,
    band_generator,
    bounded_forms,
    delta_form,
    delta_power,
    exponent_sum,
    find_conjugator,
    free_reduce,
    generator_form,
    invert,
    multiply,
    normal_form,
    parse_braid,
    render_braid,
    underlying_permutation,
    words_equal,
)

from oracles import oracle_equal, positive_classes


def W(d, text):
    return BraidWord(d, tuple(int(t) for t in text.split()))


@st.composite
def words(draw, d=None, max_len=10):
    d = draw(st.integers(2, 6)) if d is None else d
    gens = st.integers(1, d - 1).flatmap(lambda g: st.sampled_from((g, -g)))
    return BraidWord(d, tuple(draw(st.lists(gens, max_size=max_len))))


@st.composite
def word_pairs(draw, max_len=10):
    d = draw(st.integers(2, 6))
    return draw(words(d, max_len)), draw(words(d, max_len))


def _left_desc(p):
    inv = {v: i for i, v in enumerate(p, 1)}
    return {i for i in range(1, len(p)) if inv[i] > inv[i + 1]}


def _right_desc(p):
    return {i for i in range(1, len(p)) if p[i - 1] > p[i]}


def assert_valid_form(form: CanonicalForm):
    d = form.strands
    e, w0 = tuple(range(1, d + 1)), tuple(range(d, 0, -1))
    for s in form.simple_factors:
        assert sorted(s) == list(e)
        assert tuple(s) not in (e, w0)
    for a, b in zip(form.simple_factors, form.simple_factors[1:]):
        assert _left_desc(b) <= _right_desc(a)


# --- group operations -------------------------------------------------------


def test_group_op_examples():
    assert free_reduce(multiply(W(2, "1"), W(2, "-1"))).letters == ()
    assert invert(W(3, "1 2")).letters == (-2, -1)
    assert free_reduce(W(3, "1 -2 2 -1")).letters == ()


def test_strand_mismatch():
    with pytest.raises(BraidError):
        multiply(W(3, "1"), W(4, "1"))
    with pytest.raises(BraidError):
        words_equal(W(3, "1"), W(4, "1"))


def test_letter_range():
    with pytest.raises(BraidError):
        BraidWord(3, (3,))
    with pytest.raises(BraidError):
        BraidWord(3, (0,))


# --- normal forms -----------------------------------------------------------


def test_normal_form_examples():
    f = normal_form(W(3, "1 2 1"))
    assert (f.delta_power, f.simple_factors) == (1, ())
    f = normal_form(W(3, "-1"))
    assert f.delta_power == -1
    assert f.simple_factors == (underlying_permutation(W(3, "1 2")),)
    for d in range(1, 6):
        assert normal_form(BraidWord(d, ())).is_identity()


def test_words_equal_examples():
    assert words_equal(W(3, "1 2 1"), W(3, "2 1 2"))
    assert words_equal(W(4, "1 3"), W(4, "3 1"))
    assert not words_equal(W(3, "1"), W(3, "2"))


def test_delta_power_examples():
    assert delta_power(2, 2).letters == (1, 1)
    assert delta_power(3, 1).letters == (1, 2, 1)
    assert words_equal(delta_power(3, 1), W(3, "2 1 2"))
    with pytest.raises(BraidError):
        delta_power(1, 1)


@pytest.mark.parametrize("d", range(2, 7))
def test_delta_squared_central(d):
    D2 = delta_power(d, 2)
    for i in range(1, d):
        g = BraidWord(d, (i,))
        assert words_equal(D2 * g, g * D2)


@pytest.mark.parametrize("d", range(2, 7))
def test_braid_relations(d):
    for i in range(1, d - 1):
        assert words_equal(BraidWord(d, (i, i + 1, i)), BraidWord(d, (i + 1, i, i + 1)))
    for i in range(1, d):
        for j in range(i + 2, d):
            assert words_equal(BraidWord(d, (i, j)), BraidWord(d, (j, i)))


def test_delta_conjugates_generators():
    d = 5
    D = delta_form(d, 1)
    for i in range(1, d):
        assert D * generator_form(d, i) * D.inverse() == generator_form(d, d - i)


def test_band_generator_examples():
    assert band_generator(3, 1, 2).letters == (1,)
    a13 = band_generator(3, 1, 3)
    assert a13.letters == (2, 1, -2)
    assert underlying_permutation(a13) == Permutation.transposition(3, 1, 3)
    assert underlying_permutation(band_generator(4, 2, 4)) == Permutation.transposition(4, 2, 4)
    with pytest.raises(BraidError):
        band_generator(3, 2, 2)


@pytest.mark.parametrize("d", range(2, 6))
def test_band_generators_are_half_twists(d):
    s1 = BraidWord(d, (1,))
    for s in range(1, d):
        for t in range(s + 1, d + 1):
            a = band_generator(d, s, t)
            c = band_conjugator(d, s, t)
            assert words_equal(c * s1 * c.inverse(), a)
            assert exponent_sum(a) == 1
            assert underlying_permutation(a) == Permutation.transposition(d, s, t)


def test_exponent_sum_examples():
    assert exponent_sum(BraidWord(3, ())) == 0
    assert exponent_sum(W(3, "2 1 -2")) == 1
    for d in range(2, 7):
        assert exponent_sum(delta_power(d, 2)) == d * (d - 1)


def test_underlying_permutation_examples():
    assert underlying_permutation(W(3, "1 2 1")) == Permutation.transposition(3, 1, 3)
    assert underlying_permutation(BraidWord(3, ())).is_identity()
    assert underlying_permutation(W(3, "1 1")).is_identity()


def test_find_conjugator():
    a = normal_form(W(3, "1"))
    b = normal_form(W(3, "2"))
    c = find_conjugator(a, b)
    assert c is not None and c * a * c.inverse() == b
    # sigma_1 and sigma_1^2 are not conjugate (exponent sums differ)
    assert find_conjugator(a, normal_form(W(3, "1 1"))) is None


def test_bounded_forms_are_distinct_and_valid():
    forms = list(bounded_forms(3, 2, (0, 1)))
    assert len(set(forms)) == len(forms)
    for f in forms:
        assert_valid_form(f)
        assert normal_form(f.to_word()) == f


# --- properties -------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(words())
def test_normal_form_is_valid_and_idempotent(w):
    f = normal_form(w)
    assert_valid_form(f)
    assert normal_form(f.to_word()) == f


@settings(max_examples=300, deadline=None)
@given(word_pairs())
def test_normal_form_multiplicative(pair):
    w1, w2 = pair
    assert normal_form(w1 * w2) == normal_form(w1) * normal_form(w2)


@settings(max_examples=300, deadline=None)
@given(words())
def test_inverse(w):
    f = normal_form(w)
    assert f.inverse() == normal_form(w.inverse())
    assert (f * f.inverse()).is_identity()


@settings(max_examples=300, deadline=None)
@given(word_pairs())
def test_quotient_maps_are_homomorphisms(pair):
    w1, w2 = pair
    assert underlying_permutation(w1 * w2) == underlying_permutation(w1) * underlying_permutation(w2)
    assert exponent_sum(w1 * w2) == exponent_sum(w1) + exponent_sum(w2)
    assert underlying_permutation(free_reduce(w1)) == underlying_permutation(w1)
    assert exponent_sum(free_reduce(w1)) == exponent_sum(w1)
    assert normal_form(w1).permutation() == underlying_permutation(w1)


@settings(max_examples=300, deadline=None)
@given(word_pairs(max_len=8))
def test_agrees_with_faithful_representation(pair):
    w1, w2 = pair
    assert words_equal(w1, w2) == oracle_equal(w1.strands, w1.letters, w2.letters)


@settings(max_examples=200, deadline=None)
@given(words(), st.integers(-3, 3))
def test_delta_power_normal_form(w, k):
    d = w.strands
    f = normal_form(delta_power(d, k) * w)
    g = normal_form(w)
    assert f.delta_power == g.delta_power + k
    if k % 2 == 0:
        assert f.simple_factors == g.simple_factors


def test_garside_embedding_b4_short():
    """Positive words of length <= 6 in B_4: equal iff positively equivalent."""
    classes = positive_classes(4, 6)
    by_form = {}
    for w, cls in classes.items():
        by_form.setdefault(normal_form(BraidWord(4, w)), set()).add(cls)
    assert all(len(v) == 1 for v in by_form.values())
    assert len(by_form) == len(set(classes.values()))


# --- text format ------------------------------------------------------------


def test_parse_examples():
    assert parse_braid("d=3; 1 2 -1") == BraidWord(3, (1, 2, -1))
    with pytest.raises(BraidError, match="zero"):
        parse_braid("d=3; 0")


@pytest.mark.parametrize(
    "text, where",
    [("d=3; 1 x", "column 8"), ("d=3; 1 3", "out of range"), ("d=3; 1 -0", "column 8"), ("1 2 +", "column 5")],
)
def test_parse_errors(text, where):
    with pytest.raises(BraidError, match=where):
        parse_braid(text)


def test_parse_header_conflict():
    with pytest.raises(BraidError):
        parse_braid("d=3; 1", strands=4)


def test_parse_infers_strands():
    assert parse_braid("2 -1").strands == 3
    assert parse_braid("", strands=4) == BraidWord(4, ())


@settings(max_examples=200, deadline=None)
@given(words())
def test_render_parse_roundtrip(w):
    text = render_braid(w)
    assert parse_braid(text) == w
    assert render_braid(parse_braid(text)) == text


def test_permutation_basics():
    p = Permutation.from_cycles(4, [(1, 2, 3)])
    assert p(1) == 2 and p(3) == 1
    assert (p * p.inverse()).is_identity()
    assert p.cycle_string() == "(1 2 3)"
    with pytest.raises(BraidError):
        Permutation((1, 1, 2))
    rng = random.Random(1)
    for _ in range(50):
        a, b, c = (Permutation(rng.sample(range(1, 6), 5)) for _ in range(3))
        assert (a * b) * c == a * (b * c)

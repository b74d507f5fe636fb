import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidmono.braid_core import BraidWord, Permutation, delta_power, words_equal
from braidmono.perm_action import (
    FreeGroupWord,
    LiftedConfiguration,
    MonodromyError,
    MonodromyMorphism,
    artin_action,
    disjoint_transpositions,
    fiber_genus,
    generator_images,
    induced_morphism,
    is_liftable,
    parse_theta,
    render_theta,
    validate_monodromy,
)

from oracles import random_word

T = Permutation.transposition
THETA_43 = MonodromyMorphism.from_transpositions(3, [(1, 2), (1, 3), (1, 3), (1, 2)])


def brute_induced(theta, b):
    """theta evaluated on each b_*(x_i), via explicit free-group words."""
    d = theta.degree_d
    return tuple(theta.evaluate(artin_action(b, FreeGroupWord.generator(d, i))) for i in range(1, d + 1))


def random_theta(rng, d, N):
    """Transposition images with product = identity (not necessarily transitive)."""
    pairs = [tuple(rng.sample(range(1, N + 1), 2)) for _ in range(d // 2)]
    imgs = []
    for p in pairs:
        imgs += [p, p]
    rng.shuffle(imgs)
    theta = MonodromyMorphism.from_transpositions(N, imgs)
    # shuffling can break the closed-fiber product; fall back to adjacent pairs
    if not theta.product().is_identity():
        theta = MonodromyMorphism.from_transpositions(N, [p for p in pairs for _ in (0, 1)])
    return theta


# --- Artin action -----------------------------------------------------------


def test_artin_examples():
    x = lambda d, *l: FreeGroupWord(d, l)
    assert artin_action(BraidWord(2, (1,)), x(2, 1)) == x(2, 1, 2, -1)
    assert artin_action(BraidWord(2, (1,)), x(2, 2)) == x(2, 1)
    assert artin_action(BraidWord(4, (1,)), x(4, 3)) == x(4, 3)
    w = x(3, 1, -2, 3, 3)
    assert artin_action(BraidWord(3, (1, -1)), w) == w
    with pytest.raises(MonodromyError):
        artin_action(BraidWord(3, (1,)), x(4, 1))


def test_free_group_word_reduces():
    assert FreeGroupWord(3, (1, 2, -2, -1, 3)).letters == (3,)
    assert str(FreeGroupWord(2, (1, -2))) == "x1 x2^-1"


@pytest.mark.parametrize("d", range(2, 6))
def test_artin_respects_relations(d):
    for i in range(1, d - 1):
        assert generator_images(BraidWord(d, (i, i + 1, i))) == generator_images(BraidWord(d, (i + 1, i, i + 1)))
    for i in range(1, d):
        for j in range(i + 2, d):
            assert generator_images(BraidWord(d, (i, j))) == generator_images(BraidWord(d, (j, i)))


def test_composition_order():
    rng = random.Random(4)
    for _ in range(100):
        d = rng.randint(2, 5)
        b1 = BraidWord(d, random_word(rng, d, rng.randint(0, 5)))
        b2 = BraidWord(d, random_word(rng, d, rng.randint(0, 5)))
        w = FreeGroupWord(d, random_word(rng, d + 1, 4))
        assert artin_action(b1 * b2, w) == artin_action(b1, artin_action(b2, w))


def test_boundary_word_fixed():
    rng = random.Random(5)
    for _ in range(300):
        d = rng.randint(2, 5)
        b = BraidWord(d, random_word(rng, d, rng.randint(0, 8)))
        boundary = FreeGroupWord(d, tuple(range(1, d + 1)))
        assert artin_action(b, boundary) == boundary


@pytest.mark.parametrize("d", range(2, 6))
def test_delta_squared_is_inner(d):
    """Delta^2_* is conjugation by the boundary word."""
    c = FreeGroupWord(d, tuple(range(1, d + 1)))
    D2 = delta_power(d, 2)
    for i in range(1, d + 1):
        x = FreeGroupWord.generator(d, i)
        image = artin_action(D2, x)
        assert image in (c * x * c.inverse(), c.inverse() * x * c)


# --- induced morphisms ------------------------------------------------------


def test_induced_examples():
    theta = MonodromyMorphism.from_transpositions(2, [(1, 2), (1, 2)])
    assert induced_morphism(theta, BraidWord(2, ())) == theta
    assert induced_morphism(theta, BraidWord(2, (1,))) == theta
    moved = induced_morphism(THETA_43, BraidWord(4, (2,)))
    assert moved.images == brute_induced(THETA_43, BraidWord(4, (2,)))


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 6), st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_induced_matches_brute_force(d, N, seed):
    rng = random.Random(seed)
    theta = MonodromyMorphism.from_transpositions(N, [tuple(rng.sample(range(1, N + 1), 2)) for _ in range(d)])
    b = BraidWord(d, random_word(rng, d, rng.randint(0, 6)))
    assert induced_morphism(theta, b).images == brute_induced(theta, b)


def test_induced_preserves_validity_flags():
    rng = random.Random(6)
    for _ in range(300):
        d = rng.choice((2, 4, 6))
        N = rng.randint(2, 4)
        theta = random_theta(rng, d, N)
        b = BraidWord(d, random_word(rng, d, rng.randint(0, 8)))
        assert validate_monodromy(induced_morphism(theta, b)) == validate_monodromy(theta)


def test_lifted_configuration_moves():
    start = LiftedConfiguration(THETA_43)
    b1, b2 = BraidWord(4, (1, 2)), BraidWord(4, (-3,))
    assert start.move(b1).theta == induced_morphism(THETA_43, b1)
    assert start.punctures == 4
    # lifting a product: first b2 acts on theta, then b1
    assert start.move(b1 * b2).theta == induced_morphism(induced_morphism(THETA_43, b1), b2)


# --- liftability ------------------------------------------------------------


def test_liftable_examples():
    assert not is_liftable(BraidWord(4, (1,)), THETA_43)
    assert THETA_43.evaluate((1, 2, -1)) == T(3, 2, 3)
    assert is_liftable(BraidWord(4, (1, 1, 1)), THETA_43)
    assert is_liftable(BraidWord(4, (2,)), THETA_43)


def test_liftable_up_to_conjugation():
    # sigma_1 fails image-by-image, but the result is a conjugate of theta?
    b = BraidWord(4, (1,))
    moved = induced_morphism(THETA_43, b)
    expected = any(THETA_43.conjugate_by(Permutation(p)) == moved for p in itertools.permutations((1, 2, 3)))
    assert is_liftable(b, THETA_43, up_to_conjugation=True) == expected


def test_n2_everything_liftable():
    rng = random.Random(7)
    for _ in range(1000):
        d = rng.choice((2, 4, 6))
        theta = MonodromyMorphism.from_transpositions(2, [(1, 2)] * d)
        b = BraidWord(d, random_word(rng, d, rng.randint(0, 6)))
        assert is_liftable(b, theta)


@pytest.mark.parametrize("d", (2, 4, 6))
def test_delta_squared_liftable_for_closed_theta(d):
    rng = random.Random(d)
    for _ in range(20):
        theta = random_theta(rng, d, rng.randint(2, 4))
        assert is_liftable(delta_power(d, 2), theta)


def test_liftable_is_subgroup():
    rng = random.Random(8)
    found = 0
    while found < 300:
        b1 = BraidWord(4, random_word(rng, 4, rng.randint(1, 6)))
        b2 = BraidWord(4, random_word(rng, 4, rng.randint(1, 6)))
        if is_liftable(b1, THETA_43) and is_liftable(b2, THETA_43):
            found += 1
            assert is_liftable(b1 * b2, THETA_43)
            assert is_liftable(b1.inverse(), THETA_43)


def test_liftable_is_class_function():
    rng = random.Random(9)
    for _ in range(200):
        b = BraidWord(4, random_word(rng, 4, 6))
        # insert a relation to get a different word for the same braid
        k = rng.randrange(len(b) + 1)
        i = rng.randint(1, 2)
        rel = (i, i + 1, i, -(i + 1), -i, -(i + 1))
        b2 = BraidWord(4, b.letters[:k] + rel + b.letters[k:])
        assert words_equal(b, b2)
        assert is_liftable(b, THETA_43) == is_liftable(b2, THETA_43)


# --- validation -------------------------------------------------------------


def test_validation_examples():
    ok = validate_monodromy(MonodromyMorphism.from_transpositions(2, [(1, 2), (1, 2)]))
    assert ok.valid
    r = validate_monodromy(MonodromyMorphism.from_transpositions(3, [(1, 2), (1, 2), (1, 3), (1, 3)]))
    assert r.product_is_identity and r.transitive and r.valid
    bad = validate_monodromy(MonodromyMorphism.from_transpositions(2, [(1, 2)] * 3))
    assert not bad.product_is_identity and not bad.d_even and not bad.valid


def test_validation_not_transitive():
    r = validate_monodromy(MonodromyMorphism.from_transpositions(4, [(1, 2), (1, 2), (3, 4), (3, 4)]))
    assert r.all_transpositions and not r.transitive and not r.surjective_onto_S_N


def test_validation_non_transposition_images():
    three = Permutation.from_cycles(3, [(1, 2, 3)])
    r = validate_monodromy(MonodromyMorphism(3, (three, three, three)))
    assert not r.all_transpositions and r.transitive and not r.surjective_onto_S_N
    r = validate_monodromy(MonodromyMorphism(3, (three, T(3, 1, 2))))
    assert r.surjective_onto_S_N


def test_fiber_genus():
    assert fiber_genus(2, 2) == 0
    assert fiber_genus(6, 2) == 2
    for N in range(2, 8):
        assert fiber_genus(2 * N - 2, N) == 0
    with pytest.raises(MonodromyError):
        fiber_genus(3, 2)
    with pytest.raises(MonodromyError):
        fiber_genus(2, 3)


def test_disjoint_transpositions():
    assert disjoint_transpositions(T(4, 1, 2), T(4, 3, 4))
    assert not disjoint_transpositions(T(4, 1, 2), T(4, 2, 3))
    assert not disjoint_transpositions(T(4, 1, 2), T(4, 1, 2))
    with pytest.raises(MonodromyError):
        disjoint_transpositions(Permutation.from_cycles(3, [(1, 2, 3)]), T(3, 1, 2))


def test_theta_text_roundtrip():
    text = "theta: N=3; (1 2) (1 3) (1 3) (1 2)"
    theta = parse_theta(text)
    assert theta == THETA_43
    assert render_theta(theta) == text
    assert parse_theta("N=2; (1 2) (1 2)").degree_d == 2


@pytest.mark.parametrize(
    "text",
    ["theta: N=3;", "theta: N=3; (1 2 3)", "theta: N=3; (1 4)", "theta: N=3; (1 2) x", "N=; (1 2)", "theta: N=3; (1 1)"],
)
def test_theta_parse_errors(text):
    with pytest.raises(MonodromyError):
        parse_theta(text)

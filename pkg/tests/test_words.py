import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncpoisson.ncalg import (
    NonInvertibleError,
    Signature,
    concat,
    cyclic_canonical,
    enumerate_cyclic_words,
    enumerate_words,
    render_word,
    reduce_letters,
    word_key,
    word_len,
    word_reduce,
)

GROUP = Signature.make(("u", "v"), invertible=True)
FREE3 = Signature.make(("x1", "x2", "x3"))


def w(sig, spec):
    letters = []
    for part in spec.split():
        if "^" in part:
            name, e = part.split("^")
            letters.append((sig.index(name), int(e)))
        else:
            letters.append((sig.index(part), 1))
    return word_reduce(letters, sig)


def test_reduce_cancellation():
    assert w(GROUP, "u v v^-1 u") == ((0, 2),)


def test_reduce_to_unit():
    assert w(GROUP, "u u^-1") == ()


def test_reduce_keeps_free_words():
    assert w(FREE3, "x1 x2") == ((0, 1), (1, 1))


def test_reduce_cascade():
    assert w(GROUP, "u v u u^-1 v^-1 u^-1") == ()


def test_noninvertible_inverse_rejected():
    with pytest.raises(NonInvertibleError):
        word_reduce([(0, -1)], FREE3)


def test_enumeration_counts_group():
    words = enumerate_words(GROUP, 2)
    assert len(words) == 17  # 1 + 4 + 12
    assert len(set(words)) == 17
    assert words[0] == ()


def test_enumeration_counts_free3():
    assert len(enumerate_words(FREE3, 2)) == 13  # 1 + 3 + 9


def test_enumeration_is_graded_lex_sorted():
    words = enumerate_words(GROUP, 3)
    keys = [word_key(x) for x in words]
    assert keys == sorted(keys)


def test_cyclic_classes_single_generator():
    sig = Signature.make(("x",))
    reps = enumerate_cyclic_words(sig, 3)
    assert [render_word(r, sig) for r in reps] == ["1", "x", "x^2", "x^3"]


def test_cyclic_rotation_cancellation():
    # u v u^-1 rotates and cancels to v
    assert cyclic_canonical(w(GROUP, "u v u^-1")) == ((1, 1),)


def test_cyclic_rotation_identifies():
    assert cyclic_canonical(w(GROUP, "u^-1 v^-1")) == cyclic_canonical(w(GROUP, "v^-1 u^-1"))


def test_cyclic_commutator_nontrivial():
    assert cyclic_canonical(w(GROUP, "u v u^-1 v^-1")) != ()


def test_render():
    assert render_word(w(GROUP, "u v^-1 u u"), GROUP) == "u*v^-1*u^2"
    assert render_word((), GROUP) == "1"


letters_group = st.tuples(st.integers(0, 1), st.sampled_from([-2, -1, 1, 2]))


@settings(max_examples=100, deadline=None)
@given(st.lists(letters_group, max_size=8), st.lists(letters_group, max_size=8))
def test_reduction_confluence(raw1, raw2):
    w1 = word_reduce(raw1, GROUP)
    w2 = word_reduce(raw2, GROUP)
    assert concat(w1, w2) == word_reduce(list(raw1) + list(raw2), GROUP)


@settings(max_examples=100, deadline=None)
@given(st.lists(letters_group, max_size=8))
def test_reduced_words_have_merged_letters(raw):
    word = word_reduce(raw, GROUP)
    for (g1, e1), (g2, e2) in zip(word, word[1:]):
        assert g1 != g2
        assert e1 != 0 and e2 != 0


@settings(max_examples=100, deadline=None)
@given(st.lists(letters_group, max_size=6), st.integers(0, 5))
def test_cyclic_class_invariant_under_rotation(raw, rot):
    word = word_reduce(raw, GROUP)
    if not word:
        return
    from ncpoisson.ncalg import expand, reduce_letters

    letters = expand(word)
    k = rot % len(letters)
    rotated = reduce_letters(letters[k:] + letters[:k], GROUP)
    assert cyclic_canonical(rotated) == cyclic_canonical(word)


@settings(max_examples=100, deadline=None)
@given(st.lists(letters_group, max_size=6), st.lists(letters_group, max_size=3))
def test_cyclic_class_invariant_under_conjugation(raw, conj):
    word = word_reduce(raw, GROUP)
    g = word_reduce(conj, GROUP)
    ginv = tuple((i, -e) for i, e in reversed(g))
    assert cyclic_canonical(concat(concat(g, word), ginv)) == cyclic_canonical(word)


def test_word_len_counts_exponents():
    assert word_len(w(GROUP, "u^2 v^-1")) == 3
    assert word_len(()) == 0

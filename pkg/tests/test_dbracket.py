import random
from fractions import Fraction

import pytest

from ncpoisson import systems
from ncpoisson.dbracket import (
    BracketDef,
    casimir_check,
    extend_double,
    extend_double_raw,
    jacobiator,
    jacobiator_defect,
    jacobiator_defect_closed_form,
    loday,
    mu_d1_plus_d2,
    verify_axioms,
)
from ncpoisson.ncalg import (
    NCPoly,
    Signature,
    TensorPoly,
    cyclic_project,
    enumerate_words,
    tensor,
    tensor_act,
)

K = systems.kontsevich_bracket()
GROUP = K.sig
U = NCPoly.gen(GROUP, "u")
V = NCPoly.gen(GROUP, "v")
ONE = NCPoly.one(GROUP)


# ---------------------------------------------------------------------------
# independent oracle: naive one-letter-at-a-time Leibniz recursion, built on
# the public tensor actions only


def oracle_words(db, aw, bw):
    sig = db.sig
    if not aw or not bw:
        return TensorPoly.zero(sig)
    if len(bw) > 1 or abs(bw[0][1]) > 1:
        # [[a (x) m rest]] = (m (x) 1)[[a (x) rest]] + [[a (x) m]](1 (x) rest)
        g, e = bw[0]
        s = 1 if e > 0 else -1
        m, rest = ((g, s),), bw[1:] if abs(e) == 1 else ((g, e - s),) + bw[1:]
        mp = NCPoly.monomial(sig, m)
        rp = NCPoly.monomial(sig, rest)
        return tensor_act("outer-left", oracle_words(db, aw, rest), mp) + (
            oracle_words(db, aw, m).slot_rmul(1, rp)
        )
    if len(aw) > 1 or abs(aw[0][1]) > 1:
        # [[l rest (x) c]] = (1 (x) l)[[rest (x) c]] + [[l (x) c]](rest (x) 1)
        g, e = aw[0]
        s = 1 if e > 0 else -1
        l, rest = ((g, s),), aw[1:] if abs(e) == 1 else ((g, e - s),) + aw[1:]
        lp = NCPoly.monomial(sig, l)
        rp = NCPoly.monomial(sig, rest)
        return oracle_words(db, rest, bw).slot_lmul(1, lp) + (
            oracle_words(db, l, bw).slot_rmul(0, rp)
        )
    (g1, e1), (g2, e2) = aw[0], bw[0]
    if e1 < 0:
        inv = NCPoly.monomial(sig, ((g1, -1),))
        t = oracle_words(db, ((g1, 1),), bw)
        return -(t.slot_lmul(1, inv).slot_rmul(0, inv))
    if e2 < 0:
        inv = NCPoly.monomial(sig, ((g2, -1),))
        t = oracle_words(db, aw, ((g2, 1),))
        return -(t.slot_lmul(0, inv).slot_rmul(1, inv))
    return db.entry(g1, g2)


def oracle_extend(db, a, b):
    out = TensorPoly.zero(db.sig)
    for aw, ca in a.terms.items():
        for bw, cb in b.terms.items():
            out = out + oracle_words(db, aw, bw).scale(ca * cb)
    return out


# ---------------------------------------------------------------------------
# frozen examples


def test_generator_pair_matches_table():
    assert extend_double(K, U, V) == tensor(-(V * U), ONE)
    assert extend_double(K, V, U) == tensor(U * V, ONE)
    assert extend_double(K, U, U).is_zero()


def test_second_argument_leibniz_frozen():
    # hand application of the right Leibniz rule
    expected = tensor(-(V * V * U), ONE) + tensor(-(V * U), V)
    assert extend_double(K, U, V * V) == expected


def test_inverse_rule_frozen():
    vinv = NCPoly.monomial(GROUP, ((1, -1),))
    assert extend_double(K, U, vinv) == tensor(U, vinv)


def test_vanishes_on_unit():
    assert extend_double(K, ONE, V).is_zero()
    assert extend_double(K, U * V, ONE).is_zero()


def test_loday_generators():
    assert loday(K, U, V) == -(V * U)


def test_loday_hamiltonian_flow_values():
    h = systems.hamiltonian()
    vinv = NCPoly.monomial(GROUP, ((1, -1),))
    uinv = NCPoly.monomial(GROUP, ((0, -1),))
    assert loday(K, h, U) == U * V - U * vinv - vinv
    assert loday(K, h, V) == -(V * U) + V * uinv + uinv


def test_loday_second_arg_unit_is_zero():
    assert loday(K, U * V, ONE).is_zero()


def test_extension_matches_recursive_oracle():
    rng = random.Random(11)
    words = enumerate_words(GROUP, 3)
    for _ in range(60):
        a = NCPoly.monomial(GROUP, rng.choice(words))
        b = NCPoly.monomial(GROUP, rng.choice(words))
        assert extend_double(K, a, b) == oracle_extend(K, a, b)


def test_extension_matches_oracle_free3():
    F = systems.free3_bracket_I()
    rng = random.Random(13)
    words = enumerate_words(F.sig, 3)
    for _ in range(60):
        a = NCPoly.monomial(F.sig, rng.choice(words))
        b = NCPoly.monomial(F.sig, rng.choice(words))
        assert extend_double(F, a, b) == oracle_extend(F, a, b)


# ---------------------------------------------------------------------------
# structural properties


def _random_word_polys(sig, rng, max_len=3):
    words = enumerate_words(sig, max_len)
    return [NCPoly.monomial(sig, rng.choice(words)) for _ in range(3)]


@pytest.mark.parametrize("mk", [systems.kontsevich_bracket, systems.free3_bracket_I, systems.free3_bracket_II])
def test_derivation_law_second_argument(mk):
    db = mk()
    rng = random.Random(5)
    for _ in range(40):
        a, b, c = _random_word_polys(db.sig, rng)
        assert loday(db, a, b * c) == b * loday(db, a, c) + loday(db, a, b) * c


@pytest.mark.parametrize("mk", [systems.kontsevich_bracket, systems.free3_bracket_I])
def test_cyclic_invariance_first_argument(mk):
    db = mk()
    rng = random.Random(6)
    for _ in range(40):
        a, b, c = _random_word_polys(db.sig, rng)
        assert loday(db, a * b, c) == loday(db, b * a, c)


def test_inverse_rule_consistency_unreduced():
    # [[a (x) y y^-1]] computed by Leibniz on the raw letters must vanish
    words = enumerate_words(GROUP, 3)
    for a in words:
        for g in range(2):
            for s in (1, -1):
                assert extend_double_raw(K, a, ((g, s), (g, -s))).is_zero()
                assert extend_double_raw(K, ((g, s), (g, -s)), a).is_zero()


def test_mu_d1_d2_is_jacobiator():
    rng = random.Random(17)
    words = enumerate_words(GROUP, 3)
    for _ in range(40):
        a, b, c = (rng.choice(words) for _ in range(3))
        lhs = mu_d1_plus_d2(K, a, b, c)
        rhs = jacobiator(
            K,
            NCPoly.monomial(GROUP, a),
            NCPoly.monomial(GROUP, b),
            NCPoly.monomial(GROUP, c),
        )
        assert lhs == rhs


def test_defect_closed_form_random():
    rng = random.Random(23)
    for mk in (systems.kontsevich_bracket, systems.free3_bracket_II):
        db = mk()
        words = enumerate_words(db.sig, 3)
        for _ in range(100):
            a1, a2, b, c = (rng.choice(words) for _ in range(4))
            assert jacobiator_defect(db, a1, a2, b, c) == jacobiator_defect_closed_form(
                db, a1, a2, b, c
            )


def test_defect_nonzero_witness():
    # the defect vanishes on (u,v,u,v) because [[v,v]] = 0 annihilates the
    # closed form; (u,u,v,v) is a genuine witness that D1 is no derivation
    wu, wv = ((0, 1),), ((1, 1),)
    assert jacobiator_defect(K, wu, wv, wu, wv).is_zero()
    d = jacobiator_defect(K, wu, wu, wv, wv)
    assert not d.is_zero()
    expected = tensor(V * U, U * V, ONE) - tensor(V * U, ONE, V * U)
    assert d == expected


def test_defect_zero_bracket():
    zero_db = BracketDef(GROUP, {}, name="zero")
    wu, wv = ((0, 1),), ((1, 1),)
    assert jacobiator_defect(zero_db, wu, wv, wu, wv).is_zero()


# ---------------------------------------------------------------------------
# sweeps


def test_verify_axioms_kontsevich_small():
    report = verify_axioms(K, skew_max_len=3, jacobi_len_a=2, jacobi_len_b=2)
    assert report.passed
    assert report.summary["skew_pairs"] == 53 * 54 // 2
    assert report.summary["jacobi_triples"] == 17 * 17 * 4


def test_verify_axioms_threads_match_serial():
    serial = verify_axioms(K, skew_max_len=2, jacobi_len_a=2, jacobi_len_b=2)
    parallel = verify_axioms(K, skew_max_len=2, jacobi_len_a=2, jacobi_len_b=2, threads=2)
    assert serial.passed == parallel.passed
    assert serial.checked == parallel.checked
    assert serial.failures == parallel.failures


def test_verify_axioms_counterexample_bracket():
    # [[x1,x2]] = x1 (x) x2 with no compensating entry breaks weak skewness
    sig = Signature.make(("x1", "x2"))
    x1, x2 = NCPoly.gen(sig, 0), NCPoly.gen(sig, 1)
    bad = BracketDef(sig, {(0, 1): tensor(x1, x2)}, name="bad")
    report = verify_axioms(bad, skew_max_len=2, jacobi_len_a=1, jacobi_len_b=1)
    assert not report.passed
    skew_fails = [f for f in report.failures if f.inputs[0] == "skew"]
    assert ("skew", "x1", "x2") in [f.inputs for f in skew_fails]


def test_verify_axioms_full_triple_mode():
    report = verify_axioms(
        K, skew_max_len=1, jacobi_len_a=2, jacobi_len_b=2,
        jacobi_c_mode="words", jacobi_c_len=2,
    )
    assert report.passed
    assert report.summary["jacobi_triples"] == 17 * 17 * 16


def test_casimir_right_small():
    c = systems.casimir_element()
    report = casimir_check(K, c, max_len=3, side="right")
    assert report.passed


def test_casimir_left_fails_with_witness():
    c = systems.casimir_element()
    report = casimir_check(K, c, max_len=2, side="left")
    assert not report.passed
    # frozen witness: {c, u} = u v u^-1 v^-1 u - u^2 v u^-1 v^-1
    witness = next(f for f in report.failures if f.inputs[1] == "u")
    assert witness.residual == "-u^2*v*u^-1*v^-1 + u*v*u^-1*v^-1*u"


def test_casimir_unit_trivially_right():
    report = casimir_check(K, ONE, max_len=2, side="right")
    assert report.passed


def test_table_defaults_to_zero_for_missing_pairs():
    assert K.entry(0, 0).is_zero()
    assert K.entry(1, 1).is_zero()

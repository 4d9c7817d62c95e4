"""Double brackets from generator tables: Leibniz extension to all words,
the induced Loday bracket, axiom sweeps (weak skew-symmetry and the left
Jacobi identity), right/left Casimir checks, and the rank-3 Jacobi-defect
operators.

Extension rules on words, peeling one letter at a time:

    [[a (x) bc]] = (b (x) 1) [[a (x) c]] + [[a (x) b]] (1 (x) c)
    [[ab (x) c]] = (1 (x) a) [[b (x) c]] + [[a (x) c]] (b (x) 1)

and, for invertible generators, the derived rules

    [[a (x) y^-1]] = -(y^-1 (x) 1) [[a (x) y]] (1 (x) y^-1)
    [[x^-1 (x) c]] = -(1 (x) x^-1) [[x (x) c]] (x^-1 (x) 1)

Unrolling both recursions gives the position sum actually implemented: for
words a = l_1..l_k, b = m_1..m_r and each letter pair (l_p, m_q) with
letter-level bracket sum(t' (x) t''),

    [[a (x) b]] = sum over p, q of (m_<q t' l_>p) (x) (l_<p t'' m_>q).

Brackets are total: generator pairs missing from the table are zero.
"""

from __future__ import annotations

import os
import time
from fractions import Fraction
from functools import lru_cache

from .ncalg import (
    CyclicPoly,
    NCPoly,
    Signature,
    TensorPoly,
    Word,
    add_term,
    check_same_sig,
    concat,
    cyclic_canonical,
    enumerate_cyclic_words,
    enumerate_words,
    expand,
    render_word,
    word_len,
)
from .reports import Failure, SweepReport

_ONE = Fraction(1)


class BracketDef:
    """A generator-pair table of tensor values over one signature."""

    def __init__(self, sig: Signature, table: dict, name: str = ""):
        self.sig = sig
        self.name = name
        clean = {}
        for (g1, g2), t in table.items():
            if not isinstance(t, TensorPoly):
                raise TypeError("table values must be rank-2 tensors")
            if t.rank != 2:
                raise ValueError("table values must be rank-2 tensors")
            check_same_sig(sig, t.sig)
            if not 0 <= g1 < sig.arity or not 0 <= g2 < sig.arity:
                raise ValueError(f"generator pair {(g1, g2)} out of range")
            if not t.is_zero():
                clean[(g1, g2)] = t
        self.table = clean
        self._lp: dict = {}
        self._db_words = lru_cache(maxsize=1 << 17)(self._db_words_impl)
        self._loday_words = lru_cache(maxsize=1 << 17)(self._loday_words_impl)

    def __eq__(self, other):
        return (
            isinstance(other, BracketDef)
            and self.sig == other.sig
            and self.table == other.table
        )

    def __repr__(self):
        return f"BracketDef({self.name or 'unnamed'}, {len(self.table)} entries)"

    def entry(self, g1: int, g2: int) -> TensorPoly:
        return self.table.get((g1, g2), TensorPoly.zero(self.sig))

    def _letter_pair(self, l1, l2):
        """Flattened bracket of two unit letters: tuple of (wl, wr, coeff),
        with the derived inverse rules folded in."""
        key = (l1, l2)
        hit = self._lp.get(key)
        if hit is not None:
            return hit
        (g1, s1), (g2, s2) = l1, l2
        base = self.table.get((g1, g2))
        if base is None:
            res: tuple = ()
        else:
            xinv = ((g1, -1),)
            yinv = ((g2, -1),)
            acc = []
            for (wl, wr), c in base.terms.items():
                if s1 < 0:
                    wl, wr, c = concat(wl, xinv), concat(xinv, wr), -c
                if s2 < 0:
                    wl, wr, c = concat(yinv, wl), concat(wr, yinv), -c
                acc.append((wl, wr, c))
            res = tuple(acc)
        self._lp[key] = res
        return res

    def _db_letters(self, la, lb) -> dict:
        """Position sum over expanded letter sequences; returns a raw
        {(left word, right word): coeff} dict."""
        out: dict = {}
        if not la or not lb:
            return out
        k, r = len(la), len(lb)
        a_pre = [()] * (k + 1)
        for p in range(k):
            a_pre[p + 1] = concat(a_pre[p], (la[p],))
        a_suf = [()] * (k + 1)
        for p in range(k - 1, -1, -1):
            a_suf[p] = concat((la[p],), a_suf[p + 1])
        b_pre = [()] * (r + 1)
        for q in range(r):
            b_pre[q + 1] = concat(b_pre[q], (lb[q],))
        b_suf = [()] * (r + 1)
        for q in range(r - 1, -1, -1):
            b_suf[q] = concat((lb[q],), b_suf[q + 1])
        for p in range(k):
            l1 = la[p]
            ap, asf = a_pre[p], a_suf[p + 1]
            for q in range(r):
                terms = self._letter_pair(l1, lb[q])
                if not terms:
                    continue
                bp, bsf = b_pre[q], b_suf[q + 1]
                for wl, wr, c in terms:
                    key = (
                        concat(concat(bp, wl), asf),
                        concat(concat(ap, wr), bsf),
                    )
                    add_term(out, key, c)
        return out

    def _db_words_impl(self, aw: Word, bw: Word) -> dict:
        return self._db_letters(expand(aw), expand(bw))

    def _loday_words_impl(self, aw: Word, bw: Word) -> dict:
        out: dict = {}
        for (w1, w2), c in self._db_words(aw, bw).items():
            add_term(out, concat(w1, w2), c)
        return out


def _as_terms(sig: Signature, x) -> dict:
    if isinstance(x, NCPoly):
        check_same_sig(sig, x.sig)
        return x.terms
    if isinstance(x, tuple):
        return {x: _ONE}
    raise TypeError(f"expected NCPoly or word, got {type(x)}")


def extend_double(db: BracketDef, a, b) -> TensorPoly:
    """Bilinear Leibniz extension of the generator table to A (x) A."""
    at = _as_terms(db.sig, a)
    bt = _as_terms(db.sig, b)
    out: dict = {}
    for aw, ca in at.items():
        for bw, cb in bt.items():
            c = ca * cb
            for k, v in db._db_words(aw, bw).items():
                add_term(out, k, c * v)
    return TensorPoly.raw(db.sig, 2, out)


def extend_double_raw(db: BracketDef, letters_a, letters_b) -> TensorPoly:
    """Same extension, fed unreduced letter sequences: the Leibniz sum runs
    over the letters as given, without first reducing the input words."""
    la = expand(tuple(letters_a))
    lb = expand(tuple(letters_b))
    return TensorPoly.raw(db.sig, 2, db._db_letters(la, lb))


def loday(db: BracketDef, a, b) -> NCPoly:
    """The associated single bracket {a,b} = mu([[a,b]])."""
    at = _as_terms(db.sig, a)
    bt = _as_terms(db.sig, b)
    out: dict = {}
    for aw, ca in at.items():
        for bw, cb in bt.items():
            c = ca * cb
            for w, v in db._loday_words(aw, bw).items():
                add_term(out, w, c * v)
    return NCPoly.raw(db.sig, out)


def _loday_left(db: BracketDef, aw: Word, poly: dict) -> dict:
    """{aw, poly} for a raw word->coeff dict."""
    out: dict = {}
    for w, cw in poly.items():
        for k, v in db._loday_words(aw, w).items():
            add_term(out, k, cw * v)
    return out


def _loday_right(db: BracketDef, poly: dict, cw_word: Word) -> dict:
    out: dict = {}
    for w, cw in poly.items():
        for k, v in db._loday_words(w, cw_word).items():
            add_term(out, k, cw * v)
    return out


def _dict_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        add_term(out, k, -v)
    return out


def _cyclic_dict(poly: dict) -> dict:
    out: dict = {}
    for w, c in poly.items():
        add_term(out, cyclic_canonical(w), c)
    return out


def _render_poly_dict(sig: Signature, d: dict) -> str:
    return str(NCPoly.raw(sig, dict(d)))


# ---------------------------------------------------------------------------
# axiom sweeps


def _skew_failures(db: BracketDef, words, lo: int, hi: int):
    fails = []
    sig = db.sig
    for i in range(lo, hi):
        a = words[i]
        for b in words[i:]:
            out = _cyclic_dict(db._loday_words(a, b))
            for w, c in db._loday_words(b, a).items():
                add_term(out, cyclic_canonical(w), c)
            if out:
                fails.append(
                    Failure(
                        ("skew", render_word(a, sig), render_word(b, sig)),
                        _render_poly_dict(sig, out),
                    )
                )
    return fails


def _jacobi_failures(db: BracketDef, words_a, words_b, cs, lo: int, hi: int):
    """Jacobi residuals for ordered pairs; when the two word lists coincide
    the sweep runs over unordered pairs and derives both orders at once."""
    sig = db.sig
    symmetric = words_a is words_b
    fails = []

    def check(a, b, c, residual):
        if residual:
            fails.append(
                Failure(
                    (
                        "jacobi",
                        render_word(a, sig),
                        render_word(b, sig),
                        render_word(c, sig),
                    ),
                    _render_poly_dict(sig, residual),
                )
            )

    for i in range(lo, hi):
        a = words_a[i]
        bs = words_b[i:] if symmetric else words_b
        for b in bs:
            lab = db._loday_words(a, b)
            lba = db._loday_words(b, a)
            for c in cs:
                bc = db._loday_words(b, c)
                ac = db._loday_words(a, c)
                t1 = _loday_left(db, a, bc)  # {a,{b,c}}
                t2 = _loday_left(db, b, ac)  # {b,{a,c}}
                t3 = _loday_right(db, lab, c)  # {{a,b},c}
                check(a, b, c, _dict_sub(_dict_sub(t1, t2), t3))
                if symmetric and a != b:
                    t3r = _loday_right(db, lba, c)
                    check(b, a, c, _dict_sub(_dict_sub(t2, t1), t3r))
    return fails


_WORKER_CTX = {}


def _skew_worker(args):
    lo, hi = args
    ctx = _WORKER_CTX
    return _skew_failures(ctx["db"], ctx["skew_words"], lo, hi)


def _jacobi_worker(args):
    lo, hi = args
    ctx = _WORKER_CTX
    return _jacobi_failures(
        ctx["db"], ctx["words_a"], ctx["words_b"], ctx["cs"], lo, hi
    )


def _chunks(n: int, parts: int):
    step = max(1, (n + parts - 1) // parts)
    return [(lo, min(lo + step, n)) for lo in range(0, n, step)]


def _fan_out(worker, n_items: int, threads: int):
    """Run worker over index ranges, optionally across forked processes.
    Aggregation is order-independent; failures get sorted afterwards."""
    if threads <= 1 or n_items < 64:
        return worker((0, n_items))
    try:
        import multiprocessing as mp

        ctx = mp.get_context("fork")
    except (ImportError, ValueError):
        return worker((0, n_items))
    fails = []
    with ctx.Pool(threads) as pool:
        for part in pool.map(worker, _chunks(n_items, threads * 4)):
            fails.extend(part)
    return fails


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("NCPOISSON_THREADS", "1")))
    except ValueError:
        return 1


def verify_axioms(
    db: BracketDef,
    skew_max_len: int,
    jacobi_len_a: int,
    jacobi_len_b: int,
    jacobi_c_mode: str = "generators",
    jacobi_c_len: int | None = None,
    threads: int = 1,
) -> SweepReport:
    """Sweep weak skew-symmetry ({a,b}+{b,a} = 0 in A/[A,A]) over all word
    pairs up to skew_max_len, and the left Jacobi identity
    {a,{b,c}} - {b,{a,c}} - {{a,b},c} = 0 in A over (a,b) up to the given
    lengths with c per jacobi_c_mode.

    In generators mode c runs over the single letters of the alphabet
    (inverse letters included): the Jacobiator is a derivation in c once a,b
    are fixed, so vanishing on letters implies vanishing everywhere.
    """
    if min(skew_max_len, jacobi_len_a, jacobi_len_b) < 1:
        raise ValueError("length bounds must be >= 1")
    t0 = time.monotonic()
    sig = db.sig
    skew_words = enumerate_words(sig, skew_max_len)
    words_a = enumerate_words(sig, jacobi_len_a)
    words_b = words_a if jacobi_len_b == jacobi_len_a else enumerate_words(sig, jacobi_len_b)
    if jacobi_c_mode == "generators":
        cs = [(l,) for l in sig.alphabet()]
    elif jacobi_c_mode == "words":
        if jacobi_c_len is None:
            raise ValueError("jacobi_c_len required in words mode")
        cs = [w for w in enumerate_words(sig, jacobi_c_len) if w]
    else:
        raise ValueError(f"unknown jacobi_c_mode {jacobi_c_mode!r}")

    global _WORKER_CTX
    _WORKER_CTX = {
        "db": db,
        "skew_words": skew_words,
        "words_a": words_a,
        "words_b": words_b,
        "cs": cs,
    }
    failures = _fan_out(_skew_worker, len(skew_words), threads)
    failures += _fan_out(_jacobi_worker, len(words_a), threads)
    _WORKER_CTX = {}

    n_skew = len(skew_words) * (len(skew_words) + 1) // 2
    n_jac = len(words_a) * len(words_b) * len(cs)
    report = SweepReport(
        sweep="verify-axioms",
        params={
            "bracket": db.name,
            "skew_max_len": skew_max_len,
            "jacobi_len_a": jacobi_len_a,
            "jacobi_len_b": jacobi_len_b,
            "jacobi_c_mode": jacobi_c_mode,
            "jacobi_c_len": jacobi_c_len,
        },
        checked=n_skew + n_jac,
        failures=failures,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
        summary={"skew_pairs": n_skew, "jacobi_triples": n_jac},
    )
    report.sort_failures()
    return report


def casimir_check(db: BracketDef, c: NCPoly, max_len: int, side: str = "right") -> SweepReport:
    """Right: {w, c} = 0 for every cyclic class representative w up to
    max_len.  Left: {c, w} = 0 (need not hold for non-skew brackets)."""
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    t0 = time.monotonic()
    sig = db.sig
    check_same_sig(sig, c.sig)
    words = enumerate_cyclic_words(sig, max_len)
    failures = []
    for w in words:
        wp = NCPoly.monomial(sig, w)
        residual = loday(db, wp, c) if side == "right" else loday(db, c, wp)
        if not residual.is_zero():
            failures.append(
                Failure((side, render_word(w, sig), str(c)), str(residual))
            )
    report = SweepReport(
        sweep=f"casimir-{side}",
        params={"bracket": db.name, "element": str(c), "max_len": max_len, "side": side},
        checked=len(words),
        failures=failures,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
    )
    report.sort_failures()
    return report


# ---------------------------------------------------------------------------
# Jacobi decomposition and the derivation defect


def r_apply(db: BracketDef, t: TensorPoly, m: int, n: int) -> TensorPoly:
    """R_{mn}: apply the double bracket to slots (m, n), replacing slot m by
    the left and slot n by the right tensor leg."""
    out: dict = {}
    for key, c in t.terms.items():
        for (wl, wr), v in db._db_words(key[m], key[n]).items():
            k = list(key)
            k[m] = wl
            k[n] = wr
            add_term(out, tuple(k), c * v)
    return TensorPoly.raw(db.sig, t.rank, out)


def d1_apply(db: BracketDef, t: TensorPoly) -> TensorPoly:
    """D1 = R_12 R_23 - R_23 R_13 - R_13 R_12 (slots 1-based)."""
    return (
        r_apply(db, r_apply(db, t, 1, 2), 0, 1)
        - r_apply(db, r_apply(db, t, 0, 2), 1, 2)
        - r_apply(db, r_apply(db, t, 0, 1), 0, 2)
    )


def d2_apply(db: BracketDef, t: TensorPoly) -> TensorPoly:
    """D2 = sigma_12 (R_13 R_23 - R_21 R_13 - R_23 R_12)."""
    inner = (
        r_apply(db, r_apply(db, t, 1, 2), 0, 2)
        - r_apply(db, r_apply(db, t, 0, 2), 1, 0)
        - r_apply(db, r_apply(db, t, 0, 1), 1, 2)
    )
    return inner.swap(0, 1)


def _word_triple(db: BracketDef, a: Word, b: Word, c: Word) -> TensorPoly:
    return TensorPoly.raw(db.sig, 3, {(a, b, c): _ONE})


def jacobiator_defect(db: BracketDef, a1: Word, a2: Word, b: Word, c: Word) -> TensorPoly:
    """Defect of D1 being a derivation in its first slot:
    D1(a1 a2 (x) b (x) c) - (1 (x) a1 (x) 1) D1(a2 (x) b (x) c)
    - D1(a1 (x) b (x) c)(a2 (x) 1 (x) 1)."""
    whole = d1_apply(db, _word_triple(db, concat(a1, a2), b, c))
    left = d1_apply(db, _word_triple(db, a2, b, c)).slot_lmul(1, a1)
    right = d1_apply(db, _word_triple(db, a1, b, c)).slot_rmul(0, a2)
    return whole - left - right


def jacobiator_defect_closed_form(db: BracketDef, a1: Word, a2: Word, b: Word, c: Word) -> TensorPoly:
    """The defect in closed form:
    -[[a2,c]]' (x) [[b,a1]]' (x) [[b,a1]]'' [[a2,c]]''
    -[[a2,c]]' (x) [[a1,b]]'' (x) [[a1,b]]' [[a2,c]]''."""
    out: dict = {}
    d_ac = db._db_words(a2, c)
    d_ba = db._db_words(b, a1)
    d_ab = db._db_words(a1, b)
    for (dp, dpp), cd in d_ac.items():
        for (ep, epp), ce in d_ba.items():
            add_term(out, (dp, ep, concat(epp, dpp)), -cd * ce)
        for (fp, fpp), cf in d_ab.items():
            add_term(out, (dp, fpp, concat(fp, dpp)), -cd * cf)
    return TensorPoly.raw(db.sig, 3, out)


def mu_d1_plus_d2(db: BracketDef, a: Word, b: Word, c: Word) -> NCPoly:
    """mu((D1 + D2)(a (x) b (x) c)); equals the Jacobiator of the Loday
    bracket."""
    t = _word_triple(db, a, b, c)
    return (d1_apply(db, t) + d2_apply(db, t)).mu()


def jacobiator(db: BracketDef, a, b, c) -> NCPoly:
    """{a,{b,c}} - {b,{a,c}} - {{a,b},c}, computed with the public ops."""
    return (
        loday(db, a, loday(db, b, c))
        - loday(db, b, loday(db, a, c))
        - loday(db, loday(db, a, b), c)
    )

"""Noncommutative vector fields, star products, and the partial trace that
turns poly-vector fields into poly-derivations.

A vector field is determined by its generator table and the Leibniz rule
delta(ab) = (a (x) 1) delta(b) + delta(a) (1 (x) b), with delta(1) = 0 and
delta(x^-1) = -(x^-1 (x) 1) delta(x) (1 (x) x^-1).

The partial trace of delta_1 * ... * delta_k pairs left and right tensor
legs cyclically:

    tr(d_1*...*d_k)(a_1 (x) ... (x) a_k)
        = d_k(a_k)' d_1(a_1)'' (x) d_{k-1}(a_{k-1})' d_k(a_k)'' (x) ...
          ... (x) d_1(a_1)' d_2(a_2)''

Degree-1 poly-vectors are rejected at the partial-trace boundary: the
cyclic pairing is only defined for k >= 2.
"""

from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache

from .dbracket import BracketDef
from .exactlin.mpoly import ArityError
from .ncalg import (
    NCPoly,
    Signature,
    TensorPoly,
    Word,
    add_term,
    check_same_sig,
    concat,
    enumerate_words,
    expand,
    render_word,
)
from .reports import Failure, SweepReport

_ONE = Fraction(1)


class VectorField:
    """Derivation A -> A (x) A (outer bimodule), given on generators."""

    def __init__(self, sig: Signature, table: dict, name: str = ""):
        self.sig = sig
        self.name = name
        clean = {}
        for g, t in table.items():
            if isinstance(g, str):
                g = sig.index(g)
            if t.rank != 2:
                raise ValueError("field values must be rank-2 tensors")
            check_same_sig(sig, t.sig)
            if not t.is_zero():
                clean[g] = t
        self.table = clean
        self._letters: dict = {}
        self._on_word = lru_cache(maxsize=1 << 15)(self._on_word_impl)

    def __eq__(self, other):
        return (
            isinstance(other, VectorField)
            and self.sig == other.sig
            and self.table == other.table
        )

    def __repr__(self):
        return f"VectorField({self.name or 'unnamed'})"

    def _letter(self, l):
        hit = self._letters.get(l)
        if hit is not None:
            return hit
        g, s = l
        base = self.table.get(g)
        if base is None:
            res: tuple = ()
        elif s > 0:
            res = tuple((wl, wr, c) for (wl, wr), c in base.terms.items())
        else:
            inv = ((g, -1),)
            res = tuple(
                (concat(inv, wl), concat(wr, inv), -c)
                for (wl, wr), c in base.terms.items()
            )
        self._letters[l] = res
        return res

    def _on_word_impl(self, w: Word) -> dict:
        letters = expand(w)
        out: dict = {}
        n = len(letters)
        pre = [()] * (n + 1)
        for p in range(n):
            pre[p + 1] = concat(pre[p], (letters[p],))
        suf = [()] * (n + 1)
        for p in range(n - 1, -1, -1):
            suf[p] = concat((letters[p],), suf[p + 1])
        for p in range(n):
            for wl, wr, c in self._letter(letters[p]):
                add_term(out, (concat(pre[p], wl), concat(wr, suf[p + 1])), c)
        return out


def apply_field(delta: VectorField, a) -> TensorPoly:
    """Evaluate the field on an element, by the Leibniz rule."""
    if isinstance(a, NCPoly):
        check_same_sig(delta.sig, a.sig)
        items = a.terms.items()
    else:
        items = [(a, _ONE)]
    out: dict = {}
    for w, c in items:
        for k, v in delta._on_word(w).items():
            add_term(out, k, c * v)
    return TensorPoly.raw(delta.sig, 2, out)


class PolyVector:
    """Formal sum of star products of vector fields, all of one degree."""

    def __init__(self, sig: Signature, summands):
        self.sig = sig
        clean = []
        degree = None
        for coeff, fields in summands:
            fields = tuple(fields)
            if degree is None:
                degree = len(fields)
            elif len(fields) != degree:
                raise ArityError("summands must share one degree")
            for f in fields:
                check_same_sig(sig, f.sig)
            c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
            if c:
                clean.append((c, fields))
        if degree is None:
            raise ArityError("poly-vector needs at least one summand")
        self.summands = tuple(clean)
        self.degree = degree


def partial_trace_k(p: PolyVector, args) -> TensorPoly:
    """Evaluate tr(p) on a tuple of algebra elements; returns a rank-k
    tensor.  Rejects degree 1 (no cyclic pairing) and arity mismatches."""
    k = p.degree
    if k < 2:
        raise ArityError("partial trace needs degree >= 2")
    if len(args) != k:
        raise ArityError(f"expected {k} arguments, got {len(args)}")
    out: dict = {}
    for coeff, fields in p.summands:
        evals = [apply_field(f, a) for f, a in zip(fields, args)]
        # cartesian product over term choices of each delta_i(a_i)
        choices = [(coeff, ())]
        for t in evals:
            choices = [
                (c * ct, picked + (key,))
                for c, picked in choices
                for key, ct in t.terms.items()
            ]
            if not choices:
                break
        for c, picked in choices:
            slots = [concat(picked[k - 1][0], picked[0][1])]
            for s in range(1, k):
                slots.append(concat(picked[k - 1 - s][0], picked[k - s][1]))
            add_term(out, tuple(slots), c)
    return TensorPoly.raw(p.sig, k, out)


def trace_bivector(da: VectorField, db_: VectorField) -> BracketDef:
    """The biderivation tr(da * db_) as a bracket table:
    (x, y) -> db_(y)' da(x)'' (x) da(x)' db_(y)''."""
    check_same_sig(da.sig, db_.sig)
    sig = da.sig
    p = PolyVector(sig, [(1, (da, db_))])
    table = {}
    for gx in range(sig.arity):
        for gy in range(sig.arity):
            t = partial_trace_k(p, [((gx, 1),), ((gy, 1),)])
            if not t.is_zero():
                table[(gx, gy)] = t
    return BracketDef(sig, table, name=f"tr({da.name}*{db_.name})")


def verify_kontsevich_bivector(max_word_len: int = 3) -> SweepReport:
    """Check that tr(d1*d2 - d2~*d1~) reproduces the quadratic bracket
    [[u,v]] = -vu (x) 1 on generator pairs, and that the two biderivation
    extensions plus direct trace evaluation agree on all word pairs up to
    max_word_len."""
    from . import systems
    from .dbracket import extend_double

    t0 = time.monotonic()
    sig = systems.SIG_FREE2
    fields = systems.kontsevich_fields()
    d1, d2 = fields["delta1"], fields["delta2"]
    d1t, d2t = fields["delta1t"], fields["delta2t"]
    p = PolyVector(sig, [(1, (d1, d2)), (-1, (d2t, d1t))])
    kd = systems.kontsevich_bracket(sig)

    table = {}
    for gx in range(sig.arity):
        for gy in range(sig.arity):
            t = partial_trace_k(p, [((gx, 1),), ((gy, 1),)])
            if not t.is_zero():
                table[(gx, gy)] = t
    bivector_def = BracketDef(sig, table, name="bivector-trace")

    failures = []
    checked = 0
    for gx in range(sig.arity):
        for gy in range(sig.arity):
            checked += 1
            got = bivector_def.entry(gx, gy)
            want = kd.entry(gx, gy)
            if got != want:
                failures.append(
                    Failure(
                        ("generator-pair", sig.names[gx], sig.names[gy]),
                        str(got - want),
                    )
                )
    words = enumerate_words(sig, max_word_len)
    for a in words:
        for b in words:
            checked += 1
            via_bivector = extend_double(bivector_def, a, b)
            via_table = extend_double(kd, a, b)
            direct = partial_trace_k(p, [a, b])
            if via_bivector != via_table or direct != via_table:
                residual = (via_bivector - via_table) + (direct - via_table)
                failures.append(
                    Failure(
                        ("word-pair", render_word(a, sig), render_word(b, sig)),
                        str(residual),
                    )
                )
    report = SweepReport(
        sweep="bivector-check",
        params={"max_word_len": max_word_len},
        checked=checked,
        failures=failures,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
    )
    report.sort_failures()
    return report

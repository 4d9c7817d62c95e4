"""The representation functor: exact matrix points of the representation
scheme, the induced bracket on matrix coordinates, trace functions and
their gradients, generic symplectic-leaf dimensions, and the exact N=2
invariant bracket table in trace coordinates.

The induced bracket on coordinate functions is

    {phi(x)_ij, phi(y)_kl} = phi([[x,y]]')_kj * phi([[x,y]]'')_il

extended as a biderivation.  Generic ranks are taken at random rational
sample points and maximized over samples: the generic rank is attained off
a proper closed subvariety, and exact arithmetic makes rank decisions
tolerance-free.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .dbracket import BracketDef, loday
from .exactlin.matrix import QMatrix, SingularMatrixError
from .exactlin.mpoly import MPoly
from .ncalg import (
    NCPoly,
    Signature,
    Word,
    check_same_sig,
    enumerate_cyclic_words,
    expand,
    render_word,
    word_power,
)
from .reports import Failure, ModuliReport, SweepReport

_ZERO = Fraction(0)


@dataclass
class RepPoint:
    """Exact rational matrices assigned to the generators; matrices of
    invertible generators are invertible."""

    sig: Signature
    n: int
    matrices: dict[int, QMatrix]
    seed: int | None = None
    sample_range: int = 10
    _letter_cache: dict = field(default_factory=dict, repr=False)
    _phi_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for g in range(self.sig.arity):
            m = self.matrices[g]
            if m.rows != self.n or m.cols != self.n:
                raise ValueError("matrix dimension mismatch")
            if self.sig.invertible[g] and m.det() == 0:
                raise SingularMatrixError(
                    f"generator {self.sig.names[g]!r} must be invertible"
                )

    def letter_matrix(self, l) -> QMatrix:
        hit = self._letter_cache.get(l)
        if hit is None:
            g, s = l
            hit = self.matrices[g] if s > 0 else self.matrices[g].inverse()
            self._letter_cache[l] = hit
        return hit

    def phi_word(self, w: Word) -> QMatrix:
        hit = self._phi_cache.get(w)
        if hit is None:
            if not w:
                hit = QMatrix.identity(self.n)
            else:
                g, e = w[-1]
                s = 1 if e > 0 else -1
                prefix = w[:-1] if abs(e) == 1 else w[:-1] + ((g, e - s),)
                hit = self.phi_word(prefix) @ self.letter_matrix((g, s))
            self._phi_cache[w] = hit
        return hit


def random_rep(sig: Signature, n: int, seed: int = 0, sample_range: int = 10) -> RepPoint:
    """Draw a sample point with entries uniform over -R..R, redrawing any
    invertible generator that lands on the singular locus."""
    rng = random.Random(seed)
    matrices = {}
    for g in range(sig.arity):
        while True:
            m = QMatrix(
                [
                    [Fraction(rng.randint(-sample_range, sample_range)) for _ in range(n)]
                    for _ in range(n)
                ]
            )
            if not sig.invertible[g] or m.det() != 0:
                matrices[g] = m
                break
    return RepPoint(sig, n, matrices, seed=seed, sample_range=sample_range)


def phi_eval(rep: RepPoint, a) -> QMatrix:
    """Multiplicative-linear evaluation of an element at the point."""
    if isinstance(a, NCPoly):
        check_same_sig(rep.sig, a.sig)
        out = QMatrix.zeros(rep.n, rep.n)
        for w, c in a.terms.items():
            out = out + rep.phi_word(w).scale(c)
        return out
    return rep.phi_word(a)


def trace_fn(rep: RepPoint, w) -> Fraction:
    return phi_eval(rep, w).trace()


def trace_gradient(rep: RepPoint, w: Word, g: int) -> QMatrix:
    """Matrix of d Tr phi(w) / d (X_g)_ij, by the occurrence sum: an X at
    position p of w contributes (suffix*prefix)^T, an X^-1 contributes
    -(X^-1 suffix prefix X^-1)^T."""
    letters = expand(w)
    n = len(letters)
    pre = [QMatrix.identity(rep.n)]
    for l in letters:
        pre.append(pre[-1] @ rep.letter_matrix(l))
    suf = [QMatrix.identity(rep.n)] * (n + 1)
    suf = list(suf)
    for p in range(n - 1, -1, -1):
        suf[p] = rep.letter_matrix(letters[p]) @ suf[p + 1]
    grad = QMatrix.zeros(rep.n, rep.n)
    for p, (gen, s) in enumerate(letters):
        if gen != g:
            continue
        if s > 0:
            grad = grad + (suf[p + 1] @ pre[p]).transpose()
        else:
            inv = rep.letter_matrix((gen, -1))
            grad = grad - (inv @ suf[p + 1] @ pre[p] @ inv).transpose()
    return grad


def gradient_of_poly(rep: RepPoint, a: NCPoly, g: int) -> QMatrix:
    out = QMatrix.zeros(rep.n, rep.n)
    for w, c in a.terms.items():
        out = out + trace_gradient(rep, w, g).scale(c)
    return out


def induced_bracket_point(
    db: BracketDef, rep: RepPoint, x: Word, i: int, j: int, y: Word, k: int, l: int
) -> Fraction:
    """{phi(x)_ij, phi(y)_kl} at the sample point (indices 0-based)."""
    total = _ZERO
    for (wl, wr), c in db._db_words(x, y).items():
        total += c * rep.phi_word(wl)[k, j] * rep.phi_word(wr)[i, l]
    return total


def invariant_bracket(db: BracketDef, rep: RepPoint, a, b) -> Fraction:
    """{phi_0(a), phi_0(b)} at the point, computed as Tr phi({a,b})."""
    return phi_eval(rep, loday(db, a, b)).trace()


def moduli_dims(
    db: BracketDef,
    n: int,
    max_word_len: int | None = None,
    samples: int = 2,
    seed: int = 0,
    casimir: NCPoly | None = None,
    sample_range: int = 10,
) -> ModuliReport:
    """Generic dimensions of the invariant ring and of the symplectic leaf.

    Trace functions of inverse-free cyclic words (the unit excluded: its
    trace is constant) are added level by level; dim_inv is the rank of
    their stacked gradient Jacobian and dim_leaf the rank of the Gram
    matrix G_ab = {phi_0(w_a), phi_0(w_b)}, both maximized over sample
    points.  Levels grow until both ranks are stable across two consecutive
    increments or max_word_len is reached.  casimir_codim is the Jacobian
    rank of Tr phi(c^k), k = 1..N-1.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    t0 = time.monotonic()
    sig = db.sig
    if max_word_len is None:
        max_word_len = 2 * n + 2
    reps = [
        random_rep(sig, n, seed=seed + 7919 * s, sample_range=sample_range)
        for s in range(samples)
    ]

    words: list[Word] = []
    jac_rows = [[] for _ in reps]  # per rep: list of flattened gradient rows
    gram = [{} for _ in reps]  # per rep: (wa, wb) -> Fraction
    trace = []
    stabilized = False
    reached = 0
    seen: set[Word] = set()

    for level in range(1, max_word_len + 1):
        new_words = [
            w
            for w in enumerate_cyclic_words(sig, level, positive_only=True)
            if w and w not in seen
        ]
        seen.update(new_words)
        for rep, rows in zip(reps, jac_rows):
            for w in new_words:
                row = []
                for g in range(sig.arity):
                    grad = trace_gradient(rep, w, g)
                    row.extend(x for r in grad.entries for x in r)
                rows.append(row)
        for rep, gr in zip(reps, gram):
            for wa in new_words:
                for wb in words:
                    gr[(wa, wb)] = invariant_bracket(db, rep, wa, wb)
                    gr[(wb, wa)] = invariant_bracket(db, rep, wb, wa)
            for wa in new_words:
                for wb in new_words:
                    gr[(wa, wb)] = invariant_bracket(db, rep, wa, wb)
        words.extend(new_words)

        dim_inv = max(QMatrix(rows).rank() if rows else 0 for rows in jac_rows)
        dim_leaf = max(
            QMatrix([[gr[(wa, wb)] for wb in words] for wa in words]).rank()
            if words
            else 0
            for gr in gram
        )
        trace.append({"len": level, "dim_inv": dim_inv, "dim_leaf": dim_leaf})
        reached = level
        if len(trace) >= 3 and all(
            trace[-1][k] == trace[-2][k] == trace[-3][k]
            for k in ("dim_inv", "dim_leaf")
        ):
            stabilized = True
            break

    codim = None
    if casimir is not None:
        if n == 1:
            codim = 0
        else:
            codim = 0
            powers = [casimir**k for k in range(1, n)]
            for rep in reps:
                rows = []
                for p in powers:
                    row = []
                    for g in range(sig.arity):
                        grad = gradient_of_poly(rep, p, g)
                        row.extend(x for r in grad.entries for x in r)
                    rows.append(row)
                codim = max(codim, QMatrix(rows).rank())

    return ModuliReport(
        n=n,
        dim_inv=trace[-1]["dim_inv"],
        dim_leaf=trace[-1]["dim_leaf"],
        casimir_codim=codim,
        max_len_reached=reached,
        stabilized=stabilized,
        samples=samples,
        seed=seed,
        trace=trace,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
    )


def casimir_rep_check(db: BracketDef, rep: RepPoint, c: NCPoly, max_len: int) -> SweepReport:
    """For every cyclic word w up to max_len and every entry (k,l), the
    bracket {phi_0(w), phi(c)_kl} must vanish; computed both by contracting
    the induced entry bracket and as phi({w,c})_kl, which must agree."""
    t0 = time.monotonic()
    sig = db.sig
    check_same_sig(sig, c.sig)
    words = enumerate_cyclic_words(sig, max_len)
    failures = []
    zero = QMatrix.zeros(rep.n, rep.n)
    for w in words:
        # contraction over i of {phi(w)_ii, phi(c)_kl}: matrix products per
        # tensor term, no word concatenation involved
        m1 = QMatrix.zeros(rep.n, rep.n)
        for cw, cc in c.terms.items():
            for (wl, wr), v in db._db_words(w, cw).items():
                m1 = m1 + (rep.phi_word(wl) @ rep.phi_word(wr)).scale(cc * v)
        m2 = phi_eval(rep, loday(db, NCPoly.monomial(sig, w), c))
        if m1 != m2 or m2 != zero:
            failures.append(
                Failure(
                    ("casimir-rep", render_word(w, sig)),
                    f"contracted={m1!r} direct={m2!r}",
                )
            )
    report = SweepReport(
        sweep="casimir-rep",
        params={"bracket": db.name, "n": rep.n, "element": str(c), "max_len": max_len},
        checked=len(words) * rep.n * rep.n,
        failures=failures,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
        seed=rep.seed,
    )
    report.sort_failures()
    return report


# ---------------------------------------------------------------------------
# symbolic representation at generic matrices (inverse-free words only)


@dataclass(frozen=True)
class SymRep:
    """Generators mapped to matrices of polynomial variables x^(g)_ij."""

    sig: Signature
    n: int

    @property
    def nvars(self) -> int:
        return self.sig.arity * self.n * self.n

    def var_index(self, g: int, i: int, j: int) -> int:
        return (g * self.n + i) * self.n + j

    def var_names(self) -> list[str]:
        return [
            f"{self.sig.names[g]}{i + 1}{j + 1}"
            for g in range(self.sig.arity)
            for i in range(self.n)
            for j in range(self.n)
        ]

    def gen_matrix(self, g: int) -> list[list[MPoly]]:
        return [
            [MPoly.var(self.nvars, self.var_index(g, i, j)) for j in range(self.n)]
            for i in range(self.n)
        ]


def _sym_matmul(a, b, nvars, n):
    return [
        [
            sum((a[i][m] * b[m][j] for m in range(n)), MPoly.zero(nvars))
            for j in range(n)
        ]
        for i in range(n)
    ]


def phi_sym(sr: SymRep, w: Word):
    """Symbolic matrix of an inverse-free word."""
    n, nvars = sr.n, sr.nvars
    out = [
        [MPoly.const(nvars, 1) if i == j else MPoly.zero(nvars) for j in range(n)]
        for i in range(n)
    ]
    for g, e in w:
        if e < 0:
            raise ValueError("symbolic representation supports inverse-free words only")
        m = sr.gen_matrix(g)
        for _ in range(e):
            out = _sym_matmul(out, m, nvars, n)
    return out


def trace_sym(sr: SymRep, w: Word) -> MPoly:
    m = phi_sym(sr, w)
    return sum((m[i][i] for i in range(sr.n)), MPoly.zero(sr.nvars))


def entry_bracket_table(db: BracketDef, sr: SymRep) -> dict:
    """{x^(g1)_ij, x^(g2)_kl} as polynomials, for every generator pair in
    the table and all index tuples."""
    out = {}
    n, nvars = sr.n, sr.nvars
    for (g1, g2), t in db.table.items():
        for (wl, wr), c in t.terms.items():
            ml = phi_sym(sr, wl)
            mr = phi_sym(sr, wr)
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        for l in range(n):
                            key = (sr.var_index(g1, i, j), sr.var_index(g2, k, l))
                            cur = out.get(key, MPoly.zero(nvars))
                            out[key] = cur + c * (ml[k][j] * mr[i][l])
    return out


def bracket_sym(db: BracketDef, sr: SymRep, f: MPoly, g: MPoly, table=None) -> MPoly:
    """Biderivation expansion {f,g} = sum df/da dg/db {a,b} over variable
    pairs."""
    if table is None:
        table = entry_bracket_table(db, sr)
    nvars = sr.nvars
    out = MPoly.zero(nvars)
    fparts = {a: f.partial(a) for a in range(nvars)}
    gparts = {b: g.partial(b) for b in range(nvars)}
    for (a, b), br in table.items():
        fa = fparts[a]
        gb = gparts[b]
        if fa.is_zero() or gb.is_zero():
            continue
        out = out + fa * gb * br
    return out


def t_table_check() -> SweepReport:
    """All ten brackets of the five trace coordinates at N=2,
    t1 = Tr U, t2 = Tr V, t3 = Tr U^2, t4 = Tr UV, t5 = Tr V^2,
    as exact 8-variable polynomial identities."""
    from . import systems

    t0 = time.monotonic()
    sig = systems.SIG_FREE2
    db = systems.kontsevich_bracket(sig)
    sr = SymRep(sig, 2)
    u, v = sig.index("u"), sig.index("v")
    t = {
        1: trace_sym(sr, ((u, 1),)),
        2: trace_sym(sr, ((v, 1),)),
        3: trace_sym(sr, ((u, 2),)),
        4: trace_sym(sr, ((u, 1), (v, 1))),
        5: trace_sym(sr, ((v, 2),)),
    }
    half = Fraction(1, 2)
    zero = MPoly.zero(sr.nvars)
    rows = [
        (1, 2, -t[4]),
        (1, 3, zero),
        (1, 4, half * (t[1] * t[1] * t[2] - t[2] * t[3] - 2 * t[1] * t[4])),
        (1, 5, t[1] * t[2] * t[2] - 2 * t[2] * t[4] - t[1] * t[5]),
        (2, 3, -(t[1] * t[1] * t[2]) + t[2] * t[3] + 2 * t[1] * t[4]),
        (2, 4, half * (-(t[1] * t[2] * t[2]) + 2 * t[2] * t[4] + t[1] * t[5])),
        (2, 5, zero),
        (3, 4, t[1] ** 3 * t[2] - t[1] * t[2] * t[3] - t[1] * t[1] * t[4] - t[3] * t[4]),
        (3, 5, 2 * (t[1] * t[1] * t[2] * t[2] - 2 * t[1] * t[2] * t[4] - t[3] * t[5])),
        (4, 5, t[1] * t[2] ** 3 - t[2] * t[2] * t[4] - t[1] * t[2] * t[5] - t[4] * t[5]),
    ]
    table = entry_bracket_table(db, sr)
    names = sr.var_names()
    failures = []
    for a, b, rhs in rows:
        lhs = bracket_sym(db, sr, t[a], t[b], table=table)
        if lhs != rhs:
            failures.append(
                Failure((f"t{a}", f"t{b}"), (lhs - rhs).render(names))
            )
    report = SweepReport(
        sweep="t-table",
        params={"n": 2, "rows": len(rows)},
        checked=len(rows),
        failures=failures,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
    )
    report.sort_failures()
    return report

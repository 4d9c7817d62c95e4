"""Representation algebras over finite-dimensional coalgebras: axiom checks
for the (Delta, counit, nu, tau) data, the induced bracket

    {a_alpha, b_beta} = sum over Delta^3(beta) = b1 (x) b2 (x) b3 of
                        nu(alpha, b2) * [[a,b]]'_{b1} * [[a,b]]''_{b3},

and cross-validation against the matrix-entry bracket through the comatrix
coalgebra, whose evaluation a_{e_ij} -> phi(a)_ij identifies the two.

Elements of the representation algebra are kept as formal commutative
products of symbols (word, basis element); equality is decided by
evaluation at a representation point, not by a symbolic normal form.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .dbracket import BracketDef
from .ncalg import NCPoly, Word, add_term, check_same_sig, render_word, word_key
from .repn import RepPoint, induced_bracket_point
from .reports import Failure, SweepReport

_ONE = Fraction(1)


@dataclass(frozen=True)
class Coalgebra:
    """Finite-dimensional coalgebra with a pairing nu and trace element tau,
    all given by explicit rational structure constants."""

    labels: tuple[str, ...]
    delta: tuple[tuple[tuple[int, int, Fraction], ...], ...]
    counit: tuple[Fraction, ...]
    nu: tuple[tuple[Fraction, ...], ...]
    tau: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def delta2(self, a: int) -> dict:
        out: dict = {}
        for b, c, coeff in self.delta[a]:
            add_term(out, (b, c), coeff)
        return out

    def delta_m(self, a: int, m: int) -> dict:
        """Delta^m(e_a) as {index tuple: coeff}; expansion on the last leg
        (coassociativity makes the choice immaterial)."""
        if m < 1:
            raise ValueError("m must be >= 1")
        out = {(a,): _ONE}
        for _ in range(m - 1):
            nxt: dict = {}
            for key, c in out.items():
                for b, d, coeff in self.delta[key[-1]]:
                    add_term(nxt, key[:-1] + (b, d), c * coeff)
            out = nxt
        return out

    def nu_bar(self, alpha: int, beta: int) -> dict:
        """nu(alpha, beta^2) beta^1 (x) beta^3 as {(i, j): coeff}."""
        out: dict = {}
        for (b1, b2, b3), c in self.delta_m(beta, 3).items():
            v = self.nu[alpha][b2]
            if v:
                add_term(out, (b1, b3), c * v)
        return out


def comatrix_coalgebra(n: int) -> Coalgebra:
    """Basis e_ij with Delta(e_ij) = sum_k e_ik (x) e_kj, counit delta_ij,
    nu(e_ij, e_kl) = delta_il delta_jk, tau = sum e_ii."""
    if n < 1:
        raise ValueError("dimension must be >= 1")

    def idx(i, j):
        return i * n + j

    labels = tuple(f"e_{i + 1}_{j + 1}" for i in range(n) for j in range(n))
    delta = tuple(
        tuple((idx(i, k), idx(k, j), _ONE) for k in range(n))
        for i in range(n)
        for j in range(n)
    )
    counit = tuple(
        _ONE if i == j else Fraction(0) for i in range(n) for j in range(n)
    )
    nu = tuple(
        tuple(
            _ONE if (i == l and j == k) else Fraction(0)
            for k in range(n)
            for l in range(n)
        )
        for i in range(n)
        for j in range(n)
    )
    tau = tuple(
        _ONE if i == j else Fraction(0) for i in range(n) for j in range(n)
    )
    return Coalgebra(labels, delta, counit, nu, tau)


def check_coalgebra(c: Coalgebra) -> SweepReport:
    """Coassociativity, counit law, tau-compatibility, and the nu-symmetry
    condition in both its literal and flipped readings; each law gets its
    own verdict.  A symmetry pair counts as a structural failure only when
    neither reading holds (the two readings are an unresolved convention;
    the cross-check against the matrix-entry bracket is the anchor)."""
    t0 = time.monotonic()
    dim = c.dim
    failures = []
    laws = {}

    bad = []
    for a in range(dim):
        left: dict = {}
        right: dict = {}
        for (b, d), coeff in c.delta2(a).items():
            for (p, q), c2 in c.delta2(b).items():
                add_term(left, (p, q, d), coeff * c2)
            for (p, q), c2 in c.delta2(d).items():
                add_term(right, (b, p, q), coeff * c2)
        if left != right:
            bad.append(a)
            failures.append(Failure(("coassociativity", c.labels[a]), "mismatch"))
    laws["coassociativity"] = "pass" if not bad else "fail"

    bad = []
    for a in range(dim):
        lvec = [Fraction(0)] * dim
        rvec = [Fraction(0)] * dim
        for (b, d), coeff in c.delta2(a).items():
            lvec[d] += coeff * c.counit[b]
            rvec[b] += coeff * c.counit[d]
        unit = [Fraction(int(t == a)) for t in range(dim)]
        if lvec != unit or rvec != unit:
            bad.append(a)
            failures.append(Failure(("counit", c.labels[a]), "mismatch"))
    laws["counit"] = "pass" if not bad else "fail"

    bad = []
    for a in range(dim):
        pairing = sum((c.tau[t] * c.nu[t][a] for t in range(dim)), Fraction(0))
        if pairing != c.counit[a]:
            bad.append(a)
            failures.append(
                Failure(("tau-compatibility", c.labels[a]), f"nu(tau,.)={pairing}")
            )
    laws["tau-compatibility"] = "pass" if not bad else "fail"

    stated_bad, flipped_bad = [], []
    for a in range(dim):
        for b in range(dim):
            lhs = c.nu_bar(a, b)
            rhs = c.nu_bar(b, a)
            stated_ok = lhs == rhs
            flipped_ok = lhs == {(q, p): v for (p, q), v in rhs.items()}
            if not stated_ok:
                stated_bad.append((a, b))
            if not flipped_ok:
                flipped_bad.append((a, b))
            if not stated_ok and not flipped_ok:
                failures.append(
                    Failure(
                        ("nu-symmetry", c.labels[a], c.labels[b]),
                        "neither stated nor flipped form holds",
                    )
                )
    laws["nu-symmetry-stated"] = "pass" if not stated_bad else "fail"
    laws["nu-symmetry-flipped"] = "pass" if not flipped_bad else "fail"

    report = SweepReport(
        sweep="coalgebra-check",
        params={"dim": dim},
        checked=3 * dim + dim * dim,
        failures=failures,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
        summary=laws,
    )
    report.sort_failures()
    return report


class RepAlgElement:
    """Formal sum of commutative products of symbols (word, basis index)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for key, c in terms.items():
                if c:
                    self.terms[key] = c

    @staticmethod
    def symbol_key(symbols) -> tuple:
        return tuple(sorted(symbols, key=lambda s: (word_key(s[0]), s[1])))

    @classmethod
    def from_products(cls, products) -> "RepAlgElement":
        out = cls()
        for coeff, symbols in products:
            add_term(out.terms, cls.symbol_key(symbols), coeff)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, RepAlgElement) and self.terms == other.terms

    def __add__(self, other: "RepAlgElement") -> "RepAlgElement":
        out = RepAlgElement()
        out.terms = dict(self.terms)
        for k, v in other.terms.items():
            add_term(out.terms, k, v)
        return out

    def __sub__(self, other: "RepAlgElement") -> "RepAlgElement":
        out = RepAlgElement()
        out.terms = dict(self.terms)
        for k, v in other.terms.items():
            add_term(out.terms, k, -v)
        return out

    def scale(self, c) -> "RepAlgElement":
        out = RepAlgElement()
        if c:
            out.terms = {k: c * v for k, v in self.terms.items()}
        return out

    def mul_symbol(self, word: Word, basis: int) -> "RepAlgElement":
        out = RepAlgElement()
        for key, v in self.terms.items():
            add_term(out.terms, self.symbol_key(key + ((word, basis),)), v)
        return out

    def evaluate(self, assign) -> Fraction:
        """Map each symbol through assign(word, basis index) and multiply."""
        total = Fraction(0)
        for key, c in self.terms.items():
            v = c
            for word, basis in key:
                v *= assign(word, basis)
            total += v
        return total

    def render(self, sig, labels) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items()):
            body = "*".join(f"[{render_word(w, sig)}]_{labels[b]}" for w, b in key) or "1"
            parts.append(f"{c}*{body}")
        return " + ".join(parts)


def repalg_bracket(
    db: BracketDef, coal: Coalgebra, a: Word, alpha: int, b: Word, beta: int
) -> RepAlgElement:
    """{a_alpha, b_beta} as a formal sum of two-symbol products."""
    out = RepAlgElement()
    d = db._db_words(a, b)
    if not d:
        return out
    for (b1, b2, b3), c3 in coal.delta_m(beta, 3).items():
        v = coal.nu[alpha][b2]
        if not v:
            continue
        w = v * c3
        for (wl, wr), c in d.items():
            add_term(
                out.terms,
                RepAlgElement.symbol_key(((wl, b1), (wr, b3))),
                w * c,
            )
    return out


def comatrix_assign(rep: RepPoint):
    """Evaluation of comatrix symbols: (word, e_ij) -> phi(word)_ij."""
    n = rep.n

    def assign(word: Word, basis: int) -> Fraction:
        i, j = divmod(basis, n)
        return rep.phi_word(word)[i, j]

    return assign


def crosscheck_rep(
    db: BracketDef,
    n: int,
    max_len: int,
    rep: RepPoint,
    sample: tuple[int, int] | None = None,
) -> SweepReport:
    """Evaluate the representation-algebra bracket over the comatrix
    coalgebra at a sample point and compare with the induced matrix-entry
    bracket, for all word pairs up to max_len (or a seeded random sample of
    pairs: sample = (count, seed)) and all index tuples."""
    from .ncalg import enumerate_words

    t0 = time.monotonic()
    sig = db.sig
    coal = comatrix_coalgebra(n)
    assign = comatrix_assign(rep)
    words = enumerate_words(sig, max_len)
    if sample is not None:
        import random as _random

        count, sd = sample
        rng = _random.Random(sd)
        pairs = [(rng.choice(words), rng.choice(words)) for _ in range(count)]
    else:
        pairs = [(x, y) for x in words for y in words]
    failures = []
    checked = 0
    for x, y in pairs:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        checked += 1
                        lhs = repalg_bracket(
                            db, coal, x, i * n + j, y, k * n + l
                        ).evaluate(assign)
                        rhs = induced_bracket_point(db, rep, x, i, j, y, k, l)
                        if lhs != rhs:
                            failures.append(
                                Failure(
                                    (
                                        render_word(x, sig),
                                        render_word(y, sig),
                                        f"({i},{j},{k},{l})",
                                    ),
                                    str(lhs - rhs),
                                )
                            )
    report = SweepReport(
        sweep="crosscheck-repalg",
        params={
            "bracket": db.name,
            "n": n,
            "max_len": max_len,
            "sampled": sample is not None,
        },
        checked=checked,
        failures=failures,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
        seed=rep.seed,
    )
    report.sort_failures()
    return report

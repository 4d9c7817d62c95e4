"""Exact linear combinations of words (elements of the algebra), of word
pairs (elements of A (x) A), and of cyclic classes (elements of A/[A,A]).

Canonical text rendering is the golden-file format used by reports and
tests: terms sorted graded-lex, rational coefficients, words like
`u*v^-1*u^2`, tensor terms like `<left> (x) <right>`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .words import (
    Signature,
    Word,
    check_same_sig,
    concat,
    cyclic_canonical,
    render_word,
    word_key,
)

_ZERO = Fraction(0)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def add_term(d: dict, key, c: Fraction):
    """Accumulate c into d[key], dropping the entry when it cancels."""
    cur = d.get(key)
    if cur is None:
        if c:
            d[key] = c
    else:
        cur += c
        if cur:
            d[key] = cur
        else:
            del d[key]


def _render_terms(items, render_key) -> str:
    parts = []
    for key, c in items:
        body = render_key(key)
        if body == "1":
            body = str(abs(c))
        elif abs(c) != 1:
            body = f"{abs(c)}*{body}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


class NCPoly:
    """Finite rational linear combination of reduced words."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms: Mapping[Word, Fraction] | None = None):
        self.sig = sig
        self.terms: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = _frac(c)
                if c:
                    self.terms[w] = c

    @classmethod
    def raw(cls, sig: Signature, terms: dict) -> "NCPoly":
        """Wrap an already-clean terms dict without copying."""
        p = cls.__new__(cls)
        p.sig = sig
        p.terms = terms
        return p

    @classmethod
    def zero(cls, sig: Signature) -> "NCPoly":
        return cls.raw(sig, {})

    @classmethod
    def one(cls, sig: Signature) -> "NCPoly":
        return cls.raw(sig, {(): Fraction(1)})

    @classmethod
    def monomial(cls, sig: Signature, w: Word, c=1) -> "NCPoly":
        c = _frac(c)
        return cls.raw(sig, {w: c} if c else {})

    @classmethod
    def gen(cls, sig: Signature, g) -> "NCPoly":
        if isinstance(g, str):
            g = sig.index(g)
        return cls.raw(sig, {((g, 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.sig == other.sig and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms.items())))

    def __add__(self, other: "NCPoly") -> "NCPoly":
        check_same_sig(self.sig, other.sig)
        out = dict(self.terms)
        for w, c in other.terms.items():
            add_term(out, w, c)
        return NCPoly.raw(self.sig, out)

    def __neg__(self) -> "NCPoly":
        return NCPoly.raw(self.sig, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, c) -> "NCPoly":
        c = _frac(c)
        if not c:
            return NCPoly.zero(self.sig)
        return NCPoly.raw(self.sig, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        check_same_sig(self.sig, other.sig)
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                add_term(out, concat(w1, w2), c1 * c2)
        return NCPoly.raw(self.sig, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "NCPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = NCPoly.one(self.sig)
        for _ in range(k):
            out = out * self
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: word_key(kv[0]))

    def __str__(self):
        return _render_terms(self.sorted_terms(), lambda w: render_word(w, self.sig))

    def __repr__(self):
        return f"NCPoly({self})"


class CyclicPoly:
    """Linear combination of cyclic classes; keys are canonical
    representatives under cyclic reduction + minimal rotation."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms: Mapping[Word, Fraction] | None = None):
        self.sig = sig
        self.terms: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                add_term(self.terms, cyclic_canonical(w), _frac(c))

    @classmethod
    def raw(cls, sig: Signature, terms: dict) -> "CyclicPoly":
        p = cls.__new__(cls)
        p.sig = sig
        p.terms = terms
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, CyclicPoly):
            return self.sig == other.sig and self.terms == other.terms
        return NotImplemented

    def __add__(self, other: "CyclicPoly") -> "CyclicPoly":
        check_same_sig(self.sig, other.sig)
        out = dict(self.terms)
        for w, c in other.terms.items():
            add_term(out, w, c)
        return CyclicPoly.raw(self.sig, out)

    def __sub__(self, other: "CyclicPoly") -> "CyclicPoly":
        return self + CyclicPoly.raw(other.sig, {w: -c for w, c in other.terms.items()})

    def lift(self) -> NCPoly:
        """The tautological lift sending each class to its representative."""
        return NCPoly.raw(self.sig, dict(self.terms))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: word_key(kv[0]))

    def __str__(self):
        return _render_terms(self.sorted_terms(), lambda w: render_word(w, self.sig))

    def __repr__(self):
        return f"CyclicPoly({self})"


def cyclic_project(a: NCPoly) -> CyclicPoly:
    """Image in A/[A,A]: words map to their cyclic class."""
    out: dict[Word, Fraction] = {}
    for w, c in a.terms.items():
        add_term(out, cyclic_canonical(w), c)
    return CyclicPoly.raw(a.sig, out)


class TensorPoly:
    """Linear combination of word tuples; rank 2 is A (x) A, the codomain of
    double brackets and vector fields.  Rank 3 carries the Jacobi-defect
    computations."""

    __slots__ = ("sig", "rank", "terms")

    def __init__(self, sig: Signature, rank: int = 2,
                 terms: Mapping[tuple, Fraction] | None = None):
        if rank < 2:
            raise ValueError("tensor rank must be >= 2")
        self.sig = sig
        self.rank = rank
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for key, c in terms.items():
                if len(key) != rank:
                    raise ValueError(f"key {key} has wrong rank")
                c = _frac(c)
                if c:
                    self.terms[key] = c

    @classmethod
    def raw(cls, sig: Signature, rank: int, terms: dict) -> "TensorPoly":
        t = cls.__new__(cls)
        t.sig = sig
        t.rank = rank
        t.terms = terms
        return t

    @classmethod
    def zero(cls, sig: Signature, rank: int = 2) -> "TensorPoly":
        return cls.raw(sig, rank, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, TensorPoly):
            return (
                self.sig == other.sig
                and self.rank == other.rank
                and self.terms == other.terms
            )
        return NotImplemented

    def _check(self, other: "TensorPoly"):
        check_same_sig(self.sig, other.sig)
        if self.rank != other.rank:
            raise ValueError("tensor ranks differ")

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            add_term(out, k, c)
        return TensorPoly.raw(self.sig, self.rank, out)

    def __neg__(self) -> "TensorPoly":
        return TensorPoly.raw(self.sig, self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        return self + (-other)

    def scale(self, c) -> "TensorPoly":
        c = _frac(c)
        if not c:
            return TensorPoly.zero(self.sig, self.rank)
        return TensorPoly.raw(self.sig, self.rank, {k: c * v for k, v in self.terms.items()})

    def _slot_mul(self, i: int, mult: "NCPoly | Word", left: bool) -> "TensorPoly":
        if not 0 <= i < self.rank:
            raise IndexError("slot out of range")
        if isinstance(mult, NCPoly):
            check_same_sig(self.sig, mult.sig)
            factors = mult.terms.items()
        else:
            factors = [(mult, Fraction(1))]
        out: dict[tuple, Fraction] = {}
        for key, c in self.terms.items():
            w = key[i]
            for mw, mc in factors:
                nw = concat(mw, w) if left else concat(w, mw)
                add_term(out, key[:i] + (nw,) + key[i + 1 :], c * mc)
        return TensorPoly.raw(self.sig, self.rank, out)

    def slot_lmul(self, i: int, mult) -> "TensorPoly":
        """Multiply slot i on the left."""
        return self._slot_mul(i, mult, left=True)

    def slot_rmul(self, i: int, mult) -> "TensorPoly":
        """Multiply slot i on the right."""
        return self._slot_mul(i, mult, left=False)

    def swap(self, i: int, j: int) -> "TensorPoly":
        out: dict[tuple, Fraction] = {}
        for key, c in self.terms.items():
            k = list(key)
            k[i], k[j] = k[j], k[i]
            add_term(out, tuple(k), c)
        return TensorPoly.raw(self.sig, self.rank, out)

    def mu(self) -> NCPoly:
        """Multiply all slots together."""
        out: dict[Word, Fraction] = {}
        for key, c in self.terms.items():
            w = key[0]
            for part in key[1:]:
                w = concat(w, part)
            add_term(out, w, c)
        return NCPoly.raw(self.sig, out)

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: tuple(word_key(w) for w in kv[0]),
        )

    def __str__(self):
        sig = self.sig
        return _render_terms(
            self.sorted_terms(),
            lambda key: " (x) ".join(render_word(w, sig) for w in key),
        )

    def __repr__(self):
        return f"TensorPoly({self})"


def tensor(*factors: NCPoly) -> TensorPoly:
    """Outer product of >= 2 algebra elements."""
    if len(factors) < 2:
        raise ValueError("need at least two tensor factors")
    sig = factors[0].sig
    for f in factors[1:]:
        check_same_sig(sig, f.sig)
    terms: dict[tuple, Fraction] = {(): Fraction(1)}  # type: ignore[dict-item]
    keys = [((), Fraction(1))]
    for f in factors:
        keys = [
            (key + (w,), c * cw)
            for key, c in keys
            for w, cw in f.terms.items()
        ]
    out: dict[tuple, Fraction] = {}
    for key, c in keys:
        add_term(out, key, c)
    return TensorPoly.raw(sig, len(factors), out)


def mu(t: TensorPoly) -> NCPoly:
    """Multiplication map A (x) A -> A, extended bilinearly."""
    return t.mu()


def tensor_act(tag: str, t: TensorPoly, a: NCPoly, b: NCPoly | None = None) -> TensorPoly:
    """One-sided actions on A (x) A:  outer-left (a (x) 1)t,
    outer-right t(1 (x) a),  inner (1 (x) a) t (b (x) 1)."""
    if t.rank != 2:
        raise ValueError("actions are defined on rank-2 tensors")
    check_same_sig(t.sig, a.sig)
    if tag == "outer-left":
        return t.slot_lmul(0, a)
    if tag == "outer-right":
        return t.slot_rmul(1, a)
    if tag == "inner":
        if b is None:
            raise ValueError("inner action needs both multipliers")
        check_same_sig(t.sig, b.sig)
        return t.slot_rmul(0, b).slot_lmul(1, a)
    raise ValueError(f"unknown action {tag!r}")


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b


def nc_sum(sig: Signature, parts: Iterable[NCPoly]) -> NCPoly:
    out: dict[Word, Fraction] = {}
    for p in parts:
        check_same_sig(sig, p.sig)
        for w, c in p.terms.items():
            add_term(out, w, c)
    return NCPoly.raw(sig, out)

"""Sparse multivariate polynomials over the rationals.

A polynomial maps exponent tuples (one nonnegative int per variable) to
nonzero Fraction coefficients.  Terms iterate in graded lexicographic order
(total degree first, then exponent tuple, variables in declaration order),
which fixes printing and makes reports reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence


class ArityError(ValueError):
    """Operand variable counts or argument counts disagree."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, Fraction] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise ArityError(f"exponent tuple {exps} has wrong length")
                c = _frac(c)
                if c:
                    clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: _frac(c)})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MPoly":
        if not 0 <= i < nvars:
            raise ArityError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    def _check(self, other: "MPoly"):
        if self.nvars != other.nvars:
            raise ArityError("variable counts differ")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, 0) + c
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return MPoly(self.nvars, out)

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if not c:
                return MPoly.zero(self.nvars)
            return MPoly(self.nvars, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                nc = out.get(key, 0) + c1 * c2
                if nc:
                    out[key] = nc
                else:
                    del out[key]
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ArityError("evaluation point has wrong length")
        pt = [_frac(x) for x in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(pt, exps):
                if e:
                    v *= x**e
            total += v
        return total

    def partial(self, i: int) -> "MPoly":
        """Partial derivative with respect to variable i."""
        out = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e:
                key = exps[:i] + (e - 1,) + exps[i + 1 :]
                out[key] = out.get(key, 0) + c * e
        return MPoly(self.nvars, out)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def support(self) -> list[tuple]:
        return sorted(self.terms)

    def sorted_terms(self):
        """Terms in descending graded-lex order (leading term first)."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for n, e in zip(names, exps):
                if e == 1:
                    factors.append(n)
                elif e:
                    factors.append(f"{n}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"MPoly({self.render()})"


def mpoly_arith(op: str, a: MPoly, b):
    """Tagged dispatch: add/mul of two polynomials, or eval at a point."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "eval":
        return a.eval(b)
    raise ValueError(f"unknown operation {op!r}")

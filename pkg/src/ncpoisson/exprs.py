"""Expression grammar for elements and tensors, with positions in errors.

    sum     := ['+'|'-'] product (('+'|'-') product)*
    product := [rational '*'] factor ('*' factor)*  |  rational
    factor  := ident ['^' signed-integer] | '1'
    tensor  := tproduct (('+'|'-') tproduct)*
    tproduct:= product '(x)' product

Whitespace is insignificant; '(x)' is the tensor separator.  Each tensor
summand carries exactly one '(x)' with monomial sides (sums distribute over
summands), which keeps the grammar LL(1).  The canonical printers of NCPoly
and TensorPoly emit exactly this sublanguage, so parse(print(p)) = p.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ncalg import (
    NCPoly,
    NonInvertibleError,
    Signature,
    TensorPoly,
    UnknownGeneratorError,
    add_term,
    reduce_letters,
)


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class UnknownIdentifierError(ExprSyntaxError):
    pass


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<tensor>\(x\))|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[*+^/-]))"
)


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            stray = src[pos:].lstrip()
            if not stray:
                break
            line = src.count("\n", 0, pos) + 1
            col = pos - (src.rfind("\n", 0, pos) + 1) + 1
            raise ExprSyntaxError(f"unexpected character {stray[0]!r}", line, col)
        pos_tok = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        line = src.count("\n", 0, pos_tok) + 1
        col = pos_tok - (src.rfind("\n", 0, pos_tok) + 1) + 1
        if m.group("tensor"):
            tokens.append(("(x)", "(x)", line, col))
        elif m.group("num"):
            tokens.append(("num", m.group("num"), line, col))
        elif m.group("ident"):
            tokens.append(("ident", m.group("ident"), line, col))
        else:
            tokens.append((m.group("op"), m.group("op"), line, col))
        pos = m.end()
    tokens.append(("end", "", src.count("\n") + 1, len(src) + 1))
    return tokens


class _Parser:
    def __init__(self, src: str, sig: Signature):
        self.sig = sig
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(message, tok[2], tok[3])

    def parse_rational(self) -> Fraction:
        kind, val, line, col = self.next()
        if kind != "num":
            self.error("expected a number", (kind, val, line, col))
        num = int(val)
        if self.peek()[0] == "/":
            self.next()
            kind, val, line, col = self.next()
            if kind != "num":
                self.error("expected denominator", (kind, val, line, col))
            return Fraction(num, int(val))
        return Fraction(num)

    def parse_factor(self) -> tuple:
        """Returns a letter list; '1' is the empty list."""
        kind, val, line, col = self.next()
        if kind == "num" and val == "1" and self.peek()[0] != "/":
            return ()
        if kind != "ident":
            self.error("expected a generator name or 1", (kind, val, line, col))
        try:
            g = self.sig.index(val)
        except UnknownGeneratorError:
            raise UnknownIdentifierError(f"unknown identifier {val!r}", line, col) from None
        e = 1
        if self.peek()[0] == "^":
            self.next()
            sign = 1
            if self.peek()[0] == "-":
                self.next()
                sign = -1
            kind2, val2, line2, col2 = self.next()
            if kind2 != "num":
                self.error("expected an integer exponent", (kind2, val2, line2, col2))
            e = sign * int(val2)
            if e == 0:
                return ()
        if e < 0 and not self.sig.invertible[g]:
            raise NonInvertibleError(
                f"generator {val!r} has no inverse (line {line}, column {col})"
            )
        return ((g, e),)

    def parse_product(self) -> tuple[Fraction, tuple]:
        """One monomial with its coefficient: rational prefix, '*'-joined
        factors; a bare rational is a multiple of the unit word."""
        coeff = Fraction(1)
        letters: list = []
        if self.peek()[0] == "num":
            value = self.parse_rational()
            if self.peek()[0] == "*":
                self.next()
                coeff = value
            else:
                # bare rational: a multiple of the unit word
                return (value, ())
        while True:
            letters.extend(self.parse_factor())
            if self.peek()[0] == "*":
                self.next()
                continue
            break
        return (coeff, reduce_letters(letters, self.sig))

    def parse_signed_products(self, stop_at_tensor: bool):
        """Yields (coeff, word) or (coeff, word, word) chunks until 'end'."""
        first = True
        while True:
            sign = Fraction(1)
            kind = self.peek()[0]
            if kind in ("+", "-"):
                self.next()
                if kind == "-":
                    sign = Fraction(-1)
            elif not first:
                self.error("expected '+' or '-' between terms")
            first = False
            coeff, word = self.parse_product()
            if self.peek()[0] == "(x)":
                if stop_at_tensor:
                    self.error("'(x)' is not allowed in an element expression")
                self.next()
                coeff2, word2 = self.parse_product()
                yield (sign * coeff * coeff2, word, word2)
            else:
                if not stop_at_tensor:
                    self.error("expected '(x)' in a tensor expression")
                yield (sign * coeff, word)
            if self.peek()[0] == "end":
                return


def parse_element(src: str, sig: Signature) -> NCPoly:
    p = _Parser(src, sig)
    terms: dict = {}
    for coeff, word in p.parse_signed_products(stop_at_tensor=True):
        add_term(terms, word, coeff)
    return NCPoly.raw(sig, terms)


def parse_tensor(src: str, sig: Signature) -> TensorPoly:
    p = _Parser(src, sig)
    terms: dict = {}
    for coeff, wl, wr in p.parse_signed_products(stop_at_tensor=False):
        add_term(terms, (wl, wr), coeff)
    return TensorPoly.raw(sig, 2, terms)


def parse_expression(src: str, sig: Signature, kind: str = "element"):
    """Spec-facing dispatcher: kind is 'element' or 'tensor'."""
    if kind == "element":
        return parse_element(src, sig)
    if kind == "tensor":
        return parse_tensor(src, sig)
    raise ValueError(f"unknown expression kind {kind!r}")

"""Reduced words in the generators of a free or free-group algebra.

A word is a tuple of (generator index, exponent) pairs with nonzero
exponents and distinct adjacent generators; the empty tuple is the unit.
Negative exponents are only legal on generators flagged invertible.  Word
length counts exponent multiplicity (u^2 has length 2, u^-1 length 1), so
"all monomials up to length n" sweeps are exactly free-group balls.

Letter order is generator declaration order, positive exponent before
negative at the same generator; words compare graded-lex on the expanded
letter sequence.  Cyclic classes are keyed by the cyclically reduced,
lexicographically least rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

Letter = tuple[int, int]  # (generator index, exponent != 0)
Word = tuple[Letter, ...]

EMPTY_WORD: Word = ()


class SignatureMismatchError(ValueError):
    """Operands belong to different algebra signatures."""


class NonInvertibleError(ValueError):
    """Negative exponent on a generator without an inverse."""


class UnknownGeneratorError(KeyError):
    """Generator name not declared in the signature."""


@dataclass(frozen=True)
class Signature:
    """Ordered generator names plus per-generator invertibility flags."""

    names: tuple[str, ...]
    invertible: tuple[bool, ...]

    def __post_init__(self):
        if len(self.names) != len(self.invertible):
            raise ValueError("one invertibility flag per generator required")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")

    @classmethod
    def make(cls, names, invertible=False) -> "Signature":
        names = tuple(names)
        if isinstance(invertible, bool):
            flags = (invertible,) * len(names)
        else:
            inv = set(invertible)
            unknown = inv - set(names)
            if unknown:
                raise UnknownGeneratorError(f"unknown generators {sorted(unknown)}")
            flags = tuple(n in inv for n in names)
        return cls(names, flags)

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownGeneratorError(name) from None

    def alphabet(self) -> list[Letter]:
        """All legal single letters in canonical order."""
        out = []
        for g in range(len(self.names)):
            out.append((g, 1))
            if self.invertible[g]:
                out.append((g, -1))
        return out


def check_same_sig(a: Signature, b: Signature):
    if a != b:
        raise SignatureMismatchError(f"{a.names} vs {b.names}")


def reduce_letters(letters, sig: Signature | None = None) -> Word:
    """Merge adjacent same-generator letters to a fixpoint; the stack pass
    handles cascading cancellations, so the result is the unique normal
    form regardless of merge order."""
    out: list[list[int]] = []
    for g, e in letters:
        if e == 0:
            continue
        if sig is not None and e < 0 and not sig.invertible[g]:
            raise NonInvertibleError(
                f"generator {sig.names[g]!r} has no inverse"
            )
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


def word_reduce(letters, sig: Signature) -> Word:
    return reduce_letters(letters, sig)


def concat(w1: Word, w2: Word) -> Word:
    """Product of two already-reduced words (seam reduction only)."""
    if not w1:
        return w2
    if not w2:
        return w1
    return reduce_letters(w1 + w2)


def concat3(w1: Word, w2: Word, w3: Word) -> Word:
    return reduce_letters(w1 + w2 + w3)


def word_len(w: Word) -> int:
    return sum(abs(e) for _, e in w)


def expand(w: Word) -> tuple[Letter, ...]:
    """Unit-exponent letter sequence, e.g. u^2 v^-1 -> u,u,v^-1."""
    out = []
    for g, e in w:
        s = 1 if e > 0 else -1
        out.extend([(g, s)] * abs(e))
    return tuple(out)


def _letter_key(l: Letter) -> tuple[int, int]:
    return (l[0], 0 if l[1] > 0 else 1)


def word_key(w: Word):
    """Graded-lex sort key: total length, then expanded letter order."""
    letters = expand(w)
    return (len(letters), tuple(_letter_key(l) for l in letters))


def inverse_word(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def word_power(w: Word, k: int) -> Word:
    out: Word = ()
    base = w if k >= 0 else inverse_word(w)
    for _ in range(abs(k)):
        out = concat(out, base)
    return out


@lru_cache(maxsize=1 << 18)
def cyclic_canonical(w: Word) -> Word:
    """Canonical representative of the cyclic class: cyclically reduce, then
    take the lexicographically least rotation."""
    letters = list(expand(w))
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
        letters = letters[1:-1]
    n = len(letters)
    if n == 0:
        return EMPTY_WORD
    keys = [_letter_key(l) for l in letters]
    best = min(
        range(n), key=lambda i: tuple(keys[(i + j) % n] for j in range(n))
    )
    rotated = letters[best:] + letters[:best]
    return reduce_letters(rotated)


def enumerate_words(sig: Signature, max_len: int, positive_only: bool = False) -> list[Word]:
    """All reduced words of letter-length <= max_len, graded-lex order.
    Includes the unit.  positive_only restricts to inverse-free words."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    letters = [(g, 1) for g in range(sig.arity)] if positive_only else sig.alphabet()
    out: list[tuple[Letter, ...]] = [()]
    frontier: list[tuple[Letter, ...]] = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            last = w[-1] if w else None
            for l in letters:
                if last is not None and last[0] == l[0] and last[1] == -l[1]:
                    continue
                nxt.append(w + (l,))
        out.extend(nxt)
        frontier = nxt
    return [reduce_letters(w) for w in out]


def enumerate_cyclic_words(sig: Signature, max_len: int, positive_only: bool = False) -> list[Word]:
    """One canonical representative per cyclic class of words <= max_len."""
    seen = {cyclic_canonical(w) for w in enumerate_words(sig, max_len, positive_only)}
    return sorted(seen, key=word_key)


def render_word(w: Word, sig: Signature) -> str:
    if not w:
        return "1"
    parts = []
    for g, e in w:
        name = sig.names[g]
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)

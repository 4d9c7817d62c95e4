"""Noncommutative core: reduced words, elements of A and A (x) A, the
multiplication map, and the cyclic space A/[A,A]."""

from .poly import (
    CyclicPoly,
    NCPoly,
    TensorPoly,
    add_term,
    cyclic_project,
    mu,
    nc_mul,
    nc_sum,
    tensor,
    tensor_act,
)
from .words import (
    EMPTY_WORD,
    Letter,
    NonInvertibleError,
    Signature,
    SignatureMismatchError,
    UnknownGeneratorError,
    Word,
    check_same_sig,
    concat,
    concat3,
    cyclic_canonical,
    enumerate_cyclic_words,
    enumerate_words,
    expand,
    inverse_word,
    render_word,
    reduce_letters,
    word_key,
    word_len,
    word_power,
    word_reduce,
)

__all__ = [
    "Signature",
    "Word",
    "Letter",
    "EMPTY_WORD",
    "SignatureMismatchError",
    "NonInvertibleError",
    "UnknownGeneratorError",
    "check_same_sig",
    "word_reduce",
    "reduce_letters",
    "concat",
    "concat3",
    "expand",
    "inverse_word",
    "word_power",
    "word_key",
    "word_len",
    "cyclic_canonical",
    "enumerate_words",
    "enumerate_cyclic_words",
    "render_word",
    "NCPoly",
    "TensorPoly",
    "CyclicPoly",
    "add_term",
    "tensor",
    "tensor_act",
    "mu",
    "nc_mul",
    "nc_sum",
    "cyclic_project",
]

"""Built-in bracket tables, Hamiltonians and vector fields.

The quadratic bracket on the group algebra of the free group on u, v:

    [[u,v]] = -vu (x) 1,   [[v,u]] = uv (x) 1,   [[u,u]] = [[v,v]] = 0,

its Hamiltonian h = u + v + u^-1 + v^-1 + u^-1 v^-1 and right Casimir
c = u v u^-1 v^-1, plus two conjectural brackets on the free algebra with
three generators.  All tables omit zero entries.
"""

from __future__ import annotations

from .dbracket import BracketDef
from .ncalg import NCPoly, Signature, TensorPoly, tensor
from .polyvec import VectorField

SIG_KONTSEVICH = Signature.make(("u", "v"), invertible=True)
SIG_FREE2 = Signature.make(("u", "v"))
SIG_FREE3 = Signature.make(("x1", "x2", "x3"))


def _w(sig: Signature, spec: str) -> NCPoly:
    """Monomial builder: 'u v^-1' -> the word u*v^-1."""
    letters = []
    for part in spec.split():
        if "^" in part:
            name, e = part.split("^")
            letters.append((sig.index(name), int(e)))
        else:
            letters.append((sig.index(part), 1))
    from .ncalg import reduce_letters

    return NCPoly.monomial(sig, reduce_letters(letters, sig))


def kontsevich_bracket(sig: Signature | None = None) -> BracketDef:
    """The quadratic non-skew bracket; pass SIG_FREE2 to get the same table
    on the inverse-free subalgebra."""
    sig = sig or SIG_KONTSEVICH
    u, v = sig.index("u"), sig.index("v")
    table = {
        (u, v): tensor(-_w(sig, "v u"), NCPoly.one(sig)),
        (v, u): tensor(_w(sig, "u v"), NCPoly.one(sig)),
    }
    return BracketDef(sig, table, name="kontsevich")


def hamiltonian() -> NCPoly:
    sig = SIG_KONTSEVICH
    return (
        _w(sig, "u")
        + _w(sig, "v")
        + _w(sig, "u^-1")
        + _w(sig, "v^-1")
        + _w(sig, "u^-1 v^-1")
    )


def casimir_element() -> NCPoly:
    return _w(SIG_KONTSEVICH, "u v u^-1 v^-1")


def flow_table() -> dict[int, NCPoly]:
    """du/dt = uv - uv^-1 - v^-1,  dv/dt = -vu + vu^-1 + u^-1."""
    sig = SIG_KONTSEVICH
    return {
        sig.index("u"): _w(sig, "u v") - _w(sig, "u v^-1") - _w(sig, "v^-1"),
        sig.index("v"): -_w(sig, "v u") + _w(sig, "v u^-1") + _w(sig, "u^-1"),
    }


def free3_bracket_I() -> BracketDef:
    sig = SIG_FREE3
    one = NCPoly.one(sig)
    x1, x2, x3 = (NCPoly.gen(sig, i) for i in range(3))
    table = {
        (0, 1): tensor(-(x2 * x1), one),
        (1, 0): tensor(x1 * x2, one),
        (1, 2): tensor(-x2, x3),
        (2, 1): tensor(x2, x3),
        (2, 0): tensor(-one, x3 * x1),
        (0, 2): tensor(one, x1 * x3),
    }
    return BracketDef(sig, table, name="free3-I")


def free3_bracket_II() -> BracketDef:
    sig = SIG_FREE3
    x1, x2, x3 = (NCPoly.gen(sig, i) for i in range(3))
    table = {
        (0, 1): tensor(-x1, x2),
        (1, 0): tensor(x1, x2),
        (1, 2): tensor(x3, x2),
        (2, 1): tensor(-x3, x2),
        (2, 0): tensor(x1, x3) - tensor(x3, x1),
    }
    return BracketDef(sig, table, name="free3-II")


def kontsevich_fields() -> dict[str, VectorField]:
    """The four fields on the inverse-free algebra whose bivector
    tr(d1*d2 - d2~*d1~) induces the quadratic bracket."""
    sig = SIG_FREE2
    one = NCPoly.one(sig)
    u, v = NCPoly.gen(sig, "u"), NCPoly.gen(sig, "v")
    iu, iv = sig.index("u"), sig.index("v")
    return {
        "delta1": VectorField(sig, {iu: tensor(one, u), iv: tensor(one, v)}, "delta1"),
        "delta2": VectorField(sig, {iu: tensor(u, one)}, "delta2"),
        "delta1t": VectorField(sig, {iu: tensor(u, one), iv: tensor(v, one)}, "delta1t"),
        "delta2t": VectorField(sig, {iu: tensor(one, u)}, "delta2t"),
    }

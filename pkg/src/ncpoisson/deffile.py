"""Definition files: a flat INI-style text format for algebras, bracket
tables, named elements, vector fields, Lax matrices and coalgebras.

    [algebra]
    generators = u, v
    invertible = u, v          # subset of generators; omit for none

    [bracket.kontsevich]
    u, v = "-v*u (x) 1"        # omitted generator pairs are zero

    [element.h]
    expr = "u + v + u^-1 + v^-1 + u^-1*v^-1"

    [field.delta1]             # vector field by generator table
    algebra = positive         # optional: lives on the inverse-free algebra
    u = "1 (x) u"

    [lax.L]
    1,2,@1 = "v"               # row, column, lambda power (default 0)
    1,2 = "v^-1*u^-1 + u^-1 + 1"

    [coalgebra.m2]
    comatrix = 2               # or explicit basis/delta/eps/nu/tau keys

Expression values are quoted; the grammar is in `exprs`.  All identifiers
resolve against the [algebra] section.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .dbracket import BracketDef
from .exprs import ExprSyntaxError, parse_element, parse_tensor
from .integrable import LaurentNC, Matrix2
from .ncalg import NCPoly, NonInvertibleError, Signature, UnknownGeneratorError
from .polyvec import VectorField
from .repalg import Coalgebra, comatrix_coalgebra


class DefinitionError(ValueError):
    """Malformed definition file; message carries section and key."""


@dataclass
class DefinitionFile:
    path: str
    sig: Signature
    positive_sig: Signature
    brackets: dict[str, BracketDef] = field(default_factory=dict)
    elements: dict[str, NCPoly] = field(default_factory=dict)
    fields: dict[str, VectorField] = field(default_factory=dict)
    coalgebras: dict[str, Coalgebra] = field(default_factory=dict)
    lax: dict[str, Matrix2] = field(default_factory=dict)

    def bracket(self, name: str | None = None) -> BracketDef:
        if not self.brackets:
            raise DefinitionError(f"{self.path}: no bracket sections")
        if name is None:
            return next(iter(self.brackets.values()))
        try:
            return self.brackets[name]
        except KeyError:
            raise DefinitionError(
                f"{self.path}: no bracket named {name!r} "
                f"(have {sorted(self.brackets)})"
            ) from None


def _unquote(value: str) -> str:
    value = value.strip()
    if len(value) >= 2 and value[0] == '"' and value[-1] == '"':
        return value[1:-1]
    return value


def _names(value: str) -> list[str]:
    return [part.strip() for part in value.split(",") if part.strip()]


def load_definition_file(path) -> DefinitionFile:
    path = Path(path)
    cp = configparser.ConfigParser(interpolation=None, delimiters=("=",))
    cp.optionxform = str  # keys are case-sensitive identifiers
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh, source=str(path))
    except OSError as e:
        raise DefinitionError(f"{path}: {e}") from e
    except configparser.Error as e:
        raise DefinitionError(f"{path}: {e}") from e

    if "algebra" not in cp:
        raise DefinitionError(f"{path}: missing [algebra] section")
    alg = cp["algebra"]
    gens = _names(alg.get("generators", ""))
    if not gens:
        raise DefinitionError(f"{path}: [algebra] needs a generators list")
    invertible = _names(alg.get("invertible", ""))
    try:
        sig = Signature.make(gens, invertible)
    except (ValueError, UnknownGeneratorError) as e:
        raise DefinitionError(f"{path}: [algebra]: {e}") from e
    positive_sig = Signature.make(gens, False)
    out = DefinitionFile(str(path), sig, positive_sig)

    def ctx_parse(parser, src, use_sig, section, key):
        try:
            return parser(src, use_sig)
        except (ExprSyntaxError, NonInvertibleError, UnknownGeneratorError) as e:
            raise DefinitionError(f"{path}: [{section}] {key}: {e}") from e

    for section in cp.sections():
        if section == "algebra":
            continue
        head, _, name = section.partition(".")
        body = cp[section]
        if head == "bracket":
            table = {}
            for key, raw in body.items():
                pair = _names(key)
                if len(pair) != 2:
                    raise DefinitionError(
                        f"{path}: [{section}] key {key!r} must be two generators"
                    )
                try:
                    g1, g2 = sig.index(pair[0]), sig.index(pair[1])
                except UnknownGeneratorError as e:
                    raise DefinitionError(f"{path}: [{section}] {key}: {e}") from e
                table[(g1, g2)] = ctx_parse(
                    parse_tensor, _unquote(raw), sig, section, key
                )
            out.brackets[name] = BracketDef(sig, table, name=name)
        elif head == "element":
            raw = body.get("expr")
            if raw is None:
                raise DefinitionError(f"{path}: [{section}] needs an expr key")
            out.elements[name] = ctx_parse(
                parse_element, _unquote(raw), sig, section, "expr"
            )
        elif head == "field":
            use_sig = sig
            table = {}
            for key, raw in body.items():
                if key == "algebra":
                    if _unquote(raw) != "positive":
                        raise DefinitionError(
                            f"{path}: [{section}]: algebra must be 'positive'"
                        )
                    use_sig = positive_sig
            for key, raw in body.items():
                if key == "algebra":
                    continue
                try:
                    g = use_sig.index(key)
                except UnknownGeneratorError as e:
                    raise DefinitionError(f"{path}: [{section}] {key}: {e}") from e
                table[g] = ctx_parse(parse_tensor, _unquote(raw), use_sig, section, key)
            out.fields[name] = VectorField(use_sig, table, name=name)
        elif head == "lax":
            entries: dict[tuple[int, int], LaurentNC] = {}
            for key, raw in body.items():
                parts = _names(key)
                lam = 0
                if len(parts) == 3 and parts[2].startswith("@"):
                    lam = int(parts[2][1:])
                    parts = parts[:2]
                if len(parts) != 2:
                    raise DefinitionError(
                        f"{path}: [{section}] key {key!r} must be row,col[,@power]"
                    )
                r, c = int(parts[0]) - 1, int(parts[1]) - 1
                if not (0 <= r < 2 and 0 <= c < 2):
                    raise DefinitionError(f"{path}: [{section}] {key}: 2x2 only")
                p = ctx_parse(parse_element, _unquote(raw), sig, section, key)
                cur = entries.get((r, c), LaurentNC(sig))
                entries[(r, c)] = cur + LaurentNC.of(p, lam)
            out.lax[name] = tuple(
                tuple(entries.get((r, c), LaurentNC(sig)) for c in range(2))
                for r in range(2)
            )
        elif head == "coalgebra":
            out.coalgebras[name] = _parse_coalgebra(path, section, body)
        else:
            raise DefinitionError(f"{path}: unknown section [{section}]")
    return out


def _parse_coalgebra(path, section, body) -> Coalgebra:
    if "comatrix" in body:
        try:
            return comatrix_coalgebra(int(body["comatrix"]))
        except ValueError as e:
            raise DefinitionError(f"{path}: [{section}] comatrix: {e}") from e
    labels = _names(body.get("basis", ""))
    if not labels:
        raise DefinitionError(f"{path}: [{section}] needs basis or comatrix")
    label_sig = Signature.make(labels, False)
    dim = len(labels)

    def label_of_word(w, key):
        if len(w) != 1 or w[0][1] != 1:
            raise DefinitionError(
                f"{path}: [{section}] {key}: expected plain basis labels"
            )
        return w[0][0]

    delta = [[] for _ in range(dim)]
    counit = [Fraction(0)] * dim
    nu = [[Fraction(0)] * dim for _ in range(dim)]
    tau = [Fraction(0)] * dim
    for key, raw in body.items():
        if key == "basis":
            continue
        raw = _unquote(raw)
        if key.startswith("delta."):
            a = label_sig.index(key[len("delta.") :])
            t = parse_tensor(raw, label_sig)
            for (wl, wr), c in t.terms.items():
                delta[a].append((label_of_word(wl, key), label_of_word(wr, key), c))
        elif key.startswith("eps."):
            a = label_sig.index(key[len("eps.") :])
            counit[a] = Fraction(raw)
        elif key.startswith("nu."):
            _, la, lb = key.split(".")
            nu[label_sig.index(la)][label_sig.index(lb)] = Fraction(raw)
        elif key == "tau":
            p = parse_element(raw, label_sig)
            for w, c in p.terms.items():
                tau[label_of_word(w, key)] = c
        else:
            raise DefinitionError(f"{path}: [{section}] unknown key {key!r}")
    return Coalgebra(
        tuple(labels),
        tuple(tuple(d) for d in delta),
        tuple(counit),
        tuple(tuple(row) for row in nu),
        tuple(tau),
    )


def bundled_path(name: str) -> Path:
    """Path of a reference definition file shipped with the package."""
    return Path(__file__).parent / "data" / name

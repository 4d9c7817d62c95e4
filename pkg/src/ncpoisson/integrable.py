"""The quadratic-bracket flow on the group algebra of the free group on
u, v: Hamiltonian generation, the 2x2 Lax pair with spectral parameter,
trace integrals and their pairwise involutivity, and the spectral curve
det(phi(L(lam)) - nu) = 0 at exact sample points with its Newton polygon.

The determinant over Laurent polynomials in lam is computed by divison-free
minor expansion (memoized over column subsets); the minimal lam power is
cleared afterwards and recorded, so the reported degree is reproducible
bit-exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .dbracket import loday
from .exactlin.mpoly import MPoly
from .exactlin.polygon import LatticePolygon, newton_polygon
from .ncalg import (
    CyclicPoly,
    NCPoly,
    Signature,
    Word,
    add_term,
    cyclic_project,
    enumerate_words,
    expand,
    render_word,
)
from .repn import RepPoint, phi_eval, random_rep
from .reports import Failure, SweepReport
from . import systems

_ONE = Fraction(1)


class LaurentNC:
    """Laurent polynomial in the spectral parameter with noncommutative
    coefficients."""

    __slots__ = ("sig", "coeffs")

    def __init__(self, sig: Signature, coeffs: dict | None = None):
        self.sig = sig
        self.coeffs: dict[int, NCPoly] = {}
        if coeffs:
            for j, p in coeffs.items():
                if not p.is_zero():
                    self.coeffs[j] = p

    @classmethod
    def of(cls, p: NCPoly, power: int = 0) -> "LaurentNC":
        return cls(p.sig, {power: p})

    def __eq__(self, other):
        return (
            isinstance(other, LaurentNC)
            and self.sig == other.sig
            and self.coeffs == other.coeffs
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LaurentNC") -> "LaurentNC":
        out = dict(self.coeffs)
        for j, p in other.coeffs.items():
            q = out.get(j)
            s = p if q is None else q + p
            if s.is_zero():
                out.pop(j, None)
            else:
                out[j] = s
        res = LaurentNC(self.sig)
        res.coeffs = out
        return res

    def __neg__(self) -> "LaurentNC":
        res = LaurentNC(self.sig)
        res.coeffs = {j: -p for j, p in self.coeffs.items()}
        return res

    def __sub__(self, other: "LaurentNC") -> "LaurentNC":
        return self + (-other)

    def __mul__(self, other: "LaurentNC") -> "LaurentNC":
        out: dict[int, NCPoly] = {}
        for j1, p1 in self.coeffs.items():
            for j2, p2 in other.coeffs.items():
                j = j1 + j2
                prod = p1 * p2
                q = out.get(j)
                s = prod if q is None else q + prod
                if s.is_zero():
                    out.pop(j, None)
                else:
                    out[j] = s
        res = LaurentNC(self.sig)
        res.coeffs = out
        return res

    def map_coeffs(self, fn) -> "LaurentNC":
        res = LaurentNC(self.sig)
        for j, p in self.coeffs.items():
            q = fn(p)
            if not q.is_zero():
                res.coeffs[j] = q
        return res

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        return " ; ".join(
            f"lam^{j}: {p}" for j, p in sorted(self.coeffs.items())
        )


Matrix2 = tuple[tuple[LaurentNC, LaurentNC], tuple[LaurentNC, LaurentNC]]


def mat_mul(a: Matrix2, b: Matrix2) -> Matrix2:
    return tuple(
        tuple(
            a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)
        )
        for i in range(2)
    )


def mat_sub(a: Matrix2, b: Matrix2) -> Matrix2:
    return tuple(tuple(a[i][j] - b[i][j] for j in range(2)) for i in range(2))


def mat_trace(a: Matrix2) -> LaurentNC:
    return a[0][0] + a[1][1]


@dataclass(frozen=True)
class LaxPair:
    L: Matrix2
    M: Matrix2


def _p(spec: str) -> NCPoly:
    sig = systems.SIG_KONTSEVICH
    out = NCPoly.zero(sig)
    for chunk in spec.split("+"):
        chunk = chunk.strip()
        if chunk == "1":
            out = out + NCPoly.one(sig)
        else:
            out = out + systems._w(sig, chunk)
    return out


def lax_pair() -> LaxPair:
    """L, M with d/dt L = [L, M] for the quadratic-bracket flow."""
    sig = systems.SIG_KONTSEVICH
    L = (
        (
            LaurentNC.of(_p("v^-1 + u")),
            LaurentNC.of(_p("v"), 1) + LaurentNC.of(_p("v^-1 u^-1 + u^-1 + 1")),
        ),
        (
            LaurentNC.of(_p("v^-1")) + LaurentNC.of(_p("u"), -1),
            LaurentNC.of(_p("v + v^-1 u^-1 + u^-1")) + LaurentNC.of(NCPoly.one(sig), -1),
        ),
    )
    M = (
        (LaurentNC.of(_p("v^-1 + u") - _p("v")), LaurentNC.of(_p("v"), 1)),
        (LaurentNC.of(_p("v^-1")), LaurentNC.of(_p("u"))),
    )
    return LaxPair(L, M)


# ---------------------------------------------------------------------------
# the flow


@lru_cache(maxsize=1 << 15)
def _flow_word(w: Word) -> NCPoly:
    sig = systems.SIG_KONTSEVICH
    table = systems.flow_table()
    letters = expand(w)
    n = len(letters)
    out = NCPoly.zero(sig)
    pre = [NCPoly.one(sig)]
    for l in letters:
        pre.append(pre[-1] * NCPoly.monomial(sig, (l,)))
    suf = [NCPoly.one(sig)] * (n + 1)
    for p in range(n - 1, -1, -1):
        suf[p] = NCPoly.monomial(sig, (letters[p],)) * suf[p + 1]
    for p, (g, s) in enumerate(letters):
        d = table[g]
        if s < 0:
            inv = NCPoly.monomial(sig, ((g, -1),))
            d = -(inv * d * inv)
        out = out + pre[p] * d * suf[p + 1]
    return out


def flow_derivative(x: NCPoly, order: int = 1) -> NCPoly:
    """d/dt extended by Leibniz, with d(w^-1) = -w^-1 (dw) w^-1; iterated
    `order` times."""
    for _ in range(order):
        out = NCPoly.zero(x.sig)
        for w, c in x.terms.items():
            out = out + _flow_word(w).scale(c)
        x = out
    return x


def hamiltonian_flow_check(n_random: int = 50, max_len: int = 4, seed: int = 0) -> SweepReport:
    """flow(x) = {h, x} on the generators and on seeded random words."""
    import random as _random

    t0 = time.monotonic()
    sig = systems.SIG_KONTSEVICH
    K = systems.kontsevich_bracket()
    h = systems.hamiltonian()
    words = [w for w in enumerate_words(sig, max_len) if w]
    rng = _random.Random(seed)
    cases = [((0, 1),), ((1, 1),)] + [rng.choice(words) for _ in range(n_random)]
    failures = []
    for w in cases:
        x = NCPoly.monomial(sig, w)
        residual = flow_derivative(x) - loday(K, h, x)
        if not residual.is_zero():
            failures.append(Failure(("flow", render_word(w, sig)), str(residual)))
    report = SweepReport(
        sweep="flow-check",
        params={"n_random": n_random, "max_len": max_len},
        checked=len(cases),
        failures=failures,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
        seed=seed,
    )
    report.sort_failures()
    return report


def lax_residual(negate_m: bool = False) -> SweepReport:
    """dL/dt - [L, M] must vanish entrywise in every lam power; negate_m
    flips the sign of M as a sanity inversion (expected nonzero).

    The commutator orientation is the one this pair actually satisfies,
    [L, M] = ML - LM: with the opposite orientation the residual is
    2*dL/dt, which is what the sign-flipped control exercises.
    """
    t0 = time.monotonic()
    pair = lax_pair()
    L, M = pair.L, pair.M
    if negate_m:
        M = tuple(tuple(-e for e in row) for row in M)
    dL = tuple(tuple(e.map_coeffs(flow_derivative) for e in row) for row in L)
    commutator = mat_sub(mat_mul(M, L), mat_mul(L, M))
    residual = mat_sub(dL, commutator)
    failures = []
    for i in range(2):
        for j in range(2):
            for lam, p in sorted(residual[i][j].coeffs.items()):
                failures.append(
                    Failure((f"entry({i + 1},{j + 1})", f"lam^{lam}"), str(p))
                )
    report = SweepReport(
        sweep="lax-residual",
        params={"negate_m": negate_m},
        checked=4,
        failures=failures,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
    )
    report.sort_failures()
    return report


@dataclass(frozen=True)
class TraceIntegral:
    k: int
    j: int
    value: CyclicPoly


def trace_integrals(k_max: int) -> list[TraceIntegral]:
    """Coefficients H_{k,j} of Tr L(lam)^k, projected to the cyclic space,
    for 1 <= k <= k_max and -k <= j <= k."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    sig = systems.SIG_KONTSEVICH
    out = []
    pair = lax_pair()
    power = pair.L
    for k in range(1, k_max + 1):
        tr = mat_trace(power)
        for j in range(-k, k + 1):
            p = tr.coeffs.get(j, NCPoly.zero(sig))
            out.append(TraceIntegral(k, j, cyclic_project(p)))
        if k < k_max:
            power = mat_mul(power, pair.L)
    return out


def commutation_check(k_max: int = 3, flow_orders: int = 2) -> SweepReport:
    """{H_{k,j}, H_{m,l}} = 0 in A/[A,A] for all pairs with k, m <= k_max,
    plus commutation of the iterated flows d/dt_k = {h^k, _} on the
    alphabet letters for orders <= flow_orders."""
    t0 = time.monotonic()
    sig = systems.SIG_KONTSEVICH
    K = systems.kontsevich_bracket()
    hs = [hi for hi in trace_integrals(k_max) if not hi.value.is_zero()]
    failures = []
    checked = 0
    for a in range(len(hs)):
        pa = hs[a].value.lift()
        for b in range(a, len(hs)):
            checked += 1
            residual = cyclic_project(loday(K, pa, hs[b].value.lift()))
            if not residual.is_zero():
                failures.append(
                    Failure(
                        (
                            f"H[{hs[a].k},{hs[a].j}]",
                            f"H[{hs[b].k},{hs[b].j}]",
                        ),
                        str(residual),
                    )
                )
    h = systems.hamiltonian()
    powers = [h**k for k in range(1, flow_orders + 1)]
    for a in range(len(powers)):
        for b in range(a + 1, len(powers)):
            for l in sig.alphabet():
                checked += 1
                x = NCPoly.monomial(sig, (l,))
                residual = loday(K, powers[a], loday(K, powers[b], x)) - loday(
                    K, powers[b], loday(K, powers[a], x)
                )
                if not residual.is_zero():
                    failures.append(
                        Failure(
                            (f"flow{a + 1}", f"flow{b + 1}", render_word((l,), sig)),
                            str(residual),
                        )
                    )
    report = SweepReport(
        sweep="commutation",
        params={"k_max": k_max, "flow_orders": flow_orders},
        checked=checked,
        failures=failures,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
    )
    report.sort_failures()
    return report


# ---------------------------------------------------------------------------
# spectral curve


@dataclass
class SpectralCurve:
    n: int
    seed: int
    curve: MPoly  # variables (lam, nu), lam exponent shifted by clearing_exp
    clearing_exp: int
    degree: int
    polygon: LatticePolygon
    interior: int
    boundary: int

    def genus_proxy(self) -> int:
        return self.interior


def _phi_block_matrix(rep: RepPoint, mat: Matrix2) -> list[list[dict]]:
    """phi applied entrywise: a 2n x 2n matrix whose entries are
    {(lam exp, nu exp): Fraction} dicts."""
    n = rep.n
    size = 2 * n
    out = [[{} for _ in range(size)] for _ in range(size)]
    for bi in range(2):
        for bj in range(2):
            for lam, p in mat[bi][bj].coeffs.items():
                m = phi_eval(rep, p)
                for i in range(n):
                    for j in range(n):
                        v = m[i, j]
                        if v:
                            add_term(out[bi * n + i][bj * n + j], (lam, 0), v)
    return out


def _poly_dict_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (j1, e1), c1 in a.items():
        for (j2, e2), c2 in b.items():
            add_term(out, (j1 + j2, e1 + e2), c1 * c2)
    return out


def _det_poly(mat: list[list[dict]]) -> dict:
    """Division-free determinant of a matrix of {(lam, nu): coeff} dicts,
    by minor expansion memoized over column subsets."""
    size = len(mat)
    memo: dict[int, dict] = {}

    def minor(mask: int) -> dict:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        r = size - bin(mask).count("1")
        if r == size:
            return {(0, 0): _ONE}
        total: dict = {}
        sign = 1
        for c in range(size):
            if not (mask >> c) & 1:
                continue
            a = mat[r][c]
            if a:
                sub = minor(mask & ~(1 << c))
                for k1, c1 in a.items():
                    for k2, c2 in sub.items():
                        add_term(
                            total, (k1[0] + k2[0], k1[1] + k2[1]), sign * c1 * c2
                        )
            sign = -sign
        memo[mask] = total
        return total

    return minor((1 << size) - 1)


def spectral_curve(n: int, seed: int = 0, sample_range: int = 10) -> SpectralCurve:
    """det(phi(L(lam)) - nu) at a random sample point, cleared to a
    polynomial in (lam, nu), with its Newton polygon and lattice counts."""
    rep = random_rep(systems.SIG_KONTSEVICH, n, seed=seed, sample_range=sample_range)
    mat = _phi_block_matrix(rep, lax_pair().L)
    for d in range(2 * n):
        add_term(mat[d][d], (0, 1), Fraction(-1))
    det = _det_poly(mat)
    if not det:
        raise ValueError("determinant vanished identically (degenerate sample)")
    jmin = min(j for j, _ in det)
    curve = MPoly(2, {(j - jmin, e): c for (j, e), c in det.items()})
    polygon = newton_polygon(curve)
    return SpectralCurve(
        n=n,
        seed=seed,
        curve=curve,
        clearing_exp=-jmin,
        degree=curve.total_degree(),
        polygon=polygon,
        interior=polygon.interior_points(),
        boundary=polygon.boundary_points(),
    )


def spectral_flow_residual(n: int, seed: int = 0, sample_range: int = 10) -> dict:
    """Directional derivative of det(phi(L) - nu) along the flow pushed to
    the sample point; identically zero because dL/dt = [L, M].  Returns the
    residual terms (empty dict = conserved)."""
    rep = random_rep(systems.SIG_KONTSEVICH, n, seed=seed, sample_range=sample_range)
    L = lax_pair().L
    mat = _phi_block_matrix(rep, L)
    for d in range(2 * n):
        add_term(mat[d][d], (0, 1), Fraction(-1))
    dL = tuple(tuple(e.map_coeffs(flow_derivative) for e in row) for row in L)
    mat_dot = _phi_block_matrix(rep, dL)
    total: dict = {}
    for r in range(2 * n):
        replaced = [row if i != r else mat_dot[i] for i, row in enumerate(mat)]
        for k, c in _det_poly(replaced).items():
            add_term(total, k, c)
    return total

"""High-precision dilogarithms and the torsion criterion.

li2 is the principal-branch dilogarithm Li_2(z) = -int_0^z log(1-t)/t dt,
evaluated by the standard scheme: power series for |z| <= 1/2, the inversion
and reflection identities to move distant arguments, and a Bernoulli series
in u = -log(1-z) near the unit circle.  On the cut [1, oo) the limit from the
lower half-plane is used; with arg(1-x) = pi for x > 1 this is exactly the
convention making the Bloch-Wigner function vanish on the real line.

D(z) = Im Li_2(z) + log|z| * arg(1-z) is single-valued, real-analytic off
{0, 1}, and satisfies D(conj z) = -D(z), the two-term relations
D(z) + D(1-z) = D(z) + D(1/z) = 0, and the five-term relation.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import DegenerateInput, ReconstructionFailed
from .precision import DEFAULT_CONTEXT, GUARD_BITS, PrecisionContext, to_mpc
from .report import CheckRecord, VerificationReport

__all__ = [
    "li2",
    "bloch_wigner",
    "five_term_residual",
    "BlochElement",
    "xi_D",
    "torsion_check",
    "rogers_L",
    "central_charge_probe",
    "CentralChargeProbe",
    "TORSION_TOLERANCE",
]

TORSION_TOLERANCE = 1e-18

_MAX_TERMS = 4096


def _li2_series(z):
    """Direct power series sum z^n / n^2, for |z| <= 1/2."""
    eps = mp.mpf(2) ** (-mp.mp.prec - 8)
    total = mp.mpf(0) if mp.im(z) == 0 and isinstance(z, mp.mpf) else mp.mpc(0)
    zn = z
    for n in range(1, _MAX_TERMS):
        term = zn / (n * n)
        total += term
        if abs(term) < eps:
            break
        zn *= z
    return total


def _li2_bernoulli(u):
    """Debye-type series Li_2(1 - e^{-u}) = sum_k B_k u^{k+1} / (k+1)!."""
    eps = mp.mpf(2) ** (-mp.mp.prec - 8)
    total = u * 0
    upow = u
    fact = 1
    for k in range(_MAX_TERMS):
        # term for index k: B_k * u^(k+1) / (k+1)!
        fact *= k + 1
        bk = mp.bernoulli(k)
        if bk:
            term = bk * upow / fact
            total += term
            if k > 2 and abs(term) < eps:
                break
        upow *= u
    return total


def _li2_any(z):
    """Dispatch over regions; z must not be a real number > 1."""
    if z == 0:
        return mp.mpf(0)
    if z == 1:
        return mp.pi ** 2 / 6
    a = abs(z)
    if a <= mp.mpf("0.5"):
        return _li2_series(z)
    if a >= 2:
        # Li2(z) + Li2(1/z) = -pi^2/6 - log(-z)^2 / 2, principal branch
        return -_li2_series(1 / z) - mp.pi ** 2 / 6 - mp.log(-z) ** 2 / 2
    if abs(1 - z) <= mp.mpf("0.5"):
        # Li2(z) + Li2(1-z) = pi^2/6 - log(z) log(1-z)
        return mp.pi ** 2 / 6 - mp.log(z) * mp.log(1 - z) - _li2_series(1 - z)
    return _li2_bernoulli(-mp.log(1 - z))


def li2(z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Principal-branch dilogarithm at the context precision.

    For real z > 1 (the branch cut) the value is the limit from the lower
    half-plane, i.e. Im Li2(x) = -pi*log(x); this is the convention recorded
    by the toolkit and the one under which D vanishes on the real line.
    """
    with mp.workprec(ctx.mantissa_bits + 2 * GUARD_BITS):
        zz = to_mpc(z)
        if mp.im(zz) == 0:
            x = mp.re(zz)
            if x > 1:
                lx = mp.log(x)
                inner = _li2_any(1 / x)
                return mp.pi ** 2 / 3 - lx ** 2 / 2 - inner - mp.mpc(0, mp.pi) * lx
            return _li2_any(x)
        return _li2_any(zz)


def bloch_wigner(z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Bloch-Wigner function D(z) = Im Li2(z) + log|z| arg(1-z).

    Exactly-real inputs (including 0 and 1, by continuity) return an exact 0:
    D vanishes identically on the real line.
    """
    zz = to_mpc(z)
    if mp.im(zz) == 0:
        return mp.mpf(0)
    with mp.workprec(ctx.mantissa_bits + GUARD_BITS):
        return mp.im(li2(zz, ctx)) + mp.log(abs(zz)) * mp.arg(1 - zz)


def five_term_residual(x, y, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """|D(x) + D(1-xy) + D(y) + D((1-y)/(1-xy)) + D((1-x)/(1-xy))|."""
    with ctx.workprec():
        xv, yv = to_mpc(x), to_mpc(y)
        w = 1 - xv * yv
        if w == 0:
            raise DegenerateInput("1 - x*y = 0")
        total = (
            bloch_wigner(xv, ctx)
            + bloch_wigner(w, ctx)
            + bloch_wigner(yv, ctx)
            + bloch_wigner((1 - yv) / w, ctx)
            + bloch_wigner((1 - xv) / w, ctx)
        )
        return abs(total)


@dataclass(frozen=True)
class BlochElement:
    """Formal sum sum_i n_i [x_i]; terms at 0 or 1 are dropped (and recorded).

    [0] = [1] = 0 by convention, so such terms contribute nothing.
    """

    terms: tuple
    dropped: tuple = ()

    @classmethod
    def from_terms(cls, terms) -> "BlochElement":
        kept, dropped = [], []
        for coeff, arg in terms:
            a = to_mpc(arg)
            if a == 0 or a == 1:
                dropped.append((int(coeff), complex(a)))
            else:
                kept.append((int(coeff), a))
        return cls(terms=tuple(kept), dropped=tuple(dropped))

    def evaluate_D(self, ctx: PrecisionContext = DEFAULT_CONTEXT):
        with ctx.workprec():
            return mp.fsum(c * bloch_wigner(a, ctx) for c, a in self.terms)


def xi_D(solution, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """sum_i D(x_i) over the components of a solution (or any iterable)."""
    xs = getattr(solution, "x", solution)
    with ctx.workprec():
        return mp.fsum(bloch_wigner(x, ctx) for x in xs)


def torsion_check(solutions, ctx: PrecisionContext = DEFAULT_CONTEXT,
                  tolerance: float = TORSION_TOLERANCE) -> VerificationReport:
    """Necessary torsion condition: |sum_i D(x_i)| < tolerance per solution."""
    t0 = time.perf_counter()
    sols = solutions.solutions
    if not sols:
        raise DegenerateInput("empty solution set")
    records = tuple(
        CheckRecord.make(f"|sum D(x)| for solution {idx}", abs(xi_D(sol, ctx)), tolerance)
        for idx, sol in enumerate(sols)
    )
    return VerificationReport(
        command="torsion_check",
        metadata={"pair": solutions.pair, "solutions": len(sols)},
        records=records,
        seed=getattr(solutions, "seed", None),
        precision_bits=ctx.mantissa_bits,
        wall_time_s=time.perf_counter() - t0,
    )


def rogers_L(x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Rogers dilogarithm L(x) = Li2(x) + log(x) log(1-x) / 2 for x in (0, 1)."""
    with ctx.workprec():
        xv = mp.mpf(x)
        if not (0 < xv < 1):
            raise DegenerateInput(f"rogers_L requires x in (0, 1), got {x}")
        return li2(xv, ctx) + mp.log(xv) * mp.log(1 - xv) / 2


@dataclass(frozen=True)
class CentralChargeProbe:
    pair: str
    value: object          # mpf: sum_i L(x_i) / L(1) at the positive solution
    rational: Fraction
    error: object          # mpf: |value - rational|


def central_charge_probe(pair, ctx: PrecisionContext = DEFAULT_CONTEXT) -> CentralChargeProbe:
    """Evaluate sum_i L(x_i)/L(1) at the all-positive solution and reconstruct
    the nearest rational with denominator <= 4(h + h')."""
    from .solver import solve_positive  # deferred: keeps this module import-light

    sol = solve_positive(pair, ctx)
    with ctx.workprec():
        l_one = mp.pi ** 2 / 6
        total = mp.fsum(rogers_L(mp.re(x), ctx) for x in sol.x)
        value = total / l_one
        frac = Fraction(float(value)).limit_denominator(4 * (pair.h + pair.hp))
        err = abs(value - mp.mpf(frac.numerator) / frac.denominator)
        if err >= mp.mpf("1e-20"):
            raise ReconstructionFailed(
                f"no rational with denominator <= {4 * (pair.h + pair.hp)} within 1e-20 "
                f"of {mp.nstr(value, 30)}"
            )
    return CentralChargeProbe(pair=pair.label, value=value, rational=frac, error=err)

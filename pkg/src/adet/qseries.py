"""Exact truncated q-series: Pochhammer symbols, Nahm-type sums, and
residue-class infinite products.

Coefficients are arbitrary-size Python integers; a global prefactor exponent
q^C is carried separately as an exact Fraction.  Arithmetic tracks the
minimum valid truncation order and never fabricates coefficients beyond it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .dynkin import RationalMatrix
from .errors import NonIntegralExponent
from .report import CheckRecord, VerificationReport

__all__ = [
    "PowerSeries",
    "pochhammer_q",
    "inverse_pochhammer_q",
    "f_abc",
    "eta_like_product",
    "compare_series",
]


@dataclass(frozen=True)
class PowerSeries:
    """q^prefactor_exp * sum_k coeffs[k] q^k, exact up to order trunc."""

    coeffs: tuple
    trunc: int
    prefactor_exp: Fraction = Fraction(0)

    def __post_init__(self):
        if self.trunc < 0 or len(self.coeffs) != self.trunc + 1:
            raise ValueError("coefficient list must have length trunc + 1")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "prefactor_exp", Fraction(self.prefactor_exp))

    @classmethod
    def one(cls, trunc: int, prefactor_exp=Fraction(0)) -> "PowerSeries":
        return cls((1,) + (0,) * trunc, trunc, prefactor_exp)

    def coefficient(self, k: int) -> int:
        if not 0 <= k <= self.trunc:
            raise IndexError(f"order {k} beyond truncation {self.trunc}")
        return self.coeffs[k]

    def with_prefactor(self, c) -> "PowerSeries":
        return PowerSeries(self.coeffs, self.trunc, Fraction(c))

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        if self.prefactor_exp != other.prefactor_exp:
            raise ValueError("cannot add series with different prefactor exponents")
        n = min(self.trunc, other.trunc)
        return PowerSeries(
            tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)), n, self.prefactor_exp
        )

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        if self.prefactor_exp != other.prefactor_exp:
            raise ValueError("cannot subtract series with different prefactor exponents")
        n = min(self.trunc, other.trunc)
        return PowerSeries(
            tuple(self.coeffs[k] - other.coeffs[k] for k in range(n + 1)), n, self.prefactor_exp
        )

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.trunc, other.trunc)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(0, n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return PowerSeries(tuple(out), n, self.prefactor_exp + other.prefactor_exp)

    def shifted(self, k: int) -> "PowerSeries":
        """Multiply by q^k (integer k >= 0), keeping the truncation order."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        out = (0,) * min(k, self.trunc + 1) + self.coeffs[: max(self.trunc + 1 - k, 0)]
        return PowerSeries(out, self.trunc, self.prefactor_exp)

    def inverse(self) -> "PowerSeries":
        """Reciprocal series; requires a unit constant term (+-1)."""
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValueError("series inverse requires constant term +-1")
        n = self.trunc
        out = [0] * (n + 1)
        out[0] = c0
        for k in range(1, n + 1):
            acc = 0
            for j in range(1, k + 1):
                if self.coeffs[j]:
                    acc += self.coeffs[j] * out[k - j]
            out[k] = -c0 * acc
        return PowerSeries(tuple(out), n, -self.prefactor_exp)

    def head(self, terms: int = 9) -> str:
        parts = []
        for k, c in enumerate(self.coeffs[:terms]):
            if c:
                parts.append(f"{c}*q^{k}" if k else str(c))
        body = " + ".join(parts).replace("+ -", "- ") or "0"
        pre = f"q^({self.prefactor_exp}) * " if self.prefactor_exp else ""
        return f"{pre}({body} + O(q^{min(terms, self.trunc + 1)}))"

    def __repr__(self):
        return f"PowerSeries({self.head(6)}, trunc={self.trunc})"

    def to_json_obj(self) -> dict:
        return {"C": str(self.prefactor_exp), "coeffs": [str(c) for c in self.coeffs],
                "N": self.trunc}


def pochhammer_q(n: int, trunc: int) -> PowerSeries:
    """(q)_n = (1-q)(1-q^2)...(1-q^n), exactly, to the given order."""
    if n < 0 or trunc < 0:
        raise ValueError("n and trunc must be nonnegative")
    out = PowerSeries.one(trunc)
    for m in range(1, n + 1):
        coeffs = [0] * (trunc + 1)
        coeffs[0] = 1
        if m <= trunc:
            coeffs[m] = -1
        out = out * PowerSeries(tuple(coeffs), trunc)
    return out


def inverse_pochhammer_q(n: int, trunc: int) -> PowerSeries:
    """1/(q)_n: the generating function of partitions into parts <= n."""
    if n < 0 or trunc < 0:
        raise ValueError("n and trunc must be nonnegative")
    coeffs = [0] * (trunc + 1)
    coeffs[0] = 1
    for part in range(1, n + 1):
        for k in range(part, trunc + 1):
            coeffs[k] += coeffs[k - part]
    return PowerSeries(tuple(coeffs), trunc)


def _as_fraction_matrix(a) -> list[list[Fraction]]:
    if isinstance(a, RationalMatrix):
        return a.to_nested()
    return [[Fraction(v) for v in row] for row in a]


def f_abc(a, b, c, trunc: int) -> PowerSeries:
    """Nahm-type sum  sum_n q^{n^t A n / 2 + B^t n} / ((q)_{n_1} ... (q)_{n_r}),
    with the global prefactor q^C kept symbolic.

    A must be positive definite; every lattice point with exponent <= trunc
    must produce a nonnegative integer power, else NonIntegralExponent.
    """
    amat = _as_fraction_matrix(a)
    r = len(amat)
    bvec = [Fraction(v) for v in b]
    if len(bvec) != r or any(len(row) != r for row in amat):
        raise ValueError("A must be r x r and B of length r")
    afloat = np.array([[float(v) for v in row] for row in amat])
    eigs = np.linalg.eigvalsh(afloat)
    lam_min = eigs.min()
    if lam_min <= 0:
        raise ValueError("A must be positive definite")
    bnorm = float(np.linalg.norm([float(v) for v in bvec]))
    # ||n|| bound: lam_min |n|^2 / 2 - |B| |n| <= trunc
    radius = (bnorm + (bnorm ** 2 + 2 * lam_min * trunc) ** 0.5) / lam_min
    box = int(radius) + 2

    inv_cache: dict[int, PowerSeries] = {}

    def inv_poch(m: int) -> PowerSeries:
        if m not in inv_cache:
            inv_cache[m] = inverse_pochhammer_q(m, trunc)
        return inv_cache[m]

    total = PowerSeries((0,) * (trunc + 1), trunc)
    for n in product(range(box + 1), repeat=r):
        e = Fraction(0)
        for i in range(r):
            if n[i]:
                e += bvec[i] * n[i]
                for j in range(r):
                    if n[j]:
                        e += Fraction(amat[i][j] * n[i] * n[j], 2)
        if e > trunc:
            continue
        if e.denominator != 1 or e < 0:
            raise NonIntegralExponent(
                f"lattice point {n} contributes exponent {e}, not a nonnegative integer"
            )
        term = PowerSeries.one(trunc)
        for ni in n:
            term = term * inv_poch(ni)
        total = total + term.shifted(int(e))
    return total.with_prefactor(Fraction(c))


def eta_like_product(residues, modulus: int, trunc: int, prefactor_exp=Fraction(0)) -> PowerSeries:
    """prod_{n > 0, n mod m in residues} (1 - q^n)^{-1}, exactly, to order trunc."""
    allowed = set(int(v) for v in residues)
    if not allowed.issubset(set(range(1, modulus))):
        raise ValueError(f"residues must lie in 1..{modulus - 1}")
    coeffs = [0] * (trunc + 1)
    coeffs[0] = 1
    for n in range(1, trunc + 1):
        if n % modulus in allowed:
            for k in range(n, trunc + 1):
                coeffs[k] += coeffs[k - n]
    return PowerSeries(tuple(coeffs), trunc, Fraction(prefactor_exp))


def compare_series(lhs: PowerSeries, rhs: PowerSeries, trunc: int | None = None) -> VerificationReport:
    """Exact coefficientwise comparison up to the minimum truncation order."""
    import time

    t0 = time.perf_counter()
    n = min(lhs.trunc, rhs.trunc)
    if trunc is not None:
        n = min(n, trunc)
    mismatches = [k for k in range(n + 1) if lhs.coeffs[k] != rhs.coeffs[k]]
    pre_diff = abs(lhs.prefactor_exp - rhs.prefactor_exp)
    records = (
        CheckRecord.make("prefactor exponent difference", float(pre_diff), 1e-30),
        CheckRecord.make(f"coefficient mismatches through q^{n}", len(mismatches), 1),
    )
    meta = {
        "orders_compared": n + 1,
        "prefactor_lhs": str(lhs.prefactor_exp),
        "prefactor_rhs": str(rhs.prefactor_exp),
    }
    if mismatches:
        k = mismatches[0]
        meta["first_mismatch"] = {"order": k, "lhs": str(lhs.coeffs[k]), "rhs": str(rhs.coeffs[k])}
    return VerificationReport(
        command="compare_series",
        metadata=meta,
        records=records,
        seed=None,
        precision_bits=0,
        wall_time_s=time.perf_counter() - t0,
    )

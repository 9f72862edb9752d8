"""Exact q-series arithmetic for the two indefinite theta identities.

Left sides are weighted lattice counts, right sides divisor-sum formulas;
all coefficients are exact rationals indexed from exponent 1 (none of the
series in play has a constant term).
"""

import time
from dataclasses import dataclass
from fractions import Fraction

from .arith import divisors, is_odd_prime, is_square
from .reports import VerificationReport

_HALF = Fraction(1, 2)
_ZERO = Fraction(0)


@dataclass
class QSeries:
    """Dense exact coefficients for exponents 1..nmax; index 0 is unused."""

    nmax: int
    coeffs: list[Fraction]

    def coeff(self, n: int) -> Fraction:
        if not 1 <= n <= self.nmax:
            raise IndexError(f"exponent {n} outside 1..{self.nmax}")
        return self.coeffs[n]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QSeries)
            and self.nmax == other.nmax
            and self.coeffs[1:] == other.coeffs[1:]
        )

    @staticmethod
    def build(nmax: int) -> "QSeries":
        if nmax < 1:
            raise ValueError("nmax must be >= 1")
        return QSeries(nmax, [_ZERO] * (nmax + 1))


@dataclass
class DivisorTables:
    """Sieve-built divisor statistics up to nmax.

    sigma_min sums min(a, d) over ordered factorizations n = a*d, and
    sigma_min_even restricts to d = a mod 2; tau_even counts even divisors.
    """

    nmax: int
    sigma1: list[int]
    tau: list[int]
    tau_even: list[int]
    sigma_min: list[int]
    sigma_min_even: list[int]
    square: list[bool]


def divisor_tables(nmax: int) -> DivisorTables:
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    sigma1 = [0] * (nmax + 1)
    tau = [0] * (nmax + 1)
    tau_even = [0] * (nmax + 1)
    sigma_min = [0] * (nmax + 1)
    sigma_min_even = [0] * (nmax + 1)
    for a in range(1, nmax + 1):
        for m in range(a, nmax + 1, a):
            d = m // a
            sigma1[m] += a
            tau[m] += 1
            if a % 2 == 0:
                tau_even[m] += 1
            mn = a if a < d else d
            sigma_min[m] += mn
            if (d - a) % 2 == 0:
                sigma_min_even[m] += mn
    square = [is_square(m) for m in range(nmax + 1)]
    return DivisorTables(nmax, sigma1, tau, tau_even, sigma_min, sigma_min_even, square)


def rhs_identity1(nmax: int) -> QSeries:
    """Coefficient at n: 3*sigma1(n) - 2*sigma_min(n) + [n is a square]."""
    t = divisor_tables(nmax)
    out = QSeries.build(nmax)
    for n in range(1, nmax + 1):
        out.coeffs[n] = Fraction(3 * t.sigma1[n] - 2 * t.sigma_min[n] + (1 if t.square[n] else 0))
    return out


def rhs_identity2(nmax: int) -> QSeries:
    """Coefficient at n: sigma1(n) - 2*sigma1(n/2) + 4*sigma1(n/4)
    - 2*sigma_min_even(n) + [n is a square]; sigma1 is zero off integers."""
    t = divisor_tables(nmax)
    out = QSeries.build(nmax)
    for n in range(1, nmax + 1):
        val = t.sigma1[n] - 2 * t.sigma_min_even[n] + (1 if t.square[n] else 0)
        if n % 2 == 0:
            val -= 2 * t.sigma1[n // 2]
        if n % 4 == 0:
            val += 4 * t.sigma1[n // 4]
        out.coeffs[n] = Fraction(val)
    return out


def lhs_identity1(nmax: int) -> QSeries:
    """Weighted count of a, b, c, d >= 0 with a + b > |d - c|, c + d > |a - b|
    at exponent a*d + b*c; weight 1/2 exactly when a*b*c*d = 0.

    Bounds: writing P = a + b and Q = c + d, the strict inequalities force
    P*Q - 2m = (a - b)(d - c) with |a - b| < Q and |c - d| < P, hence
    P + Q <= 2m + 1 <= 2*nmax + 1, which caps every variable.
    """
    out = QSeries.build(nmax)
    top = 2 * nmax + 1
    for a in range(top + 1):
        for b in range(top + 1 - a):
            p = a + b
            if p == 0:
                continue
            if b:
                cmax = nmax // b
            else:
                cmax = nmax // a + p
            for c in range(cmax + 1):
                dlo = max(0, abs(a - b) - c + 1, c - p + 1)
                dhi = c + p - 1
                if a:
                    dhi = min(dhi, (nmax - b * c) // a)
                for d in range(dlo, dhi + 1):
                    m = a * d + b * c
                    if 1 <= m <= nmax:
                        out.coeffs[m] += _HALF if a * b * c * d == 0 else 1
    return out


def _hyperbola_points(u: int) -> list[tuple[int, int]]:
    """Pairs (x, t) with x*x - t*t = u and x > |t|, via same-parity factorizations."""
    pts = []
    for e in divisors(u):
        f = u // e
        if (e - f) % 2 == 0:
            pts.append(((e + f) // 2, (f - e) // 2))
    return pts


def lhs_identity2(nmax: int) -> QSeries:
    """Weighted count of x >= |y|, z >= |t|, x > |t|, z > |y| at exponent
    x*x + z*z - y*y - t*t; weight 1/2 exactly when x = |y| or z = |t|.

    The exponent splits as (x*x - t*t) + (z*z - y*y) with both parts
    positive, so factorization enumerates each part.
    """
    out = QSeries.build(nmax)
    points = [_hyperbola_points(u) for u in range(nmax + 1)]
    for u in range(1, nmax):
        for v in range(1, nmax + 1 - u):
            m = u + v
            for x, t in points[u]:
                for z, y in points[v]:
                    if x >= abs(y) and z >= abs(t):
                        out.coeffs[m] += _HALF if (x == abs(y) or z == abs(t)) else 1
    return out


def prime_solution_count(p: int, check: bool = True) -> int:
    """Number of integer solutions of x*x + z*z - y*y - t*t = p with
    x, z > |y|, |t| (all four strict), for an odd prime p.

    With check=True the count is compared against p - 3 and a mismatch
    raises, so callers can rely on verified values.
    """
    if not is_odd_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    count = 0
    for u in range(1, p):
        v = p - u
        for x, t in _hyperbola_points(u):
            for z, y in _hyperbola_points(v):
                if x > abs(y) and z > abs(t):
                    count += 1
    if check and count != p - 3:
        raise ArithmeticError(f"solution count {count} for p={p} is not p - 3")
    return count


def compare_series(lhs: QSeries, rhs: QSeries) -> int | None:
    """Exponent of the first coefficient disagreement, or None if equal."""
    if lhs.nmax != rhs.nmax:
        raise ValueError("series lengths differ")
    for n in range(1, lhs.nmax + 1):
        if lhs.coeffs[n] != rhs.coeffs[n]:
            return n
    return None


def check_identity(identity: int, nmax: int) -> VerificationReport:
    """Exact coefficient-wise comparison of one indefinite theta identity."""
    t0 = time.perf_counter()
    if identity == 1:
        lhs, rhs = lhs_identity1(nmax), rhs_identity1(nmax)
    elif identity == 2:
        lhs, rhs = lhs_identity2(nmax), rhs_identity2(nmax)
    else:
        raise ValueError("identity must be 1 or 2")
    bad = compare_series(lhs, rhs)
    elapsed = time.perf_counter() - t0
    if bad is None:
        return VerificationReport(
            claim=f"theta{identity}", n=nmax, status="verified", elapsed=elapsed
        )
    return VerificationReport(
        claim=f"theta{identity}",
        n=nmax,
        status="failed",
        elapsed=elapsed,
        detail=f"first discrepancy at exponent {bad}: lhs {lhs.coeff(bad)}, rhs {rhs.coeff(bad)}",
    )

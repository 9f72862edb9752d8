"""Sparse exact elements of the rational monoid ring on determinant-n matrices.

An element is a finite rational combination of Mat values sharing one
determinant.  All arithmetic is exact; zero coefficients are never stored.
Multiplication is the bilinear extension of matrix multiplication and may
mix determinants (det a times det b gives det a*b); addition may not.
"""

from fractions import Fraction

from .matrices import IDENT, Mat, S, T, T_INV, U, U2

Coeff = int | Fraction

_ZERO = Fraction(0)


class RingElt:
    __slots__ = ("det", "terms")

    def __init__(self, det: int, terms: dict[Mat, Fraction]):
        if det < 1:
            raise ValueError("determinant must be a positive integer")
        self.det = det
        self.terms = terms

    # ---- construction ----

    @staticmethod
    def zero(det: int) -> "RingElt":
        return RingElt(det, {})

    @staticmethod
    def delta(m: Mat, coeff: Coeff = 1) -> "RingElt":
        q = Fraction(coeff)
        return RingElt(m.det(), {m: q} if q else {})

    @staticmethod
    def from_terms(det: int, pairs) -> "RingElt":
        """Accumulate (Mat, coeff) pairs, pruning zeros."""
        acc: dict[Mat, Fraction] = {}
        for m, coeff in pairs:
            if m.det() != det:
                raise ValueError(f"term {m.text()} has det {m.det()}, expected {det}")
            q = acc.get(m, _ZERO) + coeff
            if q:
                acc[m] = q
            else:
                acc.pop(m, None)
        return RingElt(det, acc)

    # ---- queries ----

    def coeff(self, m: Mat) -> Fraction:
        return self.terms.get(m, _ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return self.terms.keys()

    def sorted_terms(self) -> list[tuple[Mat, Fraction]]:
        return sorted(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingElt)
            and self.det == other.det
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"({q})*{m.text()}" for m, q in self.sorted_terms())
        return f"RingElt(det={self.det}: {body or '0'})"

    # ---- linear structure ----

    def __add__(self, other: "RingElt") -> "RingElt":
        if self.det != other.det:
            raise ValueError(f"determinant mismatch: {self.det} vs {other.det}")
        out = dict(self.terms)
        for m, q in other.terms.items():
            s = out.get(m, _ZERO) + q
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return RingElt(self.det, out)

    def __sub__(self, other: "RingElt") -> "RingElt":
        return self + (-other)

    def __neg__(self) -> "RingElt":
        return RingElt(self.det, {m: -q for m, q in self.terms.items()})

    def scale(self, coeff: Coeff) -> "RingElt":
        q = Fraction(coeff)
        if not q:
            return RingElt.zero(self.det)
        return RingElt(self.det, {m: q * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, RingElt):
            out: dict[Mat, Fraction] = {}
            for g, cg in self.terms.items():
                for h, ch in other.terms.items():
                    k = g * h
                    s = out.get(k, _ZERO) + cg * ch
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
            return RingElt(self.det * other.det, out)
        return self.scale(other)

    def __rmul__(self, coeff: Coeff) -> "RingElt":
        return self.scale(coeff)

    # ---- structural involutions, extended term-wise ----

    def adjoint(self) -> "RingElt":
        return RingElt(self.det, {m.adjoint(): q for m, q in self.terms.items()})

    def mirror(self) -> "RingElt":
        return RingElt(self.det, {m.mirror(): q for m, q in self.terms.items()})

    # ---- serialization ----

    def to_json(self) -> dict:
        return {
            "det": self.det,
            "terms": [[[m.a, m.b, m.c, m.d], str(q)] for m, q in self.sorted_terms()],
        }

    @staticmethod
    def from_json(obj: dict) -> "RingElt":
        det = int(obj["det"])
        pairs = []
        for quad, coeff in obj["terms"]:
            a, b, c, d = (int(v) for v in quad)
            pairs.append((Mat.of(a, b, c, d), Fraction(coeff)))
        return RingElt.from_terms(det, pairs)


def aug(x: RingElt) -> Fraction:
    """Sum of all coefficients; multiplicative across ring products."""
    return sum(x.terms.values(), _ZERO)


def signed_count(x: RingElt) -> Fraction:
    """Coefficient-weighted sum of sgn(c*d) over the bottom rows.

    sgn(0) = 0, and c*d is insensitive to the sign quotient, so the value
    is well defined on canonical representatives.
    """
    total = _ZERO
    for m, q in x.terms.items():
        cd = m.c * m.d
        if cd > 0:
            total += q
        elif cd < 0:
            total -= q
    return total


ONE = RingElt.delta(IDENT)
ONE_MINUS_S = ONE - RingElt.delta(S)
ONE_PLUS_S = ONE + RingElt.delta(S)
ONE_MINUS_T = ONE - RingElt.delta(T)
ONE_MINUS_TINV = ONE - RingElt.delta(T_INV)
U_ORBIT_SUM = ONE + RingElt.delta(U) + RingElt.delta(U2)
T_MINUS_TINV = RingElt.delta(T) - RingElt.delta(T_INV)


def star(x: RingElt) -> RingElt:
    """The eight-term symmetrization, extended linearly.

    For a single matrix m this is (m - m~)(1 - S) + (1 - S)(m^ - m~^),
    where ~ is the mirror involution and ^ the adjugate.
    """
    xm = x.mirror()
    left = (x - xm) * ONE_MINUS_S
    xa = x.adjoint()
    right = ONE_MINUS_S * (xa - xa.mirror())
    return left + right

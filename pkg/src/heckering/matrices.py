"""Canonical 2x2 integer matrices of positive determinant, modulo sign.

A value represents the pair {M, -M}; the stored quadruple is the one whose
first nonzero entry (scanning a, b, c, d) is positive.  Entries are
arbitrary-size Python ints, so products never overflow.
"""

from typing import NamedTuple


class Mat(NamedTuple):
    """Matrix (a b; c d) with a*d - b*c > 0, canonical modulo -I."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, a: int, b: int, c: int, d: int) -> "Mat":
        """Canonicalize a quadruple; rejects non-positive determinants."""
        if a * d - b * c <= 0:
            raise ValueError(f"matrix ({a} {b}; {c} {d}) has non-positive determinant")
        # det > 0 rules out a = b = 0, so the first nonzero entry is a or b.
        if a < 0 or (a == 0 and b < 0):
            return cls(-a, -b, -c, -d)
        return cls(a, b, c, d)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __mul__(self, other: "Mat") -> "Mat":
        a, b, c, d = self
        e, f, g, h = other
        return Mat.of(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def adjoint(self) -> "Mat":
        """The adjugate (d -b; -c a); reverses products, preserves det."""
        return Mat.of(self.d, -self.b, -self.c, self.a)

    def mirror(self) -> "Mat":
        """Conjugation by diag(-1, 1), i.e. (a -b; -c d); preserves products."""
        return Mat.of(self.a, -self.b, -self.c, self.d)

    def text(self) -> str:
        """Serialization used in witness files and reports."""
        return f"[{self.a},{self.b},{self.c},{self.d}]"


def t_shift(m: Mat, k: int) -> Mat:
    """Left multiply by the k-th power of T = (1 1; 0 1)."""
    return Mat.of(m.a + k * m.c, m.b + k * m.d, m.c, m.d)


def t_shift_right(m: Mat, k: int) -> Mat:
    """Right multiply by the k-th power of T."""
    return Mat.of(m.a, k * m.a + m.b, m.c, k * m.c + m.d)


IDENT = Mat.of(1, 0, 0, 1)
S = Mat.of(0, -1, 1, 0)
T = Mat.of(1, 1, 0, 1)
T_INV = Mat.of(1, -1, 0, 1)
U = T * S        # order 3 in the sign quotient
U2 = U * U       # equals S * T_INV

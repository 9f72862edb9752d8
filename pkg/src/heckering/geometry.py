"""Matrix families cut out by linear inequalities and their star identities.

Throughout, a quadruple (a, b, c, d) names the matrix (a -b; c d) of
determinant a*d + b*c = n; the builders take quadruples in that display
convention and negate b internally, which keeps the sign conventions of
the inequality definitions in one place.

The largest family is

    Xn:  c + d > |a - b|  and  a + b > |c - d|,

with subfamilies Sn, Tn, Un, Vn, the partition of Xn by comparing c to d,
and primed variants adding the parities a = d and b = c mod 2.  Exactly
one of the quadruples {q, -q} can satisfy the Xn inequalities (c + d > 0
picks the sign), so quadruples and canonical matrices correspond one to
one inside these sets.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import divisor_lists, divisors
from .hecke import coset_rep_sum, pairing_obstruction
from .matrices import Mat, U, U2
from .membership import Verdict, left_t_orbit_rep, search_membership, jj_spec
from .ring import RingElt, star

Quad = tuple[int, int, int, int]

_HALF = Fraction(1, 2)

SET_LABELS = (
    "Sn", "Tn", "Un", "Vn", "Xn", "XnLess", "XnEq", "XnGreater",
    "SnP", "TnP", "UnP", "VnP", "XnP", "XnLessP", "XnEqP", "XnGreaterP",
)


def quad_mat(q: Quad) -> Mat:
    """Canonical matrix (a -b; c d) of a display quadruple."""
    a, b, c, d = q
    return Mat.of(a, -b, c, d)


def swap_family(a: int, b: int, c: int, d: int) -> list[Mat]:
    """The four matrices tied by the four-term star relation, as a multiset.

    For the quadruple (a, b, c, d) these are (a -b; c d), (d -b; c a),
    (a -c; b d), (d -c; b a); repeats occur when a = d or b = c and are
    kept so coefficients accumulate.
    """
    return [
        quad_mat((a, b, c, d)),
        quad_mat((d, b, c, a)),
        quad_mat((a, c, b, d)),
        quad_mat((d, c, b, a)),
    ]


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _rs_solutions(k: int, rmax: int, smax: int, rpar: int, spar: int):
    """Integer pairs (r, s) with r*s = k, |r| <= rmax, |s| <= smax and
    prescribed parities."""
    if rmax < 0 or smax < 0:
        return
    if k == 0:
        if rpar == 0:
            for s in range(-smax, smax + 1):
                if s % 2 == spar:
                    yield 0, s
        if spar == 0:
            for r in range(-rmax, rmax + 1):
                if r != 0 and r % 2 == rpar:
                    yield r, 0
        return
    for e in divisors(abs(k)):
        f = abs(k) // e
        if e > rmax or f > smax or e % 2 != rpar or f % 2 != spar:
            continue
        if k > 0:
            yield e, f
            yield -e, -f
        else:
            yield e, -f
            yield -e, f


@lru_cache(maxsize=512)
def _xn_quads(n: int) -> tuple[Quad, ...]:
    """All display quadruples of the Xn family, sorted.

    Writes P = a + b, Q = c + d, r = a - b, s = c - d; the inequalities
    become |r| < Q, |s| < P with P, Q >= 1, and the determinant gives
    r*s = P*Q - 2n, which forces P + Q <= 2n + 1.  Every candidate is
    re-checked against the defining predicate.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    # reuse one divisor sieve across P, Q pairs; max |K| is max(P*Q, 2n)
    limit = max((2 * n + 1) ** 2 // 4, 2 * n)
    dlists = divisor_lists(limit)
    out: list[Quad] = []
    for p in range(1, 2 * n + 1):
        for q in range(1, 2 * n + 2 - p):
            k = p * q - 2 * n
            rs_iter = (
                _rs_solutions_sieved(k, q - 1, p - 1, p % 2, q % 2, dlists)
                if k != 0
                else _rs_solutions(0, q - 1, p - 1, p % 2, q % 2)
            )
            for r, s in rs_iter:
                quad = ((p + r) // 2, (p - r) // 2, (q + s) // 2, (q - s) // 2)
                if not in_set(quad, n, "Xn"):
                    raise AssertionError(f"enumeration produced a non-member {quad}")
                out.append(quad)
    return tuple(sorted(out))


def _rs_solutions_sieved(k, rmax, smax, rpar, spar, dlists):
    if rmax < 0 or smax < 0:
        return
    for e in dlists[abs(k)]:
        f = abs(k) // e
        if e > rmax or f > smax or e % 2 != rpar or f % 2 != spar:
            continue
        if k > 0:
            yield e, f
            yield -e, -f
        else:
            yield e, -f
            yield -e, f


def in_set(q: Quad, n: int, label: str) -> bool:
    """Does the display quadruple q satisfy the defining predicate of label?"""
    a, b, c, d = q
    if a * d + b * c != n:
        return False
    if label.endswith("P"):
        if (a - d) % 2 or (b - c) % 2:
            return False
        label = label[:-1]
    if label == "Xn":
        return c + d > abs(a - b) and a + b > abs(c - d)
    if label == "Sn":
        return c >= b and d >= a and a + b > d - c > 0
    if label == "Tn":
        return b + c > abs(a - d) and max(a, d) > max(b, c)
    if label == "Un":
        return in_set(q, n, "Tn") or in_set((b, a, d, c), n, "Tn")
    if label == "Vn":
        return in_set(q, n, "Xn") and max(a, d) == max(b, c)
    if label == "XnLess":
        return in_set(q, n, "Xn") and abs(c) < d
    if label == "XnEq":
        return in_set(q, n, "Xn") and c == d
    if label == "XnGreater":
        return in_set(q, n, "Xn") and c > abs(d)
    raise ValueError(f"unknown set label {label!r}")


@dataclass(frozen=True)
class MatSet:
    """A labeled family: display quadruples plus their canonical matrices."""

    n: int
    label: str
    quads: tuple[Quad, ...]

    def mats(self) -> list[Mat]:
        return [quad_mat(q) for q in self.quads]

    def __len__(self) -> int:
        return len(self.quads)

    def to_json(self) -> dict:
        return {"n": self.n, "label": self.label, "quads": [list(q) for q in self.quads]}


def build_set(n: int, label: str) -> MatSet:
    """Enumerate a labeled family exhaustively; every member is re-checked.

    All labels describe subsets of Xn (the Sn and Tn inequalities imply
    the Xn ones), so one master enumeration feeds every filter.
    """
    if label not in SET_LABELS:
        raise ValueError(f"unknown set label {label!r}")
    quads = tuple(q for q in _xn_quads(n) if in_set(q, n, label))
    return MatSet(n, label, quads)


def star_sum(ms: MatSet) -> RingElt:
    """Exact star sum over the family, each member once."""
    x = RingElt.from_terms(ms.n, ((m, 1) for m in ms.mats()))
    return star(x)


# ---------------------------------------------------------------------------
# Family parametrizations used as independent cross-checks
# ---------------------------------------------------------------------------

def tn_families(n: int) -> list[list[Mat]]:
    """The four-matrix families swept out by the Sn quadruples."""
    return [swap_family(*q) for q in build_set(n, "Sn").quads]


def vn_families(n: int) -> list[list[Mat]]:
    """The diagonal-c parametrization of Vn: quadruples (a, n/c - a, c, c)
    over divisors c of n and c >= a >= n/c - c."""
    fams = []
    for c in divisors(n):
        for a in range(n // c - c, c + 1):
            fams.append(swap_family(a, n // c - a, c, c))
    return fams


# ---------------------------------------------------------------------------
# Congruence right-hand sides
# ---------------------------------------------------------------------------

WHICH = ("eq57", "eq581", "eq521", "eq525", "eq526")


def _krange(lo2: int, hi2: int) -> range:
    """Integers k with lo2 < 2k < hi2 (doubled bounds keep everything integral)."""
    return range(lo2 // 2 + 1, (hi2 - 1) // 2 + 1)


def congruence_rhs(n: int, which: str, starred: bool = False) -> RingElt:
    """The displayed divisor-indexed matrix sums on congruence right sides.

    Returned pre-star as formal sums; pass starred=True to apply the star
    map.  eq525 needs odd n and eq526 even n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if which == "eq525" and n % 2 == 0:
        raise ValueError("eq525 is defined for odd n only")
    if which == "eq526" and n % 2 == 1:
        raise ValueError("eq526 is defined for even n only")
    terms: list[tuple[Mat, int]] = []
    for a in divisors(n):
        d = n // a
        if which == "eq57":
            for k in _krange(-2 * d - a, 2 * d - a):
                terms.append((Mat.of(a + k, -k, -d, d), 1))
            if a % 2 == 0:
                terms.append((Mat.of(d, -d, a // 2, a // 2), -1))
        elif which == "eq581":
            for k in _krange(-a, d - a):
                terms.append((Mat.of(d, -d, -k, a + k), 2))
            if a % 2 == 0:
                terms.append((Mat.of(d, -d, a // 2, a // 2), 1))
        elif which == "eq521":
            for k in _krange(-2 * d - a, 2 * d - a):
                terms.append((Mat.of(a + k, k, d, d), 1))
            for k in _krange(-a, d - a):
                terms.append((Mat.of(d, d, k, a + k), 2))
        elif which == "eq525":
            for k in _krange(-a, d - a):
                terms.append((Mat.of(d, d, k, a + k), 2))
        elif which == "eq526":
            if a % 2 == 0:
                for k in _krange(-2 * d - a, 2 * d - a):
                    if (k - d) % 2 == 0:
                        terms.append((Mat.of(a + k, k, d, d), 1))
                if d % 2 == 0:
                    for k in _krange(-a, d - a):
                        terms.append((Mat.of(d, d, k, a + k), 2))
        else:
            raise ValueError(f"unknown congruence id {which!r}")
    x = RingElt.from_terms(n, terms)
    return star(x) if starred else x


def verify_congruence(n: int, which: str, depth: int = 6, engine: str = "auto") -> Verdict:
    """Check a displayed congruence by exact witness search modulo J + J^.

    eq57 and eq581 compare against 4 and 2 times the pairing obstruction;
    eq521, eq525, eq526 reduce to the starred right side alone because the
    corresponding full star sums vanish exactly.  The optional remark
    checks eq57_remark and eq581_remark compare against coset-sum words.
    """
    if which in ("eq521", "eq525", "eq526"):
        delta = congruence_rhs(n, which, starred=True)
    elif which == "eq57":
        delta = congruence_rhs(n, which, starred=True) - 4 * pairing_obstruction(n)
    elif which == "eq581":
        delta = congruence_rhs(n, which, starred=True) - 2 * pairing_obstruction(n)
    elif which == "eq57_remark":
        tn = coset_rep_sum(n)
        delta = congruence_rhs(n, "eq57", starred=True) - 2 * star(tn * RingElt.delta(U2))
    elif which == "eq581_remark":
        tn = coset_rep_sum(n)
        delta = congruence_rhs(n, "eq581", starred=True) - star(
            RingElt.delta(U) * tn * RingElt.delta(U2)
        )
    else:
        raise ValueError(f"unknown congruence id {which!r}")
    return search_membership(delta, jj_spec(), depth, engine=engine)


# ---------------------------------------------------------------------------
# Ceiling-orbit classes of XnLess and the mirror involution
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitClass:
    """A left T-power class inside XnLess, with involution metadata.

    `case` follows the element classification: with div meaning
    (d - c) | (a + b) and eq meaning some member has a = b,
    case 1 = neither, 2 = both, 3 = eq only, 4 = div only.
    `ratio` is (a + b)/(d - c) at the a = b member when one exists.
    """

    rep: Mat
    members: tuple[Quad, ...]
    partner: Mat
    case: int
    ratio: Fraction | None

    @property
    def size(self) -> int:
        return len(self.members)


def orbit_classes(n: int) -> dict[Mat, OrbitClass]:
    """Partition XnLess into left T-power classes, keyed by orbit base point."""
    groups: dict[Mat, list[Quad]] = {}
    for quad in build_set(n, "XnLess").quads:
        rep = left_t_orbit_rep(quad_mat(quad))[0]
        groups.setdefault(rep, []).append(quad)
    classes: dict[Mat, OrbitClass] = {}
    for rep, quads in groups.items():
        quads.sort()
        a, b, c, d = quads[0]
        div = (a + b) % (d - c) == 0
        eq_members = [q for q in quads if q[0] == q[1]]
        if eq_members:
            ea, eb, ec, ed = eq_members[0]
            ratio = Fraction(ea + eb, ed - ec)
        else:
            ratio = None
        if eq_members and div:
            case = 2
        elif eq_members:
            case = 3
        elif div:
            case = 4
        else:
            case = 1
        partner = left_t_orbit_rep(quad_mat(quads[0]).mirror())[0]
        classes[rep] = OrbitClass(rep, tuple(quads), partner, case, ratio)
    return classes


# ---------------------------------------------------------------------------
# Signed and weighted counts
# ---------------------------------------------------------------------------

def signed_count_set(n: int, primed: bool = False) -> int:
    """Sum of sgn(c*d) over the Xn (or primed) quadruples."""
    total = 0
    for _, _, c, d in build_set(n, "XnP" if primed else "Xn").quads:
        cd = c * d
        if cd > 0:
            total += 1
        elif cd < 0:
            total -= 1
    return total


def weighted_boundary_count(n: int, primed: bool = False) -> Fraction:
    """Count of all-nonnegative quadruples, weight 1/2 when a*b*c*d = 0."""
    total = Fraction(0)
    for a, b, c, d in build_set(n, "XnP" if primed else "Xn").quads:
        if a >= 0 and b >= 0 and c >= 0 and d >= 0:
            total += _HALF if a * b * c * d == 0 else 1
    return total

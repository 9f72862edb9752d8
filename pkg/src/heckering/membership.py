"""Membership decisions and bounded witness searches for matrix-ring modules.

One-sided modules such as (1-T)R_n or R_n(1-S) admit exact decision
procedures through orbit bookkeeping, and so does the two-sided module
J = (1-T)R_n(1-S), because the combined left-T / right-S action is free.
Sums such as J + J^ (with J^ = (1-S)R_n(1-Tinv), the adjoint image) only
get a semidecision: an exact sparse linear solve for witnesses supported
on a bounded closure of the query's support, growing with a depth budget.

Every Member verdict is re-verified by ring arithmetic before it is
returned; a failed re-verification raises, it is never downgraded.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import linsolve
from .matrices import Mat, S, U, t_shift, t_shift_right
from .ring import (
    ONE,
    ONE_MINUS_S,
    ONE_MINUS_T,
    ONE_MINUS_TINV,
    ONE_PLUS_S,
    U_ORBIT_SUM,
    RingElt,
    aug,
)

_ZERO = Fraction(0)


class Status(Enum):
    MEMBER = "member"
    NOT_MEMBER = "not_member"
    UNDETERMINED = "undetermined"


class VerificationError(RuntimeError):
    """A Member verdict failed exact re-verification; always a bug."""


class ResourceLimit(RuntimeError):
    """The witness search grew past the configured unknown budget."""


@dataclass(frozen=True)
class ModuleSpec:
    """The submodule sum_i L_i * R_n * R_i given by det-1 pairs (L_i, R_i)."""

    pairs: tuple[tuple[RingElt, RingElt], ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("module spec needs at least one (L, R) pair")
        for left, right in self.pairs:
            if left.det != 1 or right.det != 1:
                raise ValueError("module spec pairs must have determinant 1")

    def to_json(self) -> list:
        return [[left.to_json(), right.to_json()] for left, right in self.pairs]

    @staticmethod
    def from_json(obj: list) -> "ModuleSpec":
        return ModuleSpec(
            tuple((RingElt.from_json(l), RingElt.from_json(r)) for l, r in obj)
        )


@dataclass
class Verdict:
    """Outcome of a membership query.

    `target` is the element the witness equation is about; for derived
    queries (the characterizations used by in_I and in_I_plus_I_adj) it is
    the transformed element, with `transform` recording the relation to
    the original argument.
    """

    status: Status
    target: RingElt
    spec: ModuleSpec | None = None
    witnesses: list[RingElt] | None = None
    certificate: str | None = None
    depth: int | None = None
    transform: str | None = None

    @property
    def is_member(self) -> bool:
        return self.status is Status.MEMBER


def j_spec() -> ModuleSpec:
    return ModuleSpec(((ONE_MINUS_T, ONE_MINUS_S),))

def j_adj_spec() -> ModuleSpec:
    return ModuleSpec(((ONE_MINUS_S, ONE_MINUS_TINV),))

def jj_spec() -> ModuleSpec:
    return ModuleSpec(((ONE_MINUS_T, ONE_MINUS_S), (ONE_MINUS_S, ONE_MINUS_TINV)))


def checked_member(
    target: RingElt,
    spec: ModuleSpec,
    witnesses: list[RingElt],
    depth: int | None = None,
    transform: str | None = None,
) -> Verdict:
    """Assemble a Member verdict, re-verifying the witness equation exactly."""
    total = RingElt.zero(target.det)
    for (left, right), w in zip(spec.pairs, witnesses, strict=True):
        total = total + left * w * right
    if total != target:
        raise VerificationError("witness re-verification failed")
    return Verdict(Status.MEMBER, target, spec, witnesses, None, depth, transform)


# ---------------------------------------------------------------------------
# Orbit bookkeeping
# ---------------------------------------------------------------------------

def left_t_orbit_rep(m: Mat) -> tuple[Mat, int]:
    """Base point and offset of the left T-power orbit through m.

    Returns (rep, k) with m equal to T^k * rep in the sign quotient.  The
    base point reduces the a entry into [0, |c|) when c != 0, else the b
    entry into [0, |d|); between the two sign representatives the
    lexicographically smaller reduced quadruple wins.
    """
    best = None
    for sign in (1, -1):
        a, b, c, d = sign * m.a, sign * m.b, sign * m.c, sign * m.d
        if c != 0:
            r = a % abs(c)
            j = (r - a) // c
        else:
            r = b % abs(d)
            j = (r - b) // d
        quad = (a + j * c, b + j * d, c, d)
        if best is None or quad < best[0]:
            best = (quad, -j)
    quad, k = best
    return Mat.of(*quad), k


def right_t_orbit_rep(m: Mat) -> tuple[Mat, int]:
    """Base point and offset of the right T-power orbit: m = rep * T^k."""
    rep_adj, k = left_t_orbit_rep(m.adjoint())
    return rep_adj.adjoint(), -k


def _orbit_decompose(x: RingElt, rep_of) -> dict[Mat, dict[int, Fraction]]:
    orbits: dict[Mat, dict[int, Fraction]] = {}
    for m, coeff in x.terms.items():
        rep, k = rep_of(m)
        orbits.setdefault(rep, {})[k] = coeff
    return orbits


def support_closure(mats, depth: int) -> set[Mat]:
    """Closure of a support set under T and S moves of word length <= depth.

    Moves: left/right multiplication by T or Tinv, left/right by S.
    """
    seen = set(mats)
    frontier = list(seen)
    for _ in range(depth):
        fresh = []
        for m in frontier:
            for nb in (
                t_shift(m, 1),
                t_shift(m, -1),
                t_shift_right(m, 1),
                t_shift_right(m, -1),
                S * m,
                m * S,
            ):
                if nb not in seen:
                    seen.add(nb)
                    fresh.append(nb)
        if not fresh:
            break
        frontier = fresh
    return seen


def solver_key(m: Mat):
    """Column ordering for witness solves: near-triangular matrices first."""
    return (abs(m.c), abs(m.b), abs(m.a), abs(m.d), m)


# ---------------------------------------------------------------------------
# Decision procedures for one-sided modules
# ---------------------------------------------------------------------------

def in_one_minus_T_left(x: RingElt) -> Verdict:
    """Decide x in (1-T)R_n; exact, never Undetermined.

    Member iff every left T-orbit coefficient sum vanishes; the witness y
    with (1-T)y = x is built per orbit by prefix summation relative to the
    deterministic orbit base point.
    """
    spec = ModuleSpec(((ONE_MINUS_T, ONE),))
    orbits = _orbit_decompose(x, left_t_orbit_rep)
    pairs = []
    for rep in sorted(orbits):
        offsets = orbits[rep]
        total = sum(offsets.values(), _ZERO)
        if total:
            return Verdict(
                Status.NOT_MEMBER,
                x,
                spec,
                certificate=f"left T-orbit of {rep.text()} has coefficient sum {total}",
            )
        pairs.append((rep, offsets))
    wit: list[tuple[Mat, Fraction]] = []
    for rep, offsets in pairs:
        ks = sorted(offsets)
        running = _ZERO
        for k in range(ks[0], ks[-1]):
            running += offsets.get(k, _ZERO)
            if running:
                wit.append((t_shift(rep, k), running))
    y = RingElt.from_terms(x.det, wit)
    return checked_member(x, spec, [y])


def in_one_minus_Tinv_right(x: RingElt) -> Verdict:
    """Decide x in R_n(1-Tinv) via right T-orbit sums; witness by tail sums."""
    spec = ModuleSpec(((ONE, ONE_MINUS_TINV),))
    orbits = _orbit_decompose(x, right_t_orbit_rep)
    pairs = []
    for rep in sorted(orbits):
        offsets = orbits[rep]
        total = sum(offsets.values(), _ZERO)
        if total:
            return Verdict(
                Status.NOT_MEMBER,
                x,
                spec,
                certificate=f"right T-orbit of {rep.text()} has coefficient sum {total}",
            )
        pairs.append((rep, offsets))
    wit: list[tuple[Mat, Fraction]] = []
    for rep, offsets in pairs:
        ks = sorted(offsets)
        running = _ZERO
        for k in range(ks[-1], ks[0], -1):
            running += offsets.get(k, _ZERO)
            if running:
                wit.append((t_shift_right(rep, k), running))
    y = RingElt.from_terms(x.det, wit)
    return checked_member(x, spec, [y])


def _s_pair_decision(x: RingElt, left_side: bool, plus: bool) -> Verdict:
    """Shared engine for the four S-pair modules.

    left_side selects (1 -+ S)R_n versus R_n(1 -+ S); plus selects the sign.
    Membership holds iff on every pair {m, Sm} (or {m, mS}) the coefficients
    are equal (plus) or opposite (minus); the witness puts the full
    coefficient on the smaller pair member.
    """
    if plus:
        op = ONE_PLUS_S
        word = "equal"
    else:
        op = ONE_MINUS_S
        word = "opposite"
    spec = ModuleSpec(((op, ONE),) if left_side else ((ONE, op),))
    partner = (lambda m: S * m) if left_side else (lambda m: m * S)
    seen: set[Mat] = set()
    wit: list[tuple[Mat, Fraction]] = []
    for m in sorted(x.support()):
        if m in seen:
            continue
        p = partner(m)
        seen.add(m)
        seen.add(p)
        cm, cp = x.coeff(m), x.coeff(p)
        if (cm - cp) if plus else (cm + cp):
            side = "left" if left_side else "right"
            return Verdict(
                Status.NOT_MEMBER,
                x,
                spec,
                certificate=(
                    f"{side} S-pair {{{m.text()}, {p.text()}}} has coefficients "
                    f"{cm} and {cp}, expected {word}"
                ),
            )
        base = min(m, p)
        cb = x.coeff(base)
        if cb:
            wit.append((base, cb))
    y = RingElt.from_terms(x.det, wit)
    return checked_member(x, spec, [y])


def in_one_minus_S_left(x: RingElt) -> Verdict:
    """Decide x in (1-S)R_n."""
    return _s_pair_decision(x, left_side=True, plus=False)


def in_one_minus_S_right(x: RingElt) -> Verdict:
    """Decide x in R_n(1-S)."""
    return _s_pair_decision(x, left_side=False, plus=False)


def in_one_plus_S_left(x: RingElt) -> Verdict:
    """Decide x in (1+S)R_n."""
    return _s_pair_decision(x, left_side=True, plus=True)


def in_one_plus_U_left(x: RingElt) -> Verdict:
    """Decide x in (1+U+U^2)R_n: constant on each left U-orbit {m, Um, U2m}."""
    spec = ModuleSpec(((U_ORBIT_SUM, ONE),))
    seen: set[Mat] = set()
    wit: list[tuple[Mat, Fraction]] = []
    third = Fraction(1, 3)
    for m in sorted(x.support()):
        if m in seen:
            continue
        um = U * m
        uum = U * um
        orbit = (m, um, uum)
        seen.update(orbit)
        c0 = x.coeff(m)
        if x.coeff(um) != c0 or x.coeff(uum) != c0:
            return Verdict(
                Status.NOT_MEMBER,
                x,
                spec,
                certificate=f"left U-orbit of {m.text()} has non-constant coefficients",
            )
        for g in orbit:
            wit.append((g, c0 * third))
    y = RingElt.from_terms(x.det, wit)
    return checked_member(x, spec, [y])


def in_J(x: RingElt) -> Verdict:
    """Decide x in J = (1-T)R_n(1-S); exact, via freeness of the orbits.

    Member iff (i) coefficients on every right S-pair {m, mS} are opposite
    and (ii) every left T-orbit sum vanishes.  The witness is z/2 where
    (1-T)z = x by prefix summation.
    """
    spec = j_spec()
    right = in_one_minus_S_right(x)
    if not right.is_member:
        return Verdict(Status.NOT_MEMBER, x, spec, certificate=right.certificate)
    left = in_one_minus_T_left(x)
    if not left.is_member:
        return Verdict(Status.NOT_MEMBER, x, spec, certificate=left.certificate)
    w = left.witnesses[0].scale(Fraction(1, 2))
    return checked_member(x, spec, [w])


# ---------------------------------------------------------------------------
# Bounded witness search for module sums
# ---------------------------------------------------------------------------

def _solve_generic(x: RingElt, pairs, support: list[Mat]):
    """Solve sum_i L_i y_i R_i = x with all y_i supported on `support`."""
    ncols = len(pairs) * len(support)
    rowmap: dict[Mat, dict[int, Fraction]] = {}
    col_mats: list[tuple[int, Mat]] = []
    j = 0
    for i, (left, right) in enumerate(pairs):
        lterms = left.sorted_terms()
        rterms = right.sorted_terms()
        for m in support:
            col_mats.append((i, m))
            for u, cu in lterms:
                um = u * m
                for v, cv in rterms:
                    g = um * v
                    row = rowmap.setdefault(g, {})
                    nv = row.get(j, _ZERO) + cu * cv
                    if nv:
                        row[j] = nv
                    else:
                        del row[j]
            j += 1
    for g in x.support():
        rowmap.setdefault(g, {})
    keys = sorted(rowmap)
    rows = [rowmap[g] for g in keys]
    rhs = [x.coeff(g) for g in keys]
    sol = linsolve.solve_sparse(rows, rhs, ncols)
    if sol is None:
        return None
    witnesses = []
    for i in range(len(pairs)):
        terms = {}
        for jj in range(i * len(support), (i + 1) * len(support)):
            if sol[jj]:
                terms[col_mats[jj][1]] = sol[jj]
        witnesses.append(RingElt(x.det, terms))
    return witnesses


def _solve_reduced(x: RingElt, pairs, jdx: int, support: list[Mat]):
    """Witness search with the J = (1-T)R_n(1-S) summand eliminated.

    Membership of z in J is two families of linear conditions on z, so
    for z = x - sum_{i != jdx} L_i y_i R_i they become linear equations in
    the remaining unknowns: right S-pair sums and left T-orbit sums of z
    must vanish.  The J witness is recovered afterwards by the exact
    decision procedure.  Sound, and finds every witness the generic solve
    finds at the same depth (the J component is unconstrained here).
    """
    others = [i for i in range(len(pairs)) if i != jdx]
    ncols = len(others) * len(support)
    pair_rows: dict[Mat, dict[int, Fraction]] = {}
    orbit_rows: dict[Mat, dict[int, Fraction]] = {}
    pair_rhs: dict[Mat, Fraction] = {}
    orbit_rhs: dict[Mat, Fraction] = {}

    def pair_key(g: Mat) -> Mat:
        return min(g, g * S)

    def add(g: Mat, col: int | None, val: Fraction):
        pk = pair_key(g)
        ok_ = left_t_orbit_rep(g)[0]
        if col is None:
            pair_rhs[pk] = pair_rhs.get(pk, _ZERO) + val
            orbit_rhs[ok_] = orbit_rhs.get(ok_, _ZERO) + val
            pair_rows.setdefault(pk, {})
            orbit_rows.setdefault(ok_, {})
        else:
            for rows_, key in ((pair_rows, pk), (orbit_rows, ok_)):
                row = rows_.setdefault(key, {})
                nv = row.get(col, _ZERO) + val
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)

    col = 0
    col_mats: list[Mat] = []
    for i in others:
        left, right = pairs[i]
        lterms = left.sorted_terms()
        rterms = right.sorted_terms()
        for m in support:
            col_mats.append(m)
            for u, cu in lterms:
                um = u * m
                for v, cv in rterms:
                    add(um * v, col, cu * cv)
            col += 1
    for g, coeff in x.terms.items():
        add(g, None, coeff)

    rows = []
    rhs = []
    for key in sorted(pair_rows):
        rows.append(pair_rows[key])
        rhs.append(pair_rhs.get(key, _ZERO))
    for key in sorted(orbit_rows):
        rows.append(orbit_rows[key])
        rhs.append(orbit_rhs.get(key, _ZERO))
    sol = linsolve.solve_sparse(rows, rhs, ncols)
    if sol is None:
        return None

    witnesses_others = []
    for idx in range(len(others)):
        terms = {}
        for jj in range(idx * len(support), (idx + 1) * len(support)):
            if sol[jj]:
                terms[col_mats[jj]] = sol[jj]
        witnesses_others.append(RingElt(x.det, terms))
    z = x
    for idx, i in enumerate(others):
        left, right = pairs[i]
        z = z - left * witnesses_others[idx] * right
    inner = in_J(z)
    if not inner.is_member:
        raise VerificationError("reduced solve produced a non-member remainder")
    witnesses = []
    k = 0
    for i in range(len(pairs)):
        if i == jdx:
            witnesses.append(inner.witnesses[0])
        else:
            witnesses.append(witnesses_others[k])
            k += 1
    return witnesses


def search_membership(
    x: RingElt,
    spec: ModuleSpec,
    depth: int = 4,
    engine: str = "auto",
    max_unknowns: int = 2_000_000,
) -> Verdict:
    """Bounded-support exact witness search for x in sum_i L_i R_n R_i.

    Witnesses are sought on the closure of supp(x) under left/right T and
    S moves of word length 0, 1, ..., depth, stopping at the first depth
    that admits an exact solution.  Feasible gives Member with re-verified
    witnesses; bounded infeasibility gives Undetermined, except that a
    nonzero coefficient sum gives NotMember whenever every pair kills the
    coefficient-sum functional.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    pairs = spec.pairs
    if aug(x) != 0 and all(aug(l) == 0 or aug(r) == 0 for l, r in pairs):
        return Verdict(
            Status.NOT_MEMBER,
            x,
            spec,
            certificate=f"coefficient sum {aug(x)} is nonzero but every pair annihilates it",
        )
    if x.is_zero():
        zeros = [RingElt.zero(x.det) for _ in pairs]
        return checked_member(x, spec, zeros, depth=0)

    j_pair = (ONE_MINUS_T, ONE_MINUS_S)
    jdx = None
    if engine != "generic" and len(pairs) > 1:
        for i, pair in enumerate(pairs):
            if pair == j_pair:
                jdx = i
                break
    if engine == "reduced" and jdx is None:
        raise ValueError("reduced engine needs a (1-T, 1-S) pair in the spec")

    base = sorted(x.support())
    for b in range(depth + 1):
        support = sorted(support_closure(base, b), key=solver_key)
        if len(support) * len(pairs) > max_unknowns:
            raise ResourceLimit(
                f"witness search needs {len(support) * len(pairs)} unknowns at depth {b}"
            )
        if jdx is not None:
            witnesses = _solve_reduced(x, pairs, jdx, support)
        else:
            witnesses = _solve_generic(x, pairs, support)
        if witnesses is not None:
            return checked_member(x, spec, witnesses, depth=b)
    return Verdict(Status.UNDETERMINED, x, spec, depth=depth)


# ---------------------------------------------------------------------------
# The module I = (1+S)R_n + (1+U+U^2)R_n and its adjoint sum
# ---------------------------------------------------------------------------

def in_I(x: RingElt) -> Verdict:
    """Decide x in (1+S)R_n + (1+U+U^2)R_n.

    Uses the exact characterization: x lies in the module iff (1-S)x lies
    in (1-T)R_n.  The returned verdict certifies the transformed equation
    (its target is (1-S)x); no split into the two summands is produced.
    """
    v = ONE_MINUS_S * x
    inner = in_one_minus_T_left(v)
    inner.transform = "(1-S)*x"
    return inner


def in_I_adj(x: RingElt) -> Verdict:
    """Decide x in the adjoint module R_n(1+S) + R_n(1+U+U^2)."""
    inner = in_I(x.adjoint())
    inner.transform = "(1-S)*adjoint(x)"
    return inner


def in_I_plus_I_adj(x: RingElt, depth: int = 4, engine: str = "auto") -> Verdict:
    """Semidecide x in I + I^ via the exact two-sided characterization.

    x lies in I + I^ iff (1-S)x(1-S) lies in (1-T)R_n(1-S) + (1-S)R_n(1-Tinv);
    the verdict's witness equation is about the transformed element.
    """
    y = ONE_MINUS_S * x * ONE_MINUS_S
    verdict = search_membership(y, jj_spec(), depth, engine=engine)
    verdict.transform = "(1-S)*x*(1-S)"
    return verdict

"""Exact sparse linear solving over the rationals.

Gaussian elimination with a min-degree pivot heuristic (fewest rows per
column, then column rank, then fewest entries per row).  No floating
point anywhere; entries are fractions throughout.
"""

from fractions import Fraction

_ZERO = Fraction(0)


def solve_sparse(
    rows: list[dict[int, Fraction]],
    rhs: list[Fraction],
    ncols: int,
    col_rank: list[int] | None = None,
) -> list[Fraction] | None:
    """Return one exact solution of A y = b, or None if inconsistent.

    `rows` maps column index to coefficient and is consumed destructively.
    Free variables are set to zero; among pivot candidates, columns with
    lower `col_rank` are eliminated first, so higher-ranked columns tend
    to stay free.  Deterministic for identical inputs.
    """
    nrows = len(rows)
    rank = col_rank if col_rank is not None else list(range(ncols))

    col_rows: dict[int, set[int]] = {}
    for i, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(i)

    pivots: list[tuple[int, int]] = []
    retired = [False] * nrows

    while col_rows:
        c = min(col_rows, key=lambda cc: (len(col_rows[cc]), rank[cc], cc))
        candidates = col_rows[c]
        r = min(candidates, key=lambda rr: (len(rows[rr]), rr))
        prow = rows[r]
        pval = prow[c]
        for r2 in sorted(candidates - {r}):
            row2 = rows[r2]
            factor = row2[c] / pval
            for cc, v in prow.items():
                if cc == c:
                    continue
                nv = row2.get(cc, _ZERO) - factor * v
                if nv:
                    if cc not in row2:
                        col_rows[cc].add(r2)
                    row2[cc] = nv
                else:
                    if cc in row2:
                        del row2[cc]
                        col_rows[cc].discard(r2)
            del row2[c]
            rhs[r2] -= factor * rhs[r]
            if not row2 and rhs[r2]:
                return None
        # the pivot column is now exhausted; retire the pivot row, keeping
        # its dict for back-substitution
        del col_rows[c]
        for cc in prow:
            if cc == c:
                continue
            live = col_rows.get(cc)
            if live is not None:
                live.discard(r)
                if not live:
                    del col_rows[cc]
        retired[r] = True
        pivots.append((r, c))

    for i in range(nrows):
        if not retired[i] and rhs[i]:
            return None

    sol = [_ZERO] * ncols
    for r, c in reversed(pivots):
        s = rhs[r]
        for cc, v in rows[r].items():
            if cc != c:
                s -= v * sol[cc]
        sol[c] = s / rows[r][c]
    return sol

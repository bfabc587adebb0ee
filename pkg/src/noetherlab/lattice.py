"""Exact integer linear algebra on exponent vectors.

Determinants use fraction-free Bareiss elimination; Smith normal form uses
elementary row/column operations with smallest-pivot selection.  The index
of the sublattice spanned by monomial exponent rows equals the degree of
the corresponding monomial subfield, which is the §-style degree-counting
certificate this module exists for.
"""

from dataclasses import dataclass
from math import gcd, prod


def _validate_matrix(rows):
    rows = [list(map(int, r)) for r in rows]
    if rows:
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("matrix rows have unequal lengths")
    return rows


def det_exact(rows):
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    m = _validate_matrix(rows)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError(f"determinant needs a square matrix, got {len(m)} rows "
                         f"of length {len(m[0]) if m else 0}")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_cofactor(rows):
    """Cofactor-expansion determinant; brute-force oracle for small sizes."""
    m = _validate_matrix(rows)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in m[1:]]
        total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


@dataclass(frozen=True)
class SNFResult:
    """Invariant factors d1 | d2 | ... | dr (positive) and the rank r."""

    factors: tuple
    rank: int

    def index(self):
        return prod(self.factors) if self.factors else 1


def snf(rows):
    """Smith normal form via elementary integer operations."""
    m = _validate_matrix(rows)
    if not m or not m[0]:
        return SNFResult((), 0)
    nrows, ncols = len(m), len(m[0])
    factors = []
    top = 0
    while top < min(nrows, ncols):
        # smallest nonzero entry in the remaining block becomes the pivot
        pivot_pos = None
        pivot_val = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                v = abs(m[i][j])
                if v and (pivot_val is None or v < pivot_val):
                    pivot_val = v
                    pivot_pos = (i, j)
        if pivot_pos is None:
            break
        pi, pj = pivot_pos
        m[top], m[pi] = m[pi], m[top]
        for r in m:
            r[top], r[pj] = r[pj], r[top]
        while True:
            pivot = m[top][top]
            dirty = False
            for i in range(top + 1, nrows):
                if m[i][top]:
                    q = m[i][top] // pivot
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                    if m[i][top]:
                        m[top], m[i] = m[i], m[top]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(top + 1, ncols):
                if m[top][j]:
                    q = m[top][j] // pivot
                    for r in m:
                        r[j] -= q * r[top]
                    if m[top][j]:
                        for r in m:
                            r[top], r[j] = r[j], r[top]
                        dirty = True
                        break
            if dirty:
                continue
            # pivot must divide the rest of the block for the divisibility chain
            offender = None
            for i in range(top + 1, nrows):
                for j in range(top + 1, ncols):
                    if m[i][j] % pivot:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            m[top] = [a + b for a, b in zip(m[top], m[offender])]
        factors.append(abs(m[top][top]))
        top += 1
    # enforce the divisibility chain (smallest-pivot order can still violate it)
    changed = True
    while changed:
        changed = False
        for i in range(len(factors) - 1):
            a, b = factors[i], factors[i + 1]
            if b % a:
                g = gcd(a, b)
                factors[i], factors[i + 1] = g, a * b // g
                changed = True
    return SNFResult(tuple(factors), len(factors))


def monomial_subfield_index(rows):
    """Index of the row lattice in Z^n, or None when it has infinite index.

    For multiplicatively independent Laurent-monomial generators this is the
    degree of the full variable field over the monomial subfield.
    """
    m = _validate_matrix(rows)
    if not m:
        return None
    ncols = len(m[0])
    result = snf(m)
    if result.rank < ncols:
        return None
    return result.index()

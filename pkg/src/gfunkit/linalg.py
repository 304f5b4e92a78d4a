"""Exact linear algebra over Q or a number field.

Matrices are plain lists of lists.  Entries may be Fractions or
NumberFieldElements; the routines only use field arithmetic (+, -, *, /) and
zero tests, so the two can not be mixed inside one matrix.  Everything is
deterministic: pivots are chosen by position, never by magnitude.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .numberfield import NumberFieldElement


def zero_one_like(x):
    if isinstance(x, NumberFieldElement):
        return x.field.zero(), x.field.one()
    return Fraction(0), Fraction(1)


def _is_zero(x):
    if isinstance(x, NumberFieldElement):
        return x.is_zero()
    return x == 0


def identity_matrix(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    zero, _ = zero_one_like(a[0][0])
    out = [[zero for _ in range(m)] for _ in range(n)]
    for i in range(n):
        row = a[i]
        for t in range(k):
            c = row[t]
            if _is_zero(c):
                continue
            bt = b[t]
            oi = out[i]
            for j in range(m):
                oi[j] = oi[j] + c * bt[j]
    return out


def mat_vec(a, v):
    zero, _ = zero_one_like(a[0][0])
    out = []
    for row in a:
        acc = zero
        for c, x in zip(row, v):
            if not _is_zero(c):
                acc = acc + c * x
        out.append(acc)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def rref(matrix):
    """Reduced row echelon form; returns (rref_matrix, pivot_columns)."""
    m = [list(row) for row in matrix]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if not _is_zero(m[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(matrix):
    if not matrix or not matrix[0]:
        return 0
    return len(rref(matrix)[1])


def nullspace(matrix):
    """Canonical basis of the right null space (RREF-based, deterministic)."""
    if not matrix:
        return []
    cols = len(matrix[0])
    zero, one = zero_one_like(matrix[0][0])
    red, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [zero] * cols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = zero - red[r][fc]
        basis.append(vec)
    return basis


def solve(matrix, rhs):
    """One exact solution of matrix * x = rhs, or None if inconsistent."""
    if not matrix:
        return [] if all(_is_zero(b) for b in rhs) else None
    cols = len(matrix[0])
    zero, _ = zero_one_like(matrix[0][0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    for r in range(len(red)):
        if all(_is_zero(x) for x in red[r][:cols]) and not _is_zero(red[r][cols]):
            return None
    x = [zero] * cols
    for r, pc in enumerate(pivots):
        if pc == cols:
            return None
        x[pc] = red[r][cols]
    return x


def det(matrix):
    """Determinant by fraction-full Gaussian elimination (exact field ops)."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    zero, one = zero_one_like(matrix[0][0])
    m = [list(row) for row in matrix]
    result = one
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if not _is_zero(m[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            return zero
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            result = zero - result
        result = result * m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if _is_zero(m[i][c]):
                continue
            f = m[i][c] / inv
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def charpoly(matrix):
    """Coefficients of det(x*I - A), low degree first, via Faddeev-LeVerrier."""
    n = len(matrix)
    if n == 0:
        return [Fraction(1)]
    zero, one = zero_one_like(matrix[0][0])
    coeffs = [zero] * n + [one]
    m_prev = identity_matrix(n, one, zero)
    for k in range(1, n + 1):
        am = mat_mul(matrix, m_prev)
        trace = zero
        for i in range(n):
            trace = trace + am[i][i]
        ck = zero - trace * Fraction(1, k)
        coeffs[n - k] = ck
        if k < n:
            m_prev = [
                [am[i][j] + (ck if i == j else zero) for j in range(n)]
                for i in range(n)
            ]
    return coeffs


def minpoly(matrix):
    """Monic minimal polynomial coefficients, low degree first."""
    n = len(matrix)
    if n == 0:
        return [Fraction(1)]
    zero, one = zero_one_like(matrix[0][0])
    power = identity_matrix(n, one, zero)
    flat_powers = [[power[i][j] for i in range(n) for j in range(n)]]
    for d in range(1, n + 1):
        power = mat_mul(matrix, power)
        target = [power[i][j] for i in range(n) for j in range(n)]
        # is A^d a combination of lower powers?
        system = transpose(flat_powers)
        combo = solve(system, target)
        if combo is not None:
            coeffs = [zero - c for c in combo] + [one]
            return coeffs
        flat_powers.append(target)
    raise InputError("minimal polynomial computation did not terminate")


# ---------------------------------------------------------------------------
# sparse solving (used by the brute-force de Rham oracle)
# ---------------------------------------------------------------------------


def solve_sparse(columns, rhs, n_cols):
    """Solve A x = rhs where A is given column-wise as dicts {row_key: coeff}.

    Free variables are set to zero.  Returns a dense solution list or None if
    the system is inconsistent.  Elimination pivots on short rows first to
    limit fill-in; order is deterministic.
    """
    rows = {}
    for j, col in enumerate(columns):
        for rkey, c in col.items():
            if _is_zero(c):
                continue
            rows.setdefault(rkey, {})[j] = c
    rhs_map = {}
    zero = None
    for rkey, val in rhs.items():
        if not _is_zero(val):
            rhs_map[rkey] = val
        if zero is None:
            zero, _ = zero_one_like(val)
    for rkey in rhs_map:
        rows.setdefault(rkey, {})
    if zero is None:
        zero = Fraction(0)

    eliminated = []  # (pivot_col, row_dict, rhs_value)
    active = {k: rows[k] for k in rows}
    active_rhs = {k: rhs_map.get(k, zero) for k in rows}

    remaining = set(active.keys())
    while remaining:
        rkey = min(
            remaining, key=lambda k: (len(active[k]), str(k))
        )
        remaining.discard(rkey)
        row = active.pop(rkey)
        rval = active_rhs.pop(rkey)
        if not row:
            if not _is_zero(rval):
                return None
            continue
        pcol = min(row.keys())
        pinv = row[pcol]
        row = {j: c / pinv for j, c in row.items()}
        rval = rval / pinv
        for other_key in list(remaining):
            orow = active[other_key]
            if pcol not in orow:
                continue
            f = orow.pop(pcol)
            for j, c in row.items():
                if j == pcol:
                    continue
                newc = orow.get(j, zero) - f * c
                if _is_zero(newc):
                    orow.pop(j, None)
                else:
                    orow[j] = newc
            new_rhs = active_rhs[other_key] - f * rval
            active_rhs[other_key] = new_rhs
        eliminated.append((pcol, row, rval))

    x = [zero] * n_cols
    for pcol, row, rval in reversed(eliminated):
        acc = rval
        for j, c in row.items():
            if j != pcol:
                acc = acc - c * x[j]
        x[pcol] = acc
    return x

"""Exact linear algebra over Fraction matrices and polynomial rings."""

from __future__ import annotations

from fractions import Fraction

from .polynomials import IntPolynomial


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(m):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(p):
                    oi[j] += x * bk[j]
    return out


def mat_vec(a, v):
    return [sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a))]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def is_identity(a) -> bool:
    return all(a[i][j] == (1 if i == j else 0) for i in range(len(a)) for j in range(len(a)))


def rref(matrix: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rref, pivot column indices)."""
    m = [[Fraction(x) for x in row] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def nullspace(matrix) -> list[list[Fraction]]:
    """Exact rational kernel basis; each vector scaled to primitive integers."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if rows == 0:
        return [[Fraction(1) if j == i else Fraction(0) for j in range(cols)] for i in range(cols)]
    red, pivots = rref(matrix)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        den_lcm = 1
        for x in v:
            den_lcm = den_lcm * x.denominator // _gcd(den_lcm, x.denominator)
        ints = [x * den_lcm for x in v]
        g = 0
        for x in ints:
            g = _gcd(g, abs(x.numerator))
        if g > 1:
            ints = [x / g for x in ints]
        basis.append(ints)
    return basis


def _gcd(a, b):
    a, b = abs(int(a)), abs(int(b))
    while b:
        a, b = b, a % b
    return a


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def solve_exact(matrix, rhs) -> list[Fraction] | None:
    """Solve a square (or overdetermined consistent) rational system exactly."""
    rows = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(matrix, rhs)]
    red, pivots = rref(aug)
    cols = len(matrix[0])
    if cols in pivots:
        return None
    sol = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        sol[pc] = red[r][cols]
    for i in range(rows):
        if sum(Fraction(matrix[i][j]) * sol[j] for j in range(cols)) != Fraction(rhs[i]):
            return None
    return sol


def symmetric_inertia(matrix) -> tuple[int, int, int]:
    """Signature (n_pos, n_zero, n_neg) of a symmetric rational matrix.

    Exact congruence pivoting; smallest-index pivot, with the standard
    row-addition trick when the diagonal is all zero.
    """
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    active = list(range(n))
    pos = neg = 0
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(
                ((i, j) for i in active for j in active if i != j and m[i][j] != 0),
                None,
            )
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            # congruence e_i <- e_i + e_j makes the diagonal entry nonzero
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        pivot_row = {j: m[piv][j] for j in active}
        for i in active:
            f = m[i][piv] / d
            if f:
                for j in active:
                    m[i][j] -= f * pivot_row[j]
            m[i][piv] = Fraction(0)
            m[piv][i] = Fraction(0)
    zero = n - pos - neg
    return pos, zero, neg


# -- fraction-free determinants over Z[x] --------------------------------


def bareiss_det(matrix) -> IntPolynomial:
    """Determinant of a square matrix over Z[x] by fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        return IntPolynomial.one()
    m = [row[:] for row in matrix]
    sign = 1
    prev = IntPolynomial.one()
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return IntPolynomial.zero()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = IntPolynomial.zero()
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def charpoly_int(matrix) -> IntPolynomial:
    """det(M - x I) for an integer matrix, exact over Z[x]."""
    n = len(matrix)
    x = IntPolynomial.x()
    entries = [
        [IntPolynomial.const(matrix[i][j]) - (x if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    return bareiss_det(entries)


def int_matrix_order_bound(c, cap: int):
    """Iterate powers c, c^2, ... up to cap; yields (k, power)."""
    n = len(c)
    power = [row[:] for row in c]
    for k in range(1, cap + 1):
        yield k, power
        power = mat_mul(power, c)
        if k > cap:
            break


def integer_root_multiplicities(p: IntPolynomial) -> tuple[dict[int, int], IntPolynomial]:
    """Integer roots of p with multiplicities, plus the integer-root-free cofactor."""
    roots: dict[int, int] = {}
    q = p
    if not q:
        return roots, q
    # strip powers of x first
    while q.coeffs and q.coeffs[0] == 0:
        roots[0] = roots.get(0, 0) + 1
        q = IntPolynomial(q.coeffs[1:])
    c0 = abs(q.coeffs[0]) if q.coeffs else 0
    candidates = set()
    d = 1
    while d * d <= c0:
        if c0 % d == 0:
            candidates.update((d, -d, c0 // d, -(c0 // d)))
        d += 1
    for r in sorted(candidates):
        while q.degree >= 1 and q(int(r)) == 0:
            q = q.exact_div(IntPolynomial((-r, 1)))
            roots[r] = roots.get(r, 0) + 1
    return roots, q

"""Matrices over small finite fields, encoded as tuples of canonical ints.

Uses the field's add/mul tables, so everything stays hashable and fast at
the scales this package enumerates (|GL_n(F_q)| <= 3e4).
"""

from .errors import BudgetError, ParameterError

MAX_GROUP_ORDER = 30_000


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(field, A, B):
    add, mul = field.tables()
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = 0
            for k in range(n):
                s = add[s][mul[A[i][k]][B[k][j]]]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def vec_mat(field, x, A):
    """Row-vector action x -> x A."""
    add, mul = field.tables()
    n = len(A)
    return tuple(
        _fold_add(add, [mul[x[i]][A[i][j]] for i in range(n)]) for j in range(n))


def _fold_add(add, items):
    s = 0
    for v in items:
        s = add[s][v]
    return s


def det(field, A):
    add, mul = field.tables()
    n = len(A)
    M = [list(r) for r in A]
    d = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = _times_minus_one(field, d)
        d = mul[d][M[c][c]]
        inv = field.from_int(M[c][c]).inv().canonical_int()
        for r in range(c + 1, n):
            if M[r][c]:
                factor = mul[M[r][c]][inv]
                for k in range(c, n):
                    M[r][k] = add[M[r][k]][_times_minus_one_val(field, mul[factor][M[c][k]])]
    return d


def _times_minus_one(field, v):
    return (field.from_int(v) * (-field.one())).canonical_int()


def _times_minus_one_val(field, v):
    return (-(field.from_int(v))).canonical_int()


def mat_inv(field, A):
    add, mul = field.tables()
    n = len(A)
    M = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = field.from_int(M[c][c]).inv().canonical_int()
        M[c] = [mul[inv][v] for v in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [add[M[r][k]][_times_minus_one_val(field, mul[f][M[c][k]])]
                        for k in range(2 * n)]
    return tuple(tuple(row[n:]) for row in M)


def mat_pow(field, A, e):
    n = len(A)
    out = identity(n)
    base = A
    while e:
        if e & 1:
            out = mat_mul(field, out, base)
        base = mat_mul(field, base, base)
        e >>= 1
    return out


def group_order(q, n):
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def invertible_matrices(field, n):
    """All of GL_n(F_q) in deterministic (lexicographic) order."""
    q = field.q
    if group_order(q, n) > MAX_GROUP_ORDER:
        raise BudgetError(f"|GL_{n}(F_{q})| = {group_order(q, n)} exceeds "
                          f"{MAX_GROUP_ORDER}")
    if n < 1:
        raise ParameterError("n must be >= 1")
    out = []
    total = q ** (n * n)
    for code in range(total):
        k = code
        rows = []
        for _ in range(n):
            row = []
            for _ in range(n):
                row.append(k % q)
                k //= q
            rows.append(tuple(row))
        A = tuple(rows)
        if det(field, A):
            out.append(A)
    return out

"""Dense linear algebra over prime fields, sized for small flag computations.

Matrices are tuples of row tuples with entries reduced mod q.  Complete
flags are represented by invertible matrices whose column spans give the
chain of subspaces; the canonical representative is the reduced
column-echelon-from-the-right form (pivot of each column is its lowest
nonzero entry, scaled to 1, with zeros to the right of every pivot in its
row), which is unique per flag.  Subspaces on their own are represented by
reduced row-echelon bases.
"""

from __future__ import annotations

from .errors import BadParameters, NotFlags

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]

FIELD_SIZE_LIMIT = 1 << 16


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def check_field(q: int) -> int:
    if not isinstance(q, int) or not is_prime(q) or q > FIELD_SIZE_LIMIT:
        raise BadParameters(f"field size must be a prime at most {FIELD_SIZE_LIMIT}: {q}")
    return q


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def antidiagonal_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i + j == n - 1 else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix, q: int) -> Matrix:
    n = len(a)
    m = len(b[0]) if b else 0
    inner = len(b)
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(inner)) % q for j in range(m))
        for i in range(n)
    )


def mat_vec(a: Matrix, v: Vector, q: int) -> Vector:
    return tuple(sum(row[t] * v[t] for t in range(len(v))) % q for row in a)


def rank(mat: Matrix, q: int) -> int:
    rows = [list(r) for r in mat]
    n_cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % q), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [x * inv % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % q:
                f = rows[i][c]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def is_invertible(mat: Matrix, q: int) -> bool:
    return len(mat) > 0 and len(mat) == len(mat[0]) and rank(mat, q) == len(mat)


# ---------------------------------------------------------------------------
# Flags.


def flag_canonical(mat: Matrix, q: int) -> Matrix:
    """Unique representative of the flag spanned by the columns of mat.

    Column c is reduced against the pivot rows of earlier columns, then
    scaled so its lowest nonzero entry is 1.  Right-multiplying by an
    invertible upper-triangular matrix does not change the result.
    """
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise NotFlags("flag matrices must be square and nonempty")
    cols = [[mat[r][c] % q for r in range(n)] for c in range(n)]
    pivots: list[int] = []
    for c in range(n):
        col = cols[c]
        for e in range(c):
            f = col[pivots[e]]
            if f:
                col = [(x - f * y) % q for x, y in zip(col, cols[e])]
        pivot = next((r for r in range(n - 1, -1, -1) if col[r]), None)
        if pivot is None or pivot in pivots:
            raise NotFlags("matrix is singular; columns do not span a flag")
        inv = pow(col[pivot], -1, q)
        cols[c] = [x * inv % q for x in col]
        pivots.append(pivot)
    return tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))


def standard_flag(n: int) -> Matrix:
    return identity_matrix(n)


def antistandard_flag(n: int) -> Matrix:
    return antidiagonal_matrix(n)


def flag_prefix(mat: Matrix, i: int) -> Matrix:
    """The first i columns of a flag matrix, as column vectors."""
    return tuple(tuple(mat[r][c] for r in range(len(mat))) for c in range(i))


# ---------------------------------------------------------------------------
# Subspaces as reduced row-echelon bases (rows are basis vectors).


def echelon_basis(vectors: tuple[Vector, ...] | list[Vector], q: int) -> Matrix:
    rows = [list(v) for v in vectors]
    if not rows:
        return ()
    n_cols = len(rows[0])
    out: list[list[int]] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % q), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [x * inv % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % q:
                f = rows[i][c]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        r += 1
    return tuple(tuple(row) for row in rows[:r])


def in_span(v: Vector, basis: Matrix, q: int) -> bool:
    vec = [x % q for x in v]
    for row in basis:
        lead = next(i for i, x in enumerate(row) if x)
        f = vec[lead]
        if f:
            vec = [(x - f * y) % q for x, y in zip(vec, row)]
    return not any(vec)


def span_sum(a: Matrix, b: Matrix, q: int) -> Matrix:
    return echelon_basis(tuple(a) + tuple(b), q)


def kernel_basis(mat: Matrix, q: int) -> tuple[Vector, ...]:
    """Basis of the right kernel {x : mat . x = 0}."""
    if not mat:
        return ()
    m = len(mat[0])
    rows = [list(r) for r in mat]
    pivot_col_of_row: list[int] = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % q), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [x * inv % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % q:
                f = rows[i][c]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        pivot_col_of_row.append(c)
        r += 1
    pivot_cols = set(pivot_col_of_row)
    free_cols = [c for c in range(m) if c not in pivot_cols]
    basis: list[Vector] = []
    for fc in free_cols:
        vec = [0] * m
        vec[fc] = 1
        for row_idx, pc in enumerate(pivot_col_of_row):
            vec[pc] = (-rows[row_idx][fc]) % q
        basis.append(tuple(vec))
    return tuple(basis)


def span_intersect(a: Matrix, b: Matrix, q: int) -> Matrix:
    """Reduced basis of the intersection of two row-space subspaces."""
    if not a or not b:
        return ()
    n = len(a[0])
    # Columns of the system are the basis vectors of a followed by those of
    # b negated; kernel elements give identical combinations on both sides.
    system = tuple(
        tuple([a[i][r] for i in range(len(a))] + [(-b[j][r]) % q for j in range(len(b))])
        for r in range(n)
    )
    vectors = []
    for coeffs in kernel_basis(system, q):
        vec = [0] * n
        for i in range(len(a)):
            if coeffs[i]:
                vec = [(x + coeffs[i] * y) % q for x, y in zip(vec, a[i])]
        vectors.append(tuple(vec))
    return echelon_basis(tuple(vectors), q)


def flag_subspace(flag: Matrix, i: int, q: int) -> Matrix:
    """Reduced basis of the i-th subspace (span of the first i columns)."""
    n = len(flag)
    return echelon_basis(tuple(tuple(flag[r][c] for r in range(n)) for c in range(i)), q)


def flag_replace(flag: Matrix, idx: int, new_subspace: Matrix, q: int) -> Matrix:
    """Flag equal to `flag` except the idx-th subspace becomes new_subspace.

    Requires subspace_{idx-1}(flag) < new_subspace < subspace_{idx+1}(flag);
    the surrounding subspaces pin everything else down.  Result is canonical.
    """
    n = len(flag)
    if not 1 <= idx <= n - 1:
        raise BadParameters(f"replaced subspace index out of range: {idx}")
    if len(new_subspace) != idx:
        raise BadParameters(
            f"replacement subspace has dimension {len(new_subspace)}, expected {idx}"
        )
    columns = [tuple(flag[r][c] for r in range(n)) for c in range(n)]
    chosen: list[Vector] = columns[: idx - 1]
    prefix = echelon_basis(tuple(chosen), q)
    extender = next(
        (v for v in new_subspace if not in_span(v, prefix, q)), None
    )
    if extender is None:
        raise BadParameters("replacement subspace does not extend the lower flag")
    chosen = chosen + [extender]
    current = echelon_basis(tuple(chosen), q)
    for col in columns[idx - 1 :]:
        if len(chosen) == n:
            break
        if not in_span(col, current, q):
            chosen.append(col)
            current = echelon_basis(tuple(chosen), q)
    if len(chosen) != n:
        raise NotFlags("could not complete the replaced flag")
    rebuilt = tuple(tuple(chosen[c][r] for c in range(n)) for r in range(n))
    return flag_canonical(rebuilt, q)

"""Braid variety presentations and finite-field point counts.

The elementary matrix B_j(z) is the identity except for the 2x2 block
[[z, -1], [1, 0]] in rows and columns j, j+1.  A braid word j_1..j_l gives
the symbolic product B_{j_1}(z_1)...B_{j_l}(z_l); the variety consists of
the z-tuples making w0 times that product upper-triangular, so its defining
equations are the strictly-lower entries of the twisted product.  The
double variant drops the w0 twist.

Point counting over a prime field runs a DFS over the z_i in letter order,
keeping the partial product.  Right multiplication by B_j only touches
columns j-1, j (0-based), so once no remaining letter touches a column its
strictly-lower entries are final and the branch dies unless they vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import finitefield
from .braid import BraidWord, technical_condition
from .errors import BadParameters, BudgetExceeded, DimensionMismatch
from .polynomials import Polynomial

DEFAULT_POINT_BUDGET = 5_000_000


def z_variables(count: int) -> tuple[str, ...]:
    return tuple(f"z{i}" for i in range(1, count + 1))


def elementary_matrix(n: int, j: int, z: Polynomial) -> tuple[tuple[Polynomial, ...], ...]:
    """B_j(z): identity with block [[z, -1], [1, 0]] at rows/columns j, j+1."""
    if not 1 <= j <= n - 1:
        raise BadParameters(f"block index out of range for n={n}: {j}")
    one = Polynomial.constant(1)
    zero = Polynomial.zero()
    rows = [[one if a == b else zero for b in range(n)] for a in range(n)]
    rows[j - 1][j - 1] = z
    rows[j - 1][j] = Polynomial.constant(-1)
    rows[j][j - 1] = one
    rows[j][j] = zero
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class BMatrix:
    """Symbolic product of elementary matrices, entries in z_1..z_l."""

    n: int
    entries: tuple[tuple[Polynomial, ...], ...]


def b_matrix_product(b: BraidWord) -> BMatrix:
    """The symbolic product B_{j_1}(z_1)...B_{j_l}(z_l)."""
    n = b.n
    zero = Polynomial.zero()
    product = [
        [Polynomial.constant(1) if i == j else zero for j in range(n)]
        for i in range(n)
    ]
    for idx, letter in enumerate(b.letters, start=1):
        factor = elementary_matrix(n, letter, Polynomial.variable(f"z{idx}"))
        product = [
            [
                sum(
                    (product[i][t] * factor[t][j] for t in range(n)),
                    start=zero,
                )
                for j in range(n)
            ]
            for i in range(n)
        ]
    return BMatrix(n, tuple(tuple(row) for row in product))


def determinant(m: BMatrix) -> Polynomial:
    """Symbolic determinant by cofactor expansion (small n only)."""

    def det(rows: tuple[tuple[Polynomial, ...], ...]) -> Polynomial:
        size = len(rows)
        if size == 1:
            return rows[0][0]
        total = Polynomial.zero()
        for i in range(size):
            minor = tuple(
                tuple(row[1:]) for r, row in enumerate(rows) if r != i
            )
            term = rows[i][0] * det(minor)
            total = total + term if i % 2 == 0 else total - term
        return total

    return det(m.entries)


@dataclass(frozen=True)
class BraidVarietyPresentation:
    """Defining equations of the twisted-triangularity variety."""

    braid: BraidWord
    variables: tuple[str, ...]
    equations: tuple[Polynomial, ...]
    dimension: int
    technical: bool


def presentation(b: BraidWord) -> BraidVarietyPresentation:
    """Equations: strictly-lower entries of w0 times the symbolic product.

    The dimension field reports l(beta) - n(n-1)/2, which is the variety
    dimension when the crossing condition holds (the variety is empty
    otherwise).
    """
    product = b_matrix_product(b)
    n = b.n
    twisted = tuple(product.entries[n - 1 - r] for r in range(n))
    equations = tuple(
        twisted[r][c] for r in range(n) for c in range(n) if r > c
    )
    return BraidVarietyPresentation(
        braid=b,
        variables=z_variables(len(b.letters)),
        equations=equations,
        dimension=len(b.letters) - n * (n - 1) // 2,
        technical=technical_condition(b),
    )


# ---------------------------------------------------------------------------
# Point counting.


def _last_touch(letters: tuple[int, ...], n: int) -> list[int]:
    """For each 0-based column, the index of the last letter touching it."""
    last = [-1] * n
    for idx, j in enumerate(letters):
        last[j - 1] = idx
        last[j] = idx
    return last


def _column_final_ok(cols: list[list[int]], c: int) -> bool:
    col = cols[c]
    return not any(col[r] for r in range(c + 1, len(col)))


def _masked_solutions(
    start: finitefield.Matrix,
    letters: tuple[int, ...],
    q: int,
    budget: int,
) -> Iterator[tuple[int, ...]]:
    """Assignments z making (start . product of B's) lower-vanish, by DFS."""
    n = len(start)
    last = _last_touch(letters, n)
    length = len(letters)
    final_at: dict[int, list[int]] = {}
    for c in range(n):
        final_at.setdefault(last[c], []).append(c)
    start_cols = [[start[r][c] % q for r in range(n)] for c in range(n)]
    if any(not _column_final_ok(start_cols, c) for c in final_at.get(-1, ())):
        return
    spent = [0]

    def walk(t: int, cols: list[list[int]], prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if t == length:
            yield prefix
            return
        j = letters[t]
        a, b = j - 1, j
        col_a, col_b = cols[a], cols[b]
        neg_a = [(-x) % q for x in col_a]
        for z in range(q):
            spent[0] += 1
            if spent[0] > budget:
                raise BudgetExceeded(f"point count exceeded budget {budget}")
            new_cols = list(cols)
            new_cols[a] = [(z * x + y) % q for x, y in zip(col_a, col_b)]
            new_cols[b] = neg_a
            if any(not _column_final_ok(new_cols, c) for c in final_at.get(t, ())):
                continue
            yield from walk(t + 1, new_cols, prefix + (z,))

    yield from walk(0, start_cols, ())


def count_points(b: BraidWord, q: int, budget: int = DEFAULT_POINT_BUDGET) -> int:
    """Number of F_q points of the braid variety of b."""
    finitefield.check_field(q)
    start = finitefield.antidiagonal_matrix(b.n)
    return sum(1 for _ in _masked_solutions(start, b.letters, q, budget))


def double_variety_count(b: BraidWord, q: int, budget: int = DEFAULT_POINT_BUDGET) -> int:
    """Number of F_q points of the untwisted (double) variant."""
    finitefield.check_field(q)
    start = finitefield.identity_matrix(b.n)
    return sum(1 for _ in _masked_solutions(start, b.letters, q, budget))


def enumerate_points(
    b: BraidWord, q: int, budget: int = DEFAULT_POINT_BUDGET
) -> Iterator[tuple[int, ...]]:
    """Yield the z-tuples of all F_q points of the braid variety of b."""
    finitefield.check_field(q)
    start = finitefield.antidiagonal_matrix(b.n)
    yield from _masked_solutions(start, b.letters, q, budget)


def is_point(b: BraidWord, zs: tuple[int, ...], q: int) -> bool:
    """Whether a z-tuple lies on the braid variety (direct evaluation)."""
    finitefield.check_field(q)
    if len(zs) != len(b.letters):
        raise DimensionMismatch(
            f"expected {len(b.letters)} coordinates, got {len(zs)}"
        )
    return _twisted_lower_vanishes(_numeric_product(b, zs, q), q)


def _twisted_lower_vanishes(m: finitefield.Matrix, q: int) -> bool:
    n = len(m)
    twisted = tuple(m[n - 1 - r] for r in range(n))
    return all(twisted[r][c] % q == 0 for r in range(n) for c in range(r))


def _numeric_product(b: BraidWord, zs: tuple[int, ...], q: int) -> finitefield.Matrix:
    m = finitefield.identity_matrix(b.n)
    for letter, z in zip(b.letters, zs):
        factor_rows = []
        n = b.n
        for a in range(n):
            row = [0] * n
            row[a] = 1
            factor_rows.append(row)
        factor_rows[letter - 1][letter - 1] = z % q
        factor_rows[letter - 1][letter] = (-1) % q
        factor_rows[letter][letter - 1] = 1
        factor_rows[letter][letter] = 0
        m = finitefield.mat_mul(m, tuple(tuple(r) for r in factor_rows), q)
    return m


@dataclass(frozen=True)
class FlagChain:
    """Canonical flags of the partial products at one variety point."""

    q: int
    flags: tuple[finitefield.Matrix, ...]


def flag_chain(b: BraidWord, zs: tuple[int, ...], q: int) -> FlagChain:
    """Flags F_0 = standard, F_t = flag of B_{j_1}(z_1)..B_{j_t}(z_t)."""
    finitefield.check_field(q)
    if len(zs) != len(b.letters):
        raise DimensionMismatch(
            f"expected {len(b.letters)} coordinates, got {len(zs)}"
        )
    n = b.n
    flags = [finitefield.flag_canonical(finitefield.identity_matrix(n), q)]
    cols = [[1 if r == c else 0 for r in range(n)] for c in range(n)]
    for letter, z in zip(b.letters, zs):
        a, bcol = letter - 1, letter
        col_a, col_b = cols[a], cols[bcol]
        cols[a] = [(z * x + y) % q for x, y in zip(col_a, col_b)]
        cols[bcol] = [(-x) % q for x in col_a]
        mat = tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))
        flags.append(finitefield.flag_canonical(mat, q))
    return FlagChain(q=q, flags=tuple(flags))

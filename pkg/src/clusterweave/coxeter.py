"""Symmetric-group combinatorics: words, Bruhat order, flag positions.

Permutations are tuples in one-line notation, 1-based values: images[i] is
the image of i+1.  A word [i1, ..., ik] multiplies the generators left to
right, s_{i1} ... s_{ik}; right multiplication by s_i swaps the entries in
positions i, i+1.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import finitefield
from .errors import BadIndex, BadParameters, DimensionMismatch, NotFlags

Permutation = tuple[int, ...]


def check_permutation(w: Sequence[int]) -> Permutation:
    images = tuple(w)
    n = len(images)
    if sorted(images) != list(range(1, n + 1)):
        raise BadParameters(f"not a permutation of 1..{n}: {images}")
    return images


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def longest_element(n: int) -> Permutation:
    """The permutation i -> n+1-i, the unique longest element."""
    return tuple(range(n, 0, -1))


def compose(u: Permutation, v: Permutation) -> Permutation:
    """(u . v)(i) = u(v(i))."""
    if len(u) != len(v):
        raise DimensionMismatch(f"sizes differ: {len(u)} vs {len(v)}")
    return tuple(u[x - 1] for x in v)


def inverse(w: Permutation) -> Permutation:
    out = [0] * len(w)
    for i, x in enumerate(w):
        out[x - 1] = i + 1
    return tuple(out)


def length(w: Permutation) -> int:
    """Number of inversions: pairs i < j with w(i) > w(j)."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def apply_generator(w: Permutation, i: int) -> Permutation:
    """Right multiplication w . s_i (swap positions i, i+1)."""
    if not 1 <= i <= len(w) - 1:
        raise BadIndex(f"generator index out of range: {i}")
    out = list(w)
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def from_word(word: Iterable[int], n: int) -> Permutation:
    w = identity(n)
    for i in word:
        w = apply_generator(w, i)
    return w


def reduced_word(w: Permutation) -> tuple[int, ...]:
    """Deterministic reduced word: repeatedly undo the smallest descent.

    >>> reduced_word((3, 2, 1))
    (1, 2, 1)
    >>> reduced_word((1, 2, 3))
    ()
    """
    current = w
    collected: list[int] = []
    n = len(w)
    while True:
        descent = next(
            (i for i in range(1, n) if current[i - 1] > current[i]), None
        )
        if descent is None:
            break
        current = apply_generator(current, descent)
        collected.append(descent)
    return tuple(reversed(collected))


def bruhat_leq(v: Permutation, w: Permutation) -> bool:
    """Bruhat order test by the rank-matrix criterion.

    v <= w iff for all i, j: #{a <= i : v(a) <= j} >= #{a <= i : w(a) <= j}.
    """
    n = len(v)
    if n != len(w):
        raise DimensionMismatch(f"sizes differ: {n} vs {len(w)}")
    for i in range(1, n):
        row_v = [0] * (n + 1)
        row_w = [0] * (n + 1)
        for a in range(i):
            row_v[v[a]] += 1
            row_w[w[a]] += 1
        acc_v = acc_w = 0
        for j in range(1, n + 1):
            acc_v += row_v[j]
            acc_w += row_w[j]
            if acc_v < acc_w:
                return False
    return True


def demazure_product(word: Iterable[int], n: int) -> Permutation:
    """Fold that applies each generator only when it increases length."""
    w = identity(n)
    for i in word:
        if not 1 <= i <= n - 1:
            raise BadIndex(f"generator index out of range for n={n}: {i}")
        if w[i - 1] < w[i]:
            w = apply_generator(w, i)
    return w


def is_k_grassmannian(w: Permutation, k: int) -> bool:
    """Whether w^{-1} increases on 1..k and on k+1..n."""
    n = len(w)
    if not 1 <= k < n:
        raise BadIndex(f"k must satisfy 1 <= k < n: {k}")
    winv = inverse(w)
    return all(winv[i] < winv[i + 1] for i in range(k - 1)) and all(
        winv[i] < winv[i + 1] for i in range(k, n - 1)
    )


def richardson_letters(w: Permutation, v: Permutation) -> tuple[int, ...]:
    """Letters of reduced_word(w) followed by reduced_word(v^{-1} w0)."""
    if len(w) != len(v):
        raise DimensionMismatch(f"sizes differ: {len(w)} vs {len(v)}")
    tail = compose(inverse(v), longest_element(len(v)))
    return reduced_word(w) + reduced_word(tail)


def flag_position(
    F: finitefield.Matrix, G: finitefield.Matrix, q: int
) -> Permutation:
    """The permutation w with F -> G in relative position w.

    Recovered from the jumps of dim(F^i intersect G^j) = i + j - rank of the
    juxtaposed column blocks.
    """
    finitefield.check_field(q)
    n = len(F)
    if n == 0 or len(G) != n:
        raise DimensionMismatch("flags must be square matrices of equal size")
    if not finitefield.is_invertible(F, q) or not finitefield.is_invertible(G, q):
        raise NotFlags("flag matrices must be invertible")

    def dim_intersection(i: int, j: int) -> int:
        if i == 0 or j == 0:
            return 0
        block = tuple(
            tuple(F[r][c] for c in range(i)) + tuple(G[r][c] for c in range(j))
            for r in range(n)
        )
        return i + j - finitefield.rank(block, q)

    images = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if dim_intersection(i, j) > dim_intersection(i - 1, j):
                images.append(j)
                break
    return check_permutation(images)

"""Positive braid words: relations, equality search, half twists, links.

Words live in the monoid on generators s_1..s_{n-1} subject to the far
commutation s_i s_j = s_j s_i for |i-j| > 1 and the braid relation
s_i s_j s_i = s_j s_i s_j for |i-j| = 1.  There are no inverses; relations
preserve length, so equality is decidable by closing a word under rewrites.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from . import coxeter
from .errors import (
    BadIndex,
    BadParameters,
    DimensionMismatch,
    ParseError,
    RewriteOverflow,
)

REWRITE_CAP = 10**6


@dataclass(frozen=True)
class BraidWord:
    """A positive braid word: strand count and generator letters."""

    n: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.n < 1:
            raise BadParameters(f"strand count must be positive: {self.n}")
        for s in self.letters:
            if not isinstance(s, int) or not 1 <= s <= self.n - 1:
                raise BadIndex(f"letter out of range for n={self.n}: {s}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if not isinstance(other, BraidWord):
            return NotImplemented
        if self.n != other.n:
            raise DimensionMismatch(f"strand counts differ: {self.n} vs {other.n}")
        return BraidWord(self.n, self.letters + other.letters)

    def permutation(self) -> coxeter.Permutation:
        return coxeter.from_word(self.letters, self.n)


def _rewrites(word: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if abs(a - b) > 1:
            yield word[:p] + (b, a) + word[p + 2 :]
    for p in range(len(word) - 2):
        a, b, c = word[p], word[p + 1], word[p + 2]
        if a == c and abs(a - b) == 1:
            yield word[:p] + (b, a, b) + word[p + 3 :]


def braid_equal(a: BraidWord, b: BraidWord, cap: int = REWRITE_CAP) -> bool:
    """Whether the relations connect a and b, by BFS over rewrites.

    Lengths and underlying permutations are relation invariants, so those
    are checked first.  Raises RewriteOverflow past `cap` visited words.
    """
    if a.n != b.n:
        raise DimensionMismatch(f"strand counts differ: {a.n} vs {b.n}")
    if len(a.letters) != len(b.letters):
        return False
    if a.permutation() != b.permutation():
        return False
    if a.letters == b.letters:
        return True
    seen = {a.letters}
    queue = deque([a.letters])
    while queue:
        current = queue.popleft()
        for image in _rewrites(current):
            if image in seen:
                continue
            if image == b.letters:
                return True
            if len(seen) >= cap:
                raise RewriteOverflow(f"rewrite closure exceeded {cap} words")
            seen.add(image)
            queue.append(image)
    return False


def rewrite_class(a: BraidWord, cap: int = REWRITE_CAP) -> frozenset[tuple[int, ...]]:
    """All letter sequences reachable from a under the relations."""
    seen = {a.letters}
    queue = deque([a.letters])
    while queue:
        current = queue.popleft()
        for image in _rewrites(current):
            if image not in seen:
                if len(seen) >= cap:
                    raise RewriteOverflow(f"rewrite closure exceeded {cap} words")
                seen.add(image)
                queue.append(image)
    return frozenset(seen)


def delta(n: int) -> BraidWord:
    """Half twist: (s_1..s_{n-1})(s_1..s_{n-2})...(s_1 s_2)(s_1).

    >>> delta(4).letters
    (1, 2, 3, 1, 2, 1)
    """
    if n < 2:
        raise BadParameters(f"half twist needs at least 2 strands: {n}")
    letters: list[int] = []
    for width in range(n - 1, 0, -1):
        letters.extend(range(1, width + 1))
    return BraidWord(n, tuple(letters))


def is_reduced_braid(b: BraidWord) -> bool:
    """Whether any two strands cross at most once.

    Equivalent to the word being a reduced word for its permutation.
    """
    return len(b.letters) == coxeter.length(b.permutation())


def technical_condition(b: BraidWord) -> bool:
    """Whether every pair of strands crosses: Demazure product is w0."""
    return coxeter.demazure_product(b.letters, b.n) == coxeter.longest_element(b.n)


def torus_link_braid(n: int, m: int) -> BraidWord:
    """The braid (s_1...s_{n-1})^m followed by the half twist.

    >>> torus_link_braid(2, 2).letters
    (1, 1, 1)
    """
    if n < 2 or m < n:
        raise BadParameters(f"need 2 <= n <= m, got n={n}, m={m}")
    run = tuple(range(1, n)) * m
    return BraidWord(n, run + delta(n).letters)


def richardson_braid(w: coxeter.Permutation, v: coxeter.Permutation) -> BraidWord:
    """Braid word realizing the Richardson data (w, v) on n strands.

    Concatenates a reduced word for w with one for v^{-1} w0; the resulting
    variety is nonempty exactly when v <= w in Bruhat order.
    """
    return BraidWord(len(w), coxeter.richardson_letters(w, v))


def finite_cluster_type_braid(family: str, rank: int) -> BraidWord:
    """Named braid words whose varieties carry finite-type cluster structures.

    family "A" (rank >= 1) on 2 strands; "D" (rank >= 4) and "E"
    (rank in {6,7,8}) on 3 strands.
    """
    if family == "A":
        if rank < 1:
            raise BadParameters(f"A-family rank must be >= 1: {rank}")
        return BraidWord(2, (1,) * (rank + 1)) * delta(2)
    if family == "D":
        if rank < 4:
            raise BadParameters(f"D-family rank must be >= 4: {rank}")
        return BraidWord(3, (1,) * (rank - 2) + (2, 1, 1, 2)) * delta(3)
    if family == "E":
        if rank not in (6, 7, 8):
            raise BadParameters(f"E-family rank must be 6, 7 or 8: {rank}")
        return BraidWord(3, (1,) * (rank - 3) + (2, 1, 1, 1, 2)) * delta(3)
    raise BadParameters(f"unknown family: {family!r}")


# ---------------------------------------------------------------------------
# Serialization.


def to_json_dict(b: BraidWord) -> dict:
    return {"n": b.n, "letters": list(b.letters)}


def to_json(b: BraidWord) -> str:
    return json.dumps(to_json_dict(b), sort_keys=True, separators=(", ", ": "))


def from_json_dict(data: object) -> BraidWord:
    if not isinstance(data, dict):
        raise ParseError("braid JSON must be an object")
    missing = {"n", "letters"} - set(data)
    if missing:
        raise ParseError(f"braid JSON missing fields: {sorted(missing)}")
    if not isinstance(data["n"], int) or not isinstance(data["letters"], list):
        raise ParseError("braid JSON fields have wrong types")
    return BraidWord(data["n"], tuple(data["letters"]))


def from_json(text: str) -> BraidWord:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return from_json_dict(data)


def parse_compact(text: str, n: int | None = None) -> BraidWord:
    """Parse words like "s1 s2 s1" or "1 2 1"; n defaults to max letter + 1."""
    letters: list[int] = []
    for piece in text.replace(",", " ").split():
        body = piece[1:] if piece[0] in ("s", "S") else piece
        if not body.isdigit():
            raise ParseError(f"bad braid letter: {piece!r}")
        letters.append(int(body))
    if n is None:
        n = max(letters, default=1) + 1
    return BraidWord(n, tuple(letters))


def format_compact(b: BraidWord) -> str:
    return " ".join(f"s{i}" for i in b.letters)

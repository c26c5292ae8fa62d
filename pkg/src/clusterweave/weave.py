"""Demazure weaves as move sequences on positive braid words.

A weave is a top word plus an ordered list of local rewrites: trivalent
(i, i) -> (i), tetravalent (i, j) -> (j, i) for distant letters, hexavalent
(i, j, i) -> (j, i, j) for neighboring letters.  The bottom word must be
reduced.  Trivalent moves each drop the length by one, so their count is
len(top) - len(bottom), the dimension of the variety of the top word.

Flag propagation: a point of the top variety gives a chain of flags, one
per region between letters.  Tetravalent and hexavalent moves recompute the
interior flags deterministically (the replaced subspace is pinned by the
outer flags: copied across for tetravalent, the sum or intersection of the
two outer i-subspaces for hexavalent).  A trivalent move is allowed on the
open locus where its two outer flags differ; counting the points that
survive every trivalent condition gives the torus count (q-1)^{trivalent}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from . import braidvar, finitefield
from .braid import BraidWord, is_reduced_braid, technical_condition
from .errors import (
    BadParameters,
    InvalidWeave,
    NotMutable,
    ParseError,
    SearchExhausted,
)

TRIVALENT = "tri"
TETRAVALENT = "tet"
HEXAVALENT = "hex"
_KINDS = (TRIVALENT, TETRAVALENT, HEXAVALENT)

BUILD_SEARCH_CAP = 100000


@dataclass(frozen=True)
class WeaveMove:
    """One local rewrite at a position in the current word."""

    kind: str
    pos: int

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise BadParameters(f"unknown move kind: {self.kind!r}")
        if not isinstance(self.pos, int) or self.pos < 0:
            raise BadParameters(f"move position must be a nonnegative int: {self.pos}")


def apply_move(word: tuple[int, ...], move: WeaveMove) -> tuple[int, ...]:
    """Rewrite one word slice; InvalidWeave when the precondition fails."""
    p = move.pos
    if move.kind == TRIVALENT:
        if p + 1 >= len(word):
            raise InvalidWeave(f"trivalent move at {p} runs past the word")
        if word[p] != word[p + 1]:
            raise InvalidWeave(
                f"trivalent move needs equal letters at {p}, got {word[p]}, {word[p + 1]}"
            )
        return word[:p] + word[p + 1 :]
    if move.kind == TETRAVALENT:
        if p + 1 >= len(word):
            raise InvalidWeave(f"tetravalent move at {p} runs past the word")
        if abs(word[p] - word[p + 1]) <= 1:
            raise InvalidWeave(
                f"tetravalent move needs distant letters at {p}, got {word[p]}, {word[p + 1]}"
            )
        return word[:p] + (word[p + 1], word[p]) + word[p + 2 :]
    if p + 2 >= len(word):
        raise InvalidWeave(f"hexavalent move at {p} runs past the word")
    i, j = word[p], word[p + 1]
    if word[p + 2] != i or abs(i - j) != 1:
        raise InvalidWeave(
            f"hexavalent move needs a pattern (i, i±1, i) at {p}, got {word[p:p + 3]}"
        )
    return word[:p] + (j, i, j) + word[p + 3 :]


@dataclass(frozen=True)
class Weave:
    """Top braid word plus the ordered move sequence."""

    top: BraidWord
    moves: tuple[WeaveMove, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "moves", tuple(self.moves))


def replay(w: Weave) -> list[tuple[int, ...]]:
    """Words before and after each move; InvalidWeave on a bad move."""
    words = [w.top.letters]
    for idx, move in enumerate(w.moves):
        try:
            words.append(apply_move(words[-1], move))
        except InvalidWeave as exc:
            raise InvalidWeave(f"move {idx}: {exc}") from exc
    return words


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    bottom: BraidWord | None
    failed_move: int | None
    error: str | None


def validate(w: Weave) -> ValidationResult:
    """Replay all moves and check the bottom word is reduced."""
    words = [w.top.letters]
    for idx, move in enumerate(w.moves):
        try:
            words.append(apply_move(words[-1], move))
        except InvalidWeave as exc:
            return ValidationResult(False, None, idx, str(exc))
    bottom = BraidWord(w.top.n, words[-1])
    if not is_reduced_braid(bottom):
        return ValidationResult(False, bottom, None, "bottom word is not reduced")
    return ValidationResult(True, bottom, None, None)


def bottom_word(w: Weave) -> BraidWord:
    result = validate(w)
    if not result.ok:
        raise InvalidWeave(result.error or "invalid weave")
    assert result.bottom is not None
    return result.bottom


def trivalent_count(w: Weave) -> int:
    """Number of trivalent moves; equals len(top) - len(bottom)."""
    result = validate(w)
    if not result.ok:
        raise InvalidWeave(result.error or "invalid weave")
    return sum(1 for m in w.moves if m.kind == TRIVALENT)


def _square_positions(word: tuple[int, ...]) -> list[int]:
    return [p for p in range(len(word) - 1) if word[p] == word[p + 1]]


def _length_preserving_rewrites(
    word: tuple[int, ...]
) -> Iterable[tuple[WeaveMove, tuple[int, ...]]]:
    for p in range(len(word) - 1):
        if abs(word[p] - word[p + 1]) > 1:
            move = WeaveMove(TETRAVALENT, p)
            yield move, apply_move(word, move)
    for p in range(len(word) - 2):
        if word[p + 2] == word[p] and abs(word[p] - word[p + 1]) == 1:
            move = WeaveMove(HEXAVALENT, p)
            yield move, apply_move(word, move)


def build_weave(b: BraidWord, policy: str = "leftmost") -> Weave:
    """Greedy weave on b: contract squares, searching for one when hidden.

    Repeatedly applies a trivalent move at the leftmost (or rightmost)
    square; when the word has no square but is not yet reduced, a BFS over
    tetravalent/hexavalent rewrites finds the nearest word exposing one.
    """
    if policy not in ("leftmost", "rightmost"):
        raise BadParameters(f"unknown policy: {policy!r}")
    pick = min if policy == "leftmost" else max
    moves: list[WeaveMove] = []
    word = b.letters
    while not is_reduced_braid(BraidWord(b.n, word)):
        squares = _square_positions(word)
        if not squares:
            word, path = _search_square(word, policy)
            moves.extend(path)
            squares = _square_positions(word)
        p = pick(squares)
        move = WeaveMove(TRIVALENT, p)
        moves.append(move)
        word = apply_move(word, move)
    return Weave(b, tuple(moves))


def _search_square(
    word: tuple[int, ...], policy: str
) -> tuple[tuple[int, ...], list[WeaveMove]]:
    """BFS through length-preserving rewrites to a word containing a square."""
    seen = {word}
    frontier: list[tuple[tuple[int, ...], list[WeaveMove]]] = [(word, [])]
    while frontier:
        next_frontier: list[tuple[tuple[int, ...], list[WeaveMove]]] = []
        for current, path in frontier:
            for move, image in _length_preserving_rewrites(current):
                if image in seen:
                    continue
                if len(seen) >= BUILD_SEARCH_CAP:
                    raise SearchExhausted(
                        f"no square found within {BUILD_SEARCH_CAP} words"
                    )
                seen.add(image)
                new_path = path + [move]
                if _square_positions(image):
                    return image, new_path
                next_frontier.append((image, new_path))
        frontier = next_frontier
    raise SearchExhausted("rewrite class contains no square")


def weave_mutate(w: Weave, at: int) -> Weave:
    """Swap the association of a double contraction of (i, i, i).

    `at` indexes the first of two consecutive trivalent moves that reduce
    three equal letters: [tri@p, tri@p] (left association) swaps with
    [tri@p+1, tri@p] (right association).  Involutive; top, bottom, and
    trivalent count are unchanged.
    """
    if not 0 <= at < len(w.moves) - 1:
        raise NotMutable(f"no consecutive move pair starting at index {at}")
    first, second = w.moves[at], w.moves[at + 1]
    if first.kind != TRIVALENT or second.kind != TRIVALENT:
        raise NotMutable("mutation needs two consecutive trivalent moves")
    words = replay(w)
    word = words[at]
    p = second.pos
    if first.pos == p:
        swapped = WeaveMove(TRIVALENT, p + 1)
    elif first.pos == p + 1:
        swapped = WeaveMove(TRIVALENT, p)
    else:
        raise NotMutable(
            f"moves at {at} do not form an association pair: {first.pos}, {second.pos}"
        )
    if not (p + 2 < len(word) and word[p] == word[p + 1] == word[p + 2]):
        raise NotMutable(f"no triple of equal letters at position {p}")
    moves = list(w.moves)
    moves[at] = swapped
    out = Weave(w.top, tuple(moves))
    validation = validate(out)
    if not validation.ok:
        raise NotMutable(f"mutated move sequence is invalid: {validation.error}")
    return out


# ---------------------------------------------------------------------------
# Torus counting by flag propagation.


def _propagate_flags(
    w: Weave, chain: tuple[finitefield.Matrix, ...], q: int
) -> bool:
    """Whether one variety point survives all trivalent openness checks."""
    word = list(w.top.letters)
    flags = list(chain)
    for move in w.moves:
        p = move.pos
        if move.kind == TRIVALENT:
            if flags[p] == flags[p + 2]:
                return False
            del word[p + 1]
            del flags[p + 1]
        elif move.kind == TETRAVALENT:
            j = word[p + 1]
            replacement = finitefield.flag_subspace(flags[p + 2], j, q)
            flags[p + 1] = finitefield.flag_replace(flags[p], j, replacement, q)
            word[p], word[p + 1] = word[p + 1], word[p]
        else:
            i, j = word[p], word[p + 1]
            outer_low = finitefield.flag_subspace(flags[p], i, q)
            outer_high = finitefield.flag_subspace(flags[p + 3], i, q)
            if j == i + 1:
                middle = finitefield.span_sum(outer_low, outer_high, q)
            else:
                middle = finitefield.span_intersect(outer_low, outer_high, q)
            if len(middle) != j:
                raise InvalidWeave(
                    f"flag propagation degenerated at a hexavalent move at {p}"
                )
            flags[p + 1] = finitefield.flag_replace(flags[p], j, middle, q)
            flags[p + 2] = finitefield.flag_replace(flags[p + 3], j, middle, q)
            word[p : p + 3] = [j, i, j]
    return True


def count_torus_points(
    w: Weave, q: int, budget: int = braidvar.DEFAULT_POINT_BUDGET
) -> int:
    """Points of the top variety passing every trivalent openness check.

    Equals (q-1)^trivalent_count: each trivalent move cuts out one
    multiplicative-group factor.
    """
    result = validate(w)
    if not result.ok:
        raise InvalidWeave(result.error or "invalid weave")
    if not technical_condition(w.top):
        raise BadParameters("top word does not satisfy the crossing condition")
    count = 0
    for zs in braidvar.enumerate_points(w.top, q, budget):
        chain = braidvar.flag_chain(w.top, zs, q)
        if _propagate_flags(w, chain.flags, q):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Serialization.


def to_json_dict(w: Weave) -> dict:
    return {
        "n": w.top.n,
        "top": list(w.top.letters),
        "moves": [{"kind": m.kind, "pos": m.pos} for m in w.moves],
    }


def to_json(w: Weave) -> str:
    return json.dumps(to_json_dict(w), sort_keys=True, separators=(", ", ": "))


def from_json_dict(data: object) -> Weave:
    if not isinstance(data, dict):
        raise ParseError("weave JSON must be an object")
    missing = {"n", "top", "moves"} - set(data)
    if missing:
        raise ParseError(f"weave JSON missing fields: {sorted(missing)}")
    if not isinstance(data["n"], int) or not isinstance(data["top"], list):
        raise ParseError("weave JSON fields have wrong types")
    moves = []
    if not isinstance(data["moves"], list):
        raise ParseError("weave field 'moves' must be a list")
    for entry in data["moves"]:
        if not isinstance(entry, dict) or {"kind", "pos"} - set(entry):
            raise ParseError(f"bad move entry: {entry!r}")
        moves.append(WeaveMove(entry["kind"], entry["pos"]))
    return Weave(BraidWord(data["n"], tuple(data["top"])), tuple(moves))


def from_json(text: str) -> Weave:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return from_json_dict(data)

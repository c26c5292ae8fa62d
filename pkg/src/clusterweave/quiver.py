"""Ice quivers: mutation, canonical forms, mutation classes, finite type.

A quiver is stored as the skew-symmetric matrix b with b[i][j] equal to the
number of arrows i -> j minus the number of arrows j -> i, together with the
set of frozen vertex labels.  Vertices are labeled 1..n everywhere in the
public API; the matrix is 0-indexed internally.

Arrows between two frozen vertices are stored but ignored both by mutation
and by canonicalization: the mutation rule never consults them for cluster
combinatorics, and conventions for them differ across the literature.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    BadIndex,
    BadParameters,
    NotMutable,
    ParseError,
    TooManyVertices,
)

BMatrix = tuple[tuple[int, ...], ...]

MUTATION_CLASS_CAP = 10000
CANONICAL_VERTEX_LIMIT = 8


@dataclass(frozen=True)
class IceQuiver:
    """Loop-free, 2-cycle-free directed multigraph with frozen vertices."""

    n: int
    frozen: frozenset[int]
    b: BMatrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "frozen", frozenset(self.frozen))
        object.__setattr__(self, "b", tuple(tuple(row) for row in self.b))
        if self.n < 0:
            raise BadParameters(f"vertex count must be nonnegative: {self.n}")
        if len(self.b) != self.n or any(len(row) != self.n for row in self.b):
            raise BadParameters(f"b must be a {self.n}x{self.n} matrix")
        for i in range(self.n):
            if self.b[i][i] != 0:
                raise BadParameters(f"loop at vertex {i + 1}")
            for j in range(self.n):
                if not isinstance(self.b[i][j], int):
                    raise BadParameters("b entries must be integers")
                if self.b[i][j] != -self.b[j][i]:
                    raise BadParameters(f"b is not skew-symmetric at ({i + 1},{j + 1})")
        for v in self.frozen:
            if not isinstance(v, int) or not 1 <= v <= self.n:
                raise BadIndex(f"frozen label out of range: {v}")

    @classmethod
    def from_arrows(
        cls,
        n: int,
        arrows: Iterable[tuple[int, int]],
        frozen: Iterable[int] = (),
    ) -> IceQuiver:
        """Build from a list of (source, target) arrows, labels 1..n."""
        b = [[0] * n for _ in range(n)]
        for i, j in arrows:
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise BadIndex(f"bad arrow ({i},{j})")
            b[i - 1][j - 1] += 1
            b[j - 1][i - 1] -= 1
        return cls(n, frozenset(frozen), tuple(tuple(row) for row in b))

    def is_frozen(self, label: int) -> bool:
        return label in self.frozen

    @property
    def mutable_labels(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.n + 1) if v not in self.frozen)

    def arrows(self) -> Iterator[tuple[int, int, int]]:
        """Yield (source, target, multiplicity) with positive multiplicity."""
        for i in range(self.n):
            for j in range(self.n):
                if self.b[i][j] > 0:
                    yield i + 1, j + 1, self.b[i][j]


def mutate_quiver(q: IceQuiver, k: int) -> IceQuiver:
    """Mutate at vertex label k (matrix mutation rule).

    The rule is b'[i][j] = -b[i][j] when k is i or j, and otherwise
    b[i][j] + sign(b[i][k]) * max(0, b[i][k] * b[k][j]).  Entries between two
    frozen vertices are left untouched.
    """
    if not 1 <= k <= q.n:
        raise BadIndex(f"vertex label out of range: {k}")
    if k in q.frozen:
        raise NotMutable(f"vertex {k} is frozen")
    ki = k - 1
    old = q.b
    new = [list(row) for row in old]
    for i in range(q.n):
        for j in range(q.n):
            if i == ki or j == ki:
                new[i][j] = -old[i][j]
            elif (i + 1) in q.frozen and (j + 1) in q.frozen:
                continue
            elif old[i][ki] * old[ki][j] > 0:
                sign = 1 if old[i][ki] > 0 else -1
                new[i][j] = old[i][j] + sign * old[i][ki] * old[ki][j]
    return IceQuiver(q.n, q.frozen, tuple(tuple(row) for row in new))


def canonical_form(q: IceQuiver) -> tuple:
    """Canonical key; equal keys iff the quivers differ by a relabeling.

    Relabelings permute mutable vertices among themselves and frozen
    vertices among themselves.  Entries between two frozen vertices are
    dropped from the key.  The search is exact and refuses quivers with more
    than a small number of vertices.
    """
    if q.n > CANONICAL_VERTEX_LIMIT:
        raise TooManyVertices(
            f"canonical form supports at most {CANONICAL_VERTEX_LIMIT} vertices, got {q.n}"
        )
    mutable = [v - 1 for v in range(1, q.n + 1) if v not in q.frozen]
    frozen = [v - 1 for v in range(1, q.n + 1) if v in q.frozen]
    m = len(mutable)
    best: tuple | None = None
    for pm in itertools.permutations(mutable):
        for pf in itertools.permutations(frozen):
            order = pm + pf
            # Positions at or past m are frozen; their mutual entries are
            # excluded from the key.
            flat = tuple(
                0 if i >= m and j >= m else q.b[order[i]][order[j]]
                for i in range(q.n)
                for j in range(q.n)
            )
            if best is None or flat < best:
                best = flat
    return (q.n, m, best if best is not None else ())


@dataclass(frozen=True)
class MutationClassResult:
    """BFS closure of a quiver under mutation, up to relabeling."""

    keys: frozenset[tuple]
    representatives: tuple[IceQuiver, ...]
    exhausted: bool

    @property
    def size(self) -> int:
        return len(self.keys)


def mutation_class(q: IceQuiver, cap: int = MUTATION_CLASS_CAP) -> MutationClassResult:
    """All quivers reachable by mutation, deduplicated by canonical form.

    Stops once more than `cap` distinct canonical keys appear; `exhausted`
    reports whether the class closed under mutation within the cap.
    """
    if cap < 1:
        raise BadParameters(f"cap must be positive: {cap}")
    start_key = canonical_form(q)
    seen: dict[tuple, IceQuiver] = {start_key: q}
    frontier = [q]
    exhausted = True
    while frontier:
        next_frontier: list[IceQuiver] = []
        for current in frontier:
            for k in current.mutable_labels:
                image = mutate_quiver(current, k)
                key = canonical_form(image)
                if key in seen:
                    continue
                if len(seen) >= cap:
                    exhausted = False
                    next_frontier = []
                    frontier = []
                    break
                seen[key] = image
                next_frontier.append(image)
            else:
                continue
            break
        frontier = next_frontier
    return MutationClassResult(
        keys=frozenset(seen),
        representatives=tuple(seen.values()),
        exhausted=exhausted,
    )


def _components(adjacency: dict[int, set[int]]) -> list[list[int]]:
    remaining = set(adjacency)
    out: list[list[int]] = []
    while remaining:
        root = min(remaining)
        comp = [root]
        remaining.discard(root)
        queue = [root]
        while queue:
            v = queue.pop()
            for u in adjacency[v]:
                if u in remaining:
                    remaining.discard(u)
                    comp.append(u)
                    queue.append(u)
        out.append(sorted(comp))
    return out


def _dynkin_component_label(nodes: list[int], adjacency: dict[int, set[int]]) -> str | None:
    size = len(nodes)
    edge_count = sum(len(adjacency[v]) for v in nodes) // 2
    if edge_count != size - 1:
        return None
    degrees = {v: len(adjacency[v]) for v in nodes}
    if any(d > 3 for d in degrees.values()):
        return None
    branch = [v for v in nodes if degrees[v] == 3]
    if not branch:
        return f"A{size}"
    if len(branch) > 1:
        return None
    center = branch[0]
    legs = []
    for start in adjacency[center]:
        length = 1
        prev, cur = center, start
        while True:
            nxt = [u for u in adjacency[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] != 1:
        return None
    if legs[1] == 1:
        return f"D{size}"
    if legs[1] == 2 and legs[2] in (2, 3, 4):
        return {2: "E6", 3: "E7", 4: "E8"}[legs[2]]
    return None


def dynkin_label(q: IceQuiver) -> str | None:
    """Simply-laced Dynkin label of the underlying graph, or None.

    Requires every |b[i][j]| <= 1; disconnected unions are labeled as
    products like "A1 x A2", components sorted by (letter, rank); the empty
    quiver is labeled "trivial".
    """
    if q.n == 0:
        return "trivial"
    adjacency: dict[int, set[int]] = {v: set() for v in range(q.n)}
    for i in range(q.n):
        for j in range(i + 1, q.n):
            if abs(q.b[i][j]) > 1:
                return None
            if q.b[i][j] != 0:
                adjacency[i].add(j)
                adjacency[j].add(i)
    labels = []
    for comp in _components(adjacency):
        label = _dynkin_component_label(comp, adjacency)
        if label is None:
            return None
        labels.append(label)
    labels.sort(key=lambda s: (s[0], int(s[1:])))
    return " x ".join(labels)


def principal_part(q: IceQuiver) -> IceQuiver:
    """The quiver induced on mutable vertices, with nothing frozen."""
    keep = [v - 1 for v in range(1, q.n + 1) if v not in q.frozen]
    b = tuple(tuple(q.b[i][j] for j in keep) for i in keep)
    return IceQuiver(len(keep), frozenset(), b)


@dataclass(frozen=True)
class FiniteTypeResult:
    """Outcome of finite-type classification.

    `label` is the Dynkin label when some mutation-class member is an
    orientation of a disjoint union of Dynkin diagrams, else None.
    `exhausted` tells whether the class search closed; when it did and no
    label was found, the quiver is genuinely not of finite type.
    """

    label: str | None
    searched: int
    exhausted: bool

    @property
    def finite(self) -> bool:
        return self.label is not None


def finite_type(q: IceQuiver, cap: int = MUTATION_CLASS_CAP) -> FiniteTypeResult:
    """Classify the mutable part of q, searching its mutation class."""
    core = principal_part(q)
    label = dynkin_label(core)
    if label is not None:
        return FiniteTypeResult(label=label, searched=1, exhausted=True)
    if cap < 1:
        raise BadParameters(f"cap must be positive: {cap}")
    seen: dict[tuple, IceQuiver] = {canonical_form(core): core}
    frontier = [core]
    exhausted = True
    while frontier:
        next_frontier: list[IceQuiver] = []
        for current in frontier:
            for k in current.mutable_labels:
                image = mutate_quiver(current, k)
                key = canonical_form(image)
                if key in seen:
                    continue
                if len(seen) >= cap:
                    return FiniteTypeResult(label=None, searched=len(seen), exhausted=False)
                seen[key] = image
                label = dynkin_label(image)
                if label is not None:
                    return FiniteTypeResult(label=label, searched=len(seen), exhausted=False)
                next_frontier.append(image)
        frontier = next_frontier
    return FiniteTypeResult(label=None, searched=len(seen), exhausted=True)


# ---------------------------------------------------------------------------
# Serialization.


def to_json_dict(q: IceQuiver) -> dict:
    return {
        "n": q.n,
        "frozen": sorted(q.frozen),
        "b": [list(row) for row in q.b],
    }


def to_json(q: IceQuiver) -> str:
    return json.dumps(to_json_dict(q), sort_keys=True, separators=(", ", ": "))


def from_json_dict(data: object) -> IceQuiver:
    if not isinstance(data, dict):
        raise ParseError("quiver JSON must be an object")
    missing = {"n", "frozen", "b"} - set(data)
    if missing:
        raise ParseError(f"quiver JSON missing fields: {sorted(missing)}")
    n = data["n"]
    if not isinstance(n, int):
        raise ParseError("quiver field 'n' must be an integer")
    frozen = data["frozen"]
    b = data["b"]
    if not isinstance(frozen, list) or not isinstance(b, list):
        raise ParseError("quiver fields 'frozen' and 'b' must be lists")
    try:
        return IceQuiver(n, frozenset(frozen), tuple(tuple(row) for row in b))
    except TypeError as exc:
        raise ParseError(f"malformed quiver JSON: {exc}") from exc


def from_json(text: str) -> IceQuiver:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return from_json_dict(data)


def to_dot(q: IceQuiver) -> str:
    """DOT graph: mutable vertices as circles, frozen as squares."""
    lines = ["digraph quiver {"]
    for v in range(1, q.n + 1):
        shape = "box" if v in q.frozen else "circle"
        lines.append(f"  v{v} [shape={shape}];")
    for i, j, mult in q.arrows():
        suffix = f' [label="{mult}"]' if mult > 1 else ""
        lines.append(f"  v{i} -> v{j}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"

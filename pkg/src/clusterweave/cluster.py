"""Seeds and seed mutation via the binomial exchange relation.

A seed couples an ice quiver with one rational function per vertex.  Seed
mutation at a mutable vertex k mutates the quiver and replaces the k-th
entry by (in + out) / x_k where `in` multiplies the entries at sources of
arrows into k and `out` those at targets of arrows out of k, with arrow
multiplicities as exponents.

Seeds reachable from an initial cluster of plain variables keep monomial
denominators (every entry is a Laurent polynomial in the initial
variables); mutation exploits that by dividing out the monomial-free core
of x_k's numerator exactly instead of running a full GCD.  A general GCD
fallback keeps arbitrary seeds correct.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable

from .errors import BadParameters, NotPolynomial, ParseError, TooManyVertices
from .polynomials import (
    Polynomial,
    RationalFunction,
    exact_div,
    format_rational,
    gcd,
    has_positive_coeffs,
    is_laurent,
    parse_rational,
    split_monomial_content,
)
from . import quiver as quiver_mod
from .quiver import IceQuiver, mutate_quiver

EXCHANGE_GRAPH_CAP = 10000
VERIFY_DEPTH = 6
SEED_VERTEX_LIMIT = 8


@dataclass(frozen=True)
class Seed:
    """An ice quiver with one rational function per vertex."""

    quiver: IceQuiver
    cluster: tuple[RationalFunction, ...]

    def __post_init__(self) -> None:
        entries = tuple(
            e if isinstance(e, RationalFunction) else RationalFunction._coerce(e)
            for e in self.cluster
        )
        if any(e is None for e in entries):
            raise BadParameters("cluster entries must be rational functions")
        object.__setattr__(self, "cluster", entries)
        if len(entries) != self.quiver.n:
            raise BadParameters(
                f"cluster has {len(entries)} entries for {self.quiver.n} vertices"
            )

    def entry(self, label: int) -> RationalFunction:
        return self.cluster[label - 1]


def initial_seed(q: IceQuiver, prefix: str = "x") -> Seed:
    """Seed whose entries are the raw variables prefix1..prefixN."""
    entries = tuple(
        RationalFunction.variable(f"{prefix}{i}") for i in range(1, q.n + 1)
    )
    return Seed(q, entries)


def exchange_monomials(s: Seed, k: int) -> tuple[RationalFunction, RationalFunction]:
    """The two monomial products (in, out) of the exchange relation at k.

    x_k * x'_k = in + out exactly; exposed separately so tests can verify
    mutation against the defining relation by an independent route.
    """
    col = [s.quiver.b[i][k - 1] for i in range(s.quiver.n)]
    into = RationalFunction.constant(1)
    out = RationalFunction.constant(1)
    for i, e in enumerate(col):
        if e > 0:
            into = into * s.cluster[i] ** e
        elif e < 0:
            out = out * s.cluster[i] ** (-e)
    return into, out


def mutate_seed(s: Seed, k: int) -> Seed:
    """Mutate the seed at mutable vertex label k."""
    new_quiver = mutate_quiver(s.quiver, k)  # validates k
    col = [s.quiver.b[i][k - 1] for i in range(s.quiver.n)]
    num_in = Polynomial.constant(1)
    den_in = Polynomial.constant(1)
    num_out = Polynomial.constant(1)
    den_out = Polynomial.constant(1)
    for i, e in enumerate(col):
        if e > 0:
            num_in = num_in * s.cluster[i].numerator ** e
            den_in = den_in * s.cluster[i].denominator ** e
        elif e < 0:
            num_out = num_out * s.cluster[i].numerator ** (-e)
            den_out = den_out * s.cluster[i].denominator ** (-e)
    xk = s.cluster[k - 1]
    if xk.is_zero():
        raise ZeroDivisionError("exchange relation divides by a zero entry")
    total_num = num_in * den_out + num_out * den_in
    mono, core = split_monomial_content(xk.numerator)
    if core == Polynomial.constant(1):
        replacement = RationalFunction(
            total_num * xk.denominator, den_in * den_out * xk.numerator
        )
    else:
        try:
            quotient = exact_div(total_num, core)
            replacement = RationalFunction(
                quotient * xk.denominator, den_in * den_out * mono
            )
        except ArithmeticError:
            replacement = RationalFunction(
                total_num * xk.denominator, den_in * den_out * xk.numerator
            )
    entries = list(s.cluster)
    entries[k - 1] = replacement
    return Seed(new_quiver, tuple(entries))


# ---------------------------------------------------------------------------
# Seed identification up to relabeling of mutable vertices.


def canonical_seed_key(s: Seed) -> tuple:
    """Key equal for two seeds iff one is a mutable-vertex relabeling of the
    other (cluster entries permuted together with quiver vertices; frozen
    vertices stay put)."""
    n = s.quiver.n
    mutable = [v - 1 for v in range(1, n + 1) if v not in s.quiver.frozen]
    if len(mutable) > SEED_VERTEX_LIMIT:
        raise TooManyVertices(
            f"seed canonicalization supports at most {SEED_VERTEX_LIMIT} mutable vertices"
        )
    entry_strings = [format_rational(e) for e in s.cluster]
    b = s.quiver.b
    frozen = s.quiver.frozen
    best: tuple | None = None
    for assignment in itertools.permutations(mutable):
        inv = list(range(n))
        for slot, old in zip(mutable, assignment):
            inv[slot] = old
        entries = tuple(entry_strings[inv[p]] for p in range(n))
        flat = tuple(
            0 if (p + 1) in frozen and (r + 1) in frozen else b[inv[p]][inv[r]]
            for p in range(n)
            for r in range(n)
        )
        candidate = (entries, flat)
        if best is None or candidate < best:
            best = candidate
    return (n, tuple(sorted(frozen)), best)


@dataclass(frozen=True)
class ExchangeGraphReport:
    """BFS closure of a seed under mutation, up to seed relabeling."""

    seeds: tuple[Seed, ...]
    edges: tuple[tuple[int, int], ...]
    cluster_variables: tuple[RationalFunction, ...]
    exhausted: bool

    @property
    def size(self) -> int:
        return len(self.seeds)


def exchange_graph(s: Seed, cap: int = EXCHANGE_GRAPH_CAP) -> ExchangeGraphReport:
    """Explore all seeds reachable by mutation, deduplicated canonically.

    Stops adding seeds past `cap`; edges join discovered seeds that differ
    by one mutation.  Cluster variables collect the deduplicated mutable
    entries across all discovered seeds, in discovery order.
    """
    if cap < 1:
        raise BadParameters(f"cap must be positive: {cap}")
    start_key = canonical_seed_key(s)
    index_of: dict[tuple, int] = {start_key: 0}
    seeds = [s]
    edges: set[tuple[int, int]] = set()
    variables: list[RationalFunction] = []
    seen_vars: set[RationalFunction] = set()
    exhausted = True

    def collect(seed: Seed) -> None:
        for label in seed.quiver.mutable_labels:
            entry = seed.entry(label)
            if entry not in seen_vars:
                seen_vars.add(entry)
                variables.append(entry)

    collect(s)
    frontier = [(0, s)]
    while frontier:
        next_frontier: list[tuple[int, Seed]] = []
        for idx, current in frontier:
            for k in current.quiver.mutable_labels:
                image = mutate_seed(current, k)
                key = canonical_seed_key(image)
                if key in index_of:
                    j = index_of[key]
                    if j != idx:
                        edges.add((min(idx, j), max(idx, j)))
                    continue
                if len(seeds) >= cap:
                    exhausted = False
                    continue
                index_of[key] = len(seeds)
                seeds.append(image)
                collect(image)
                edges.add((idx, len(seeds) - 1))
                next_frontier.append((len(seeds) - 1, image))
        frontier = next_frontier
    return ExchangeGraphReport(
        seeds=tuple(seeds),
        edges=tuple(sorted(edges)),
        cluster_variables=tuple(variables),
        exhausted=exhausted,
    )


# ---------------------------------------------------------------------------
# Verification suites.


@dataclass(frozen=True)
class LaurentReport:
    """Outcome of the Laurent-and-positivity sweep."""

    ok: bool
    seeds_checked: int
    variables_checked: int
    counterexample: dict | None


def verify_laurent_positive(s: Seed, depth: int = VERIFY_DEPTH) -> LaurentReport:
    """Check every cluster variable within `depth` mutations of s.

    Every mutable entry of every reachable seed must expand as a Laurent
    polynomial with positive coefficients in the initial variables.  A
    counterexample reports the mutation sequence that produced it.
    """
    if depth < 0:
        raise BadParameters(f"depth must be nonnegative: {depth}")
    seen = {canonical_seed_key(s)}
    frontier: list[tuple[Seed, tuple[int, ...]]] = [(s, ())]
    seeds_checked = 0
    variables_checked = 0

    def failure(seed: Seed, path: tuple[int, ...], label: int) -> dict:
        return {
            "sequence": list(path),
            "vertex": label,
            "variable": format_rational(seed.entry(label)),
        }

    for level in range(depth + 1):
        next_frontier: list[tuple[Seed, tuple[int, ...]]] = []
        for seed, path in frontier:
            seeds_checked += 1
            for label in seed.quiver.mutable_labels:
                entry = seed.entry(label)
                variables_checked += 1
                if not is_laurent(entry) or not has_positive_coeffs(entry):
                    return LaurentReport(False, seeds_checked, variables_checked, failure(seed, path, label))
            if level == depth:
                continue
            for k in seed.quiver.mutable_labels:
                image = mutate_seed(seed, k)
                key = canonical_seed_key(image)
                if key in seen:
                    continue
                seen.add(key)
                next_frontier.append((image, path + (k,)))
        frontier = next_frontier
    return LaurentReport(True, seeds_checked, variables_checked, None)


@dataclass(frozen=True)
class StarfishReport:
    """Pairwise and exchange coprimality of a seed's Laurent numerators."""

    ok: bool
    pair_failures: tuple[tuple[int, int], ...]
    exchange_failures: tuple[int, ...]


def starfish_coprimality(s: Seed) -> StarfishReport:
    """Coprimality checks behind the local-ring gluing criterion.

    Entries must be Laurent (monomial denominators); two entries count as
    coprime when the gcd of their numerators is constant.  Checks all pairs
    of mutable entries and each pair (x_k, x'_k).
    """
    for label in range(1, s.quiver.n + 1):
        if not s.entry(label).denominator.is_monomial():
            raise NotPolynomial(
                f"entry {label} has a non-monomial denominator: {s.entry(label)}"
            )
    mutable = s.quiver.mutable_labels
    pair_failures = []
    for a, b in itertools.combinations(mutable, 2):
        g = gcd(s.entry(a).numerator, s.entry(b).numerator)
        if not g.is_constant():
            pair_failures.append((a, b))
    exchange_failures = []
    for k in mutable:
        image = mutate_seed(s, k)
        g = gcd(s.entry(k).numerator, image.entry(k).numerator)
        if not g.is_constant():
            exchange_failures.append(k)
    return StarfishReport(
        ok=not pair_failures and not exchange_failures,
        pair_failures=tuple(pair_failures),
        exchange_failures=tuple(exchange_failures),
    )


# ---------------------------------------------------------------------------
# Serialization.


def to_json_dict(s: Seed) -> dict:
    return {
        "quiver": quiver_mod.to_json_dict(s.quiver),
        "cluster": [format_rational(e) for e in s.cluster],
    }


def to_json(s: Seed) -> str:
    return json.dumps(to_json_dict(s), sort_keys=True, separators=(", ", ": "))


def from_json_dict(data: object) -> Seed:
    if not isinstance(data, dict):
        raise ParseError("seed JSON must be an object")
    missing = {"quiver", "cluster"} - set(data)
    if missing:
        raise ParseError(f"seed JSON missing fields: {sorted(missing)}")
    q = quiver_mod.from_json_dict(data["quiver"])
    entries = data["cluster"]
    if not isinstance(entries, list):
        raise ParseError("seed field 'cluster' must be a list")
    return Seed(q, tuple(parse_rational(e) for e in entries))


def from_json(text: str) -> Seed:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return from_json_dict(data)


def report_to_json_dict(report: ExchangeGraphReport) -> dict:
    return {
        "seeds": [to_json_dict(seed) for seed in report.seeds],
        "edges": [list(e) for e in report.edges],
        "cluster_variables": [format_rational(v) for v in report.cluster_variables],
        "exhausted": report.exhausted,
    }

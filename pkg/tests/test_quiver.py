import random

import pytest

from clusterweave.errors import (
    BadIndex,
    BadParameters,
    NotMutable,
    ParseError,
    TooManyVertices,
)
from clusterweave.quiver import (
    IceQuiver,
    canonical_form,
    dynkin_label,
    finite_type,
    from_json,
    mutate_quiver,
    mutation_class,
    principal_part,
    to_dot,
    to_json,
)


def path_quiver(n, frozen=()):
    return IceQuiver.from_arrows(n, [(i, i + 1) for i in range(1, n)], frozen)


def markov_quiver():
    b = ((0, 2, -2), (-2, 0, 2), (2, -2, 0))
    return IceQuiver(3, frozenset(), b)


def random_quiver(rng, max_n=6, max_mult=3):
    n = rng.randint(1, max_n)
    frozen = frozenset(rng.sample(range(1, n + 1), rng.randint(0, n - 1)) if n > 1 else [])
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-max_mult, max_mult)
            b[i][j] = v
            b[j][i] = -v
    return IceQuiver(n, frozen, tuple(tuple(row) for row in b))


def test_constructor_validates():
    with pytest.raises(BadParameters):
        IceQuiver(2, frozenset(), ((0, 1), (1, 0)))  # not skew-symmetric
    with pytest.raises(BadParameters):
        IceQuiver(2, frozenset(), ((1, 0), (0, 0)))  # nonzero diagonal
    with pytest.raises(BadIndex):
        IceQuiver(2, frozenset({3}), ((0, 0), (0, 0)))  # frozen label range


def test_mutation_golden_path():
    q = path_quiver(3)
    m = mutate_quiver(q, 2)
    assert set(m.arrows()) == {(2, 1, 1), (3, 2, 1), (1, 3, 1)}


def test_mutation_rejects_frozen_and_bad_labels():
    q = path_quiver(3, frozen={3})
    with pytest.raises(NotMutable):
        mutate_quiver(q, 3)
    with pytest.raises(BadIndex):
        mutate_quiver(q, 4)


def test_mutation_is_involutive_on_random_quivers():
    rng = random.Random(7)
    for _ in range(200):
        q = random_quiver(rng)
        mutable = sorted(q.mutable_labels)
        if not mutable:
            continue
        k = rng.choice(mutable)
        m = mutate_quiver(mutate_quiver(q, k), k)
        assert m == q


def test_mutation_preserves_skew_symmetry_and_frozen_set():
    rng = random.Random(11)
    for _ in range(200):
        q = random_quiver(rng)
        mutable = sorted(q.mutable_labels)
        if not mutable:
            continue
        m = mutate_quiver(q, rng.choice(mutable))
        assert m.frozen == q.frozen
        for i in range(m.n):
            assert m.b[i][i] == 0
            for j in range(m.n):
                assert m.b[i][j] == -m.b[j][i]


def permute_quiver(q, perm):
    # perm maps old label -> new label and must fix the frozen set setwise
    n = q.n
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            b[perm[i + 1] - 1][perm[j + 1] - 1] = q.b[i][j]
    return IceQuiver(n, frozenset(perm[v] for v in q.frozen), tuple(tuple(r) for r in b))


def test_canonical_form_is_relabeling_invariant():
    rng = random.Random(13)
    for _ in range(100):
        q = random_quiver(rng, max_n=5)
        mutable = sorted(q.mutable_labels)
        frozen = sorted(q.frozen)
        pm = rng.sample(mutable, len(mutable))
        pf = rng.sample(frozen, len(frozen))
        perm = dict(zip(mutable, pm)) | dict(zip(frozen, pf))
        assert canonical_form(permute_quiver(q, perm)) == canonical_form(q)


def test_canonical_form_separates_non_isomorphic():
    a = path_quiver(3)
    b = IceQuiver.from_arrows(3, [(1, 2), (2, 3), (3, 1)])
    assert canonical_form(a) != canonical_form(b)


def test_canonical_form_refuses_large_quivers():
    with pytest.raises(TooManyVertices):
        canonical_form(path_quiver(9))


def test_mutation_class_a2_has_two_quivers():
    result = mutation_class(path_quiver(2))
    assert result.exhausted
    assert result.size == 1  # 1->2 and 2->1 are the same up to relabeling


def test_mutation_class_markov_is_closed():
    result = mutation_class(markov_quiver())
    assert result.exhausted
    assert result.size == 1


def test_mutation_class_respects_cap():
    q3 = path_quiver(3)
    assert mutation_class(q3).size == 4  # three path orientations plus the cycle
    result = mutation_class(q3, cap=1)
    assert not result.exhausted
    assert result.size == 1
    with pytest.raises(BadParameters):
        mutation_class(q3, cap=0)


def test_dynkin_labels():
    assert dynkin_label(path_quiver(4)) == "A4"
    d4 = IceQuiver.from_arrows(4, [(1, 2), (3, 2), (4, 2)])
    assert dynkin_label(d4) == "D4"
    e6 = IceQuiver.from_arrows(6, [(1, 2), (2, 3), (3, 4), (4, 5), (6, 3)])
    assert dynkin_label(e6) == "E6"
    two = IceQuiver.from_arrows(3, [(1, 2)])
    assert dynkin_label(two) == "A1 x A2"
    assert dynkin_label(IceQuiver(0, frozenset(), ())) == "trivial"
    assert dynkin_label(markov_quiver()) is None


def test_finite_type_on_paths():
    for n in range(1, 7):
        result = finite_type(path_quiver(n))
        assert result.finite
        assert result.label == f"A{n}"


def test_finite_type_markov_is_not_finite():
    result = finite_type(markov_quiver())
    assert not result.finite
    assert result.exhausted  # the class is closed, so the search completes


def test_finite_type_ignores_frozen_vertices():
    q = path_quiver(3, frozen={3})
    result = finite_type(q)
    assert result.finite
    assert result.label == "A2"
    assert principal_part(q) == path_quiver(2)


def test_finite_type_is_mutation_invariant():
    rng = random.Random(17)
    q = IceQuiver.from_arrows(4, [(1, 2), (2, 3), (2, 4)])
    label = finite_type(q).label
    assert label == "D4"
    for _ in range(20):
        q = mutate_quiver(q, rng.choice(sorted(q.mutable_labels)))
        assert finite_type(q).label == label


def test_json_round_trip():
    rng = random.Random(19)
    for _ in range(50):
        q = random_quiver(rng)
        assert from_json(to_json(q)) == q


def test_json_rejects_bad_payloads():
    for bad in ("[]", '{"n": 2}'):
        with pytest.raises(ParseError):
            from_json(bad)
    with pytest.raises(BadParameters):
        from_json('{"n": 2, "frozen": [], "b": [[0, 1], [1, 0]]}')


def test_dot_export_marks_frozen_as_boxes():
    text = to_dot(path_quiver(2, frozen={2}))
    assert "v1 [shape=circle]" in text
    assert "v2 [shape=box]" in text
    assert "v1 -> v2" in text

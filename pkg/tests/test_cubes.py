import random
from fractions import Fraction as Fr
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from factoperad import cubes
from factoperad.cubes import IDENTITY, TRIVIAL, LinearEmbedding, Square


def emb(n, seed, vertical=None):
    return cubes.random_embedding(n, random.Random(seed), denominator=48, vertical=vertical)


seeds = st.integers(0, 10_000)


def test_validate_examples():
    assert cubes.is_valid(LinearEmbedding.of((1, 0, 0)))
    corner = LinearEmbedding.of((Fr(1, 2), 0, 0), (Fr(1, 2), Fr(1, 2), Fr(1, 2)))
    bad = cubes.validate(corner)
    assert [v.slots for v in bad] == [(0, 1)]
    assert cubes.is_valid(LinearEmbedding.of((Fr(1, 4), 0, 0), (Fr(1, 4), Fr(1, 2), Fr(1, 2))))


def test_validate_square_problems():
    assert cubes.validate(LinearEmbedding.of((0, 0, 0)))[0].kind == "square"
    assert cubes.validate(LinearEmbedding.of((Fr(1, 2), Fr(3, 4), 0)))[0].kind == "square"
    assert cubes.is_valid(TRIVIAL)


def test_compose_examples():
    psi = LinearEmbedding.of((Fr(1, 4), Fr(1, 8), Fr(1, 2)), (Fr(1, 4), Fr(1, 2), 0))
    assert cubes.compose(IDENTITY, [psi]) == psi
    phi = LinearEmbedding.of((Fr(1, 2), Fr(1, 4), Fr(1, 4)))
    assert cubes.compose(phi, [LinearEmbedding.of((Fr(1, 2), 0, 0))]) == LinearEmbedding.of((Fr(1, 4), Fr(1, 4), Fr(1, 4)))
    two = LinearEmbedding.of((Fr(1, 4), 0, 0), (Fr(1, 4), Fr(1, 2), Fr(1, 2)))
    inner = LinearEmbedding.of((Fr(1, 2), Fr(1, 2), 0))
    assert cubes.compose(two, [inner, TRIVIAL]) == LinearEmbedding((two.squares[0].then(inner.squares[0]),))
    with pytest.raises(cubes.EmbeddingError):
        cubes.compose(two, [inner])


def test_act_permutation_examples():
    A, B = Square(Fr(1, 4), 0, 0), Square(Fr(1, 4), Fr(1, 2), Fr(1, 2))
    phi = LinearEmbedding((A, B))
    assert cubes.act_permutation(phi, (0, 1)) == phi
    assert cubes.act_permutation(phi, (1, 0)) == LinearEmbedding((B, A))
    with pytest.raises(cubes.EmbeddingError):
        cubes.act_permutation(phi, (0, 0))


def test_is_vertical_examples():
    assert cubes.is_vertical(LinearEmbedding.of((Fr(1, 4), 0, 0), (Fr(1, 4), Fr(1, 2), Fr(1, 2))))
    assert not cubes.is_vertical(LinearEmbedding.of((Fr(1, 4), 0, 0), (Fr(1, 4), Fr(1, 2), 0)))
    assert cubes.is_vertical(LinearEmbedding.of((Fr(1, 3), Fr(1, 3), Fr(1, 3))))


def test_vertical_order_tie_breaks():
    same_height = LinearEmbedding.of((Fr(1, 4), Fr(1, 2), 0), (Fr(1, 4), 0, 0))
    assert cubes.vertical_order(same_height) == (1, 0)
    stacked = LinearEmbedding.of((Fr(1, 4), 0, Fr(1, 2)), (Fr(1, 4), 0, 0))
    assert cubes.vertical_order(stacked) == (1, 0)


@pytest.mark.parametrize("n", range(0, 6))
def test_canonical_vertical(n):
    can = cubes.canonical_vertical(n)
    assert cubes.is_valid(can) and cubes.is_vertical(can)
    assert cubes.vertical_order(can) == tuple(range(n))
    assert len({s.center[0] for s in can.squares}) == n


@given(seeds, st.integers(1, 3), st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_compose_associative(seed, n, ms):
    rng = random.Random(seed)
    theta = cubes.random_embedding(n, rng, denominator=48)
    phis = [cubes.random_embedding(m, rng, denominator=48) for m in ms[:n]]
    psis = [[cubes.random_embedding(rng.randint(0, 2), rng, denominator=48) for _ in range(p.arity)] for p in phis]
    flat = [q for group in psis for q in group]
    left = cubes.compose(cubes.compose(theta, phis), flat)
    right = cubes.compose(theta, [cubes.compose(p, g) for p, g in zip(phis, psis)])
    assert left == right
    assert cubes.is_valid(left)


@given(seeds, st.integers(0, 4))
def test_compose_unital(seed, n):
    phi = emb(n, seed)
    assert cubes.compose(phi, [IDENTITY] * n) == phi
    assert cubes.compose(IDENTITY, [phi]) == phi


@given(seeds, st.integers(1, 3), st.data())
def test_compose_equivariant(seed, n, data):
    rng = random.Random(seed)
    phi = cubes.random_embedding(n, rng, denominator=48)
    inners = [cubes.random_embedding(rng.randint(0, 3), rng, denominator=48) for _ in range(n)]
    sigma = data.draw(st.permutations(range(n)))
    widths = [p.arity for p in inners]
    left = cubes.compose(cubes.act_permutation(phi, sigma), [inners[s] for s in sigma])
    right = cubes.act_permutation(cubes.compose(phi, inners), cubes.block_permutation(sigma, widths))
    assert left == right


@given(seeds, st.integers(1, 4), st.data())
def test_right_action(seed, n, data):
    phi = emb(n, seed)
    s = data.draw(st.permutations(range(n)))
    t = data.draw(st.permutations(range(n)))
    st_ = tuple(s[t[i]] for i in range(n))
    assert cubes.act_permutation(cubes.act_permutation(phi, s), t) == cubes.act_permutation(phi, st_)
    assert cubes.act_permutation(phi, tuple(range(n))) == phi


@given(seeds, st.integers(1, 4), st.data())
def test_vertical_stays_vertical(seed, n, data):
    phi = emb(n, seed, vertical=True)
    sigma = data.draw(st.permutations(range(n)))
    assert cubes.is_vertical(cubes.act_permutation(phi, sigma))


@given(seeds, st.integers(1, 3))
def test_compose_preserves_verticality(seed, n):
    rng = random.Random(seed)
    outer = cubes.random_embedding(n, rng, denominator=48, vertical=True)
    inners = [cubes.random_embedding(rng.randint(0, 2), rng, denominator=48, vertical=True) for _ in range(n)]
    assert cubes.is_vertical(cubes.compose(outer, inners))


def test_block_permutation():
    assert cubes.block_permutation((1, 0), (2, 1)) == (2, 0, 1)
    assert cubes.block_permutation((1, 0, 2), (0, 2, 1)) == (0, 1, 2)
    assert sorted(cubes.block_permutation(next(iter(permutations(range(3)))), (1, 2, 3))) == list(range(6))

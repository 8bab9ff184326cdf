import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from factoperad import braids, cubes
from factoperad.braids import BraidError, ColoredBraid, DegenerateMotion
from factoperad.cat import BraidedObject, eval_braid
from factoperad.cubes import LinearEmbedding
from factoperad.linalg import QQ, Matrix

from conftest import nonsym_R


def centered(*pts, a=Fr(1, 8)):
    return LinearEmbedding.of(*((a, x - a / 2, y - a / 2) for x, y in pts))


def words(n, max_len=6):
    gens = [g for l in range(1, n) for g in (l, -l)]
    return st.lists(st.sampled_from(gens), max_size=max_len) if gens else st.just([])


def test_elementary_examples():
    b = braids.elementary(2, 1)
    assert b.word == (1,) and b.target_order == (1, 0)
    b = braids.elementary(3, 2)
    assert b.word == (2,) and b.target_order == (0, 2, 1)
    with pytest.raises(BraidError):
        braids.elementary(3, 3)


def test_compose_paths_examples():
    s = braids.elementary(2, 1)
    assert braids.compose_paths(s, ColoredBraid.empty(2, s.target_order)) == s
    twice = braids.compose_paths(s, braids.elementary(2, 1, s.target_order))
    assert twice.word == (1, 1) and twice.target_order == (0, 1)
    undo = braids.compose_paths(s, s.inverse())
    assert undo.word == (1, -1)
    obj = BraidedObject(nonsym_R(), True)
    assert eval_braid(obj, undo) == Matrix.identity(QQ, 4)
    with pytest.raises(BraidError):
        braids.compose_paths(s, s)


def test_invariant_enforced():
    with pytest.raises(BraidError):
        ColoredBraid(2, (1,), (0, 1), (0, 1))
    with pytest.raises(BraidError):
        ColoredBraid(2, (), (0, 1), (1, 0))


def test_cable_examples():
    assert braids.cable(braids.elementary(2, 1), (2, 1)).word == (2, 1)
    assert braids.cable(braids.elementary(2, 1), (1, 2)).word == (1, 2)
    assert braids.cable(ColoredBraid.empty(2), (3, 2)).word == ()
    b = ColoredBraid.from_word(3, (1, -2, 1))
    assert braids.cable(b, (1, 1, 1)) == b
    neg = braids.cable(ColoredBraid.from_word(2, (-1,)), (2, 1))
    assert neg.word == (-2, -1)
    back = braids.cable(ColoredBraid.from_word(2, (1,), (1, 0)), (2, 1))
    obj = BraidedObject(nonsym_R(), True)
    assert eval_braid(obj, neg) @ eval_braid(obj, back) == Matrix.identity(QQ, 8)
    assert braids.cable(braids.elementary(2, 1), (0, 2)).word == ()


def test_cable_endpoint_orders():
    b = braids.cable(ColoredBraid.from_word(2, (1,), (1, 0)), (2, 1))
    assert b.source_order == (2, 0, 1) and b.target_order == (0, 1, 2)


def test_straighten_examples():
    assert braids.straighten(cubes.canonical_vertical(3)).word == ()
    level = centered((Fr(1, 4), Fr(1, 2)), (Fr(3, 4), Fr(1, 2)))
    assert braids.straighten(level).word == ()
    crossing = centered((Fr(1, 4), Fr(3, 4)), (Fr(3, 4), Fr(1, 4)))
    b = braids.straighten(crossing)
    assert b.source_order == (1, 0) and b.target_order == (0, 1)
    # slot 2 rises on the right: counter-clockwise
    assert b.word == (1,)
    assert braids.straighten(crossing, orientation="cw").word == (-1,)
    mirrored = centered((Fr(3, 4), Fr(3, 4)), (Fr(1, 4), Fr(1, 4)))
    assert braids.straighten(mirrored).word == (-1,)


def test_straighten_vertical_in_wrong_order_needs_swaps():
    phi = cubes.act_permutation(cubes.canonical_vertical(3), (2, 1, 0))
    b = braids.straighten(phi)
    assert b.source_order == (2, 1, 0) and len(b) == 3


def test_degenerate_motion_and_perturbation():
    stacked = LinearEmbedding.of((Fr(1, 4), 0, Fr(1, 2)), (Fr(1, 4), 0, 0))
    with pytest.raises(DegenerateMotion) as exc:
        braids.straighten(stacked)
    assert exc.value.pair == (0, 1)
    first = braids.straighten(stacked, Fr(1, 1000))
    assert first == braids.straighten(stacked, Fr(1, 1000))
    assert first.word == (1,)
    assert braids.straighten_lenient(stacked) == first


@given(st.integers(0, 5000), st.integers(2, 5), st.data())
def test_straighten_relabels_under_permutation(seed, n, data):
    phi = cubes.random_embedding(n, random.Random(seed), denominator=64)
    sigma = data.draw(st.permutations(range(n)))
    try:
        b = braids.straighten(phi)
        bs = braids.straighten(cubes.act_permutation(phi, sigma))
    except DegenerateMotion:
        return
    # the motion of phi^sigma is the motion of phi read through sigma; the source orders correspond
    assert braids.act_permutation(ColoredBraid.empty(n, b.source_order), sigma).source_order == bs.source_order


@given(st.integers(0, 5000), st.integers(1, 5))
def test_straighten_lands_on_identity_order(seed, n):
    phi = cubes.random_embedding(n, random.Random(seed), denominator=64)
    try:
        b = braids.straighten(phi)
    except DegenerateMotion:
        return
    assert b.source_order == cubes.vertical_order(phi) and b.target_order == tuple(range(n))


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), words(n), words(n),
                                                     st.lists(st.integers(0, 2), min_size=n, max_size=n))))
def test_cable_respects_composition(args):
    n, w1, w2, widths = args
    b1 = ColoredBraid.from_word(n, w1)
    b2 = ColoredBraid.from_word(n, w2, b1.target_order)
    left = braids.cable(braids.compose_paths(b1, b2), widths)
    right = braids.compose_paths(braids.cable(b1, widths), braids.cable(b2, widths))
    assert left == right


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), words(n), st.permutations(range(n)))))
def test_act_permutation_is_relabeling(args):
    n, w, sigma = args
    b = ColoredBraid.from_word(n, w)
    bs = braids.act_permutation(b, sigma)
    assert bs.word == b.word
    assert braids.act_permutation(bs, tuple(sorted(range(n), key=lambda i: sigma[i]))) == b


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), words(n))))
def test_inverse_cancels(args):
    n, w = args
    b = ColoredBraid.from_word(n, w)
    obj = BraidedObject(nonsym_R(), True)
    assert eval_braid(obj, braids.compose_paths(b, b.inverse())) == Matrix.identity(QQ, 2 ** n)


def test_relators_and_insertion():
    obj = BraidedObject(nonsym_R(), False)
    for n in (2, 3, 4):
        for r in braids.relator_words(n):
            assert eval_braid(obj, ColoredBraid.from_word(n, r)) == Matrix.identity(QQ, 2 ** n)
    b = ColoredBraid.from_word(3, (1, 2))
    assert braids.insert_word(b, 1, (1, -1)).word == (1, 1, -1, 2)
    with pytest.raises(BraidError):
        braids.insert_word(b, 0, (1,))


def test_underlying_permutation():
    b = ColoredBraid.from_word(3, (1, 2), (2, 0, 1))
    p = braids.underlying_permutation(b)
    assert tuple(b.source_order[p[k]] for k in range(3)) == b.target_order

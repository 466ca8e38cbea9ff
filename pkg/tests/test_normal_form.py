"""Engine-level behavior: canonical forms, group laws, levels, centrality."""

import random

import pytest

from amalgam.errors import PreconditionViolated, UnsupportedLevel
from amalgam.instances import make_instance
from amalgam.normalform import (
    Alt,
    Base,
    RLetter,
    centrality_check,
    eq,
    identity,
    inject,
    inv,
    is_identity,
    level,
    mul,
    reduce_word,
)
from amalgam.padic import PAdicRational


def R(num, k=0, p=5):
    return PAdicRational(num, k, p)


@pytest.fixture(scope="module")
def dense():
    return make_instance("dense", 5)


@pytest.fixture(scope="module")
def heis():
    return make_instance("heisenberg", 3)


@pytest.fixture(scope="module")
def cyc():
    return make_instance("cyclic", 2, {"L": 3})


ALL = ["dense", "heis", "cyc"]


def rand_word(sys, rng, max_len=16, max_level=6):
    return [
        (rng.randint(0, max_level), sys.sample(rng.randint(0, max_level), rng))
        for _ in range(rng.randint(0, max_len))
    ]


# --- fixed reduce examples (dense, p=5) ------------------------------------


def test_reduce_level0_sum(dense):
    got = reduce_word(dense, [(0, R(2, 1)), (0, R(3, 1))])
    assert got == Base(R(1))
    assert level(got) == 0


def test_reduce_single_level1_syllable(dense):
    got = reduce_word(dense, [(1, R(7, 1))])
    assert got == Alt(1, (RLetter(R(2, 1)),), R(1))
    assert level(got) == 1


def test_reduce_base_identification(dense):
    got = reduce_word(dense, [(1, R(2)), (0, R(3))])
    assert got == Base(R(5))
    assert level(got) == 0


def test_reduce_irreducible_commutator(dense):
    w = [(1, R(1, 1)), (0, R(1, 1)), (1, R(-1, 1)), (0, R(-1, 1))]
    got = reduce_word(dense, w)
    assert level(got) == 1
    assert len(got.letters) == 4
    # the negative letters are replaced by their [0,1) representatives, each
    # shedding a residue of -1 into the tail
    assert got.tail == R(-2)
    assert not is_identity(dense, got)
    from amalgam.oracle import naive_reduce

    assert naive_reduce(dense, w) == got


def test_empty_word_is_identity(dense):
    got = reduce_word(dense, [])
    assert got == identity(dense)
    assert is_identity(dense, got)


# --- mul / inv / eq ---------------------------------------------------------


def test_mul_identity(dense):
    rng = random.Random(1)
    for _ in range(30):
        g = reduce_word(dense, rand_word(dense, rng, 8, 4))
        assert mul(dense, g, identity(dense)) == g
        assert mul(dense, identity(dense), g) == g


def test_inv_antihomomorphism_example(dense):
    lhs = inv(dense, reduce_word(dense, [(1, R(1, 1)), (0, R(2))]))
    rhs = reduce_word(dense, [(0, R(-2)), (1, R(-1, 1))])
    assert lhs == rhs


@pytest.mark.parametrize("name", ALL)
def test_group_axioms_random(name, request):
    sys = request.getfixturevalue(name)
    rng = random.Random(2)
    ident = identity(sys)
    for _ in range(60):
        a = reduce_word(sys, rand_word(sys, rng, 8, 4))
        b = reduce_word(sys, rand_word(sys, rng, 8, 4))
        c = reduce_word(sys, rand_word(sys, rng, 8, 4))
        assert mul(sys, mul(sys, a, b), c) == mul(sys, a, mul(sys, b, c))
        assert mul(sys, a, ident) == a
        assert is_identity(sys, mul(sys, a, inv(sys, a)))
        assert is_identity(sys, mul(sys, inv(sys, a), a))


@pytest.mark.parametrize("name", ALL)
def test_eq_three_ways(name, request):
    sys = request.getfixturevalue(name)
    rng = random.Random(3)
    for _ in range(40):
        u = reduce_word(sys, rand_word(sys, rng, 8, 4))
        v = reduce_word(sys, rand_word(sys, rng, 8, 4))
        via_forms = eq(sys, u, v)
        via_quotient = is_identity(sys, mul(sys, u, inv(sys, v)))
        assert via_forms == via_quotient
        assert eq(sys, u, u)
        assert is_identity(sys, mul(sys, u, inv(sys, u)))


@pytest.mark.parametrize("name", ALL)
def test_inv_is_involution(name, request):
    sys = request.getfixturevalue(name)
    rng = random.Random(4)
    for _ in range(40):
        g = reduce_word(sys, rand_word(sys, rng, 10, 5))
        assert inv(sys, inv(sys, g)) == g


def test_inv_of_product(dense):
    rng = random.Random(5)
    for _ in range(30):
        a = reduce_word(dense, rand_word(dense, rng, 8, 4))
        b = reduce_word(dense, rand_word(dense, rng, 8, 4))
        assert inv(dense, mul(dense, a, b)) == mul(dense, inv(dense, b), inv(dense, a))


# --- level ------------------------------------------------------------------


def test_level_examples(dense):
    assert level(reduce_word(dense, [(0, R(7, 3))])) == 0
    assert level(reduce_word(dense, [(2, R(25))])) == 0
    assert level(reduce_word(dense, [(3, R(1, 1))])) == 3


@pytest.mark.parametrize("name", ALL)
def test_level_monotonicity(name, request):
    sys = request.getfixturevalue(name)
    rng = random.Random(6)
    for _ in range(40):
        a = reduce_word(sys, rand_word(sys, rng, 8, 5))
        b = reduce_word(sys, rand_word(sys, rng, 8, 5))
        assert level(mul(sys, a, b)) <= max(level(a), level(b))
        assert level(inv(sys, a)) == level(a)


@pytest.mark.parametrize("name", ALL)
def test_base_identification_across_levels(name, request):
    sys = request.getfixturevalue(name)
    rng = random.Random(7)
    for n in range(1, 5):
        for _ in range(20):
            b = sys.sample_base(n - 1, rng)
            assert reduce_word(sys, [(n, b)]) == reduce_word(sys, [(n - 1, b)])
            assert level(reduce_word(sys, [(n, b)])) == 0


# --- centrality ---------------------------------------------------------------


def test_centrality_identity_case(dense):
    assert centrality_check(dense, identity(dense), 0, R(7))


def test_centrality_paper_case(dense):
    g = reduce_word(dense, [(1, R(1, 1))])
    assert centrality_check(dense, g, 0, R(1))


@pytest.mark.parametrize("name", ALL)
def test_centrality_random(name, request):
    sys = request.getfixturevalue(name)
    rng = random.Random(8)
    for _ in range(60):
        n = rng.randint(0, 4)
        w = rand_word(sys, rng, 6, n + 1)
        g = reduce_word(sys, w)
        z = sys.sample_base(n, rng)
        assert centrality_check(sys, g, n, z)


def test_centrality_preconditions(dense):
    g = reduce_word(dense, [(3, R(1, 1))])
    with pytest.raises(PreconditionViolated):
        centrality_check(dense, g, 1, R(5))  # level 3 > n+1 = 2
    with pytest.raises(PreconditionViolated):
        centrality_check(dense, identity(dense), 1, R(1, 1))  # 1/5 not in B_1


def test_beyond_level_cap_raises():
    capped = make_instance("cyclic", 2, {"L": 3, "max_level": 2})
    with pytest.raises(UnsupportedLevel):
        reduce_word(capped, [(3, 1)])
    assert level(reduce_word(capped, [(2, 1)])) == 2


def test_heisenberg_factor_commutator_collapses(heis):
    w = [(1, (1, 0, 0)), (1, (0, 1, 0)), (1, (-1, 0, 0)), (1, (0, -1, 0))]
    assert reduce_word(heis, w) == Base((0, 0, 1))


def test_noncommutative_letters_do_not_collapse(heis):
    # same letters at different levels: the cross-level commutator survives
    w = [(1, (1, 0, 0)), (2, (0, 1, 0)), (1, (-1, 0, 0)), (2, (0, -1, 0))]
    got = reduce_word(heis, w)
    assert not is_identity(heis, got)
    assert level(got) == 2

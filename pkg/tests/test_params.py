import math

import pytest

from pebblegames.params import FULL_K3, GENERAL, REDUCED_K3, Params, bit

from lemma_suite import run_all


def test_full_k3_tables():
    p = Params(3, 3, FULL_K3)
    assert p.gamma_star == (12, 96, 384)
    assert p.width == 384
    assert p.mid == 210
    assert p.tr(1) == 37
    assert p.tr(0) == p.tr(2) == 0
    assert p.lo == 1


def test_full_k3_width_closed_form():
    for m in (3, 4, 5, 6):
        p = Params(3, m, FULL_K3)
        assert p.gamma_star[-1] == math.factorial(m) * 4 ** m


def test_reduced_k3_tables():
    p = Params(3, 3, REDUCED_K3)
    assert p.gamma_star == (8, 32)
    assert p.width == 32
    assert p.mid == 18
    assert p.tr(1) == 5
    assert p.lo == 2
    assert p.col(3) == 4 and p.col(2) == 1
    assert p.half_sum(3) == 2


def test_mid_self_projecting():
    for p in (Params(3, 3, FULL_K3), Params(3, 4, REDUCED_K3),
              Params(4, 3, GENERAL, toy=True)):
        assert p.proj(p.mid, p.m) == p.mid
        assert p.idx(p.mid) == p.m


def test_constructor_guards():
    with pytest.raises(ValueError):
        Params(1, 3, FULL_K3)
    with pytest.raises(ValueError):
        Params(3, 2, FULL_K3)
    with pytest.raises(ValueError):
        Params(4, 3, FULL_K3)
    with pytest.raises(ValueError):
        Params(3, 3, "no-such-variant")
    with pytest.raises(ValueError):
        Params(4, 3, GENERAL, u_factor=7)


def test_level_guards():
    p = Params(3, 3, REDUCED_K3)
    with pytest.raises(ValueError):
        p.floor_abs(0, 1)
    with pytest.raises(ValueError):
        p.proj(0, 4)
    with pytest.raises(ValueError):
        p.beta(2, 3)
    with pytest.raises(ValueError):
        p.tuple_min(0, 2)


def test_general_tables_are_integral():
    for k in (3, 4, 5):
        p = Params(k, 4, GENERAL, toy=True)
        for i in range(1, p.m + 1):
            assert p.gamma_star[p.m - i] % p.u_star[i] == 0
        assert p.width == p.gamma_star[-1]


def test_rng_num_range():
    p = Params(4, 3, GENERAL, toy=True)
    for i in range(1, p.m + 1):
        x = p.proj(p.mid, i)
        assert p.rng_num(x, i) in (-1, 0, 1)
    assert p.rng_num(p.mid, 1) == -1  # index above the queried level


def test_q_hat_bijection():
    p = Params(7, 3, GENERAL, toy=True)
    vals = [p.q_hat(y, y2) for y in range(1, p.k - 1)
            for y2 in range(y + 1, p.k - 1)]
    assert sorted(vals) == list(range(p.sw_bits))
    assert p.q_hat(2, 4) == 5


def test_bit():
    assert bit(0b1011100011, 5) == 1
    assert bit(0b1011100011, 2) == 0
    assert [bit(6, n) for n in range(3)] == [0, 1, 1]


def test_tuple_members_contain_floor_abs():
    p = Params(4, 3, GENERAL, toy=True)
    for lev in (2, 3):
        lo = p.tuple_min(p.mid, lev)
        assert lo <= p.floor_abs(p.mid, lev) < lo + p.u_star[lev]


def test_lemma_suite_smoke():
    failures = run_all(500)
    assert all(v == 0 for v in failures.values()), failures

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import enum_cumulative, instances
from supercache.combinat import binom
from supercache.placement import FileStore, SubfileIndex, subpacketize
from supercache.scheduler import (InfeasibleLayer, build_schedule, cumulative, find_bottleneck,
                                  generate_xors, numeric_powers, partition_layers, plan_delivery,
                                  power_coefficients, schedule_delivery, symbolic_powers, xor_bytes)
from supercache.system_model import CapacityProfile, SystemConfig


def _sigmas(msgs):
    return [m.sigma for m in msgs]


def test_generate_xors_payload():
    cfg = SystemConfig(4, 1, 4)
    store = FileStore.random(4, 64, seed=3)
    sub = subpacketize(store, cfg)
    xs = generate_xors(cfg, (1, 2, 3, 4), sub)
    assert len(xs) == 6
    x12 = xs[0]
    assert x12.sigma == (1, 2)
    expected = bytes(a ^ b for a, b in zip(sub[SubfileIndex(1, (2,))], sub[SubfileIndex(2, (1,))]))
    assert x12.payload == expected


def test_generate_xors_degenerate():
    cfg = SystemConfig(3, 0, 3)
    store = FileStore.random(3, 8)
    xs = generate_xors(cfg, (3, 1, 2), subpacketize(store, cfg))
    assert _sigmas(xs) == [(1,), (2,), (3,)]
    assert [x.payload for x in xs] == [store.files[2], store.files[0], store.files[1]]
    assert _sigmas(generate_xors(SystemConfig(4, 3, 4), (1, 2, 3, 4))) == [(1, 2, 3, 4)]
    assert generate_xors(SystemConfig(4, 4, 4), (1, 2, 3, 4)) == []


def test_partition_examples():
    layers = partition_layers(generate_xors(SystemConfig(4, 1, 4), (1, 2, 3, 4)), SystemConfig(4, 1, 4))
    assert {k: _sigmas(v) for k, v in layers.items()} == {
        1: [(1, 2), (1, 3), (1, 4)], 2: [(2, 3), (2, 4)], 3: [(3, 4)]}
    layers = partition_layers(generate_xors(SystemConfig(3, 1, 3), (1, 2, 3)), SystemConfig(3, 1, 3))
    assert [len(v) for v in layers.values()] == [2, 1]
    assert [cumulative(SystemConfig(4, 1, 4), k) for k in (1, 2, 3)] == [3, 5, 6]


@pytest.mark.parametrize("K", range(1, 11))
def test_layer_sizes_match_enumeration(K):
    for t in range(K):
        cfg = SystemConfig(K, t, K)
        layers = partition_layers(generate_xors(cfg, tuple(range(1, K + 1))), cfg)
        assert sum(len(v) for v in layers.values()) == binom(K, t + 1)
        for k, v in layers.items():
            assert len(v) == binom(K - k, t) == binom(K - k + 1, t + 1) - binom(K - k, t + 1)
            assert cumulative(cfg, k) == enum_cumulative(K, t, k)
        # no XOR left outside the K - t layers
        assert enum_cumulative(K, t, K - t) == binom(K, t + 1)


@pytest.mark.parametrize("alphas,w,M", [
    (["1/2", "3/4", "1", "1"], 2, F(20, 3)),
    (["1/2", "1", "1", "1"], 1, F(6)),
])
def test_find_bottleneck_k4(alphas, w, M):
    assert find_bottleneck(SystemConfig(4, 1, 4), CapacityProfile.from_sequence(alphas)) == (w, M)


def test_find_bottleneck_k3():
    assert find_bottleneck(SystemConfig(3, 1, 3), CapacityProfile.uniform(3)) == (2, F(3))


@pytest.mark.parametrize("K,alphas,w,beta,rates", [
    (4, ["1/2", "3/4", "1", "1"], 2, (0, F(9, 20), F(3, 4), F(9, 10)), (F(9, 20), F(3, 10), F(3, 20))),
    (4, ["1/2", "1", "1", "1"], 1, (0, F(1, 2), F(5, 6), 1), (F(1, 2), F(1, 3), F(1, 6))),
    (3, ["1", "1", "1"], 2, (0, F(2, 3), 1), (F(2, 3), F(1, 3))),
])
def test_power_coefficients(K, alphas, w, beta, rates):
    plan = power_coefficients(SystemConfig(K, 1, K), CapacityProfile.from_sequence(alphas), w)
    assert plan.beta == beta
    assert plan.rates == rates


def test_power_coefficients_rejects_non_bottleneck():
    with pytest.raises(InfeasibleLayer):
        power_coefficients(SystemConfig(4, 1, 4), CapacityProfile.from_sequence(["1/2", "3/4", "1", "1"]), 4)


def test_symbolic_powers():
    plan = power_coefficients(SystemConfig(4, 1, 4), CapacityProfile.from_sequence(["1/2", "1", "1", "1"]), 1)
    assert symbolic_powers(plan) == [(0, F(1, 2)), (F(1, 2), F(5, 6)), (F(5, 6), 1)]
    p = numeric_powers(plan, 100.0)
    assert p[0] == pytest.approx(0.9)
    assert sum(p) == pytest.approx(1 - 100.0 ** -1)
    assert all(x > 0 for x in p)


@pytest.mark.parametrize("K,alphas,T", [
    (4, ["1/2", "3/4", "1", "1"], F(5, 3)),
    (4, ["1/2", "1", "1", "1"], F(3, 2)),
    (3, ["1", "1", "1"], F(1)),
])
def test_layer_completion_examples(K, alphas, T):
    sched = schedule_delivery(SystemConfig(K, 1, K), CapacityProfile.from_sequence(alphas), tuple(range(1, K + 1)))
    assert set(sched.layer_completion().values()) == {T}


def test_schedule_is_back_to_back():
    cfg = SystemConfig(4, 1, 4)
    sched = schedule_delivery(cfg, CapacityProfile.from_sequence(["1/2", "3/4", "1", "1"]), (1, 2, 3, 4))
    for k, slots in sched.layers.items():
        assert slots[0].start == 0
        for a, b in zip(slots, slots[1:]):
            assert a.end == b.start
        for s in slots:
            assert s.end - s.start == F(1, 4) / sched.plan.rates[k - 1]
    js = sched.to_json()
    assert js["layers"]["1"][0] == {"sigma": [1, 2], "start": "0/1", "end": "5/9"}


def test_full_cache_empty_schedule():
    cfg = SystemConfig(4, 4, 4)
    sched = schedule_delivery(cfg, CapacityProfile.uniform(4), (1, 2, 3, 4))
    assert sched.layers == {} and sched.plan.rates == ()


def test_xor_bytes_involution():
    a, b = b"\x01\x02\xff", b"\x10\x20\x0f"
    assert xor_bytes([xor_bytes([a, b]), b]) == a


@settings(max_examples=300, deadline=None)
@given(instances(allow_full_cache=False))
def test_plan_invariants(inst):
    cfg, prof = inst
    plan = plan_delivery(cfg, prof)
    b = plan.beta
    assert b[0] == 0 and len(b) == cfg.K - cfg.t + 1
    assert all(x < y for x, y in zip(b, b[1:])) and b[-1] <= 1
    assert all(b[k] <= prof.alpha(k) for k in range(1, len(b)))
    assert sum(plan.rates) == b[-1]
    # every layer needs the same time: |X_k| / r_k is constant
    assert len({F(n) / r for n, r in zip(plan.layer_sizes, plan.rates)}) == 1


@settings(max_examples=200, deadline=None)
@given(instances(allow_full_cache=False))
def test_tie_invariance(inst):
    cfg, prof = inst
    w, M = find_bottleneck(cfg, prof)
    ties = [k for k in range(1, cfg.K + 1) if F(cumulative(cfg, k)) / prof.alpha(k) == M]
    betas = {power_coefficients(cfg, prof, k).beta for k in ties}
    assert len(betas) == 1
    assert betas.pop() == tuple(F(cumulative(cfg, k)) / M for k in range(cfg.K - cfg.t + 1))


@settings(max_examples=200, deadline=None)
@given(instances(allow_full_cache=False), st.integers(1, 8))
def test_scaling_keeps_argmax(inst, c_den):
    cfg, prof = inst
    c = F(1, c_den)
    scaled = CapacityProfile(tuple(a * c for a in prof.alphas), prof.user_of_rank)

    def argmax_set(p):
        vals = [F(cumulative(cfg, k)) / p.alpha(k) for k in range(1, cfg.K + 1)]
        return {k for k, v in enumerate(vals, 1) if v == max(vals)}, max(vals)

    s1, M1 = argmax_set(prof)
    s2, M2 = argmax_set(scaled)
    assert s1 == s2 and M2 == M1 / c

"""Smoke tests for the mixv python bindings."""

import json
import math
from fractions import Fraction

import pytest

import mixv

P_JSON = json.dumps(
    {
        "alphabet": ["0", "1"],
        "n": 1,
        "components": [
            {"weight": "1/1", "rows": [["1/2", "1/2"]]},
            {"weight": "0/1", "rows": [["1/2", "1/2"]]},
        ],
    }
)

Q_JSON = json.dumps(
    {
        "alphabet": ["0", "1"],
        "n": 1,
        "components": [
            {"weight": "1/2", "rows": [["2/3", "1/3"]]},
            {"weight": "1/2", "rows": [["1/3", "2/3"]]},
        ],
    }
)


def test_version():
    assert mixv.__version__ == "0.1.0"


def test_mixture_round_trip():
    m = mixv.Mixture.from_json(P_JSON)
    assert m.n == 1
    assert m.k == 2
    assert m.alphabet == ["0", "1"]
    again = mixv.Mixture.from_json(m.to_json())
    assert again.to_json() == m.to_json()


def test_motivating_pair_is_equal():
    p = mixv.Mixture.from_json(P_JSON)
    q = mixv.Mixture.from_json(Q_JSON)
    verdict = mixv.check_equivalence(p, q)
    assert verdict.equal
    assert bool(verdict)
    assert mixv.brute_force_equivalence(p, q).equal


def test_perturbed_pair_not_equal_with_verified_witness():
    base = mixv.random_mixture(3, 2, ["0", "1"], seed=11, denominator_bound=8)
    perturbed, expected = mixv.perturbed_pair(base, seed=5, magnitude="1/7")
    verdict = mixv.check_equivalence(base, perturbed)
    assert verdict.equal == expected.equal
    if not verdict.equal:
        assert mixv.verify_witness(base, perturbed, verdict.prefix)
        assert 1 <= verdict.depth <= base.n


def test_mixture_prob_is_exact():
    q = mixv.Mixture.from_json(Q_JSON)
    assert Fraction(mixv.mixture_prob(q, ["1"])) == Fraction(1, 2)
    with pytest.raises(ValueError):
        mixv.mixture_prob(q, ["bogus"])


def test_rewrite_stays_equal():
    base = mixv.random_mixture(2, 2, ["a", "b", "c"], seed=3, denominator_bound=9)
    rewritten = mixv.equivalent_rewrite(base, seed=4)
    assert rewritten.to_json() != base.to_json()
    assert mixv.check_equivalence(base, rewritten).equal


def test_linalg_surface():
    assert mixv.independent_subset([["1", "0"], ["0", "1"], ["1", "1"]]) == [0, 1]
    assert mixv.holds_at_ones(["1/2", "1/3", "-5/6"])
    assert not mixv.holds_at_ones(["1/2", "-1/3"])


def test_ising_partition_and_marginal():
    free_spin = mixv.IsingModel.from_json(json.dumps({"n": 1, "pairs": [], "fields": [0.0]}))
    assert math.isclose(mixv.partition_brute(free_spin), math.log(2.0), rel_tol=1e-12)
    assert math.isclose(mixv.marginal_brute(free_spin, 0, 1), 0.5, rel_tol=1e-12)

    model = mixv.random_ising(6, pair_density=0.5, seed=9)
    direct = mixv.partition_brute(model)
    telescoped = mixv.partition_via_marginals(model)
    assert math.isclose(direct, telescoped, abs_tol=1e-9)

    calls = []

    def oracle(reduced, k, s, eps, conf):
        calls.append((reduced.n, k, s))
        return mixv.marginal_brute(reduced, k, s)

    with_callable = mixv.partition_via_marginals(model, eps=0.1, conf=0.1, oracle=oracle)
    assert math.isclose(direct, with_callable, abs_tol=1e-9)
    assert len(calls) == model.n - 1


def test_ising_tv_and_gadget():
    a = mixv.random_ising(4, pair_density=0.6, seed=1)
    b = mixv.random_ising(4, pair_density=0.6, seed=2)
    assert mixv.tv_brute(a, a) == 0.0
    assert 0.0 <= mixv.tv_brute(a, b) <= 1.0

    params = mixv.size_gadget_params(a, k=1, s=1, eps=0.05)
    assert params.h0 < 0
    assert params.delta > 1
    p0, q0 = mixv.build_marginal_gadget(a, params)
    assert p0.n == a.n + 1
    assert q0.num_pairs == p0.num_pairs + 1

    estimate = mixv.marginal_via_tv(a, k=1, s=1, eps=0.05)
    exact = mixv.marginal_brute(a, 1, 1)
    assert exact / 1.05 <= estimate <= exact * 1.05
    # the sized bound can sit below float noise, so allow the noise floor
    assert abs(estimate - exact) <= mixv.gadget_error_bound(a, params) + 1e-12


def test_guard_errors_surface_as_exceptions():
    big = mixv.random_ising(30, pair_density=0.0, seed=0)
    with pytest.raises(mixv.GuardError):
        mixv.partition_brute(big)
    bad = json.dumps({"n": 1, "pairs": [], "fields": [0.0, 1.0]})
    with pytest.raises(ValueError):
        mixv.IsingModel.from_json(bad)


def test_generation_is_deterministic():
    one = mixv.random_mixture(3, 2, ["0", "1"], seed=42, denominator_bound=12)
    two = mixv.random_mixture(3, 2, ["0", "1"], seed=42, denominator_bound=12)
    assert one.to_json() == two.to_json()
    assert one.weights == two.weights

import math
import random
from dataclasses import replace

import pytest

from revlcg import (
    RUND,
    CoupledState,
    CouplingSpec,
    InverseParams,
    LcgParams,
    RundConstants,
    derive_inverse,
    equidistribution_check,
    generate_sequence,
    hull_dobell_check,
    orbit_period,
    paper_reproduction,
    reverse_sequence,
    roundtrip_sample,
    roundtrip_sweep,
)

RUND_PARAMS = LcgParams(RUND.a, RUND.b, RUND.m)
RUND_COUPLING = CouplingSpec(RUND.s)

IDENTITY_PARAMS = LcgParams(1, 0, 8)
NO_COUPLING = CouplingSpec(0, carry_enabled=False)

# x cycles through all 4 residues, y never moves
TOY_PARAMS = LcgParams(1, 1, 4)


def brute_force_x_period(params):
    # ground truth for full period: the orbit of 0 under the x recursion
    # returns to 0 at step m exactly when the period is maximal
    x, steps = 0, 0
    for _ in range(params.m):
        x = (params.a * x + params.b) % params.m
        steps += 1
        if x == 0:
            break
    return steps if x == 0 else None


class TestOrbitPeriod:
    def test_identity_period_one(self):
        rep = orbit_period(CoupledState(3, 5), IDENTITY_PARAMS, NO_COUPLING)
        assert rep.period == 1
        assert not rep.reached_full_period
        assert rep.first_repeat_state == (3, 5)

    def test_toy_x_cycle(self):
        rep = orbit_period(CoupledState(0, 0), TOY_PARAMS, NO_COUPLING)
        assert rep.period == 4
        assert not rep.reached_full_period

    def test_non_bijective_map_undetermined(self):
        rep = orbit_period(CoupledState(0, 0), LcgParams(2, 1, 8), NO_COUPLING)
        assert rep.period is None
        assert not rep.reached_full_period
        assert rep.states_visited == 8 * 8 + 1
        assert rep.first_repeat_state is None

    def test_limit_below_period_undetermined(self):
        rep = orbit_period(CoupledState(0, 0), RUND_PARAMS, RUND_COUPLING, limit=100)
        assert rep.period is None
        assert rep.states_visited == 100

    def test_kv_line(self):
        rep = orbit_period(CoupledState(0, 0), TOY_PARAMS, NO_COUPLING)
        assert rep.kv_line() == "period=4 full=false"
        assert "orbit period: 4" in rep.as_text()


class TestEquidistribution:
    def test_identity_covers_only_seed(self):
        rep = equidistribution_check(IDENTITY_PARAMS, NO_COUPLING, CoupledState(0, 0))
        assert (rep.covered, rep.total) == (1, 64)
        assert not rep.complete
        assert rep.first_missing == 1

    def test_toy_covers_x_cycle_only(self):
        rep = equidistribution_check(TOY_PARAMS, NO_COUPLING, CoupledState(0, 0))
        assert (rep.covered, rep.total) == (4, 16)
        assert rep.first_missing == 4
        assert rep.first_duplicate is None

    def test_full_period_toy_covers_everything(self):
        rep = equidistribution_check(LcgParams(5, 3, 16), CouplingSpec(2), CoupledState(0, 0))
        assert rep.complete
        assert (rep.covered, rep.total) == (256, 256)

    def test_non_bijective_map_reports_duplicate(self):
        rep = equidistribution_check(LcgParams(2, 1, 8), NO_COUPLING, CoupledState(0, 0))
        assert rep.first_duplicate is not None
        assert not rep.complete

    def test_oversized_modulus_refused(self):
        with pytest.raises(ValueError, match="too large"):
            equidistribution_check(LcgParams(1, 0, 8192), NO_COUPLING, CoupledState(0, 0))


class TestRoundTripSweep:
    def test_identity_all_states(self):
        rep = roundtrip_sweep(IDENTITY_PARAMS, NO_COUPLING)
        assert (rep.states_checked, rep.mismatches) == (64, 0)
        assert rep.first_mismatch is None
        assert rep.passed

    def test_corrupted_increment_breaks_every_state(self):
        params = LcgParams(5, 3, 8)
        good = derive_inverse(params)
        bad = InverseParams(good.c, (good.d + 1) % 8)
        rep = roundtrip_sweep(params, CouplingSpec(2), inverse=bad)
        assert rep.mismatches == rep.states_checked == 64
        assert rep.first_mismatch == (0, 0)
        assert not rep.passed

    def test_oversized_modulus_refused(self):
        with pytest.raises(ValueError, match="roundtrip_sample"):
            roundtrip_sweep(LcgParams(1, 0, 8192), NO_COUPLING)

    def test_sampled_mode(self):
        rep = roundtrip_sample(RUND_PARAMS, RUND_COUPLING, samples=1_000)
        assert (rep.states_checked, rep.mismatches) == (1_000, 0)

    def test_sampled_mode_detects_corruption(self):
        bad = InverseParams(RUND.c, RUND.d + 1)
        rep = roundtrip_sample(RUND_PARAMS, RUND_COUPLING, samples=500, inverse=bad)
        assert rep.mismatches == 500


class TestHullDobell:
    def test_reference_parameters_satisfy_all(self):
        rep = hull_dobell_check(RUND_PARAMS)
        assert rep.all_satisfied
        assert rep.b_coprime_m
        assert rep.a_minus_1_divisible_by_prime_factors
        assert rep.a_minus_1_divisible_by_4_when_m_is

    @pytest.mark.parametrize("m", [4, 9, 12, 2048])
    def test_unit_multiplier_satisfies_all(self, m):
        assert hull_dobell_check(LcgParams(1, 1, m)).all_satisfied

    def test_even_multiplier_fails(self):
        rep = hull_dobell_check(LcgParams(2, 1, 8))
        assert not rep.all_satisfied
        assert rep.b_coprime_m
        assert not rep.a_minus_1_divisible_by_prime_factors
        # ground truth: the x orbit of 0 never attains period 8
        assert brute_force_x_period(LcgParams(2, 1, 8)) != 8

    def test_odd_modulus_skips_the_four_condition(self):
        # m = 9: a - 1 = 3 is not divisible by 4, but 4 does not divide m,
        # so the condition holds vacuously and the period is still full
        rep = hull_dobell_check(LcgParams(4, 2, 9))
        assert rep.all_satisfied
        assert rep.a_minus_1_divisible_by_4_when_m_is
        assert (4 - 1) % 4 != 0
        assert brute_force_x_period(LcgParams(4, 2, 9)) == 9

    def test_kv_keys(self):
        line = hull_dobell_check(RUND_PARAMS).kv_line()
        assert line == "b_coprime_m=true a1_prime_factors=true a1_mod_4=true all=true"


class TestToyGridProperties:
    @pytest.mark.parametrize("m", [4, 8, 16])
    def test_grid(self, m):
        rng = random.Random(1000 + m)
        for a in range(1, m):
            if math.gcd(a, m) != 1:
                continue
            for _ in range(2):
                b, s = rng.randrange(m), rng.randrange(m)
                params = LcgParams(a, b, m)
                for carry in (True, False):
                    coupling = CouplingSpec(s, carry_enabled=carry)
                    sweep = roundtrip_sweep(params, coupling)
                    assert sweep.mismatches == 0
                    orbit = orbit_period(CoupledState(0, 0), params, coupling)
                    assert orbit.period is not None
                    assert (m * m) % orbit.period == 0
                    hd = hull_dobell_check(params)
                    assert hd.all_satisfied == (brute_force_x_period(params) == m)
                    if orbit.reached_full_period:
                        eq = equidistribution_check(params, coupling, CoupledState(0, 0))
                        assert eq.complete


class TestPaperReproduction:
    def test_truncated_window_with_reseeded_backward(self):
        n = 1_000
        forward = generate_sequence(CoupledState(0, 0), n, RUND_PARAMS, RUND_COUPLING)
        rep = paper_reproduction(imax=n, backward_seed=tuple(forward[-1]))
        assert rep.passed
        assert rep.comparisons == n - 1
        assert rep.mismatches == 0

    def test_corrupted_multiplier_fails_early(self):
        n = 1_000
        forward = generate_sequence(CoupledState(0, 0), n, RUND_PARAMS, RUND_COUPLING)
        rep = paper_reproduction(
            replace(RUND, c=204), imax=n, backward_seed=tuple(forward[-1])
        )
        assert not rep.passed
        assert rep.first_mismatch_n == 1

    def test_matches_direct_list_reversal(self):
        # same check two ways: the reference index arithmetic, and reversing
        # the forward list outright
        n = 500
        inverse = derive_inverse(RUND_PARAMS)
        forward = generate_sequence(CoupledState(0, 0), n, RUND_PARAMS, RUND_COUPLING)
        backward = reverse_sequence(forward[-1], n, RUND_PARAMS, inverse, RUND_COUPLING)
        for i in range(1, n):
            assert backward[i - 1] == forward[n - i - 1]
        assert backward[: n - 1] == forward[: n - 1][::-1]
        rep = paper_reproduction(imax=n, backward_seed=tuple(forward[-1]))
        assert rep.passed

    def test_invalid_window_rejected(self):
        with pytest.raises(ValueError):
            paper_reproduction(imax=0)
        with pytest.raises(ValueError):
            paper_reproduction(imax=RUND.imax + 1)

    def test_invalid_backward_seed_rejected(self):
        with pytest.raises(ValueError):
            paper_reproduction(imax=10, backward_seed=(2048, 0))

    def test_toy_constants_full_run(self):
        params = LcgParams(5, 3, 16)
        inv = derive_inverse(params)
        k = RundConstants(a=5, b=3, m=16, s=2, c=inv.c, d=inv.d, imax=256)
        rep = paper_reproduction(k)
        assert rep.passed
        assert rep.comparisons == 255

    def test_report_rendering(self):
        rep = paper_reproduction(imax=50, backward_seed=tuple(
            generate_sequence(CoupledState(0, 0), 50, RUND_PARAMS, RUND_COUPLING)[-1]
        ))
        assert rep.kv_line() == "comparisons=49 mismatches=0 pass=true"
        assert "reproduction: pass" in rep.as_text()

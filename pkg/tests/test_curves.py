from pathlib import Path

import pytest

from bch3 import curves
from bch3.curves import (
    DegenerateLambdaError,
    curve_params,
    curve_traces,
    g_count,
    iso_check_f5_g,
    lambda_of,
    n_count,
    n_counts_all,
    phi_eval,
    split_count,
    split_interval,
)
from bch3.gf2m import isqrt_floor, make_field
from conftest import g_count_slow, n_count_slow, phi_by_hand

FIXTURE = Path(__file__).parent / "data" / "trace_profiles_m5.tsv"


class TestLambda:
    def test_base_cases(self, f5):
        assert lambda_of(f5, 0, 0) == 1
        assert lambda_of(f5, 1, 0) == 1

    def test_degenerate_locus(self, f5):
        for a in range(f5.q):
            b = f5.square(a) ^ a ^ 1
            assert lambda_of(f5, a, b) == 0

    def test_params_reject_degenerate(self, f5):
        with pytest.raises(DegenerateLambdaError):
            curve_params(f5, 0, 1)

    def test_params_expose_j_invariant(self, f5):
        for b in (0, 2, 30):
            params = curve_params(f5, 1, b)
            assert f5.mul(params.j_invariant, f5.pow(params.lam, 4)) == 1


class TestPhiEval:
    def test_pole_at_zero(self, f5):
        with pytest.raises(ZeroDivisionError):
            phi_eval(f5, 1, 0, 1)

    def test_bad_index(self, f5):
        with pytest.raises(ValueError):
            phi_eval(f5, 8, 1, 1)

    def test_phi3_vanishes_at_one(self, f5):
        assert all(phi_eval(f5, 3, 1, lam) == 0 for lam in range(f5.q))

    def test_inversion_swaps_phi1_phi2(self, f5):
        for x in range(1, f5.q):
            assert phi_eval(f5, 1, x, 9) == phi_eval(f5, 2, f5.inv(x), 9)

    def test_cancellation_identities(self, f5):
        # phi5 = lam*(x^3 + 1/x) and phi7 = lam*(x^3 + 1/x^3)
        for x in range(1, f5.q):
            inv3 = f5.pow(f5.inv(x), 3)
            cube = f5.pow(x, 3)
            assert phi_eval(f5, 5, x, 11) == f5.mul(11, cube ^ f5.inv(x))
            assert phi_eval(f5, 7, x, 11) == f5.mul(11, cube ^ inv3)

    def test_matches_termwise_reference(self, f7):
        for x in (1, 2, 77, 126):
            for i in range(1, 8):
                assert phi_eval(f7, i, x, 13) == phi_by_hand(f7, i, x, 13)


class TestCounts:
    def test_rejects_degenerate(self, f5):
        with pytest.raises(DegenerateLambdaError):
            n_count(f5, 1, 0, 0)
        with pytest.raises(DegenerateLambdaError):
            g_count(f5, 0)

    def test_matches_slow_reference_everywhere(self, f5):
        for lam in range(1, f5.q):
            for i in range(1, 8):
                for off in (0, 1):
                    assert n_count(f5, i, lam, off) == n_count_slow(f5, i, lam, off)
            assert g_count(f5, lam) == g_count_slow(f5, lam)

    def test_frozen_fixture(self, f5):
        rows = curves.read_profile_fixture(FIXTURE)
        assert len(rows) == f5.q - 1
        for row in rows:
            assert row["m"] == 5 and row["modulus"] == f5.modulus
            lam = row["lambda"]
            for i in range(1, 8):
                assert row[f"n{i}"] == n_count(f5, i, lam, 0)
            assert row["t1"] == f5.q - 2 * (row["n1"] + 1)
            assert row["t3"] == f5.q - 1 - 2 * row["n3"]
            assert row["t5"] == f5.q - 1 - 2 * row["n5"]
            assert row["tg"] == f5.q - 1 - 2 * g_count(f5, lam)

    def test_recorded_spot_value(self, f5):
        # frozen by exhaustive enumeration over the 31 nonzero x
        assert n_count(f5, 3, 1, 0) == 21

    def test_fixture_roundtrip(self, tmp_path, f5):
        path = tmp_path / "profiles.tsv"
        curves.write_profile_fixture(path, f5, lams=[1, 2, 3])
        assert curves.read_profile_fixture(path) == curves.read_profile_fixture(FIXTURE)[:3]

    @pytest.mark.parametrize("m", [5, 7])
    def test_symmetries(self, m):
        field = make_field(m)
        for lam in range(1, field.q):
            for off in (0, 1):
                n = [n_count(field, i, lam, off) for i in range(1, 8)]
                assert n[0] == n[1]  # x -> 1/x swaps the cubic covers
                assert n[4] == n[5]
                assert n[6] == n[2]  # cube map is a bijection for odd m
            assert n_count(field, 4, lam, 0) == g_count(field, lam)

    def test_batched_equals_pointwise(self, f5):
        table = n_counts_all(f5)
        for lam in range(1, f5.q):
            for i in range(1, 8):
                assert int(table[i - 1, lam]) == n_count(f5, i, lam, 0)


class TestTraceProfiles:
    def test_even_degree_rejected(self, f4):
        with pytest.raises(ValueError):
            curve_traces(curve_params(f4, 0, 0))

    def test_profile_shape(self, f5):
        profile = curve_traces(curve_params(f5, 1, 0))
        assert all(0 <= v <= f5.q - 1 for v in profile.n)
        assert profile.t_prym == 0
        assert profile.t_combined == 2 * profile.t1 + 2 * profile.t3 + 2 * profile.t5 + profile.tg

    def test_supersingular_and_weil_ranges(self, f5):
        bound = isqrt_floor(4 * f5.q)
        root2q = 1 << ((f5.m + 1) // 2)
        for cls in (0, 1):
            for b in range(f5.q):
                if b == 1:
                    continue
                p = curve_traces(curve_params(f5, cls, b))
                assert p.t1 in (0, root2q, -root2q)
                assert p.t3 % 2 == 1 and abs(p.t3) <= bound
                assert p.t5 % 2 == 1 and abs(p.t5) <= 2 * bound
                assert p.tg % 2 == 1 and abs(p.tg) <= 2 * bound
                assert abs(p.t_combined) <= 13 * bound

    def test_kloosterman_congruence(self, f5):
        for cls in (0, 1):
            want = 1 if cls == 1 else 3  # Tr(A+1) = 0 exactly in class 1
            for b in range(f5.q):
                if b == 1:
                    continue
                p = curve_traces(curve_params(f5, cls, b))
                assert p.t3 % 4 == want

    def test_t3_hits_every_odd_value(self, f5):
        bound = isqrt_floor(4 * f5.q)
        seen = {
            curve_traces(curve_params(f5, cls, b)).t3
            for cls in (0, 1)
            for b in range(f5.q)
            if b != 1
        }
        assert seen == {t for t in range(-bound, bound + 1) if t % 2}


class TestSplitCounts:
    def test_unknown_subset(self, f5):
        with pytest.raises(ValueError):
            split_count("f5", curve_params(f5, 0, 0))

    def test_direct_enumeration(self, f5):
        from conftest import trace_by_definition

        for cls in (0, 1):
            off = cls ^ 1
            for b in (0, 3, 21):
                params = curve_params(f5, cls, b)
                for subset, idx in curves.SUBSETS.items():
                    direct = sum(
                        1
                        for x in range(2, f5.q)
                        if all(
                            trace_by_definition(f5, phi_by_hand(f5, i, x, params.lam)) == off
                            for i in idx
                        )
                    )
                    assert direct % 2 == 0
                    assert split_count(subset, params) == direct // 2

    @pytest.mark.parametrize("m", [5, 7])
    def test_interval_membership(self, m):
        field = make_field(m)
        for cls in (0, 1):
            for subset in ("f1f2", "f3"):
                lo, hi = split_interval(subset, field, cls)
                for b in range(field.q):
                    if b == 1:
                        continue
                    value = split_count(subset, curve_params(field, cls, b))
                    assert lo <= value <= hi

    def test_f3_interval_values(self, f5):
        # Tr(A+1) = 1 is trace class 0: (q-1 -+ [2 sqrt q])/4
        assert split_interval("f3", f5, 0) == (5.0, 10.5)
        assert split_interval("f1f2", f5, 1) == (0.0, 9.25)
        assert split_interval("f1f2f3", f5, 0) is None


class TestIsoCheck:
    @pytest.mark.parametrize("m", [5, 7])
    def test_all_lambdas_pass(self, m):
        field = make_field(m)
        assert all(iso_check_f5_g(field, lam) == 1 for lam in range(1, field.q))

    def test_lambda_one_directly(self, f5):
        assert n_count(f5, 5, 1, 0) == g_count(f5, 1)


class TestExponentialSums:
    @pytest.mark.parametrize("m", [5, 7])
    def test_cubic_sums_are_supersingular(self, m):
        field = make_field(m)
        allowed = {0, 1 << ((m + 1) // 2), -(1 << ((m + 1) // 2))}
        for lam in range(1, field.q):
            for c in (0, 1):
                zeros = n_count(field, 1, lam, field.trace(c)) + (1 - field.trace(c))
                assert field.q - 2 * zeros in allowed

# -*- coding: utf-8 -*-
"""
불안정 엔트로피 추정 테스트 (잎 조각 성장, 코사이클, SRB)
"""

import math

import numpy as np
import pytest

from src.application.common.exceptions import ResolutionExhaustedError, ValidationError
from src.application.domain.torus.dto import ToralTermDTO
from src.application.domain.torus.dynamics import ConjugatedToralMap, ToralMap
from src.application.domain.torus.entropy import (
    entropy_report,
    flag_cocycle_growth,
    periodic_flag_growth,
    segment_growth,
    srb_exponent_sum,
    srb_volume_exponent,
    uniform_convergence_profile,
)
from src.application.domain.torus.periodic import periodic_orbits_up_to

CAT = [[2, 1], [1, 1]]
THREE_D = [[2, 1, 1], [1, 2, 0], [1, 0, 1]]
LOG_GOLDEN_SQUARED = math.log((3.0 + math.sqrt(5.0)) / 2.0)


def generic_map() -> ToralMap:
    return ToralMap(CAT, [ToralTermDTO(component=0, wavevector=(0, 1), a=1.0)], 0.05)


def conjugated_model() -> ConjugatedToralMap:
    return ConjugatedToralMap(
        CAT,
        [
            ToralTermDTO(component=0, wavevector=(0, 1), a=0.01),
            ToralTermDTO(component=1, wavevector=(1, 1), a=0.01),
        ],
    )


class TestSegmentGrowth:
    """잎 조각 길이 성장 테스트"""

    def test_linear_segment_grows_by_eigenvalue(self):
        """선형 사상: 매 단계 log φ²"""
        estimate = segment_growth(ToralMap.linear(CAT), [0.3, 0.1], n=10)

        assert estimate.horizon == 10
        assert estimate.chi == pytest.approx(LOG_GOLDEN_SQUARED, abs=1e-8)
        assert estimate.running_chi[-1] == pytest.approx(estimate.chi)

    def test_perturbed_segment_is_finite(self):
        """섭동 사상: 양의 성장률, 점 수 상한 이내"""
        estimate = segment_growth(generic_map(), [0.3, 0.1], n=15)

        assert 0.5 < estimate.chi < 1.5
        assert estimate.max_points <= 100_000

    def test_resolution_exhausted(self):
        """점 수 상한 초과"""
        with pytest.raises(ResolutionExhaustedError) as exc_info:
            segment_growth(ToralMap.linear(CAT), [0.3, 0.1], n=5, max_pts=30, renormalize=False)

        assert exc_info.value.operation == "segment_growth"

    def test_needs_one_dimensional_unstable(self):
        """불안정 차원 2 거부"""
        with pytest.raises(ValidationError):
            segment_growth(ToralMap.linear(THREE_D), [0.1, 0.2, 0.3])


class TestCocycleGrowth:
    """플래그 코사이클 성장 테스트"""

    def test_three_dimensional_flags(self):
        """선형 3차원: chi_1 = 약한 지수, chi_2 = 불안정 합"""
        f = ToralMap.linear(THREE_D)
        weak = flag_cocycle_growth(f, [0.1, 0.2, 0.3], 1, n=20)
        full = flag_cocycle_growth(f, [0.1, 0.2, 0.3], 2, n=20)

        assert weak.chi == pytest.approx(f.eigen.unstable_exponents[0], abs=1e-8)
        assert full.chi == pytest.approx(f.eigen.topological_entropy, abs=1e-8)

    def test_uniform_profile_for_linear_map(self):
        """선형 사상: 모든 지평에서 편차 0"""
        rows = uniform_convergence_profile(
            ToralMap.linear(CAT), 1, [5, 1, 5], grid_n=4, target=LOG_GOLDEN_SQUARED
        )

        assert [row.horizon for row in rows] == [1, 5]
        assert all(row.deviation < 1e-8 for row in rows)

    def test_periodic_flag_growth_matches_orbit_exponents(self):
        """한 주기 성장의 평균 = 주기점의 불안정 지수"""
        f = generic_map()
        orbits = periodic_orbits_up_to(f, 3)
        cycles = periodic_flag_growth(f, orbits, 1)

        assert [len(c) for c in cycles] == [o.period for o in orbits]
        for orbit, cycle in zip(orbits, cycles):
            assert cycle.mean() == pytest.approx(orbit.exponents[-1], abs=1e-8)

    def test_uniform_profile_includes_periodic_points(self):
        """주기점을 넣으면 편차가 그 궤도 지수와의 차이 이상"""
        f = generic_map()
        orbits = periodic_orbits_up_to(f, 2)
        means = [c.mean() for c in periodic_flag_growth(f, orbits, 1)]
        rows = uniform_convergence_profile(
            f, 1, [2], grid_n=4, target=float(np.mean(means)), orbits=orbits
        )

        assert rows[0].deviation >= max(abs(m - np.mean(means)) for m in means) - 1e-12

    @pytest.mark.slow
    def test_uniform_profile_conjugated_model_converges(self):
        """켤레 모형: 64² 격자 편차가 (10% 여유 안에서) 감소, 마지막 < 5e-3"""
        rows = uniform_convergence_profile(
            conjugated_model(), 1, [10, 20, 40, 80, 160], grid_n=64, target=LOG_GOLDEN_SQUARED
        )
        deviations = [row.deviation for row in rows]

        assert all(later <= 1.1 * earlier for earlier, later in zip(deviations, deviations[1:]))
        assert deviations[-1] < 5e-3

    @pytest.mark.slow
    def test_uniform_profile_generic_plateau(self):
        """일반 섭동: 주기의 공배수 지평에서 편차 ≥ 주기 데이터 폭 / 2"""
        f = generic_map()
        orbits = periodic_orbits_up_to(f, 5)
        means = [c.mean() for c in periodic_flag_growth(f, orbits, 1)]
        half_spread = 0.5 * (max(means) - min(means))
        rows = uniform_convergence_profile(
            f, 1, [60, 120, 180, 240], grid_n=64, target=float(np.mean(means)), orbits=orbits
        )

        assert half_spread > 1e-2
        assert all(row.deviation >= half_spread - 1e-9 for row in rows)

    @pytest.mark.slow
    def test_conjugated_model_cocycle_growth(self):
        """켤레 모형: 임의의 20 점에서 chi = log φ² (오차 < 5e-3)"""
        f = conjugated_model()
        points = np.random.default_rng(17).random((20, 2))
        chis = [flag_cocycle_growth(f, x, 1, n=200).chi for x in points]
        errors = [abs(chi - LOG_GOLDEN_SQUARED) for chi in chis]

        assert max(errors) < 5e-3

    @pytest.mark.slow
    def test_segment_agrees_with_cocycle(self):
        """일반 섭동: 잎 조각 성장과 코사이클 성장이 0.01 이내"""
        f = generic_map()
        segment = segment_growth(f, [0.3, 0.1], n=20)
        cocycle = flag_cocycle_growth(f, [0.3, 0.1], 1, n=20)

        assert segment.chi == pytest.approx(cocycle.chi, abs=1e-2)

    def test_uniform_profile_rejects_empty_horizons(self):
        """빈 지평 목록 거부"""
        with pytest.raises(ValidationError):
            uniform_convergence_profile(ToralMap.linear(CAT), 1, [], grid_n=4, target=0.0)


class TestSrbEstimates:
    """SRB 표본 추정 테스트"""

    def test_linear_exponent_sum(self):
        """선형 사상: SRB 지수 합 = h_top"""
        f = ToralMap.linear(CAT)
        value = srb_exponent_sum(f, seeds=16, horizon=30, transient=5)

        assert value == pytest.approx(f.eigen.topological_entropy, abs=1e-10)

    def test_volume_exponent(self):
        """보존 사상은 0, 일반 섭동은 음수"""
        linear = srb_volume_exponent(ToralMap.linear(CAT), seeds=16, horizon=30, transient=5)
        dissipative = srb_volume_exponent(
            generic_map(), seeds=50, horizon=200, transient=20, rng=np.random.default_rng(5)
        )

        assert linear == pytest.approx(0.0, abs=1e-12)
        assert dissipative < -1e-3

    def test_seeded_estimate_is_reproducible(self):
        """같은 시드 같은 값"""
        first = srb_exponent_sum(generic_map(), 8, 20, 5, rng=np.random.default_rng(11))
        second = srb_exponent_sum(generic_map(), 8, 20, 5, rng=np.random.default_rng(11))

        assert first == second


class TestEntropyReport:
    """엔트로피 보고 테스트"""

    def test_cat_map_report(self):
        """선형 고양이 사상: Ruelle 차이 0"""
        report = entropy_report(
            ToralMap.linear(CAT),
            seeds=16,
            horizon=30,
            transient=5,
            cocycle_points=4,
            cocycle_horizon=20,
            segment_horizon=6,
        )

        assert report.h_top_linear == pytest.approx(LOG_GOLDEN_SQUARED)
        assert report.chi_cocycle == pytest.approx([LOG_GOLDEN_SQUARED], abs=1e-8)
        assert report.chi_segment == pytest.approx(LOG_GOLDEN_SQUARED, abs=1e-8)
        assert report.ruelle_gap == pytest.approx(0.0, abs=1e-10)

    def test_three_dimensional_report_has_no_segment(self):
        """불안정 차원 2: 잎 조각 생략, 플래그 두 개"""
        report = entropy_report(
            ToralMap.linear(THREE_D),
            seeds=8,
            horizon=20,
            transient=5,
            cocycle_points=3,
            cocycle_horizon=10,
        )

        assert report.chi_segment is None
        assert len(report.chi_cocycle) == 2
        assert report.chi_cocycle[1] == pytest.approx(report.h_top_linear, abs=1e-8)

    @pytest.mark.slow
    def test_conjugated_model_ruelle_gap(self):
        """켤레 모형: Ruelle 차이 < 5e-3"""
        report = entropy_report(
            conjugated_model(),
            seeds=200,
            horizon=500,
            transient=50,
            cocycle_points=20,
            cocycle_horizon=200,
            segment_horizon=20,
            rng=np.random.default_rng(3),
        )

        assert abs(report.ruelle_gap) < 5e-3
        assert report.chi_cocycle[0] == pytest.approx(LOG_GOLDEN_SQUARED, abs=5e-3)

# -*- coding: utf-8 -*-
"""
원 사상 주기 데이터 테스트 (주기점 열거, 상수 데이터 통계, 단사 분할, 쌍립시츠 부등식)
"""

import math

import numpy as np
import pytest

from src.application.common.exceptions import (
    BudgetExceededError,
    ConstantDataViolatedError,
    ValidationError,
)
from src.application.domain.circle.dto import TrigTermDTO
from src.application.domain.circle.dynamics import CircleLift, ConjugatedCircleMap
from src.application.domain.circle.periodic import (
    constant_data_statistic,
    injectivity_partition,
    interval_multiplier_products,
    interval_multipliers,
    periodic_points,
    periodic_points_up_to,
    interval_inequality_report,
)


class TestLinearPeriodicPoints:
    """E_d 주기점 테스트"""

    @pytest.mark.parametrize("n", [1, 2, 5, 10])
    def test_counts_and_exponents(self, n):
        """주기 n 의 점은 2^n − 1 개, 지수는 모두 log 2"""
        orbits = periodic_points(CircleLift.linear(2), n)

        assert len(orbits) == 2**n - 1
        exponents = np.array([o.exponent for o in orbits])
        assert np.max(np.abs(exponents - math.log(2))) < 1e-10

    def test_points_are_rational(self):
        """E_2 의 주기 4 점은 j/15"""
        orbits = periodic_points(CircleLift.linear(2), 4)
        points = np.array([o.point for o in orbits])

        assert np.allclose(points, np.arange(15) / 15, atol=1e-12)

    def test_degree_three(self):
        """E_3 주기 3: 26 개"""
        orbits = periodic_points(CircleLift.linear(3), 3)

        assert len(orbits) == 26
        assert orbits[0].multiplier == pytest.approx(27.0)

    def test_budget_exceeded(self):
        """d^n 이 예산을 넘으면 거부"""
        with pytest.raises(BudgetExceededError) as exc_info:
            periodic_points(CircleLift.linear(2), 21, budget=2**20)

        assert exc_info.value.operation == "periodic_points"


class TestPerturbedPeriodicData:
    """비상수 주기 데이터 테스트"""

    def setup_method(self):
        self.f = CircleLift(2, [TrigTermDTO(k=1, a=0.5 / (2 * math.pi))])

    def test_fixed_point_exponent_closed_form(self):
        """유일한 고정점 0 에서 F′ = 2.5"""
        orbits = periodic_points(self.f, 1)

        assert len(orbits) == 1
        assert orbits[0].point == pytest.approx(0.0, abs=1e-12)
        assert orbits[0].exponent == pytest.approx(math.log(2.5), abs=1e-10)

    def test_spread_detects_non_constant_data(self):
        """주기 ≤ 6 에서 지수 폭은 0.3 이상"""
        stats = constant_data_statistic(periodic_points_up_to(self.f, 6), 2)

        assert stats.spread > 0.3
        assert stats.orbit_count == sum(2**n - 1 for n in range(1, 7))
        assert stats.exponent_max == pytest.approx(math.log(2.5), abs=1e-10)

    def test_periodic_points_solve_fixed_point_equation(self):
        """f^n(p) = p"""
        for orbit in periodic_points(self.f, 5):
            _, frac, _ = self.f.iterate(orbit.point, 5)
            assert abs(float(frac) - orbit.point) < 1e-9 or abs(float(frac) - orbit.point) > 1 - 1e-9

    def test_inequality_report_rejects_non_constant_data(self):
        """상수 데이터가 아니면 부등식 보고 거부"""
        with pytest.raises(ConstantDataViolatedError) as exc_info:
            interval_inequality_report(self.f, 4)

        assert exc_info.value.details["spread"] > 0.3
        assert exc_info.value.operation == "interval_inequality_report"

    def test_interval_multiplier_products_bounded(self):
        """|I_{n,j}|·|DF^n(p_{n,j})| 는 [1/C_f, C_f] 안"""
        products = interval_multiplier_products(self.f, 5)
        c_f = math.exp((math.pi / 1.5) / (1.0 - 1.0 / 1.5))

        assert len(products) == 32
        assert np.all(products > 1.0 / c_f)
        assert np.all(products < c_f)


class TestConstantDataStatistic:
    """상수 데이터 통계 테스트"""

    def test_conjugated_model_has_constant_data(self):
        """매끄러운 켤레 모형의 지수 폭 < 1e-8"""
        g = ConjugatedCircleMap(2, [TrigTermDTO(k=1, a=0.1 / (2 * math.pi))])
        stats = constant_data_statistic(periodic_points_up_to(g, 8), 2)

        assert stats.spread < 1e-8
        assert stats.log_d_gap < 1e-8

    def test_empty_orbits_rejected(self):
        """빈 목록 거부"""
        with pytest.raises(ValidationError):
            constant_data_statistic([], 2)


class TestInjectivityPartition:
    """단사 구간 분할 테스트"""

    def test_linear_partition_is_uniform(self):
        """E_2 의 3 단계 분할은 길이 1/8 구간 8 개"""
        partition = injectivity_partition(CircleLift.linear(2), 3)

        assert partition.base == pytest.approx(0.0)
        assert np.allclose(partition.sizes, 1 / 8)
        assert partition.sizes.sum() == pytest.approx(1.0)

    def test_partition_refines(self):
        """n 단계 경계점은 n+1 단계 경계점에 포함"""
        f = CircleLift(2, [TrigTermDTO(k=1, a=0.3 / (2 * math.pi))])
        coarse = injectivity_partition(f, 3)
        fine = injectivity_partition(f, 4)

        assert np.allclose(fine.offsets[::2], coarse.offsets, atol=1e-13)
        assert fine.sizes.sum() == pytest.approx(1.0)

    def test_interval_multipliers_one_per_interval(self):
        """구간마다 주기점 하나 (고정점은 양 끝 구간 공유)"""
        f = CircleLift(2, [TrigTermDTO(k=1, a=0.3 / (2 * math.pi))])
        partition = injectivity_partition(f, 4)
        multipliers = interval_multipliers(partition, periodic_points(f, 4))

        assert len(multipliers) == 16
        assert not np.any(np.isnan(multipliers))
        assert multipliers[0] == pytest.approx(2.3**4, rel=1e-9)
        assert multipliers[-1] == pytest.approx(multipliers[0])


class TestInequalityReport:
    """상수 데이터 아래 쌍립시츠 부등식 테스트"""

    def test_linear_ratios_are_one(self):
        """E_2: d^n |I_{n,j}| = 1"""
        rows = interval_inequality_report(CircleLift.linear(2), 6)

        assert [row.n for row in rows] == list(range(1, 7))
        for row in rows:
            assert row.ratio_min == pytest.approx(1.0, abs=1e-9)
            assert row.ratio_max == pytest.approx(1.0, abs=1e-9)
            assert row.linear_ratio == pytest.approx(1.0, abs=1e-9)
            assert row.within

    def test_conjugated_ratios_within_distortion_bounds(self):
        """켤레 모형의 비율은 [1/C², C²] 안"""
        g = ConjugatedCircleMap(2, [TrigTermDTO(k=1, a=0.1 / (2 * math.pi))])
        rows = interval_inequality_report(g, 6)

        assert all(row.within for row in rows)
        assert all(row.lower <= 1.0 <= row.upper for row in rows)

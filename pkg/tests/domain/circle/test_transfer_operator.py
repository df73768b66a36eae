# -*- coding: utf-8 -*-
"""
Ulam 전이 연산자와 불변 밀도 테스트
"""

import math

import numpy as np
import pytest

from src.application.common.exceptions import ValidationError
from src.application.common.parallel import ParallelExecutor
from src.application.domain.circle.dto import DensityApprox, TrigTermDTO
from src.application.domain.circle.dynamics import CircleLift, ConjugatedCircleMap
from src.application.domain.circle.periodic import periodic_points_up_to
from src.application.domain.circle.service import CircleReportService
from src.application.domain.circle.transfer_operator import (
    acim_exponent,
    birkhoff_exponent,
    coarsen,
    invariant_density,
    l1_distance,
    orbit_histogram,
    periodic_vs_birkhoff,
    pushforward_defect,
    ulam_matrix,
)
from src.application.domain.experiment.dto import NumericsSection


def perturbed_map() -> CircleLift:
    return CircleLift(2, [TrigTermDTO(k=1, a=0.5 / (2 * math.pi))])


class CountingExecutor(ParallelExecutor):
    def __init__(self, threads: int = 1):
        super().__init__(threads=threads, chunk_size=32)
        self.calls = 0

    def map(self, func, items):
        self.calls += 1
        return super().map(func, items)


class TestUlamMatrix:
    """Ulam 행렬 테스트"""

    def test_linear_rows_split_in_half(self):
        """E_2: 구간 i 는 2i, 2i+1 로 반씩"""
        matrix = ulam_matrix(CircleLift.linear(2), 64).toarray()

        assert np.allclose(matrix.sum(axis=1), 1.0)
        assert matrix[5, 10] == pytest.approx(0.5)
        assert matrix[5, 11] == pytest.approx(0.5)
        assert matrix[40, 80 % 64] == pytest.approx(0.5)
        assert np.count_nonzero(matrix[5]) == 2

    def test_perturbed_rows_stochastic(self):
        """섭동 사상도 행 확률"""
        matrix = ulam_matrix(perturbed_map(), 256)

        assert np.allclose(np.asarray(matrix.sum(axis=1)).ravel(), 1.0, atol=1e-12)
        assert matrix.nnz < 256 * 8

    def test_too_few_bins(self):
        """N < d 거부"""
        with pytest.raises(ValidationError):
            ulam_matrix(CircleLift.linear(3), 2)


class TestInvariantDensity:
    """불변 밀도 테스트"""

    def test_linear_density_is_uniform(self):
        """E_2 의 불변 밀도는 Lebesgue"""
        density = invariant_density(CircleLift.linear(2), n_bins=128)

        assert np.allclose(density.weights, 1.0, atol=1e-12)
        assert density.residual <= 1e-8
        assert acim_exponent(CircleLift.linear(2), density) == pytest.approx(math.log(2))

    def test_conjugated_density_matches_pushforward(self):
        """켤레 모형: 해석적 밀도와 L1 거리 < 10/N"""
        g = ConjugatedCircleMap(2, [TrigTermDTO(k=1, a=0.1 / (2 * math.pi))])
        n = 1024
        density = invariant_density(g, n_bins=n)

        assert l1_distance(density, g.exact_density(n)) < 10.0 / n
        assert acim_exponent(g, density) == pytest.approx(math.log(2), abs=1e-3)

    def test_residual_and_normalization(self):
        """잔차 ≤ 1e-8, 평균 1"""
        density = invariant_density(perturbed_map(), n_bins=1024)

        assert density.residual <= 1e-8
        assert density.weights.mean() == pytest.approx(1.0, abs=1e-12)
        assert np.all(density.weights > 0.0)

    def test_pushforward_defect_of_exact_density(self):
        """해석적 불변 밀도는 밀어내기 결함이 거의 0"""
        g = ConjugatedCircleMap(2, [TrigTermDTO(k=1, a=0.1 / (2 * math.pi))])

        assert pushforward_defect(g, g.exact_density(1024)) < 1e-5

    def test_executor_reaches_ulam_matrix(self):
        """전달한 실행기로 Ulam 행렬 생성, 스레드 수와 무관한 밀도"""
        serial = CountingExecutor(threads=1)
        threaded = CountingExecutor(threads=4)

        first = invariant_density(perturbed_map(), n_bins=256, executor=serial)
        second = invariant_density(perturbed_map(), n_bins=256, executor=threaded)

        assert serial.calls == 1 and threaded.calls == 1
        assert np.array_equal(first.weights, second.weights)

    def test_report_service_uses_its_executor(self, tmp_path):
        """원 보고서 서비스의 밀도 계산도 서비스 실행기 사용"""
        executor = CountingExecutor(threads=2)
        numerics = NumericsSection(ulam_bins=128, expansion_grid_n=256)
        service = CircleReportService(perturbed_map(), numerics, tmp_path, executor=executor)

        density = service.invariant_density()

        assert executor.calls == 1
        assert density.bins == 128


class TestBirkhoffOracle:
    """Birkhoff 기준값 테스트"""

    @pytest.mark.slow
    def test_acim_exponent_matches_birkhoff(self):
        """Ulam 지수와 궤도 평균 지수 비교"""
        f = perturbed_map()
        density = invariant_density(f, n_bins=2048)
        birkhoff = birkhoff_exponent(f, seeds=2000, steps=1000, rng=np.random.default_rng(7))

        assert acim_exponent(f, density) == pytest.approx(birkhoff, abs=5e-3)

    def test_birkhoff_is_seeded(self):
        """같은 시드는 같은 값"""
        f = perturbed_map()
        first = birkhoff_exponent(f, 50, 100, rng=np.random.default_rng(1))
        second = birkhoff_exponent(f, 50, 100, rng=np.random.default_rng(1))

        assert first == second

    def test_histogram_matches_ulam_density(self):
        """궤도 히스토그램과 Ulam 밀도 (16 구간)"""
        f = perturbed_map()
        ulam = coarsen(invariant_density(f, n_bins=1024), 16)
        histogram = orbit_histogram(f, 16, seeds=2000, steps=500, rng=np.random.default_rng(3))

        assert l1_distance(ulam, histogram) < 0.05

    def test_periodic_vs_birkhoff_gap(self):
        """켤레 모형: 주기 평균 = log 2"""
        g = ConjugatedCircleMap(2, [TrigTermDTO(k=1, a=0.1 / (2 * math.pi))])
        orbits = periodic_points_up_to(g, 5)

        assert periodic_vs_birkhoff(orbits, math.log(2)) < 1e-10


class TestDensityHelpers:
    """밀도 보조 함수 테스트"""

    def test_coarsen_requires_divisor(self):
        """N 이 배수가 아니면 거부"""
        density = DensityApprox(bins=12, weights=np.ones(12))

        with pytest.raises(ValidationError):
            coarsen(density, 5)

    def test_l1_distance(self):
        """상수 밀도 간 거리"""
        first = DensityApprox(bins=4, weights=np.array([1.5, 0.5, 1.5, 0.5]))
        second = DensityApprox(bins=4, weights=np.ones(4))

        assert l1_distance(first, second) == pytest.approx(0.5)
        assert coarsen(first, 2).weights.tolist() == [1.0, 1.0]

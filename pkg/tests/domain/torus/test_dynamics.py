# -*- coding: utf-8 -*-
"""
토러스 사상, 고유 분해, 원뿔 인증 테스트
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError as SchemaError

from src.application.common.exceptions import (
    ConeViolationError,
    NotHyperbolicError,
    NotSimpleSpectrumError,
    ValidationError,
)
from src.application.domain.torus.dto import ToralTermDTO
from src.application.domain.torus.dynamics import (
    ConjugatedToralMap,
    ToralMap,
    cone_certify,
    eigen_split,
    grid_points,
    torus_distance,
)

CAT = [[2, 1], [1, 1]]
GOLDEN_SQUARED = (3.0 + math.sqrt(5.0)) / 2.0
# t³ − t − 1 의 동반 행렬: 실근 하나와 복소 켤레 쌍
COMPLEX_PAIR = [[0, 0, 1], [1, 0, 1], [0, 1, 0]]


def generic_map(epsilon: float = 0.05) -> ToralMap:
    return ToralMap(CAT, [ToralTermDTO(component=0, wavevector=(0, 1), a=1.0)], epsilon)


class TestEigenSplit:
    """정수 자기동형 고유 분해 테스트"""

    def test_cat_map_split(self):
        """고양이 사상: 안정 1, 불안정 1, 지수 ±log φ²"""
        eigen = eigen_split(CAT)

        assert eigen.stable_count == 1
        assert eigen.unstable_count == 1
        expected = np.array([-1.0, 1.0]) * math.log(GOLDEN_SQUARED)
        assert eigen.exponents == pytest.approx(expected)
        assert eigen.topological_entropy == pytest.approx(math.log(GOLDEN_SQUARED))
        assert eigen.real_simple

    def test_bases_are_invariant(self):
        """A v = β v"""
        eigen = eigen_split(CAT)
        v = eigen.unstable_basis[:, 0]

        assert np.array(CAT) @ v == pytest.approx(GOLDEN_SQUARED * v)
        assert np.linalg.norm(v) == pytest.approx(1.0)

    def test_three_dimensional_split(self):
        """3차원: 안정 1, 불안정 2 (약한 방향이 첫 열)"""
        eigen = eigen_split([[2, 1, 1], [1, 2, 0], [1, 0, 1]], simple_spectrum=True)

        assert eigen.stable_count == 1
        assert eigen.unstable_count == 2
        assert eigen.exponents[1] < eigen.exponents[2]
        assert eigen.irreducible is True
        assert float(np.sum(eigen.exponents)) == pytest.approx(0.0, abs=1e-12)

    def test_parabolic_matrix_rejected(self):
        """고유값 1 은 쌍곡이 아님"""
        with pytest.raises(NotHyperbolicError) as exc_info:
            eigen_split([[1, 1], [0, 1]])

        assert exc_info.value.operation == "eigen_split"

    def test_determinant_must_be_unit(self):
        """|det A| ≠ 1 거부"""
        with pytest.raises(NotHyperbolicError):
            eigen_split([[2, 0], [0, 3]])

    def test_non_integer_rejected(self):
        """정수가 아닌 성분 거부"""
        with pytest.raises(ValidationError):
            eigen_split([[2.5, 1], [1, 1]])

    def test_complex_pair_needs_relaxed_mode(self):
        """복소 고유값: 일반 모드는 허용, 강성 모드는 거부"""
        eigen = eigen_split(COMPLEX_PAIR)

        assert eigen.stable_count == 2
        assert not eigen.real_simple
        with pytest.raises(NotSimpleSpectrumError):
            eigen_split(COMPLEX_PAIR, simple_spectrum=True)


class TestToralMaps:
    """섭동 사상과 켤레 모형 테스트"""

    def setup_method(self):
        self.points = grid_points(7, 2) + 0.013

    def test_linear_map_is_exact(self):
        """ε = 0 이면 선형"""
        f = ToralMap.linear(CAT)

        assert f.is_linear
        assert np.allclose(f.displacement(self.points), 0.0)
        assert np.allclose(f.log_det_jacobian(self.points), 0.0)

    def test_jacobian_matches_finite_differences(self):
        """해석적 야코비안과 중앙 차분"""
        f = generic_map()
        x = np.array([0.3, 0.7])
        h = 1e-6
        numeric = np.column_stack(
            [(f.lift(x + h * e) - f.lift(x - h * e)) / (2 * h) for e in np.eye(2)]
        )

        assert f.jacobian(x) == pytest.approx(numeric, abs=1e-7)

    def test_inverse_of_perturbed_map(self):
        """lift(inverse(x)) = x"""
        f = generic_map()

        assert np.allclose(f.lift(f.inverse(self.points)), self.points, atol=1e-10)

    def test_conjugated_map_identity(self):
        """g∘H = H∘A"""
        g = ConjugatedToralMap(CAT, [ToralTermDTO(component=0, wavevector=(0, 1), a=0.01)])
        left = g.apply(g.h(self.points))
        right = g.h(self.points @ np.array(CAT, dtype=float).T)

        assert np.max(torus_distance(left, right)) < 1e-10
        assert np.allclose(g.lift(g.inverse(self.points)), self.points, atol=1e-10)

    def test_conjugacy_field_must_be_small(self):
        """‖Dq‖ ≥ 1 인 켤레장 거부"""
        with pytest.raises(ValidationError):
            ConjugatedToralMap(CAT, [ToralTermDTO(component=0, wavevector=(1, 0), a=0.2)])

    def test_term_dimension_mismatch(self):
        """파수 벡터 길이와 차원 불일치"""
        with pytest.raises(ValidationError):
            ToralMap(CAT, [ToralTermDTO(component=0, wavevector=(1, 0, 0), a=0.1)], 0.1)

    def test_zero_wavevector_rejected(self):
        """영 파수 벡터는 스키마 오류"""
        with pytest.raises(SchemaError):
            ToralTermDTO(component=0, wavevector=(0, 0), a=0.1)


class TestConeCertificate:
    """원뿔 조건 인증 테스트"""

    def test_cat_map_margin(self):
        """선형 고양이 사상 여유 = φ²/√(1+γ²) − 1"""
        certificate = cone_certify(ToralMap.linear(CAT), grid_n=8)

        assert certificate.ok
        assert certificate.margin == pytest.approx(GOLDEN_SQUARED / math.sqrt(1.25) - 1.0)
        assert certificate.domination_margin is None
        assert certificate.samples == 64

    def test_small_perturbation_certified(self):
        """ε = 0.05 는 인증"""
        certificate = cone_certify(generic_map(), grid_n=32)

        assert certificate.ok
        assert 0.0 < certificate.margin < GOLDEN_SQUARED / math.sqrt(1.25) - 1.0

    def test_large_perturbation_rejected(self):
        """큰 섭동은 원뿔 위반"""
        f = generic_map(epsilon=1.0)

        with pytest.raises(ConeViolationError) as exc_info:
            cone_certify(f, grid_n=16)
        assert exc_info.value.operation == "cone_certify"

        report = cone_certify(f, grid_n=16, raise_on_failure=False)
        assert not report.ok
        assert len(report.worst_point) == 2

    def test_three_dimensional_domination(self):
        """불안정 차원 2 이면 지배 여유 기록"""
        f = ToralMap.linear([[2, 1, 1], [1, 2, 0], [1, 0, 1]])
        certificate = cone_certify(f, grid_n=4)

        assert certificate.domination_margin is not None
        assert certificate.domination_margin > 0.0

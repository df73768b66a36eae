# -*- coding: utf-8 -*-
"""
Torus Domain DTO - 토러스 Anosov 사상 관련 데이터 전송 객체
"""

from dataclasses import dataclass, field

import numpy as np
from pydantic import Field, field_validator

from src.application.common.dto import ArrayDTO, BaseDTO


# ==================== Map Description DTOs ====================


class ToralTermDTO(BaseDTO):
    """
    벡터장 성분 하나의 삼각 항 a·sin(2π k·x) + b·cos(2π k·x)

    Attributes:
        component: 벡터장 성분 번호 (0부터)
        wavevector: 정수 파수 벡터 k
        a: sin 계수 (사상 단위)
        b: cos 계수 (사상 단위)
    """

    component: int = Field(description="성분 번호", ge=0)
    wavevector: tuple[int, ...] = Field(description="파수 벡터", min_length=1)
    a: float = Field(default=0.0, description="sin 계수")
    b: float = Field(default=0.0, description="cos 계수")

    @field_validator("wavevector")
    @classmethod
    def validate_wavevector(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """영벡터 금지"""
        if not any(v):
            raise ValueError("wavevector must be nonzero")
        return v


# ==================== Linear Data ====================


class EigenData(ArrayDTO):
    """
    정수 자기동형의 고유 분해

    고유값은 절댓값 오름차순이다 (|β^s_1| < … < |β^s_k| < 1 < |β^u_1| < … < |β^u_n|).
    불안정 기저의 첫 열이 가장 약한 불안정 방향이다.

    Attributes:
        matrix: 정수 행렬 A
        eigenvalues: 정렬된 고유값
        exponents: log|β_i| (오름차순)
        stable_count: 안정 고유값 개수 k
        stable_basis: E^s 의 실기저 (d×k)
        unstable_basis: E^u 의 실기저 (d×n)
        real_simple: 모든 고유값이 실수이고 서로 다른지
        irreducible: 특성다항식의 Q 위 기약성 (검사하지 않았으면 None)
    """

    matrix: np.ndarray = Field(description="정수 행렬")
    eigenvalues: np.ndarray = Field(description="정렬된 고유값")
    exponents: np.ndarray = Field(description="선형 Lyapunov 지수")
    stable_count: int = Field(description="안정 차원", ge=1)
    stable_basis: np.ndarray = Field(description="안정 기저")
    unstable_basis: np.ndarray = Field(description="불안정 기저")
    real_simple: bool = Field(description="실수 단순 스펙트럼 여부")
    irreducible: bool | None = Field(default=None, description="기약성")

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def unstable_count(self) -> int:
        return self.dim - self.stable_count

    @property
    def basis(self) -> np.ndarray:
        """[E^s | E^u] 기저 행렬"""
        return np.hstack([self.stable_basis, self.unstable_basis])

    @property
    def stable_exponents(self) -> np.ndarray:
        return self.exponents[: self.stable_count]

    @property
    def unstable_exponents(self) -> np.ndarray:
        return self.exponents[self.stable_count :]

    @property
    def topological_entropy(self) -> float:
        """h_top(L) = Σ log|β^u_j|"""
        return float(np.sum(self.unstable_exponents))


class ConeCertificateDTO(BaseDTO):
    """
    원뿔 조건 인증 결과

    Attributes:
        margin: 최악 확장 인자 − 1 (불안정/안정 중 작은 쪽)
        ok: 인증 여부
        unstable_factor: Df 의 불안정 원뿔 최소 확장 인자
        stable_factor: Df⁻¹ 의 안정 원뿔 최소 확장 인자
        invariance_margin: 원뿔 불변 부등식의 최소 여유
        worst_point: 최악 표본점
        domination_margin: 강/약 불안정 지배 여유 (불안정 차원 ≥ 2 일 때)
        samples: 표본점 수
    """

    margin: float = Field(description="확장 여유")
    ok: bool = Field(description="인증 여부")
    unstable_factor: float = Field(description="불안정 확장 인자")
    stable_factor: float = Field(description="안정 확장 인자")
    invariance_margin: float = Field(description="불변 여유")
    worst_point: list[float] = Field(description="최악 표본점")
    domination_margin: float | None = Field(default=None, description="지배 여유")
    samples: int = Field(description="표본 수", ge=1)


# ==================== Periodic Data ====================


class IndexSpreadDTO(BaseDTO):
    """
    번들 지수 i 의 주기 통계

    Attributes:
        index: 지수 번호 (1부터)
        side: "s" 또는 "u"
        mean: 평균 지수
        spread: 최대 − 최소
        gap_to_linear: |mean − log|β_i||
    """

    index: int = Field(description="지수 번호", ge=1)
    side: str = Field(description="안정/불안정", pattern="^(s|u)$")
    mean: float = Field(description="평균")
    spread: float = Field(description="폭", ge=0.0)
    gap_to_linear: float = Field(description="선형 지수와의 차이", ge=0.0)


@dataclass(frozen=True, eq=False)
class ToralPeriodicOrbit:
    """연속화된 토러스 주기점"""

    point: tuple[float, ...]
    period: int
    monodromy: np.ndarray
    exponents: tuple[float, ...]
    jac_log: float
    seed: tuple[float, ...] = field(default=())


# ==================== Entropy Data ====================


class GrowthEstimate(ArrayDTO):
    """
    불안정 플래그 부피 성장 추정

    Attributes:
        index: 플래그 번호 i (W^u_{(1,i)})
        point: 기준점
        delta: 초기 잎 조각 크기 (코사이클 추정이면 0)
        horizon: n
        log_growth: 단계별 로그 성장 g_1..g_n
        chi: (1/n) Σ g_m
        max_points: 추적 중 최대 다각선 점 수 (코사이클 추정이면 0)
    """

    index: int = Field(description="플래그 번호", ge=1)
    point: list[float] = Field(description="기준점")
    delta: float = Field(default=0.0, description="초기 크기", ge=0.0)
    horizon: int = Field(description="지평", ge=1)
    log_growth: np.ndarray = Field(description="단계별 로그 성장")
    chi: float = Field(description="부피 성장률")
    max_points: int = Field(default=0, description="최대 점 수", ge=0)

    @property
    def running_chi(self) -> np.ndarray:
        """n 별 누적 평균 chi_n (추세 진단용)"""
        return np.cumsum(self.log_growth) / np.arange(1, self.horizon + 1)


class UniformRowDTO(BaseDTO):
    """지평별 유한 시간 지수의 격자 sup 편차"""

    horizon: int = Field(description="지평", ge=1)
    deviation: float = Field(description="sup 편차", ge=0.0)


class EntropyReportDTO(BaseDTO):
    """
    엔트로피 항등식 보고

    Attributes:
        h_top_linear: Σ log|β^u_j|
        chi_cocycle: 플래그별 코사이클 부피 성장 (i = 1..n)
        chi_segment: 1차원 잎 조각 성장 (불안정 차원 1 일 때)
        srb_exponent_sum: Lebesgue 임의 표본의 불안정 log-det 평균
        ruelle_gap: h_top_linear − srb_exponent_sum
    """

    h_top_linear: float = Field(description="선형 위상 엔트로피")
    chi_cocycle: list[float] = Field(description="플래그별 부피 성장")
    chi_segment: float | None = Field(default=None, description="잎 조각 성장")
    srb_exponent_sum: float = Field(description="SRB 지수 합")
    ruelle_gap: float = Field(description="Ruelle 차이")


# ==================== Conjugacy Data ====================


class GridField(ArrayDTO):
    """
    N^d 균등 격자 위 주기 변위장 u (h = id + u, h∘f = L∘h)

    Attributes:
        resolution: 축당 격자 수 N
        values: (N, …, N, d) 변위 값
        sweeps: 수행한 스윕 수
        differences: 스윕별 sup 차이
        contraction: max(‖L_u⁻¹‖, ‖L_s‖)
    """

    resolution: int = Field(description="격자 해상도", ge=2)
    values: np.ndarray = Field(description="변위 값")
    sweeps: int = Field(default=0, description="스윕 수", ge=0)
    differences: list[float] = Field(default_factory=list, description="스윕별 차이")
    contraction: float = Field(default=0.0, description="축소 인자")

    @property
    def dim(self) -> int:
        return int(self.values.shape[-1])

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0


class HolderDirectionDTO(BaseDTO):
    """방향별 Hölder 지수"""

    direction: str = Field(description="방향 이름")
    alpha: float = Field(description="Hölder 지수")
    r2: float = Field(description="결정계수")

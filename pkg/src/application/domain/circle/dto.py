# -*- coding: utf-8 -*-
"""
Circle Domain DTO - 확장 원 사상 관련 데이터 전송 객체
"""

from dataclasses import dataclass

import numpy as np
from pydantic import Field

from src.application.common.dto import ArrayDTO, BaseDTO


# ==================== Map Description DTOs ====================


class TrigTermDTO(BaseDTO):
    """
    삼각 섭동 항 a·sin(2πkx) + b·cos(2πkx)

    Attributes:
        k: 진동수 (양의 정수)
        a: sin 계수 (사상 단위)
        b: cos 계수 (사상 단위)
    """

    k: int = Field(description="진동수", ge=1, le=64)
    a: float = Field(default=0.0, description="sin 계수")
    b: float = Field(default=0.0, description="cos 계수")


# ==================== Certification DTOs ====================


class ExpansionCertificateDTO(BaseDTO):
    """
    확장성 인증 결과

    Attributes:
        lambda_min_bound: 격자 최소 F′ 에서 Lipschitz 여유를 뺀 하한
        grid_n: 격자 크기
        ok: 하한 > 1 여부
    """

    lambda_min_bound: float = Field(description="F′ 하한")
    grid_n: int = Field(description="격자 크기", ge=2)
    ok: bool = Field(description="확장 여부")


class ConstantDataDTO(BaseDTO):
    """
    상수 주기 데이터 통계

    Attributes:
        mean: 지수 평균 (nats)
        spread: 최대 지수 - 최소 지수
        log_d_gap: |mean - log d|
        exponent_min: 최소 지수
        exponent_max: 최대 지수
        orbit_count: 사용한 궤도 수
    """

    mean: float = Field(description="지수 평균")
    spread: float = Field(description="지수 폭", ge=0.0)
    log_d_gap: float = Field(description="log d 와의 차이", ge=0.0)
    exponent_min: float = Field(description="최소 지수")
    exponent_max: float = Field(description="최대 지수")
    orbit_count: int = Field(description="궤도 수", ge=1)


class InequalityRowDTO(BaseDTO):
    """
    주기 n 의 쌍립시츠 부등식 행

    Attributes:
        n: 주기
        ratio_min: min_j d^n |I_{n,j}|
        ratio_max: max_j d^n |I_{n,j}|
        linear_ratio: d^n / λ^n (λ = 평균 주기 승수)
        lower: 1/C²
        upper: C²
        within: 모든 비율이 [lower, upper] 안에 있는지
    """

    n: int = Field(description="주기", ge=1)
    ratio_min: float = Field(description="최소 비율")
    ratio_max: float = Field(description="최대 비율")
    linear_ratio: float = Field(description="d^n / λ^n")
    lower: float = Field(description="하한 1/C²")
    upper: float = Field(description="상한 C²")
    within: bool = Field(description="구간 포함 여부")


class HolderFitDTO(BaseDTO):
    """
    진동 회귀 Hölder 지수

    Attributes:
        alpha: 회귀 기울기
        r2: 결정계수
    """

    alpha: float = Field(description="Hölder 지수")
    r2: float = Field(description="결정계수")


class RegularityRowDTO(BaseDTO):
    """
    척도별 정칙성 행

    Attributes:
        level: 척도 단계 m
        scale: d^{-m}
        oscillation: 최대 구간 상 길이
        quotient_min: 최소 차분몫
        quotient_max: 최대 차분몫
    """

    level: int = Field(description="척도 단계", ge=1)
    scale: float = Field(description="척도")
    oscillation: float = Field(description="진동")
    quotient_min: float = Field(description="최소 차분몫")
    quotient_max: float = Field(description="최대 차분몫")


class BilipschitzReportDTO(BaseDTO):
    """
    쌍립시츠 인증 세부 결과

    Attributes:
        certified: 최종 판정
        quotient_min: 전체 단계 최소 차분몫
        quotient_max: 전체 단계 최대 차분몫
        lower: 1/C²
        upper: C²
        drift: 단계당 log(q_max/q_min) 기울기
    """

    certified: bool = Field(description="판정")
    quotient_min: float = Field(description="최소 차분몫")
    quotient_max: float = Field(description="최대 차분몫")
    lower: float = Field(description="하한")
    upper: float = Field(description="상한")
    drift: float = Field(description="로그폭 기울기")


# ==================== Array Result DTOs ====================


class InjectivityPartition(ArrayDTO):
    """
    f^n 의 최대 단사 구간 분할

    breakpoints 는 base 에서 시작해 원을 한 바퀴 도는 순서로 정렬된다.

    Attributes:
        period: n
        base: 기준점 (역상을 취하는 점)
        breakpoints: f^n 에 의한 base 의 역상 d^n 개 (원 위 좌표)
        sizes: 각 구간 길이 |I_{n,j}|
    """

    period: int = Field(description="주기", ge=1)
    base: float = Field(description="기준점")
    breakpoints: np.ndarray = Field(description="구간 경계점")
    sizes: np.ndarray = Field(description="구간 길이")

    @property
    def offsets(self) -> np.ndarray:
        """base 로부터의 반시계 거리"""
        return np.mod(self.breakpoints - self.base, 1.0)


class DensityApprox(ArrayDTO):
    """
    균등 분할 위 조각별 상수 불변 밀도

    Attributes:
        bins: 분할 개수 N
        weights: 구간별 밀도 값 (길이 단위당)
        residual: 전이 연산자 L1 잔차 ‖Tω − ω‖₁
        iterations: 수행한 거듭제곱 반복 횟수
    """

    bins: int = Field(description="분할 개수", ge=1)
    weights: np.ndarray = Field(description="밀도 값")
    residual: float = Field(default=0.0, description="L1 잔차", ge=0.0)
    iterations: int = Field(default=0, description="반복 횟수", ge=0)

    @property
    def midpoints(self) -> np.ndarray:
        """구간 중점"""
        return (np.arange(self.bins) + 0.5) / self.bins


class ConjugacyApprox(ArrayDTO):
    """
    원 켤레 h 의 표본 (f∘h = h∘E_d)

    values[j] 는 t_j = j / M 에서의 단조 리프트 값이며 M = base^level 이다.
    마지막 값은 values[0] + 1 (차수 1).

    Attributes:
        base: 척도 밑 d
        level: 깊이 k
        values: 길이 M + 1 의 단조 리프트 표본
        source: 구성 경로 ("symbolic" / "ode" / "composed")
    """

    base: int = Field(description="척도 밑", ge=2)
    level: int = Field(description="깊이", ge=1)
    values: np.ndarray = Field(description="리프트 표본")
    source: str = Field(default="symbolic", description="구성 경로")

    @property
    def size(self) -> int:
        """구간 개수 M"""
        return len(self.values) - 1

    @property
    def grid(self) -> np.ndarray:
        """표본 위치 t_j"""
        return np.arange(self.size + 1) / self.size


# ==================== Internal Records ====================


@dataclass(frozen=True)
class PeriodicOrbit:
    """주기점과 Lyapunov 지수"""

    point: float
    period: int
    multiplier: float
    exponent: float

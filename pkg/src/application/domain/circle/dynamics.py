# -*- coding: utf-8 -*-
"""
Circle Dynamics - 확장 원 사상

삼각 섭동 리프트 F(x) = d·x + Σ[a_k sin(2πkx) + b_k cos(2πkx)] 와
매끄러운 켤레 모형 g = H∘E_d∘H⁻¹ 의 평가, 도함수, 반복,
확장성 인증, 유계 왜곡 상수 계산
"""

import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Sequence
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import minimize_scalar

from src.application.common.decorators import operation
from src.application.common.exceptions import NotExpandingError, ValidationError
from src.application.common.validators import validate_choice, validate_positive
from src.application.domain.circle.dto import (
    ConjugacyApprox,
    DensityApprox,
    ExpansionCertificateDTO,
    TrigTermDTO,
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
BISECTION_STEPS = 44


def wrap_unit(x: ArrayLike) -> np.ndarray:
    """[0, 1) 로 정규화 (np.mod 가 1.0 을 돌려주는 경우 포함)"""
    r = np.mod(np.asarray(x, dtype=float), 1.0)
    return np.where(r >= 1.0, 0.0, r)


def circle_distance(x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """원 위 거리 |x − y| mod 1"""
    diff = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    return np.abs(diff - np.round(diff))


# ==================== 삼각 급수 ====================


class TrigSeries:
    """
    유한 삼각 급수 p(x) = Σ[a_k sin(2πkx) + b_k cos(2πkx)] 와 도함수
    """

    def __init__(self, terms: Sequence[TrigTermDTO]):
        self.terms = tuple(terms)
        self.ks = np.array([t.k for t in self.terms], dtype=float)
        self.a = np.array([t.a for t in self.terms], dtype=float)
        self.b = np.array([t.b for t in self.terms], dtype=float)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.a) and not np.any(self.b)

    @property
    def max_frequency(self) -> int:
        return int(self.ks.max()) if len(self.ks) else 0

    def __call__(self, x: ArrayLike, order: int = 0) -> np.ndarray:
        """
        급수 또는 그 도함수 평가

        Args:
            x: 위치 (임의 모양)
            order: 0, 1, 2

        Returns:
            np.ndarray: x 와 같은 모양의 값
        """
        x = np.asarray(x, dtype=float)
        if not len(self.ks):
            return np.zeros_like(x)

        omega = TWO_PI * self.ks
        phase = x[..., None] * omega
        s, c = np.sin(phase), np.cos(phase)
        if order == 0:
            return (self.a * s + self.b * c).sum(axis=-1)
        if order == 1:
            return (omega * (self.a * c - self.b * s)).sum(axis=-1)
        return (-(omega**2) * (self.a * s + self.b * c)).sum(axis=-1)

    def derivative_bound(self) -> float:
        """sup |p′| 의 상계 Σ 2πk(|a|+|b|)"""
        return float(np.sum(TWO_PI * self.ks * (np.abs(self.a) + np.abs(self.b))))


# ==================== 원 사상 추상 클래스 ====================


class CircleMap(ABC):
    """
    차수 d ≥ 2 의 방향 보존 원 사상 (리프트 표현)

    F(x + 1) = F(x) + d 를 만족하는 리프트와 1, 2계 도함수를 제공한다.
    모든 메서드는 배열에 대해 벡터화되어 있다.
    """

    def __init__(self, degree: int):
        if degree < 2:
            raise ValidationError(
                f"degree must be at least 2, got {degree}", details={"field": "degree"}
            )
        self.degree = degree

    @abstractmethod
    def eval(self, x: ArrayLike) -> np.ndarray:
        """리프트 값 F(x)"""

    @abstractmethod
    def _derivative(self, x: np.ndarray, order: int) -> np.ndarray:
        """order 계 도함수"""

    @abstractmethod
    def describe(self) -> str:
        """로그용 짧은 설명"""

    @property
    def sample_resolution(self) -> int:
        """경계값 탐색 격자 크기"""
        return 4096

    def derivative(self, x: ArrayLike, order: int = 1) -> np.ndarray:
        """
        해석적 도함수

        Args:
            x: 위치
            order: 1 또는 2

        Returns:
            np.ndarray: F′(x) 또는 F″(x)
        """
        validate_choice(order, (1, 2), "order")
        return self._derivative(np.asarray(x, dtype=float), order)

    def circle_eval(self, x: ArrayLike) -> np.ndarray:
        """원 위의 상 F(x) mod 1"""
        return wrap_unit(self.eval(x))

    # ==================== 경계값 ====================

    def _extremum(self, func, maximize: bool) -> float:
        """격자 탐색 후 minimize_scalar 로 다듬은 극값"""
        n = self.sample_resolution
        xs = np.arange(n) / n
        values = func(xs)
        sign = -1.0 if maximize else 1.0
        i = int(np.argmin(sign * values))
        h = 1.0 / n
        refined = minimize_scalar(
            lambda t: sign * float(func(np.asarray(t))),
            bounds=(xs[i] - h, xs[i] + h),
            method="bounded",
            options={"xatol": 1e-13},
        )
        best = min(sign * float(values[i]), float(refined.fun))
        return sign * best

    @cached_property
    def lambda_min(self) -> float:
        """inf F′"""
        return self._extremum(lambda x: self._derivative(x, 1), maximize=False)

    @cached_property
    def lambda_max(self) -> float:
        """sup F′"""
        return self._extremum(lambda x: self._derivative(x, 1), maximize=True)

    @cached_property
    def m2(self) -> float:
        """sup |F″|"""
        return self._extremum(lambda x: np.abs(self._derivative(x, 2)), maximize=True)

    # ==================== 반복 ====================

    def iterate(self, x: ArrayLike, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        F^n 리프트 반복 (정수부 / 소수부 분리 추적)

        F^n(x) = integer + fraction 이며 정수부는 I ← d·I + floor 로 누적한다.

        Args:
            x: 시작점 (임의 실수)
            n: 반복 횟수

        Returns:
            tuple: (정수부, 소수부 ∈ [0,1), Σ log F′ 누적)
        """
        x = np.asarray(x, dtype=float)
        integer = np.floor(x)
        frac = x - integer
        log_derivative = np.zeros_like(x)
        for _ in range(n):
            log_derivative = log_derivative + np.log(self._derivative(frac, 1))
            y = self.eval(frac)
            fl = np.floor(y)
            integer = self.degree * integer + fl
            frac = y - fl
        return integer, frac, log_derivative

    def lift_inverse(self, t: ArrayLike) -> np.ndarray:
        """
        리프트 역함수 F⁻¹(t) (단조 리프트 이분법 + Newton 한 번)

        Args:
            t: 리프트 값

        Returns:
            np.ndarray: F(y) = t 인 y
        """
        t = np.asarray(t, dtype=float)
        f0 = float(self.eval(0.0))
        shift = np.floor((t - f0) / self.degree)
        target = t - shift * self.degree

        lo = np.zeros_like(target)
        hi = np.ones_like(target)
        for _ in range(BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            below = self.eval(mid) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)

        y = 0.5 * (lo + hi)
        y = y - (self.eval(y) - target) / self._derivative(y, 1)
        y = np.clip(y, lo, hi)
        return y + shift

    def preimages(self, t: ArrayLike) -> np.ndarray:
        """
        원 위 점들의 f 역상 (각 점마다 d 개, [0,1) 좌표)

        Args:
            t: 원 위 점 배열 (길이 m)

        Returns:
            np.ndarray: (m, d) 배열, 행마다 d 개의 역상
        """
        t = np.atleast_1d(np.asarray(t, dtype=float))
        f0 = float(self.eval(0.0))
        start = np.ceil(f0 - t)
        targets = t[:, None] + start[:, None] + np.arange(self.degree)[None, :]
        return wrap_unit(self.lift_inverse(targets))

    def anchor_fixed_point(self) -> float:
        """
        0 에서 시작한 Newton 으로 찾는 고정점 (켤레의 기준점)

        Returns:
            float: [0,1) 의 고정점
        """
        j = round(float(self.eval(0.0)))
        x = 0.0
        for _ in range(60):
            step = (float(self.eval(x)) - x - j) / (float(self._derivative(np.asarray(x), 1)) - 1.0)
            x -= step
            if abs(step) < 1e-16:
                break
        return float(wrap_unit(x))

    def birkhoff_sum(self, x: np.ndarray, steps: int, transient: int = 0) -> np.ndarray:
        """각 시작점별 궤도 위 log F′ 합 (원 좌표로 반복)"""
        x = wrap_unit(x)
        for _ in range(transient):
            x = self.circle_eval(x)
        total = np.zeros_like(x)
        for _ in range(steps):
            total += np.log(self._derivative(x, 1))
            x = self.circle_eval(x)
        return total


# ==================== 삼각 섭동 리프트 ====================


class CircleLift(CircleMap):
    """
    삼각 섭동 리프트 F(x) = d·x + Σ[a_k sin(2πkx) + b_k cos(2πkx)]

    계수는 사상 단위이다. 예: F(x) = 2x + (0.3/2π) sin(2πx) 는 a_1 = 0.3/2π.
    """

    def __init__(self, degree: int, terms: Sequence[TrigTermDTO] = ()):
        """
        Args:
            degree: 차수 d ≥ 2
            terms: 삼각 섭동 항
        """
        super().__init__(degree)
        self.series = TrigSeries(terms)

    @classmethod
    def linear(cls, degree: int) -> "CircleLift":
        """선형 모형 E_d"""
        return cls(degree)

    @property
    def sample_resolution(self) -> int:
        return max(4096, 64 * self.series.max_frequency)

    def eval(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return self.degree * x + self.series(x)

    def _derivative(self, x: np.ndarray, order: int) -> np.ndarray:
        if order == 1:
            return self.degree + self.series(x, 1)
        return self.series(x, 2)

    def describe(self) -> str:
        if self.series.is_zero:
            return f"E_{self.degree}"
        return f"CircleLift(d={self.degree}, terms={len(self.series.terms)})"

    @cached_property
    def lambda_min(self) -> float:
        if self.series.is_zero:
            return float(self.degree)
        return super().lambda_min

    @cached_property
    def lambda_max(self) -> float:
        if self.series.is_zero:
            return float(self.degree)
        return super().lambda_max

    @cached_property
    def m2(self) -> float:
        if self.series.is_zero:
            return 0.0
        return super().m2


# ==================== 매끄러운 켤레 모형 ====================


class ConjugatedCircleMap(CircleMap):
    """
    매끄러운 켤레 모형 g = H∘E_d∘H⁻¹, H(x) = x + Σ[a_k sin(2πkx) + b_k cos(2πkx)]

    모든 주기 지수가 log d 인 (상수 주기 데이터) 비선형 예시.
    H 는 H′ > 0 인 원의 미분동형이어야 한다.
    """

    def __init__(self, degree: int, conjugacy_terms: Sequence[TrigTermDTO]):
        """
        Args:
            degree: 차수 d ≥ 2
            conjugacy_terms: H 의 삼각 섭동 항

        Raises:
            ValidationError: H′ 가 양수임을 보장할 수 없는 경우
        """
        super().__init__(degree)
        self.h_series = TrigSeries(conjugacy_terms)
        bound = self.h_series.derivative_bound()
        if bound >= 1.0:
            raise ValidationError(
                f"conjugacy field derivative bound {bound:.4f} must be below 1",
                details={"field": "conjugacy_terms"},
            )

    @property
    def sample_resolution(self) -> int:
        return max(4096, 64 * self.degree * self.h_series.max_frequency)

    def h(self, x: ArrayLike) -> np.ndarray:
        """H(x)"""
        x = np.asarray(x, dtype=float)
        return x + self.h_series(x)

    def h_derivative(self, x: ArrayLike) -> np.ndarray:
        """H′(x)"""
        return 1.0 + self.h_series(np.asarray(x, dtype=float), 1)

    def h_inverse(self, x: ArrayLike) -> np.ndarray:
        """H⁻¹(x) (벡터화 Newton)"""
        x = np.asarray(x, dtype=float)
        y = x.copy()
        for _ in range(60):
            step = (self.h(y) - x) / self.h_derivative(y)
            y = y - step
            if np.all(np.abs(step) < 1e-15):
                break
        return y

    def eval(self, x: ArrayLike) -> np.ndarray:
        return self.h(self.degree * self.h_inverse(x))

    def _derivative(self, x: np.ndarray, order: int) -> np.ndarray:
        d = self.degree
        y = self.h_inverse(x)
        h1_y = self.h_derivative(y)
        h1_dy = self.h_derivative(d * y)
        if order == 1:
            return d * h1_dy / h1_y
        h2_y = self.h_series(y, 2)
        h2_dy = self.h_series(d * y, 2)
        return d * d * h2_dy / h1_y**2 - d * h1_dy * h2_y / h1_y**3

    def describe(self) -> str:
        return f"ConjugatedCircleMap(d={self.degree}, terms={len(self.h_series.terms)})"

    # ==================== 해석적 기준값 ====================

    def exact_density(self, bins: int) -> DensityApprox:
        """
        H 로 밀어낸 Lebesgue 측도의 정확한 구간 평균 밀도 (ω_g = (H⁻¹)′)

        Args:
            bins: 분할 개수 N

        Returns:
            DensityApprox: N·(H⁻¹(b) − H⁻¹(a)) 구간 값
        """
        edges = np.arange(bins + 1) / bins
        weights = bins * np.diff(self.h_inverse(edges))
        return DensityApprox(bins=bins, weights=weights)

    def exact_conjugacy(self, level: int) -> ConjugacyApprox:
        """d 진 격자 위의 H 표본 (g∘H = H∘E_d)"""
        size = self.degree**level
        grid = np.arange(size + 1) / size
        return ConjugacyApprox(
            base=self.degree, level=level, values=self.h(grid), source="exact"
        )


# ==================== 인증 연산 ====================


@operation("check_expanding")
def check_expanding(
    circle_map: CircleMap, grid_n: int, raise_on_failure: bool = True
) -> ExpansionCertificateDTO:
    """
    확장성 인증

    격자 최소 F′ 에서 Lipschitz 여유 M2/grid_n 을 뺀 값을 하한으로 사용한다.

    Args:
        circle_map: 원 사상
        grid_n: 격자 크기 (≥ 2)
        raise_on_failure: 하한 ≤ 1 일 때 예외를 던질지 여부

    Returns:
        ExpansionCertificateDTO: 하한과 판정

    Raises:
        NotExpandingError: 하한 ≤ 1 이고 raise_on_failure 인 경우
    """
    if grid_n < 2:
        raise ValidationError(f"grid_n must be at least 2, got {grid_n}")

    xs = np.arange(grid_n) / grid_n
    bound = float(np.min(circle_map.derivative(xs, 1))) - circle_map.m2 / grid_n
    ok = bound > 1.0
    logger.debug(f"[Expansion] {circle_map.describe()} bound={bound:.6f} grid={grid_n}")

    if not ok and raise_on_failure:
        raise NotExpandingError(lower_bound=bound)
    return ExpansionCertificateDTO(lambda_min_bound=bound, grid_n=grid_n, ok=ok)


@operation("distortion_constant")
def distortion_constant(circle_map: CircleMap, grid_n: int = 4096) -> float:
    """
    유계 왜곡 상수 C_f = exp(M / (1 − 1/λ)), M = sup|F″| / inf F′, λ = inf F′

    Args:
        circle_map: 원 사상
        grid_n: 확장성 인증 격자 크기

    Returns:
        float: C_f ≥ 1

    Raises:
        NotExpandingError: 확장성 인증 실패
    """
    validate_positive(grid_n, "grid_n")
    check_expanding(circle_map, grid_n)
    lam = circle_map.lambda_min
    m = circle_map.m2 / lam
    return float(math.exp(m / (1.0 - 1.0 / lam)))

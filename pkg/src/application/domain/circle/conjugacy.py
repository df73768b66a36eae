# -*- coding: utf-8 -*-
"""
Circle Conjugacy - E_d 와의 원 켤레 구성과 정칙성 등급

두 경로로 켤레 h (f∘h = h∘E_d) 를 만든다.
- 기호 경로: d 진 유리수 j/d^k 를 고정점 기준 단사 구간 경계점에 대응
- 밀도 ODE 경로: z′ = ω_source(t) / ω_target(z) 의 RK4 해

그리고 진동 회귀 Hölder 지수와 쌍립시츠 인증으로 정칙성을 평가한다.
"""

import logging
import math

import numpy as np
from numpy.typing import ArrayLike
from scipy.stats import linregress

from src.application.common.decorators import operation
from src.application.common.exceptions import (
    DensityVanishesError,
    EndpointMismatchError,
    ValidationError,
)
from src.application.common.validators import validate_budget, validate_positive
from src.application.domain.circle.dto import (
    BilipschitzReportDTO,
    ConjugacyApprox,
    DensityApprox,
    HolderFitDTO,
    RegularityRowDTO,
)
from src.application.domain.circle.dynamics import CircleMap, circle_distance
from src.application.domain.circle.periodic import DEFAULT_BUDGET, injectivity_partition

logger = logging.getLogger(__name__)

DEFAULT_WRAP_TOL = 1e-6
DEFAULT_DENSITY_FLOOR = 1e-6
DEFAULT_DRIFT_TOL = 0.05
SKIPPED_COARSE_LEVELS = 2


# ==================== 기호 켤레 ====================


@operation("symbolic_conjugacy")
def symbolic_conjugacy(
    circle_map: CircleMap, level: int, budget: int = DEFAULT_BUDGET
) -> ConjugacyApprox:
    """
    기호 트리 대응 켤레

    h(j/d^k) = 고정점 기준 k 단계 단사 구간의 j 번째 왼쪽 끝점.
    h 는 순서를 보존하고 f(h(j/d^k)) = h(d·j/d^k) 가 구성상 정확히 성립한다.

    Args:
        circle_map: 확장 원 사상
        level: 깊이 k
        budget: d^k 상한

    Returns:
        ConjugacyApprox: 길이 d^k + 1 의 단조 리프트 표본

    Raises:
        BudgetExceededError: d^k > budget
    """
    validate_positive(level, "level")
    validate_budget(circle_map.degree**level, budget)
    partition = injectivity_partition(circle_map, level, budget=budget)
    values = partition.base + np.append(partition.offsets, 1.0)
    return ConjugacyApprox(
        base=circle_map.degree, level=level, values=values, source="symbolic"
    )


# ==================== 밀도 ODE 켤레 ====================


def _periodic_interp(weights: np.ndarray, x: ArrayLike) -> np.ndarray:
    """구간 중점을 지나는 주기 선형 보간"""
    n = len(weights)
    u = np.asarray(x, dtype=float) * n - 0.5
    i = np.floor(u)
    frac = u - i
    i = i.astype(np.int64) % n
    return weights[i] * (1.0 - frac) + weights[(i + 1) % n] * frac


def _check_positive(density: DensityApprox, floor: float) -> None:
    i = int(np.argmin(density.weights))
    if density.weights[i] < floor:
        raise DensityVanishesError(
            position=float(density.midpoints[i]), value=float(density.weights[i])
        )


@operation("ode_conjugacy")
def ode_conjugacy(
    source: DensityApprox,
    target: DensityApprox,
    z0: float = 0.0,
    steps: int = 2**14,
    base: int = 2,
    wrap_tol: float = DEFAULT_WRAP_TOL,
    density_floor: float = DEFAULT_DENSITY_FLOOR,
) -> ConjugacyApprox:
    """
    밀도 ODE z′ = ω_source(t) / ω_target(z), z(0) = z0 의 RK4 해

    해는 ω_source 측도를 ω_target 측도로 보내는 단조 사상이다.

    Args:
        source: 출발 밀도
        target: 도착 밀도
        z0: 초기값
        steps: RK4 스텝 수 (base 의 거듭제곱)
        base: 척도 밑 (정칙성 평가용)
        wrap_tol: z(1) − z(0) 와 1 의 허용 차이
        density_floor: 보간 밀도 하한

    Returns:
        ConjugacyApprox: steps + 1 개 균등 t 에서의 z

    Raises:
        DensityVanishesError: 밀도가 하한 아래
        EndpointMismatchError: 차수가 1 이 아님
    """
    level = round(math.log(steps) / math.log(base)) if steps > 1 else 0
    if level < 1 or base**level != steps:
        raise ValidationError(
            f"steps must be a power of {base}, got {steps}", details={"field": "steps"}
        )
    _check_positive(source, density_floor)
    _check_positive(target, density_floor)

    h = 1.0 / steps
    t = np.arange(steps + 1) * h
    s_full = _periodic_interp(source.weights, t)
    s_half = _periodic_interp(source.weights, t[:-1] + 0.5 * h)

    weights = target.weights.tolist()
    n = len(weights)

    def omega_target(z: float) -> float:
        u = z * n - 0.5
        i = math.floor(u)
        frac = u - i
        i %= n
        return weights[i] * (1.0 - frac) + weights[(i + 1) % n] * frac

    z = np.empty(steps + 1)
    z[0] = current = z0
    for j in range(steps):
        k1 = s_full[j] / omega_target(current)
        k2 = s_half[j] / omega_target(current + 0.5 * h * k1)
        k3 = s_half[j] / omega_target(current + 0.5 * h * k2)
        k4 = s_full[j + 1] / omega_target(current + h * k3)
        current += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        z[j + 1] = current

    increment = float(z[-1] - z[0])
    if abs(increment - 1.0) > wrap_tol:
        raise EndpointMismatchError(increment=increment, tol=wrap_tol)

    logger.debug(f"[ODE] RK4 steps={steps}, increment error={increment - 1.0:.2e}")
    return ConjugacyApprox(base=base, level=level, values=z, source="ode")


# ==================== 켤레 조작 ====================


def evaluate(hc: ConjugacyApprox, x: ArrayLike) -> np.ndarray:
    """켤레 표본의 주기 단조 선형 보간 h(x) (리프트)"""
    x = np.asarray(x, dtype=float)
    whole = np.floor(x)
    return np.interp(x - whole, hc.grid, hc.values) + whole


def compose_conjugacies(first: ConjugacyApprox, second: ConjugacyApprox) -> ConjugacyApprox:
    """
    first∘second 를 second 의 격자에서 표본화

    Args:
        first: 바깥 사상
        second: 안쪽 사상

    Returns:
        ConjugacyApprox: 합성 표본
    """
    return ConjugacyApprox(
        base=second.base,
        level=second.level,
        values=evaluate(first, second.values),
        source="composed",
    )


def sup_distance(first: ConjugacyApprox, second: ConjugacyApprox, normalize: bool = True) -> float:
    """
    second 격자 위에서의 sup |first − second|

    normalize 이면 두 표본 모두 h(0) 을 빼고 비교한다.
    """
    a = evaluate(first, second.grid)
    b = second.values
    if normalize:
        a = a - first.values[0]
        b = b - second.values[0]
    return float(np.max(np.abs(a - b)))


def conjugacy_residual(hc: ConjugacyApprox, circle_map: CircleMap) -> float:
    """
    표본 격자 위 max_j dist(f(h(t_j)), h(d·t_j mod 1))

    Raises:
        ValidationError: 격자 밑이 사상의 차수와 다른 경우
    """
    d = circle_map.degree
    if hc.base != d:
        raise ValidationError(
            f"conjugacy grid base {hc.base} differs from degree {d}", details={"field": "base"}
        )
    size = hc.size
    j = np.arange(size)
    pushed = circle_map.eval(hc.values[:-1])
    shifted = hc.values[(d * j) % size]
    return float(np.max(circle_distance(pushed, shifted)))


# ==================== 정칙성 ====================


def _level_lengths(hc: ConjugacyApprox, m: int) -> np.ndarray:
    """척도 base^{-m} 구간들의 h 상 길이"""
    stride = hc.base ** (hc.level - m)
    return np.diff(hc.values[::stride])


@operation("holder_exponent")
def holder_exponent(hc: ConjugacyApprox) -> HolderFitDTO:
    """
    진동 회귀 Hölder 지수

    m = 2..k 에 대해 log(최대 구간 상 길이) 를 log(d^{-m}) 에 회귀한 기울기.
    가장 거친 두 척도는 제외한다.

    Args:
        hc: 켤레 표본 (level ≥ 6)

    Returns:
        HolderFitDTO: alpha, r2

    Raises:
        ValidationError: level < 6
    """
    if hc.level < 6:
        raise ValidationError(
            f"Hölder regression needs level >= 6, got {hc.level}", details={"field": "level"}
        )
    levels = np.arange(SKIPPED_COARSE_LEVELS, hc.level + 1)
    scales = np.log(float(hc.base)) * -levels
    oscillations = np.log([np.max(_level_lengths(hc, int(m))) for m in levels])
    fit = linregress(scales, oscillations)
    return HolderFitDTO(alpha=float(fit.slope), r2=float(fit.rvalue**2))


def regularity_table(hc: ConjugacyApprox) -> list[RegularityRowDTO]:
    """척도별 (척도, 진동, 최소 차분몫, 최대 차분몫) 행"""
    rows = []
    for m in range(1, hc.level + 1):
        lengths = _level_lengths(hc, m)
        quotients = lengths * hc.base**m
        rows.append(
            RegularityRowDTO(
                level=m,
                scale=float(hc.base) ** -m,
                oscillation=float(lengths.max()),
                quotient_min=float(quotients.min()),
                quotient_max=float(quotients.max()),
            )
        )
    return rows


def bilipschitz_report(
    hc: ConjugacyApprox, c_f: float, drift_tol: float = DEFAULT_DRIFT_TOL
) -> BilipschitzReportDTO:
    """
    쌍립시츠 인증 세부 결과

    모든 단계의 차분몫이 [1/C², C²] 안에 있고, 로그폭 log(q_max/q_min) 의
    단계당 기울기가 drift_tol 미만이어야 한다. 기울기 회귀는 가장 거친 두 단계를 제외한다.

    Args:
        hc: 켤레 표본
        c_f: 유계 왜곡 상수
        drift_tol: 허용 기울기 (nats/level)

    Returns:
        BilipschitzReportDTO: 판정과 근거 값
    """
    table = regularity_table(hc)
    lower, upper = 1.0 / c_f**2, c_f**2
    q_min = min(row.quotient_min for row in table)
    q_max = max(row.quotient_max for row in table)

    tail = table[SKIPPED_COARSE_LEVELS:]
    if len(tail) >= 3:
        widths = [math.log(row.quotient_max / row.quotient_min) for row in tail]
        drift = float(linregress([row.level for row in tail], widths).slope)
    else:
        drift = 0.0

    certified = (
        q_min >= lower * (1.0 - 1e-12) and q_max <= upper * (1.0 + 1e-12) and drift < drift_tol
    )
    return BilipschitzReportDTO(
        certified=certified,
        quotient_min=q_min,
        quotient_max=q_max,
        lower=lower,
        upper=upper,
        drift=drift,
    )


@operation("bilipschitz_certificate")
def bilipschitz_certificate(
    hc: ConjugacyApprox, c_f: float, drift_tol: float = DEFAULT_DRIFT_TOL
) -> bool:
    """
    쌍립시츠 인증 판정

    Args:
        hc: 켤레 표본
        c_f: distortion_constant 로 얻은 C_f
        drift_tol: 허용 로그폭 기울기

    Returns:
        bool: 인증 여부
    """
    return bilipschitz_report(hc, c_f, drift_tol).certified

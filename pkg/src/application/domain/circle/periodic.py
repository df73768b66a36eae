# -*- coding: utf-8 -*-
"""
Circle Periodic - 주기점 열거와 상수 주기 데이터

리프트 분기 이분법으로 주기 n 의 모든 주기점을 찾고,
단사 구간 분할 I_{n,j} 와 쌍립시츠 부등식 보고를 만든다.
"""

import logging
import math

import numpy as np

from src.application.common.decorators import operation
from src.application.common.exceptions import (
    ConstantDataViolatedError,
    RootBracketFailureError,
    ValidationError,
)
from src.application.common.parallel import ParallelExecutor, tree_mean
from src.application.common.validators import validate_budget, validate_positive
from src.application.domain.circle.dto import (
    ConstantDataDTO,
    InequalityRowDTO,
    InjectivityPartition,
    PeriodicOrbit,
)
from src.application.domain.circle.dynamics import (
    CircleMap,
    circle_distance,
    distortion_constant,
    wrap_unit,
)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2**20
DEFAULT_TOL_CD = 1e-6
PERIODIC_RESIDUAL = 1e-10


# ==================== 주기점 ====================


@operation("periodic_points")
def periodic_points(
    circle_map: CircleMap,
    n: int,
    budget: int = DEFAULT_BUDGET,
    tol: float = 1e-12,
    executor: ParallelExecutor | None = None,
) -> list[PeriodicOrbit]:
    """
    주기 n 의 주기점 전체 열거

    G(x) = F^n(x) − x − m 은 (F^n)′ > 1 이므로 순증가하고, m = m0, …, m0 + d^n − 2
    각각에 대해 [0, 1) 에 유일한 근을 가진다. 이분법으로 tol 까지 좁힌 뒤
    Newton 한 번으로 다듬는다.

    Args:
        circle_map: 확장 원 사상
        n: 주기 (≥ 1)
        budget: d^n 상한
        tol: 이분법 종료 폭
        executor: 청크 병렬 실행기

    Returns:
        list[PeriodicOrbit]: d^n − 1 개, 위치 오름차순

    Raises:
        BudgetExceededError: d^n > budget
        RootBracketFailureError: 부호 조건 또는 주기 잔차 검증 실패
    """
    validate_positive(n, "n")
    d = circle_map.degree
    validate_budget(d**n, budget)
    executor = executor or ParallelExecutor(chunk_size=4096)

    count = d**n - 1
    int0, frac0, _ = circle_map.iterate(0.0, n)
    m0 = float(int0) + (1.0 if float(frac0) > 0.0 else 0.0)
    steps = max(1, math.ceil(math.log2(1.0 / tol)))

    def g(x: np.ndarray, m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        integer, frac, log_der = circle_map.iterate(x, n)
        return (integer - m) + frac - x, log_der

    def solve(m: np.ndarray) -> np.ndarray:
        lo = np.zeros_like(m)
        hi = np.ones_like(m)
        g_lo, _ = g(lo, m)
        g_hi, _ = g(hi, m)
        if np.any(g_lo > 0.0) or np.any(g_hi < 0.0):
            bad = int(np.argmax((g_lo > 0.0) | (g_hi < 0.0)))
            raise RootBracketFailureError(
                f"G does not change sign on [0, 1) for m = {m[bad]:.0f}",
                details={"period": n, "m": float(m[bad])},
            )
        for _ in range(steps):
            mid = 0.5 * (lo + hi)
            g_mid, _ = g(mid, m)
            below = g_mid < 0.0
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)

        x = 0.5 * (lo + hi)
        value, log_der = g(x, m)
        x = np.clip(x - value / (np.exp(log_der) - 1.0), lo, hi)
        return wrap_unit(x)

    m_values = m0 + np.arange(count, dtype=float)
    points = executor.map_array(solve, m_values)

    integer, frac, log_der = circle_map.iterate(points, n)
    residual = circle_distance(frac, points)
    # 전방 반복의 반올림 오차는 승수에 비례해 커진다
    allowed = np.maximum(PERIODIC_RESIDUAL, 1e3 * np.finfo(float).eps * np.exp(log_der))
    if np.any(residual > allowed):
        bad = int(np.argmax(residual - allowed))
        raise RootBracketFailureError(
            f"Periodic residual {residual[bad]:.3e} at x = {points[bad]:.12f}",
            details={"period": n, "point": float(points[bad]), "residual": float(residual[bad])},
        )

    logger.debug(f"[Periodic] {circle_map.describe()} n={n}: {count} points")
    return [
        PeriodicOrbit(
            point=float(p), period=n, multiplier=float(math.exp(s)), exponent=float(s / n)
        )
        for p, s in zip(points, log_der)
    ]


def periodic_points_up_to(
    circle_map: CircleMap,
    n_max: int,
    budget: int = DEFAULT_BUDGET,
    executor: ParallelExecutor | None = None,
) -> list[PeriodicOrbit]:
    """주기 1..n_max 의 주기점을 주기 순으로 모두 모은다"""
    orbits: list[PeriodicOrbit] = []
    for n in range(1, n_max + 1):
        orbits.extend(periodic_points(circle_map, n, budget=budget, executor=executor))
    return orbits


# ==================== 상수 주기 데이터 ====================


def constant_data_statistic(orbits: list[PeriodicOrbit], degree: int) -> ConstantDataDTO:
    """
    상수 주기 데이터 통계

    Args:
        orbits: 주기 궤도 목록 (비어 있으면 안 됨)
        degree: 사상의 차수 d

    Returns:
        ConstantDataDTO: 평균, 폭, log d 와의 차이

    Raises:
        ValidationError: 궤도 목록이 비어 있는 경우
    """
    if not orbits:
        raise ValidationError("orbit list must not be empty", details={"field": "orbits"})

    exponents = np.array([o.exponent for o in orbits])
    mean = tree_mean(exponents)
    low, high = float(exponents.min()), float(exponents.max())
    return ConstantDataDTO(
        mean=mean,
        spread=high - low,
        log_d_gap=abs(mean - math.log(degree)),
        exponent_min=low,
        exponent_max=high,
        orbit_count=len(orbits),
    )


# ==================== 단사 구간 분할 ====================


def _anchored_points(circle_map: CircleMap, n: int, anchor: float) -> np.ndarray:
    """
    고정점 anchor 의 f^n 역상 (단계별 새 점만 역상을 취함)

    f^{-(k+1)}(a) = f^{-k}(a) ∪ f^{-1}(N_k) 이므로 이전 단계 점은 비트 단위로 그대로 유지된다.
    """
    first = circle_map.preimages(np.array([anchor]))[0]
    fresh = np.delete(first, int(np.argmin(circle_distance(first, anchor))))
    collected = [np.array([anchor])]
    for level in range(1, n + 1):
        collected.append(fresh)
        if level < n:
            fresh = circle_map.preimages(fresh).ravel()
    return np.concatenate(collected)


@operation("injectivity_partition")
def injectivity_partition(
    circle_map: CircleMap,
    n: int,
    base: float | None = None,
    budget: int = DEFAULT_BUDGET,
) -> InjectivityPartition:
    """
    f^n 의 최대 단사 구간 분할

    base 의 f^n 역상 d^n 개를 각 역분기에서 단조 리프트 이분법으로 구한다.
    base 가 고정점이면 단계별로 새 점만 당겨 와서 단계 간 경계점이 정확히 일치한다.

    Args:
        circle_map: 확장 원 사상
        n: 단계 (≥ 1)
        base: 기준점 (None 이면 0 에서 이어진 고정점)
        budget: d^n 상한

    Returns:
        InjectivityPartition: base 부터 정렬된 경계점과 구간 길이

    Raises:
        BudgetExceededError: d^n > budget
    """
    validate_positive(n, "n")
    validate_budget(circle_map.degree**n, budget)

    if base is None:
        base = circle_map.anchor_fixed_point()
    base = float(wrap_unit(base))

    if float(circle_distance(circle_map.eval(base), base)) < 1e-13:
        points = _anchored_points(circle_map, n, base)
    else:
        points = np.array([base])
        for _ in range(n):
            points = circle_map.preimages(points).ravel()

    offsets = wrap_unit(points - base)
    order = np.argsort(offsets, kind="stable")
    offsets = offsets[order]
    sizes = np.diff(offsets, append=offsets[0] + 1.0)
    return InjectivityPartition(
        period=n, base=base, breakpoints=points[order], sizes=sizes
    )


def interval_multipliers(
    partition: InjectivityPartition, orbits: list[PeriodicOrbit]
) -> np.ndarray:
    """
    각 구간 I_{n,j} 의 폐포에 있는 주기점의 승수 |DF^n(p_{n,j})|

    기준 고정점은 첫 구간과 마지막 구간의 공통 끝점이므로 두 구간 모두에 배정된다.
    공유 끝점 동률은 왼쪽 구간으로 정한다.

    Args:
        partition: 고정점 기준 분할
        orbits: 같은 주기의 주기 궤도 전체

    Returns:
        np.ndarray: 구간별 승수

    Raises:
        RootBracketFailureError: 구간마다 정확히 하나의 주기점이 배정되지 않는 경우
    """
    count = len(partition.sizes)
    points = np.array([o.point for o in orbits])
    multipliers = np.array([o.multiplier for o in orbits])

    anchor = int(np.argmin(circle_distance(points, partition.base)))
    others = np.delete(np.arange(len(points)), anchor)
    q = wrap_unit(points[others] - partition.base)
    index = np.searchsorted(partition.offsets, q, side="left") - 1

    assigned = np.full(count, np.nan)
    assigned[[0, count - 1]] = multipliers[anchor]
    in_range = np.all((index > 0) & (index < count - 1))
    if not in_range or np.any(np.bincount(index, minlength=count)[1:-1] != 1):
        raise RootBracketFailureError(
            "periodic points do not match injectivity intervals one-to-one",
            details={"period": partition.period, "intervals": count, "points": len(points)},
        )
    assigned[index] = multipliers[others]
    return assigned


def interval_multiplier_products(circle_map: CircleMap, n: int) -> np.ndarray:
    """
    |I_{n,j}|·|DF^n(p_{n,j})| (유계 왜곡 샌드위치 값, [1/C_f, C_f] 안에 있어야 함)
    """
    partition = injectivity_partition(circle_map, n)
    orbits = periodic_points(circle_map, n)
    return partition.sizes * interval_multipliers(partition, orbits)


# ==================== 쌍립시츠 부등식 보고 ====================


@operation("interval_inequality_report")
def interval_inequality_report(
    circle_map: CircleMap,
    n_max: int,
    tol_cd: float = DEFAULT_TOL_CD,
    budget: int = DEFAULT_BUDGET,
    orbits: list[PeriodicOrbit] | None = None,
) -> list[InequalityRowDTO]:
    """
    상수 주기 데이터 아래의 쌍립시츠 부등식 보고

    n ≤ n_max 마다 d^n·|I_{n,j}| 의 최솟값과 최댓값을 [1/C², C²] 와 비교한다.

    Args:
        circle_map: 확장 원 사상
        n_max: 최대 주기
        tol_cd: 상수 데이터 판정 허용오차
        budget: d^n 상한
        orbits: 이미 계산한 주기 1..n_max 궤도 (없으면 계산)

    Returns:
        list[InequalityRowDTO]: 주기별 행

    Raises:
        ConstantDataViolatedError: 지수 폭 ≥ tol_cd (세부 정보에 지수 범위 포함)
    """
    validate_positive(n_max, "n_max")
    d = circle_map.degree
    if orbits is None:
        orbits = periodic_points_up_to(circle_map, n_max, budget=budget)

    stats = constant_data_statistic(orbits, d)
    if stats.spread >= tol_cd:
        raise ConstantDataViolatedError(
            spread=stats.spread,
            exponent_min=stats.exponent_min,
            exponent_max=stats.exponent_max,
            tol=tol_cd,
        )

    c = distortion_constant(circle_map)
    lower, upper = 1.0 / c**2, c**2
    rows = []
    for n in range(1, n_max + 1):
        ratios = d**n * injectivity_partition(circle_map, n, budget=budget).sizes
        r_min, r_max = float(ratios.min()), float(ratios.max())
        rows.append(
            InequalityRowDTO(
                n=n,
                ratio_min=r_min,
                ratio_max=r_max,
                linear_ratio=math.exp(n * (math.log(d) - stats.mean)),
                lower=lower,
                upper=upper,
                within=r_min >= lower * (1 - 1e-12) and r_max <= upper * (1 + 1e-12),
            )
        )
    logger.info(f"[Inequality] {circle_map.describe()} C_f={c:.6g}, {n_max} levels checked")
    return rows

# -*- coding: utf-8 -*-
"""
Transfer Operator - Ulam 전이 연산자와 절대연속 불변 측도

균등 분할 Ulam 행렬, 거듭제곱 반복 불변 밀도, 밀도 기반 Lyapunov 지수,
Birkhoff 궤도 평균 / 히스토그램 기준값, 밀어내기 불변성 검사
"""

import logging
import math

import numpy as np
from scipy import sparse

from src.application.common.decorators import operation
from src.application.common.exceptions import NoConvergenceError, ValidationError
from src.application.common.parallel import ParallelExecutor, tree_mean
from src.application.common.validators import validate_positive
from src.application.domain.circle.dto import DensityApprox, PeriodicOrbit
from src.application.domain.circle.dynamics import BISECTION_STEPS, CircleMap

logger = logging.getLogger(__name__)

PRUNE_TOL = 1e-14


# ==================== Ulam 행렬 ====================


def _ulam_rows(circle_map: CircleMap, rows: np.ndarray, n_bins: int) -> tuple:
    """
    행 묶음의 Ulam 항목 (행, 열, 값)

    구간 [i/N, (i+1)/N] 위에서 F 는 단조이므로 F(x)·N 이 정수 k 를 지나는 점을
    이분법으로 정확히 구해 구간을 조각내고, 조각 길이 비율을 열 k mod N 에 기록한다.
    """
    left = rows / n_bins
    right = (rows + 1) / n_bins
    f_lo = circle_map.eval(left) * n_bins
    f_hi = circle_map.eval(right) * n_bins
    first = np.floor(f_lo)
    width = int(np.max(np.ceil(f_hi) - first))

    # 교차점 목표 k = first + 1, …, first + width − 1 (f_hi 이상은 구간 끝으로 고정)
    ks = first[:, None] + np.arange(1, width)[None, :]
    valid = ks < f_hi[:, None]
    lo = np.broadcast_to(left[:, None], ks.shape).copy()
    hi = np.broadcast_to(right[:, None], ks.shape).copy()
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        below = circle_map.eval(mid) * n_bins < ks
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    crossings = np.where(valid, 0.5 * (lo + hi), right[:, None])

    edges = np.concatenate([left[:, None], crossings, right[:, None]], axis=1)
    pieces = np.diff(edges, axis=1) * n_bins
    cols = (first[:, None] + np.arange(width)[None, :]).astype(np.int64) % n_bins
    row_idx = np.broadcast_to(rows[:, None], pieces.shape)

    keep = pieces > PRUNE_TOL
    return row_idx[keep], cols[keep], pieces[keep]


@operation("ulam_matrix")
def ulam_matrix(
    circle_map: CircleMap, n_bins: int, executor: ParallelExecutor | None = None
) -> sparse.csr_matrix:
    """
    행 확률 Ulam 행렬

    항목 (i, j) 는 구간 i 가 f 에 의해 구간 j 로 가는 비율이며 표본추출 없이
    단조 리프트 분기 끝점에서 정확히 계산한다.

    Args:
        circle_map: 확장 원 사상
        n_bins: 분할 개수 N (≥ d)
        executor: 행 청크 병렬 실행기

    Returns:
        sparse.csr_matrix: N×N 행 확률 행렬

    Raises:
        ValidationError: N < d
    """
    if n_bins < circle_map.degree:
        raise ValidationError(
            f"bins must be at least the degree {circle_map.degree}, got {n_bins}",
            details={"field": "bins"},
        )
    executor = executor or ParallelExecutor()

    chunks = executor.chunks(n_bins)
    parts = executor.map(
        lambda s: _ulam_rows(circle_map, np.arange(s.start, s.stop, dtype=float), n_bins),
        chunks,
    )
    rows = np.concatenate([p[0] for p in parts]).astype(np.int64)
    cols = np.concatenate([p[1] for p in parts])
    vals = np.concatenate([p[2] for p in parts])

    matrix = sparse.coo_matrix((vals, (rows, cols)), shape=(n_bins, n_bins)).tocsr()
    matrix.sum_duplicates()
    logger.debug(f"[Ulam] {circle_map.describe()} N={n_bins} nnz={matrix.nnz}")
    return matrix


# ==================== 불변 밀도 ====================


def _power_iterate(
    transposed: sparse.csr_matrix, start: np.ndarray, iters: int, tol: float
) -> tuple[np.ndarray, float, int]:
    """v ← Pᵀ v 를 Σv/N = 1 로 정규화하며 반복 (잔차 ≤ tol 이면 정지)"""
    n_bins = len(start)
    v = start / (start.sum() / n_bins)
    residual = math.inf
    done = 0
    for done in range(1, iters + 1):
        nxt = transposed @ v
        nxt /= nxt.sum() / n_bins
        residual = float(np.abs(nxt - v).sum() / n_bins)
        v = nxt
        if residual <= tol:
            break
    return v, residual, done


@operation("invariant_density")
def invariant_density(
    circle_map: CircleMap,
    n_bins: int = 4096,
    iters: int = 500,
    residual_tol: float = 1e-8,
    uniqueness_tol: float = 1e-8,
    rng: np.random.Generator | None = None,
    matrix: sparse.csr_matrix | None = None,
    executor: ParallelExecutor | None = None,
) -> DensityApprox:
    """
    Ulam 불변 밀도 (균등 밀도에서 시작하는 거듭제곱 반복)

    수렴 후 임의의 양의 시작 벡터에서 다시 반복해 같은 밀도로 가는지 확인한다
    (근사 연산자의 지배 고정 벡터 유일성).

    Args:
        circle_map: 확장 원 사상
        n_bins: 분할 개수 N
        iters: 최대 반복 횟수
        residual_tol: L1 잔차 허용오차
        uniqueness_tol: 두 시작점 결과의 L1 차이 허용오차
        rng: 재시작 벡터용 난수 생성기
        matrix: 미리 만든 Ulam 행렬
        executor: Ulam 행렬 생성용 병렬 실행기

    Returns:
        DensityApprox: 정규화된 밀도

    Raises:
        NoConvergenceError: 잔차가 허용오차 위에서 정체하거나 유일성 검사 실패
    """
    validate_positive(iters, "iters")
    rng = rng or np.random.default_rng(42)
    if matrix is None:
        matrix = ulam_matrix(circle_map, n_bins, executor=executor)
    transposed = matrix.T.tocsr()

    density, residual, used = _power_iterate(transposed, np.ones(n_bins), iters, residual_tol)
    if residual > residual_tol:
        raise NoConvergenceError(
            f"Ulam power iteration stalled at residual {residual:.3e} after {used} iterations",
            residual=residual,
        )

    # 유일성: 두 벡터 모두 더 작은 잔차까지 밀어 붙인 뒤 비교
    strict = 1e-2 * uniqueness_tol
    budget = max(iters, 1000)
    refined, _, _ = _power_iterate(transposed, density, budget, strict)
    restart, _, _ = _power_iterate(transposed, rng.uniform(0.5, 1.5, n_bins), budget, strict)
    gap = float(np.abs(refined - restart).sum() / n_bins)
    if gap > uniqueness_tol:
        raise NoConvergenceError(
            f"Invariant density is not unique (restart L1 gap {gap:.3e})", residual=gap
        )

    logger.info(
        f"[Ulam] {circle_map.describe()} N={n_bins}: residual={residual:.2e} "
        f"after {used} iterations, restart gap={gap:.2e}"
    )
    return DensityApprox(
        bins=n_bins, weights=density, residual=residual, iterations=used
    )


@operation("acim_exponent")
def acim_exponent(circle_map: CircleMap, density: DensityApprox) -> float:
    """
    절대연속 불변 측도에 대한 Lyapunov 지수 Σ ω_i·log F′(중점_i) / N

    Args:
        circle_map: 확장 원 사상
        density: 불변 밀도

    Returns:
        float: λ_μ (nats)
    """
    logs = np.log(circle_map.derivative(density.midpoints, 1))
    return float(np.sum(density.weights * logs) / density.bins)


# ==================== Birkhoff 기준값 ====================


def birkhoff_exponent(
    circle_map: CircleMap,
    seeds: int,
    steps: int,
    transient: int = 100,
    rng: np.random.Generator | None = None,
    executor: ParallelExecutor | None = None,
) -> float:
    """
    Lebesgue 임의 시작점 궤도 위 log F′ 평균

    Args:
        circle_map: 확장 원 사상
        seeds: 시작점 개수
        steps: 시작점당 합산 단계 수
        transient: 버리는 초기 단계 수
        rng: 난수 생성기
        executor: 시작점 청크 병렬 실행기

    Returns:
        float: 궤도 평균 지수
    """
    rng = rng or np.random.default_rng(42)
    executor = executor or ParallelExecutor()
    starts = rng.random(seeds)
    sums = executor.map_array(lambda x: circle_map.birkhoff_sum(x, steps, transient), starts)
    return tree_mean(sums) / steps


def orbit_histogram(
    circle_map: CircleMap,
    n_bins: int,
    seeds: int,
    steps: int,
    transient: int = 100,
    rng: np.random.Generator | None = None,
) -> DensityApprox:
    """
    궤도 방문 히스토그램 밀도 (불변 밀도 기준값)

    Args:
        circle_map: 확장 원 사상
        n_bins: 분할 개수
        seeds: 시작점 개수
        steps: 시작점당 기록 단계 수
        transient: 버리는 초기 단계 수
        rng: 난수 생성기

    Returns:
        DensityApprox: 방문 빈도 밀도
    """
    rng = rng or np.random.default_rng(42)
    x = rng.random(seeds)
    for _ in range(transient):
        x = circle_map.circle_eval(x)
    counts = np.zeros(n_bins)
    for _ in range(steps):
        index = np.minimum((x * n_bins).astype(np.int64), n_bins - 1)
        counts += np.bincount(index, minlength=n_bins)
        x = circle_map.circle_eval(x)
    return DensityApprox(bins=n_bins, weights=counts * n_bins / counts.sum())


def coarsen(density: DensityApprox, n_bins: int) -> DensityApprox:
    """밀도를 n_bins 개 구간 평균으로 묶는다 (N 이 n_bins 의 배수여야 함)"""
    if density.bins % n_bins:
        raise ValidationError(f"{density.bins} bins cannot be grouped into {n_bins}")
    weights = density.weights.reshape(n_bins, -1).mean(axis=1)
    return DensityApprox(bins=n_bins, weights=weights, residual=density.residual)


def l1_distance(first: DensityApprox, second: DensityApprox) -> float:
    """두 밀도의 L1 거리 ∫|ω₁ − ω₂|"""
    if first.bins != second.bins:
        raise ValidationError("densities must share the same partition")
    return float(np.abs(first.weights - second.weights).sum() / first.bins)


def periodic_vs_birkhoff(orbits: list[PeriodicOrbit], birkhoff: float) -> float:
    """
    주기 지수 평균과 전형적 궤도 지수의 차이

    상수 주기 데이터이면 0 에 가까워야 한다.
    """
    if not orbits:
        raise ValidationError("orbit list must not be empty", details={"field": "orbits"})
    return abs(tree_mean([o.exponent for o in orbits]) - birkhoff)


# ==================== 밀어내기 불변성 ====================


def _lift_cdf(density: DensityApprox, x: np.ndarray) -> np.ndarray:
    """리프트 누적분포 floor(x) + μ([0, frac x])"""
    n = density.bins
    cumulative = np.concatenate([[0.0], np.cumsum(density.weights) / n])
    whole = np.floor(x)
    frac = (x - whole) * n
    idx = np.minimum(frac.astype(np.int64), n - 1)
    partial = cumulative[idx] + (frac - idx) * density.weights[idx] / n
    return whole * cumulative[-1] + partial


def pushforward_defect(
    circle_map: CircleMap, density: DensityApprox, max_level: int = 4
) -> float:
    """
    d 진 구간 [a, b] 위 |μ(f⁻¹[a,b]) − μ([a,b])| 의 최댓값

    f⁻¹[a,b] 는 d 개 분기의 리프트 역상 구간 [F⁻¹(a+j), F⁻¹(b+j)] 의 합이다.

    Args:
        circle_map: 확장 원 사상
        density: 불변 밀도
        max_level: 검사할 d 진 단계 (1..max_level)

    Returns:
        float: 최대 결함
    """
    d = circle_map.degree
    worst = 0.0
    for level in range(1, max_level + 1):
        size = d**level
        a = np.arange(size) / size
        b = (np.arange(size) + 1) / size
        j = np.arange(d)[None, :]
        low = circle_map.lift_inverse(a[:, None] + j)
        high = circle_map.lift_inverse(b[:, None] + j)
        pulled = (_lift_cdf(density, high) - _lift_cdf(density, low)).sum(axis=1)
        direct = _lift_cdf(density, b) - _lift_cdf(density, a)
        worst = max(worst, float(np.max(np.abs(pulled - direct))))
    return worst

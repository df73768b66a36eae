# -*- coding: utf-8 -*-
"""
Unstable Entropy - 불안정 잎 부피 성장과 엔트로피 항등식

- 1차원 잎 조각 추적 (적응 삽입 다각선, 재규격화)
- 플래그 코사이클 log-det 평균
- 유한 시간 지수의 격자 균등 수렴 표
- SRB 표본 불안정 지수 합과 Ruelle 차이
"""

import logging
import math

import numpy as np
from numpy.typing import ArrayLike

from src.application.common.decorators import operation
from src.application.common.exceptions import ResolutionExhaustedError, ValidationError
from src.application.common.parallel import ParallelExecutor, tree_mean
from src.application.common.validators import validate_choice, validate_positive
from src.application.domain.torus.dto import (
    EntropyReportDTO,
    GrowthEstimate,
    ToralPeriodicOrbit,
    UniformRowDTO,
)
from src.application.domain.torus.dynamics import AnosovMap, grid_points
from src.application.domain.torus.flags import (
    DEFAULT_FLAG_ITER,
    bundle_estimate,
    covariant_flags,
)

logger = logging.getLogger(__name__)

DEFAULT_DELTA = 1e-3
DEFAULT_MAX_PTS = 100_000
DEFAULT_RENORM_FACTOR = 4.0
SEED_POINTS = 21


# ==================== 잎 조각 성장 ====================


def _chord_length(curve: np.ndarray) -> float:
    return float(np.sum(np.linalg.norm(np.diff(curve, axis=0), axis=1)))


@operation("segment_growth")
def segment_growth(
    f: AnosovMap,
    x: ArrayLike,
    delta: float = DEFAULT_DELTA,
    n: int = 20,
    max_pts: int = DEFAULT_MAX_PTS,
    renormalize: bool = True,
    renorm_factor: float = DEFAULT_RENORM_FACTOR,
    n_iter: int = DEFAULT_FLAG_ITER,
) -> GrowthEstimate:
    """
    E^u 방향 δ-선분의 길이 성장률

    선분을 리프트 좌표의 다각선으로 두고 매 단계 f 를 적용한 뒤, 인접 간격이
    ρ = δ/20 을 넘는 곳에 매개변수 중점의 상을 새로 계산해 넣는다. 길이가
    renorm_factor·δ 를 넘으면 x 의 상을 중심으로 길이 δ 인 호만 남긴다.

    Args:
        f: 불안정 차원 1 인 Anosov 사상
        x: 기준점
        delta: 초기 선분 길이
        n: 단계 수
        max_pts: 다각선 점 수 상한
        renormalize: 재규격화 여부
        renorm_factor: 재규격화 임계 배수
        n_iter: 접선 추정 구간 길이

    Returns:
        GrowthEstimate: g_m = log(L_m / L'_{m-1}), chi = 평균

    Raises:
        ResolutionExhaustedError: 점 수가 max_pts 를 넘음
    """
    if f.eigen.unstable_count != 1:
        raise ValidationError(
            "segment growth needs a one-dimensional unstable bundle",
            details={"unstable_count": f.eigen.unstable_count},
        )
    validate_positive(delta, "delta")
    validate_positive(n, "n")
    x = np.asarray(x, dtype=float)
    tangent = bundle_estimate(f, x, 1, n_iter)[:, 0]
    rho = delta / 20.0

    params = np.linspace(-0.5 * delta, 0.5 * delta, SEED_POINTS)
    curve = x + params[:, None] * tangent
    shifts: list[np.ndarray] = []

    def image(values: np.ndarray) -> np.ndarray:
        y = x + values[:, None] * tangent
        for shift in shifts:
            y = f.lift(y) - shift
        return y

    length = _chord_length(curve)
    growth = []
    peak = len(params)
    for step in range(1, n + 1):
        curve = f.lift(curve)
        shift = np.floor(curve[int(np.argmin(np.abs(params)))])
        curve -= shift
        shifts.append(shift)

        while True:
            wide = np.nonzero(np.linalg.norm(np.diff(curve, axis=0), axis=1) > rho)[0]
            if not wide.size:
                break
            if len(params) + wide.size > max_pts:
                raise ResolutionExhaustedError(
                    step=step, points=len(params) + wide.size, max_pts=max_pts
                )
            middle = 0.5 * (params[wide] + params[wide + 1])
            params = np.insert(params, wide + 1, middle)
            curve = np.insert(curve, wide + 1, image(middle), axis=0)

        peak = max(peak, len(params))
        current = _chord_length(curve)
        growth.append(math.log(current / length))
        length = current

        if renormalize and length > renorm_factor * delta:
            arc = np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(curve, axis=0), axis=1))])
            center = arc[int(np.argmin(np.abs(params)))]
            lo = max(center - 0.5 * delta, 0.0)
            hi = min(center + 0.5 * delta, arc[-1])
            inside = (arc > lo) & (arc < hi)
            ends = np.array([np.interp(lo, arc, params), np.interp(hi, arc, params)])
            end_points = image(ends)
            params = np.concatenate([ends[:1], params[inside], ends[1:]])
            curve = np.vstack([end_points[:1], curve[inside], end_points[1:]])
            length = _chord_length(curve)

    log_growth = np.asarray(growth)
    chi = float(np.mean(log_growth))
    logger.debug(f"[Segment] x={x.tolist()} n={n} chi={chi:.8f} peak points={peak}")
    return GrowthEstimate(
        index=1,
        point=x.tolist(),
        delta=delta,
        horizon=n,
        log_growth=log_growth,
        chi=chi,
        max_points=peak,
    )


# ==================== 코사이클 성장 ====================


@operation("flag_cocycle_growth")
def flag_cocycle_growth(
    f: AnosovMap, x: ArrayLike, index: int, n: int, n_iter: int = DEFAULT_FLAG_ITER
) -> GrowthEstimate:
    """
    플래그 E^u_(1,i) 로 제한한 야코비안 log-det 의 궤도 평균

    Args:
        f: Anosov 사상
        x: 기준점
        index: 플래그 번호 i
        n: 지평
        n_iter: 플래그 수렴 구간

    Returns:
        GrowthEstimate: 단계별 log|det Df|E^u_(1,i)|

    Raises:
        NoConvergenceError: 기준점에서 플래그가 수렴하지 않음
    """
    validate_positive(n, "n")
    x = np.asarray(x, dtype=float)
    bundle_estimate(f, x, index, n_iter)
    log_growth = covariant_flags(f, x[None, :], index, n, n_iter).log_growth[0]
    return GrowthEstimate(
        index=index,
        point=x.tolist(),
        horizon=n,
        log_growth=log_growth,
        chi=float(np.mean(log_growth)),
    )


def finite_time_exponents(
    f: AnosovMap,
    points: np.ndarray,
    index: int,
    horizon: int,
    n_iter: int = DEFAULT_FLAG_ITER,
    executor: ParallelExecutor | None = None,
) -> np.ndarray:
    """
    점별 누적 평균 (1/m) Σ log|det Df|E^u_(1,i)|, m = 1..horizon

    Returns:
        np.ndarray: (점 수, horizon)
    """
    executor = executor or ParallelExecutor(chunk_size=1024)
    growth = executor.map_array(
        lambda chunk: covariant_flags(f, chunk, index, horizon, n_iter).log_growth, points
    )
    return np.cumsum(growth, axis=1) / np.arange(1, horizon + 1)


def periodic_flag_growth(
    f: AnosovMap,
    orbits: list[ToralPeriodicOrbit],
    index: int,
    n_iter: int = DEFAULT_FLAG_ITER,
) -> list[np.ndarray]:
    """
    주기점마다 한 주기 동안의 log|det Df|E^u_(1,i)| 열

    주기가 같은 점끼리 묶어 한 번에 계산한다. 부동소수 궤도는 몇십 단계 뒤 주기
    궤도를 벗어나므로 긴 지평은 이 열을 되풀이해 만든다.

    Returns:
        list[np.ndarray]: orbits 순서, 길이 = 주기
    """
    cycles: list[np.ndarray] = [np.empty(0)] * len(orbits)
    for period in sorted({o.period for o in orbits}):
        members = [k for k, o in enumerate(orbits) if o.period == period]
        points = np.array([orbits[k].point for k in members], dtype=float)
        growth = covariant_flags(f, points, index, period, n_iter).log_growth
        for row, k in enumerate(members):
            cycles[k] = growth[row]
    return cycles


def _tiled_running_means(cycles: list[np.ndarray], horizon: int) -> np.ndarray:
    if not cycles:
        return np.empty((0, horizon))
    steps = np.arange(1, horizon + 1)
    return np.stack([np.cumsum(np.resize(c, horizon)) / steps for c in cycles])


@operation("uniform_convergence_profile")
def uniform_convergence_profile(
    f: AnosovMap,
    index: int,
    horizons: list[int],
    grid_n: int,
    target: float,
    n_iter: int = DEFAULT_FLAG_ITER,
    executor: ParallelExecutor | None = None,
    orbits: list[ToralPeriodicOrbit] | None = None,
) -> list[UniformRowDTO]:
    """
    지평별 sup_x |유한 시간 지수 − target| (grid_n^d 시작점 + 주기점)

    주기점에서의 값은 한 주기 성장을 되풀이한 정확한 궤도 평균이다. 지평이 모든
    주기의 배수이면 주기점 값은 그 궤도의 지수와 같으므로, 편차는 주기 데이터
    폭의 절반 아래로 내려갈 수 없다.

    Args:
        f: Anosov 사상
        index: 플래그 번호
        horizons: 지평 목록
        grid_n: 축당 격자 수
        target: 목표 지수 (주기 데이터 평균)
        n_iter: 플래그 수렴 구간
        executor: 병렬 실행기
        orbits: sup 에 포함할 주기점

    Returns:
        list[UniformRowDTO]: 지평 오름차순 표
    """
    if not horizons or min(horizons) < 1:
        raise ValidationError("horizons must be positive", details={"field": "horizons"})
    ordered = sorted(set(horizons))
    running = finite_time_exponents(
        f, grid_points(grid_n, f.dim), index, ordered[-1], n_iter, executor
    )
    if orbits:
        cycles = periodic_flag_growth(f, orbits, index, n_iter)
        running = np.vstack([running, _tiled_running_means(cycles, ordered[-1])])
    rows = [
        UniformRowDTO(
            horizon=h, deviation=float(np.max(np.abs(running[:, h - 1] - target)))
        )
        for h in ordered
    ]
    logger.info(
        f"[Uniform] i={index} grid={grid_n} periodic={len(orbits or [])} "
        + " ".join(f"{r.horizon}:{r.deviation:.2e}" for r in rows)
    )
    return rows


# ==================== SRB 와 보고 ====================


def srb_exponent_sum(
    f: AnosovMap,
    seeds: int = 1000,
    horizon: int = 1000,
    transient: int = 100,
    rng: np.random.Generator | None = None,
    executor: ParallelExecutor | None = None,
) -> float:
    """
    Lebesgue 임의 시작점에서 전체 불안정 log-det 코사이클의 장시간 평균

    Args:
        f: Anosov 사상
        seeds: 시작점 수
        horizon: 평균 단계 수
        transient: 버리는 초기 단계 수
        rng: 난수 생성기
        executor: 병렬 실행기

    Returns:
        float: 시작점 평균 (순서 고정 트리 합)
    """
    validate_positive(seeds, "seeds")
    validate_positive(horizon, "horizon")
    rng = rng or np.random.default_rng(42)
    executor = executor or ParallelExecutor(chunk_size=256)
    points = rng.random((seeds, f.dim))
    basis = f.eigen.unstable_basis

    def run(chunk: np.ndarray) -> np.ndarray:
        frame = np.broadcast_to(basis, (len(chunk),) + basis.shape).copy()
        total = np.zeros(len(chunk))
        x = chunk
        for step in range(transient + horizon):
            frame, r = np.linalg.qr(f.jacobian(x) @ frame)
            if step >= transient:
                total += np.sum(np.log(np.abs(np.diagonal(r, axis1=-2, axis2=-1))), axis=-1)
            x = f.apply(x)
        return total / horizon

    return tree_mean(executor.map_array(run, points))


def srb_volume_exponent(
    f: AnosovMap,
    seeds: int = 1000,
    horizon: int = 1000,
    transient: int = 100,
    rng: np.random.Generator | None = None,
    executor: ParallelExecutor | None = None,
) -> float:
    """
    Lebesgue 임의 궤도 위 log|det Df| 평균 (SRB 측도의 전체 지수 합)

    0 이면 SRB 측도가 부피에 절대연속, 음수이면 부피 수축.
    """
    validate_positive(seeds, "seeds")
    validate_positive(horizon, "horizon")
    rng = rng or np.random.default_rng(42)
    executor = executor or ParallelExecutor(chunk_size=256)

    def run(chunk: np.ndarray) -> np.ndarray:
        x = chunk
        for _ in range(transient):
            x = f.apply(x)
        total = np.zeros(len(chunk))
        for _ in range(horizon):
            total += f.log_det_jacobian(x)
            x = f.apply(x)
        return total / horizon

    return tree_mean(executor.map_array(run, rng.random((seeds, f.dim))))


@operation("entropy_report")
def entropy_report(
    f: AnosovMap,
    seeds: int = 1000,
    horizon: int = 1000,
    transient: int = 100,
    cocycle_points: int = 20,
    cocycle_horizon: int = 200,
    segment_horizon: int = 25,
    delta: float = DEFAULT_DELTA,
    rng: np.random.Generator | None = None,
    executor: ParallelExecutor | None = None,
) -> EntropyReportDTO:
    """
    h_top(L), 플래그 부피 성장, SRB 지수 합, Ruelle 차이

    Args:
        f: d = 2, 3 Anosov 사상
        seeds, horizon, transient: SRB 표본 설정
        cocycle_points: 코사이클 평균 기준점 수
        cocycle_horizon: 코사이클 지평
        segment_horizon: 잎 조각 지평 (불안정 차원 1 일 때)
        delta: 잎 조각 길이
        rng: 난수 생성기
        executor: 병렬 실행기

    Returns:
        EntropyReportDTO: 보고
    """
    validate_choice(f.dim, (2, 3), "dim")
    rng = rng or np.random.default_rng(42)
    base = rng.random((cocycle_points, f.dim))

    chi_cocycle = []
    for i in range(1, f.eigen.unstable_count + 1):
        running = finite_time_exponents(f, base, i, cocycle_horizon, executor=executor)
        chi_cocycle.append(tree_mean(running[:, -1]))

    chi_segment = None
    if f.eigen.unstable_count == 1:
        chi_segment = segment_growth(f, base[0], delta=delta, n=segment_horizon).chi

    srb = srb_exponent_sum(f, seeds, horizon, transient, rng=rng, executor=executor)
    h_top = f.eigen.topological_entropy
    logger.info(f"[Entropy] h_top={h_top:.6f} srb={srb:.6f} gap={h_top - srb:.3e}")
    return EntropyReportDTO(
        h_top_linear=h_top,
        chi_cocycle=chi_cocycle,
        chi_segment=chi_segment,
        srb_exponent_sum=srb,
        ruelle_gap=h_top - srb,
    )

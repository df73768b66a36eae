# -*- coding: utf-8 -*-
"""
Unstable Flags - 약한 불안정 플래그 E^u_(1,i) 의 공변 벡터 계산

두 단계 방법:
1. 과거 n_iter 단계에서 시작한 전체 불안정 틀을 QR 로 앞으로 수송
2. 미래 끝에서 i-틀을 상삼각 코사이클 R⁻¹ 로 뒤로 수송 (약한 방향이 남는다)
"""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from src.application.common.decorators import operation
from src.application.common.exceptions import NoConvergenceError, ValidationError
from src.application.domain.circle.dynamics import wrap_unit
from src.application.domain.torus.dynamics import AnosovMap

logger = logging.getLogger(__name__)

DEFAULT_FLAG_ITER = 80
DEFAULT_BUNDLE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class FlagTrajectory:
    """기준점별 플래그 틀과 단계별 로그 부피 성장"""

    points: np.ndarray
    frames: np.ndarray
    log_growth: np.ndarray


def _diag_log(r: np.ndarray) -> np.ndarray:
    return np.sum(np.log(np.abs(np.diagonal(r, axis1=-2, axis2=-1))), axis=-1)


def validate_flag_index(f: AnosovMap, index: int) -> None:
    """1 ≤ i ≤ 불안정 차원"""
    if not 1 <= index <= f.eigen.unstable_count:
        raise ValidationError(
            f"flag index must be in [1, {f.eigen.unstable_count}], got {index}",
            details={"field": "index"},
        )


def backward_orbit(f: AnosovMap, points: np.ndarray, steps: int) -> list[np.ndarray]:
    """[x_{-steps}, …, x_{-1}] (역사상으로 계산해 둔 과거 궤도)"""
    orbit = []
    x = points
    for _ in range(steps):
        x = wrap_unit(f.inverse(x))
        orbit.append(x)
    return orbit[::-1]


def covariant_flags(
    f: AnosovMap, points: ArrayLike, index: int, horizon: int, n_iter: int = DEFAULT_FLAG_ITER
) -> FlagTrajectory:
    """
    플래그 틀과 궤도 위 제한 야코비안의 로그 행렬식

    Args:
        f: Anosov 사상
        points: (m, d) 기준점
        index: 플래그 번호 i
        horizon: 성장을 기록할 단계 수 (0 가능)
        n_iter: 과거/미래 수렴 구간 길이

    Returns:
        FlagTrajectory: frames (m, d, i), log_growth (m, horizon)
    """
    validate_flag_index(f, index)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    m, d = points.shape
    u = f.eigen.unstable_count

    frame, _ = np.linalg.qr(np.broadcast_to(f.eigen.unstable_basis, (m, d, u)).copy())
    for x in backward_orbit(f, points, n_iter):
        frame, _ = np.linalg.qr(f.jacobian(x) @ frame)
    start = frame

    future = horizon + (n_iter if index < u else 0)
    cocycle = []
    x = points
    for _ in range(future):
        frame, r = np.linalg.qr(f.jacobian(x) @ frame)
        cocycle.append(r)
        x = f.apply(x)

    growth = np.zeros((m, horizon))
    if index == u:
        for step in range(horizon):
            growth[:, step] = _diag_log(cocycle[step])
        return FlagTrajectory(points=points, frames=start, log_growth=growth)

    coefficients = np.zeros((m, u, index))
    coefficients[:, u - index :, :] = np.eye(index)
    for step in reversed(range(future)):
        coefficients, t = np.linalg.qr(np.linalg.solve(cocycle[step], coefficients))
        if step < horizon:
            growth[:, step] = -_diag_log(t)
    return FlagTrajectory(points=points, frames=start @ coefficients, log_growth=growth)


def projector_distance(first: np.ndarray, second: np.ndarray) -> float:
    """두 정규직교 틀이 생성하는 부분공간 사이의 ‖P₁ − P₂‖₂"""
    p1 = first @ first.swapaxes(-1, -2)
    p2 = second @ second.swapaxes(-1, -2)
    return float(np.max(np.linalg.norm(p1 - p2, ord=2, axis=(-2, -1))))


@operation("bundle_estimate")
def bundle_estimate(
    f: AnosovMap,
    x: ArrayLike,
    index: int,
    n_iter: int = DEFAULT_FLAG_ITER,
    tol: float = DEFAULT_BUNDLE_TOL,
) -> np.ndarray:
    """
    E^u_(1,i)(x) 를 생성하는 정규직교 틀

    E^u_1 이 가장 약한 불안정 방향이다. n_iter 와 n_iter − 1 구간의
    결과를 비교해 수렴을 확인한다.

    Args:
        f: Anosov 사상
        x: 기준점 (d,)
        index: 플래그 번호 i
        n_iter: 수렴 구간 길이
        tol: 연속 틀 차이 허용치

    Returns:
        np.ndarray: (d, i) 정규직교 틀

    Raises:
        NoConvergenceError: 연속 틀 차이 > tol
    """
    if n_iter < 2:
        raise ValidationError(f"n_iter must be at least 2, got {n_iter}")
    point = np.asarray(x, dtype=float)[None, :]
    frame = covariant_flags(f, point, index, 0, n_iter).frames
    previous = covariant_flags(f, point, index, 0, n_iter - 1).frames
    gap = projector_distance(frame, previous)
    if gap > tol:
        raise NoConvergenceError(
            f"flag frame at {point[0].tolist()} moved by {gap:.3e} after {n_iter} steps",
            residual=gap,
        )
    logger.debug(f"[Flag] i={index} x={point[0].tolist()} frame gap={gap:.2e}")
    return frame[0]

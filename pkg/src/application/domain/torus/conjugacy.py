# -*- coding: utf-8 -*-
"""
Toral Conjugacy - Franks 켤레 h = id + u 와 정칙성 평가

h∘f = L∘h 를 L 의 고유기저 좌표로 쓰면 두 축소 사상이 된다.
- 불안정 성분: u^u(x) ← L_u⁻¹[u^u(f(x)) + ψ^u(x)]
- 안정 성분: u^s(x) ← L_s u^s(f⁻¹(x)) − ψ^s(f⁻¹(x))
격자 위 Jacobi 스윕과 다중선형 주기 보간으로 고정점을 구한다.
"""

import logging
import math

import numpy as np
from numpy.typing import ArrayLike
from scipy.ndimage import map_coordinates
from scipy.spatial import cKDTree
from scipy.stats import linregress

from src.application.common.decorators import operation
from src.application.common.exceptions import NoConvergenceError, ValidationError
from src.application.common.parallel import ParallelExecutor
from src.application.common.validators import validate_positive
from src.application.domain.circle.dynamics import wrap_unit
from src.application.domain.torus.dto import (
    EigenData,
    GridField,
    HolderDirectionDTO,
    ToralPeriodicOrbit,
)
from src.application.domain.torus.dynamics import (
    AnosovMap,
    ConjugatedToralMap,
    grid_points,
    torus_distance,
)

logger = logging.getLogger(__name__)

DEFAULT_FRANKS_TOL = 1e-10
DEFAULT_FRANKS_ITERS = 400
DEFAULT_HOLDER_LINES = 8


# ==================== 보간 ====================


def _interpolate(values: np.ndarray, points: np.ndarray) -> np.ndarray:
    """
    격자 값의 주기 다중선형 보간

    Args:
        values: (N, …, N, j) 격자 값
        points: (m, d) 위치

    Returns:
        np.ndarray: (m, j)
    """
    n = values.shape[0]
    coords = (np.asarray(points, dtype=float) * n).T
    return np.stack(
        [
            map_coordinates(values[..., c], coords, order=1, mode="grid-wrap")
            for c in range(values.shape[-1])
        ],
        axis=-1,
    )


def evaluate_field(field: GridField, points: ArrayLike) -> np.ndarray:
    """u(x) (임의 실수 좌표, 주기 보간)"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return _interpolate(field.values, wrap_unit(points))


# ==================== Franks 풀이 ====================


@operation("franks_solve")
def franks_solve(
    f: AnosovMap,
    resolution: int,
    iters: int = DEFAULT_FRANKS_ITERS,
    tol: float = DEFAULT_FRANKS_TOL,
    executor: ParallelExecutor | None = None,
) -> GridField:
    """
    Franks 켤레의 변위장 u (h = id + u, h∘f = L∘h)

    Args:
        f: 원뿔 인증된 Anosov 사상
        resolution: 축당 격자 수 N
        iters: 최대 스윕 수
        tol: 연속 스윕 sup 차이 허용치
        executor: 격자 병렬 실행기

    Returns:
        GridField: 수렴한 변위장

    Raises:
        InversionFailureError: 격자점에서 f⁻¹ Newton 실패
        NoConvergenceError: iters 안에 tol 미달
    """
    validate_positive(resolution, "resolution")
    if resolution < 2:
        raise ValidationError(f"resolution must be at least 2, got {resolution}")
    executor = executor or ParallelExecutor(chunk_size=8192)
    n, d, k = resolution, f.dim, f.eigen.stable_count
    shape = (n,) * d

    basis = f.eigen.basis
    basis_inv = np.linalg.inv(basis)
    block = basis_inv @ f.matrix @ basis
    stable_map = block[:k, :k]
    unstable_inv = np.linalg.inv(block[k:, k:])
    contraction = max(
        float(np.linalg.norm(stable_map, ord=2)), float(np.linalg.norm(unstable_inv, ord=2))
    )

    points = grid_points(n, d)
    forward = f.apply(points)
    backward = wrap_unit(executor.map_array(f.inverse, points))
    phi_u = (f.displacement(points) @ basis_inv.T)[:, k:]
    phi_s = (f.displacement(backward) @ basis_inv.T)[:, :k]

    coefficients = np.zeros((len(points), d))
    displacement = np.zeros((len(points), d))
    differences: list[float] = []
    index = np.arange(len(points))

    for sweep in range(1, iters + 1):
        grid_c = coefficients.reshape(shape + (d,))

        def update(rows: np.ndarray) -> np.ndarray:
            unstable = (_interpolate(grid_c[..., k:], forward[rows]) + phi_u[rows]) @ (
                unstable_inv.T
            )
            stable = _interpolate(grid_c[..., :k], backward[rows]) @ stable_map.T - phi_s[rows]
            return np.hstack([stable, unstable])

        coefficients = executor.map_array(update, index)
        updated = coefficients @ basis.T
        difference = float(np.max(np.abs(updated - displacement)))
        displacement = updated
        differences.append(difference)
        if difference < tol:
            logger.info(
                f"[Franks] N={n} converged in {sweep} sweeps (contraction {contraction:.4f})"
            )
            return GridField(
                resolution=n,
                values=displacement.reshape(shape + (d,)),
                sweeps=sweep,
                differences=differences,
                contraction=contraction,
            )

    raise NoConvergenceError(
        f"Franks iteration stalled at difference {differences[-1]:.3e} after {iters} sweeps",
        residual=differences[-1],
    )


# ==================== 점검 ====================


def conjugacy_residual_field(f: AnosovMap, field: GridField, test_n: int | None = None) -> float:
    """
    sup_x dist(L(x + u(x)), f(x) + u(f(x))) (격자 중심점으로 이동한 시험 격자)

    Args:
        f: Anosov 사상
        field: 변위장
        test_n: 시험 격자 크기 (기본 N + 1)
    """
    test_n = test_n or field.resolution + 1
    points = grid_points(test_n, f.dim) + 0.5 / test_n
    left = (points + evaluate_field(field, points)) @ f.matrix.T
    right = f.lift(points) + evaluate_field(field, f.apply(points))
    return float(np.max(torus_distance(left, right)))


def periodic_equivariance_error(field: GridField, orbits: list[ToralPeriodicOrbit]) -> float:
    """연속화된 주기점 p 에 대해 max dist(h(p), 선형 주기점)"""
    if not orbits:
        return 0.0
    points = np.array([o.point for o in orbits])
    seeds = np.array([o.seed for o in orbits])
    return float(np.max(torus_distance(points + evaluate_field(field, points), seeds)))


def grid_injectivity_gap(field: GridField) -> float:
    """격자 상 h(x_g) 들 사이 최소 sup 거리"""
    points = grid_points(field.resolution, field.dim)
    images = wrap_unit(points + field.values.reshape(-1, field.dim))
    distances, _ = cKDTree(images, boxsize=1.0).query(images, k=2, p=np.inf)
    return float(np.min(distances[:, 1]))


def conjugacy_distance(field: GridField, f: ConjugatedToralMap) -> float:
    """켤레 모형: 격자 위 sup dist(x + u(x), H⁻¹(x))"""
    points = grid_points(field.resolution, field.dim)
    recovered = points + field.values.reshape(-1, field.dim)
    return float(np.max(torus_distance(recovered, f.h_inverse(points))))


# ==================== 정칙성 ====================


def _directions(eigen: EigenData, selector: str) -> list[tuple[str, np.ndarray]]:
    named = []
    for side, basis in (("stable", eigen.stable_basis), ("unstable", eigen.unstable_basis)):
        if selector not in ("both", side):
            continue
        columns = basis.shape[1]
        for j in range(columns):
            name = side if columns == 1 else f"{side}_{j + 1}"
            named.append((name, basis[:, j]))
    return named


@operation("toral_holder_estimate")
def toral_holder_estimate(
    field: GridField,
    eigen: EigenData,
    selector: str = "both",
    lines: int = DEFAULT_HOLDER_LINES,
) -> list[HolderDirectionDTO]:
    """
    고유방향 직선 위 h = id + u 의 진동 회귀 Hölder 지수

    각 방향 v 로 길이 1 인 직선 lines 개에서 2^k (≤ N) 개 표본을 잡고,
    척도 2^{-m} (m = 2..k) 의 최대 증분 노름을 척도에 회귀한다.

    Args:
        field: 변위장
        eigen: 선형화 고유 분해
        selector: "stable", "unstable", "both"
        lines: 방향당 직선 수

    Returns:
        list[HolderDirectionDTO]: 방향별 지수
    """
    if selector not in ("stable", "unstable", "both"):
        raise ValidationError(f"unknown direction selector {selector}")
    validate_positive(lines, "lines")
    level = int(math.floor(math.log2(field.resolution)))
    if level < 4:
        raise ValidationError(
            f"Hölder regression needs resolution >= 16, got {field.resolution}",
            details={"field": "resolution"},
        )
    samples = 2**level
    t = np.arange(samples + 1) / samples
    origins = (np.arange(lines)[:, None] + 0.5) / lines * np.ones(field.dim)

    results = []
    for name, direction in _directions(eigen, selector):
        points = origins[:, None, :] + t[None, :, None] * direction
        flat = points.reshape(-1, field.dim)
        images = (flat + evaluate_field(field, flat)).reshape(points.shape)
        levels = np.arange(2, level + 1)
        oscillation = []
        for m in levels:
            stride = 2 ** (level - int(m))
            steps = np.diff(images[:, ::stride, :], axis=1)
            oscillation.append(float(np.max(np.linalg.norm(steps, axis=-1))))
        fit = linregress(-levels * math.log(2.0), np.log(oscillation))
        results.append(
            HolderDirectionDTO(direction=name, alpha=float(fit.slope), r2=float(fit.rvalue**2))
        )
        logger.debug(f"[Holder] {name}: alpha={fit.slope:.4f}")
    return results

# -*- coding: utf-8 -*-
"""
Torus Periodic - 선형 모형 주기점 열거와 Newton 연속화

A^n x ≡ x (mod 1) 의 해를 정수 연산으로 정확히 열거하고,
섭동 사상의 주기점으로 Newton 연속화하여 주기 지수와
지수별 상수 데이터 통계, 보존성 지표를 계산한다.
"""

import logging

import numpy as np
import sympy
from numpy.typing import ArrayLike
from scipy.spatial import cKDTree

from src.application.common.decorators import operation
from src.application.common.exceptions import (
    DuplicateOrbitError,
    NewtonDivergedError,
    NotHyperbolicError,
    SignatureMismatchError,
    ValidationError,
)
from src.application.common.parallel import ParallelExecutor, tree_mean
from src.application.common.validators import validate_budget, validate_positive
from src.application.domain.circle.dynamics import wrap_unit
from src.application.domain.torus.dto import EigenData, IndexSpreadDTO, ToralPeriodicOrbit
from src.application.domain.torus.dynamics import AnosovMap, torus_distance

logger = logging.getLogger(__name__)

DEFAULT_TORUS_BUDGET = 20000
DEFAULT_ORBIT_TOL = 1e-8
NEWTON_STEP_TOL = 1e-12
NEWTON_MAX_ITER = 50
DIVERGENCE_STEP = 0.5


# ==================== 선형 모형 ====================


def lattice_system(matrix: ArrayLike, n: int) -> tuple[np.ndarray, int]:
    """
    A^n − I 와 |det(A^n − I)|

    Returns:
        tuple: (정수 행렬 A^n − I, 주기점 개수)

    Raises:
        NotHyperbolicError: det(A^n − I) = 0
    """
    validate_positive(n, "n")
    a = sympy.Matrix(np.asarray(matrix, dtype=np.int64).tolist())
    system = a**n - sympy.eye(a.shape[0])
    det = int(system.det())
    if det == 0:
        raise NotHyperbolicError(f"det(A^{n} - I) = 0", details={"period": n})
    return np.array(system.tolist(), dtype=np.int64), abs(det)


@operation("linear_periodic_points")
def linear_periodic_points(
    matrix: ArrayLike, n: int, budget: int = DEFAULT_TORUS_BUDGET
) -> np.ndarray:
    """
    A^n x ≡ x (mod 1) 의 모든 해

    해 집합은 adj(A^n − I) 의 열들이 (Z/D)^d 에서 생성하는 군을 D 로 나눈 것이다
    (D = |det(A^n − I)|). 분자 튜플의 사전식 순서로 정렬한다.

    Args:
        matrix: 정수 행렬 A
        n: 주기
        budget: D 상한

    Returns:
        np.ndarray: (D, d) 점

    Raises:
        BudgetExceededError: D > budget
    """
    system, count = lattice_system(matrix, n)
    validate_budget(count, budget)
    adjugate = sympy.Matrix(system.tolist()).adjugate()
    d = system.shape[0]
    generators = [tuple(int(adjugate[r, c]) % count for r in range(d)) for c in range(d)]

    zero = (0,) * d
    seen = {zero}
    frontier = [zero]
    while frontier:
        grown = []
        for p in frontier:
            for g in generators:
                q = tuple((pi + gi) % count for pi, gi in zip(p, g))
                if q not in seen:
                    seen.add(q)
                    grown.append(q)
        frontier = grown

    logger.debug(f"[Lattice] n={n} count={count}")
    return np.array(sorted(seen), dtype=float) / count


# ==================== Newton 연속화 ====================


def orbit_monodromy(
    f: AnosovMap, x: np.ndarray, n: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    리프트 f^n(x), 모노드로미 Df^n(x), Σ log|det Df|

    Args:
        f: Anosov 사상
        x: (m, d) 점
        n: 반복 횟수

    Returns:
        tuple: (상, 야코비안 곱, 로그 행렬식 합)
    """
    m, d = x.shape
    product = np.broadcast_to(np.eye(d), (m, d, d)).copy()
    log_det = np.zeros(m)
    y = x
    for _ in range(n):
        jac = f.jacobian(y)
        product = jac @ product
        log_det += np.log(np.abs(np.linalg.det(jac)))
        y = f.lift(y)
    return y, product, log_det


def _newton_solve(f: AnosovMap, n: int, seeds: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """G(x) = f^n(x) − x − k = 0 의 일괄 Newton"""
    x = seeds.copy()
    identity = np.eye(f.dim)
    converged = np.zeros(len(x), dtype=bool)
    step_size = np.zeros(len(x))
    for _ in range(NEWTON_MAX_ITER):
        image, product, _ = orbit_monodromy(f, x, n)
        residual = image - x - shifts
        step = np.linalg.solve(product - identity, residual[..., None])[..., 0]
        step_size = np.max(np.abs(step), axis=1)
        if np.any(step_size > DIVERGENCE_STEP):
            i = int(np.argmax(step_size))
            raise NewtonDivergedError(
                seed=seeds[i].tolist(), iterations=NEWTON_MAX_ITER, step=float(step_size[i])
            )
        x = np.where(converged[:, None], x, x - step)
        converged |= step_size < NEWTON_STEP_TOL
        if converged.all():
            return x

    i = int(np.argmax(np.where(converged, 0.0, step_size)))
    raise NewtonDivergedError(
        seed=seeds[i].tolist(), iterations=NEWTON_MAX_ITER, step=float(step_size[i])
    )


def _orbit_records(
    f: AnosovMap, n: int, points: np.ndarray, seeds: np.ndarray
) -> list[ToralPeriodicOrbit]:
    _, product, log_det = orbit_monodromy(f, points, n)
    moduli = np.abs(np.linalg.eigvals(product))
    exponents = np.sort(np.log(moduli) / n, axis=1)
    jac_log = log_det / n
    # 가장 작은 고유값은 곱 행렬에서 정밀도가 낮으므로 행렬식 합으로 복원
    exponents[:, 0] = jac_log - exponents[:, 1:].sum(axis=1)
    wrapped = wrap_unit(points)
    return [
        ToralPeriodicOrbit(
            point=tuple(float(v) for v in wrapped[i]),
            period=n,
            monodromy=product[i],
            exponents=tuple(float(v) for v in exponents[i]),
            jac_log=float(jac_log[i]),
            seed=tuple(float(v) for v in seeds[i]),
        )
        for i in range(len(points))
    ]


def _check_duplicates(orbits: list[ToralPeriodicOrbit], tol: float) -> None:
    if len(orbits) < 2:
        return
    points = np.array([o.point for o in orbits])
    pairs = cKDTree(points, boxsize=1.0).query_pairs(r=tol, p=np.inf)
    if pairs:
        first, second = min(pairs)
        raise DuplicateOrbitError(
            first=first,
            second=second,
            distance=float(torus_distance(points[first], points[second])),
        )


@operation("newton_continue")
def continue_orbits(
    f: AnosovMap,
    n: int,
    seeds: ArrayLike,
    orbit_tol: float = DEFAULT_ORBIT_TOL,
    executor: ParallelExecutor | None = None,
) -> list[ToralPeriodicOrbit]:
    """
    선형 주기점들을 f 의 주기점으로 연속화

    시드의 격자 벡터 k = (A^n − I)·seed 를 고정한 채 G(x) = f^n(x) − x − k 에
    Newton 을 적용한다. 출력 순서는 시드 순서와 같다.

    Args:
        f: Anosov 사상
        n: 주기
        seeds: (m, d) 선형 주기점
        orbit_tol: 중복 판정 sup 거리
        executor: 시드 병렬 실행기

    Returns:
        list[ToralPeriodicOrbit]: 시드별 주기점

    Raises:
        NewtonDivergedError: 스텝이 커지거나 50 회 안에 수렴하지 않음
        DuplicateOrbitError: 두 시드가 같은 점으로 수렴
    """
    seeds = np.atleast_2d(np.asarray(seeds, dtype=float))
    if seeds.shape[1] != f.dim:
        raise ValidationError(
            f"seeds must have {f.dim} columns, got {seeds.shape[1]}", details={"field": "seeds"}
        )
    system = np.linalg.matrix_power(f.eigen.matrix, n) - np.eye(f.dim, dtype=np.int64)
    shifts = np.round(seeds @ system.T)

    executor = executor or ParallelExecutor(chunk_size=512)
    index = np.arange(len(seeds))
    points = executor.map_array(
        lambda rows: _newton_solve(f, n, seeds[rows], shifts[rows]), index
    )
    orbits = _orbit_records(f, n, points, seeds)
    _check_duplicates(orbits, orbit_tol)
    logger.info(f"[Newton] period {n}: {len(orbits)} orbits continued ({f.describe()})")
    return orbits


def newton_continue(f: AnosovMap, n: int, seed: ArrayLike) -> ToralPeriodicOrbit:
    """시드 하나의 Newton 연속화"""
    return continue_orbits(f, n, np.asarray(seed, dtype=float)[None, :])[0]


def periodic_orbits_up_to(
    f: AnosovMap,
    n_max: int,
    budget: int = DEFAULT_TORUS_BUDGET,
    orbit_tol: float = DEFAULT_ORBIT_TOL,
    executor: ParallelExecutor | None = None,
) -> list[ToralPeriodicOrbit]:
    """주기 1..n_max 의 연속화된 주기점"""
    orbits: list[ToralPeriodicOrbit] = []
    for n in range(1, n_max + 1):
        seeds = linear_periodic_points(f.eigen.matrix, n, budget=budget)
        orbits.extend(continue_orbits(f, n, seeds, orbit_tol=orbit_tol, executor=executor))
    return orbits


# ==================== 통계 ====================


@operation("per_index_spread")
def per_index_spread(
    orbits: list[ToralPeriodicOrbit], index: int, side: str, eigen: EigenData
) -> IndexSpreadDTO:
    """
    i 번째 안정/불안정 지수의 평균, 폭, 선형 지수와의 차이

    Args:
        orbits: 주기점 목록
        index: 지수 번호 (1부터, 각 쪽에서 절댓값 오름차순)
        side: "s" 또는 "u"
        eigen: 선형화의 고유 분해

    Returns:
        IndexSpreadDTO: 통계

    Raises:
        SignatureMismatchError: 음수 지수 개수가 안정 차원과 다름
    """
    if not orbits:
        raise ValidationError("orbit list is empty", details={"field": "orbits"})
    k = eigen.stable_count
    size = k if side == "s" else eigen.unstable_count
    if side not in ("s", "u") or not 1 <= index <= size:
        raise ValidationError(
            f"invalid exponent selector side={side} index={index}", details={"field": "index"}
        )

    position = index - 1 if side == "s" else k + index - 1
    values = []
    for i, orbit in enumerate(orbits):
        negatives = sum(1 for e in orbit.exponents if e < 0.0)
        if negatives != k:
            raise SignatureMismatchError(orbit_index=i, expected_stable=k, found_stable=negatives)
        values.append(orbit.exponents[position])

    mean = tree_mean(values)
    return IndexSpreadDTO(
        index=index,
        side=side,
        mean=mean,
        spread=float(max(values) - min(values)),
        gap_to_linear=abs(mean - float(eigen.exponents[position])),
    )


def conservativity_indicator(orbits: list[ToralPeriodicOrbit]) -> float:
    """max |(1/n) log|det Df^n(p)||"""
    if not orbits:
        raise ValidationError("orbit list is empty", details={"field": "orbits"})
    return float(max(abs(o.jac_log) for o in orbits))

# -*- coding: utf-8 -*-
"""
Torus Dynamics - 토러스 Anosov 사상

정수 자기동형 A 의 고유 분해, 삼각 섭동 f(x) = A x + ε p(x) 와
매끄러운 켤레 모형 g = H∘A∘H⁻¹ 의 리프트/야코비안/역사상,
그리고 고유기저 원뿔 조건 인증
"""

import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Sequence

import numpy as np
import sympy
from numpy.typing import ArrayLike
from scipy.linalg import orth

from src.application.common.decorators import operation
from src.application.common.exceptions import (
    ConeViolationError,
    InversionFailureError,
    NotHyperbolicError,
    NotSimpleSpectrumError,
    ValidationError,
)
from src.application.common.parallel import ParallelExecutor
from src.application.common.validators import validate_positive
from src.application.domain.circle.dynamics import wrap_unit
from src.application.domain.torus.dto import ConeCertificateDTO, EigenData, ToralTermDTO

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
DEFAULT_HYPERBOLIC_TOL = 1e-9
DEFAULT_CONE_OPENING = 0.5
NEWTON_MAX_ITER = 50
INVERSION_RESIDUAL = 1e-10


def grid_points(n: int, dim: int) -> np.ndarray:
    """N^d 균등 격자점 (행 우선, 마지막 축이 가장 빠름)"""
    axes = [np.arange(n) / n] * dim
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)


def torus_distance(x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """T^d 위 sup 거리"""
    diff = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    return np.max(np.abs(diff - np.round(diff)), axis=-1)


# ==================== 고유 분해 ====================


def _real_basis(vectors: np.ndarray) -> np.ndarray:
    """고유벡터 묶음이 생성하는 불변 부분공간의 실기저"""
    if np.all(np.abs(vectors.imag) < 1e-12):
        basis = vectors.real / np.linalg.norm(vectors.real, axis=0)
        signs = np.sign(basis[np.argmax(np.abs(basis), axis=0), np.arange(basis.shape[1])])
        return basis * signs
    return orth(np.hstack([vectors.real, vectors.imag]))


def _is_irreducible(matrix: np.ndarray) -> bool:
    """특성다항식의 Q 위 기약성 (sympy 인수분해)"""
    t = sympy.Symbol("t")
    poly = sympy.Matrix(matrix.tolist()).charpoly(t).as_expr()
    _, factors = sympy.factor_list(poly)
    return len(factors) == 1 and factors[0][1] == 1


@operation("eigen_split")
def eigen_split(
    matrix: ArrayLike, simple_spectrum: bool = False, tol: float = DEFAULT_HYPERBOLIC_TOL
) -> EigenData:
    """
    정수 자기동형의 안정/불안정 분해

    Args:
        matrix: d×d 정수 행렬
        simple_spectrum: 실수 단순 스펙트럼과 기약성을 요구할지 여부
        tol: 단위원과의 최소 거리

    Returns:
        EigenData: 절댓값 오름차순 고유값, 지수, 실기저

    Raises:
        ValidationError: 정사각 정수 행렬이 아님
        NotHyperbolicError: |det A| ≠ 1 또는 단위원 근처 고유값
        NotSimpleSpectrumError: simple_spectrum 모드에서 복소/중복 고유값
    """
    raw = np.asarray(matrix, dtype=float)
    if raw.ndim != 2 or raw.shape[0] != raw.shape[1] or raw.shape[0] < 2:
        raise ValidationError(
            f"matrix must be square of size >= 2, got shape {raw.shape}",
            details={"field": "matrix"},
        )
    if not np.array_equal(raw, np.round(raw)):
        raise ValidationError("matrix entries must be integers", details={"field": "matrix"})
    a = np.round(raw).astype(np.int64)
    d = a.shape[0]

    det = int(sympy.Matrix(a.tolist()).det())
    if abs(det) != 1:
        raise NotHyperbolicError(
            f"|det A| = {abs(det)}, not a torus automorphism", details={"det": det}
        )

    values, vectors = np.linalg.eig(a.astype(float))
    moduli = np.abs(values)
    order = np.lexsort((np.angle(values), moduli))
    values, vectors, moduli = values[order], vectors[:, order], moduli[order]

    closest = float(np.min(np.abs(moduli - 1.0)))
    if closest < tol:
        raise NotHyperbolicError(
            f"eigenvalue within {closest:.2e} of the unit circle",
            details={"moduli": moduli.tolist()},
        )
    k = int(np.sum(moduli < 1.0))

    real = bool(np.all(np.abs(values.imag) <= 1e-12 * max(1.0, float(moduli.max()))))
    pairwise = np.abs(values[:, None] - values[None, :]) + np.eye(d) * np.inf
    simple = bool(np.min(pairwise) > tol)
    irreducible = None
    if simple_spectrum:
        if not (real and simple):
            raise NotSimpleSpectrumError(
                "rigidity mode needs real simple eigenvalues",
                details={"eigenvalues": [str(v) for v in values]},
            )
        irreducible = _is_irreducible(a)
        if not irreducible:
            logger.warning("[Eigen] characteristic polynomial factors over Q")

    logger.debug(f"[Eigen] d={d} stable={k} moduli={np.round(moduli, 6).tolist()}")
    return EigenData(
        matrix=a,
        eigenvalues=values,
        exponents=np.log(moduli),
        stable_count=k,
        stable_basis=_real_basis(vectors[:, :k]),
        unstable_basis=_real_basis(vectors[:, k:]),
        real_simple=real and simple,
        irreducible=irreducible,
    )


# ==================== 삼각 벡터장 ====================


class TrigField:
    """
    주기 벡터장 p: T^d → R^d

    성분 c = Σ_{항 t, component=c} [a_t sin(2π k_t·x) + b_t cos(2π k_t·x)]
    """

    def __init__(self, terms: Sequence[ToralTermDTO], dim: int):
        for term in terms:
            if term.component >= dim or len(term.wavevector) != dim:
                raise ValidationError(
                    f"term {term.model_dump()} does not fit dimension {dim}",
                    details={"field": "terms"},
                )
        self.dim = dim
        self.terms = tuple(terms)
        self.wavevectors = np.array([t.wavevector for t in self.terms], dtype=float).reshape(
            -1, dim
        )
        self.components = np.zeros((len(self.terms), dim))
        self.components[np.arange(len(self.terms)), [t.component for t in self.terms]] = 1.0
        self.a = np.array([t.a for t in self.terms], dtype=float)
        self.b = np.array([t.b for t in self.terms], dtype=float)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.a) and not np.any(self.b)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        if not self.terms:
            return np.zeros_like(x)
        phase = TWO_PI * (x @ self.wavevectors.T)
        return (self.a * np.sin(phase) + self.b * np.cos(phase)) @ self.components

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        """(..., d, d) 야코비안 ∂p_c/∂x_j"""
        if not self.terms:
            return np.zeros(x.shape + (self.dim,))
        phase = TWO_PI * (x @ self.wavevectors.T)
        weight = TWO_PI * (self.a * np.cos(phase) - self.b * np.sin(phase))
        return np.einsum("...t,tc,tj->...cj", weight, self.components, self.wavevectors)

    def derivative_bound(self) -> float:
        """sup ‖Dp‖ 의 상계 Σ 2π|k|(|a|+|b|)"""
        norms = np.linalg.norm(self.wavevectors, axis=1)
        return float(np.sum(TWO_PI * norms * (np.abs(self.a) + np.abs(self.b))))


# ==================== Anosov 사상 ====================


class AnosovMap(ABC):
    """
    선형화 A 를 갖는 토러스 미분동형 (리프트 표현)

    lift(x + e_j) = lift(x) + A e_j 가 성립하며, 모든 메서드는
    (..., d) 모양 배열에 대해 벡터화되어 있다.
    """

    def __init__(self, matrix: ArrayLike, simple_spectrum: bool = False):
        self.eigen = eigen_split(matrix, simple_spectrum=simple_spectrum)
        self.matrix = self.eigen.matrix.astype(float)
        self.matrix_inverse = np.round(np.linalg.inv(self.matrix))
        self.dim = self.eigen.dim

    @abstractmethod
    def lift(self, x: np.ndarray) -> np.ndarray:
        """리프트 값"""

    @abstractmethod
    def _jacobian(self, x: np.ndarray) -> np.ndarray:
        """(..., d, d) 야코비안"""

    @abstractmethod
    def describe(self) -> str:
        """로그용 짧은 설명"""

    @property
    def is_linear(self) -> bool:
        return False

    def _points(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise ValidationError(
                f"points must have last axis {self.dim}, got shape {x.shape}",
                details={"field": "x"},
            )
        return x

    def apply(self, x: ArrayLike) -> np.ndarray:
        """T^d 위의 상 f(x) mod 1"""
        return wrap_unit(self.lift(self._points(x)))

    def jacobian(self, x: ArrayLike) -> np.ndarray:
        """
        해석적 야코비안 Df(x)

        Args:
            x: (..., d) 점

        Returns:
            np.ndarray: (..., d, d)
        """
        return self._jacobian(self._points(x))

    def displacement(self, x: ArrayLike) -> np.ndarray:
        """주기 변위 ψ(x) = lift(x) − A x"""
        x = self._points(x)
        return self.lift(x) - x @ self.matrix.T

    def log_det_jacobian(self, x: ArrayLike) -> np.ndarray:
        """log|det Df(x)|"""
        return np.log(np.abs(np.linalg.det(self.jacobian(x))))

    def inverse(self, x: ArrayLike) -> np.ndarray:
        """
        역사상 리프트: lift(y) = x 인 y, A⁻¹x 에서 시작한 Newton

        Raises:
            InversionFailureError: 잔차가 수렴하지 않음
        """
        x = self._points(x)
        y = x @ self.matrix_inverse.T
        for _ in range(NEWTON_MAX_ITER):
            residual = self.lift(y) - x
            step = np.linalg.solve(self._jacobian(y), residual[..., None])[..., 0]
            y = y - step
            if np.max(np.abs(step), initial=0.0) < 1e-13:
                break

        error = np.max(np.abs(self.lift(y) - x), axis=-1)
        failed = error > INVERSION_RESIDUAL
        if np.any(failed):
            raise InversionFailureError(
                failures=int(np.sum(failed)), residual=float(np.max(error))
            )
        return y


class ToralMap(AnosovMap):
    """삼각 섭동 f(x) = A x + ε p(x)"""

    def __init__(
        self,
        matrix: ArrayLike,
        terms: Sequence[ToralTermDTO] = (),
        epsilon: float = 0.0,
        simple_spectrum: bool = False,
    ):
        super().__init__(matrix, simple_spectrum=simple_spectrum)
        self.epsilon = float(epsilon)
        self.field = TrigField(terms, self.dim)

    @classmethod
    def linear(cls, matrix: ArrayLike) -> "ToralMap":
        """섭동 없는 자기동형"""
        return cls(matrix)

    @property
    def is_linear(self) -> bool:
        return self.epsilon == 0.0 or self.field.is_zero

    def lift(self, x: np.ndarray) -> np.ndarray:
        image = x @ self.matrix.T
        if self.is_linear:
            return image
        return image + self.epsilon * self.field(x)

    def _jacobian(self, x: np.ndarray) -> np.ndarray:
        base = np.broadcast_to(self.matrix, x.shape[:-1] + (self.dim, self.dim))
        if self.is_linear:
            return base.copy()
        return base + self.epsilon * self.field.jacobian(x)

    def inverse(self, x: ArrayLike) -> np.ndarray:
        if self.is_linear:
            return self._points(x) @ self.matrix_inverse.T
        return super().inverse(x)

    def describe(self) -> str:
        return f"A={self.eigen.matrix.tolist()} eps={self.epsilon} terms={len(self.field.terms)}"


class ConjugatedToralMap(AnosovMap):
    """
    매끄러운 켤레 모형 g = H∘A∘H⁻¹, H(x) = x + q(x)

    야코비안은 Dg(x) = DH(A y)·A·DH(y)⁻¹ (y = H⁻¹x) 이고
    역사상은 H∘A⁻¹∘H⁻¹ 로 정확히 계산된다.
    """

    def __init__(
        self,
        matrix: ArrayLike,
        conjugacy_terms: Sequence[ToralTermDTO],
        simple_spectrum: bool = False,
    ):
        super().__init__(matrix, simple_spectrum=simple_spectrum)
        self.field = TrigField(conjugacy_terms, self.dim)
        bound = self.field.derivative_bound()
        if bound >= 1.0:
            raise ValidationError(
                f"conjugacy field derivative bound {bound:.4f} must be below 1",
                details={"field": "conjugacy_terms"},
            )
        self._identity = np.eye(self.dim)

    def h(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return x + self.field(x)

    def h_jacobian(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return self._identity + self.field.jacobian(x)

    def h_inverse(self, x: ArrayLike) -> np.ndarray:
        """H⁻¹ (점별 Newton)"""
        x = np.asarray(x, dtype=float)
        y = x.copy()
        for _ in range(NEWTON_MAX_ITER):
            step = np.linalg.solve(self.h_jacobian(y), (self.h(y) - x)[..., None])[..., 0]
            y = y - step
            if np.max(np.abs(step), initial=0.0) < 1e-15:
                break
        error = np.max(np.abs(self.h(y) - x), axis=-1)
        if np.any(error > 1e-12):
            raise InversionFailureError(
                failures=int(np.sum(error > 1e-12)), residual=float(np.max(error))
            )
        return y

    def lift(self, x: np.ndarray) -> np.ndarray:
        return self.h(self.h_inverse(x) @ self.matrix.T)

    def _jacobian(self, x: np.ndarray) -> np.ndarray:
        y = self.h_inverse(x)
        return self.h_jacobian(y @ self.matrix.T) @ self.matrix @ np.linalg.inv(self.h_jacobian(y))

    def inverse(self, x: ArrayLike) -> np.ndarray:
        return self.h(self.h_inverse(self._points(x)) @ self.matrix_inverse.T)

    def describe(self) -> str:
        return f"H∘A∘H⁻¹ A={self.eigen.matrix.tolist()} terms={len(self.field.terms)}"


# ==================== 원뿔 인증 ====================


def _cone_bounds(
    expand: np.ndarray,
    cross_in: np.ndarray,
    other: np.ndarray,
    cross_out: np.ndarray,
    gamma: float,
) -> tuple[np.ndarray, np.ndarray]:
    """
    원뿔 {|other| ≤ γ|expand|} 의 확장 인자와 불변 여유

    Returns:
        tuple: (σ_min(expand) − γ‖cross_in‖) / √(1+γ²),
               γ·(σ_min(expand) − γ‖cross_in‖) − (γ‖other‖ + ‖cross_out‖)
    """
    sigma = np.linalg.svd(expand, compute_uv=False)[..., -1]
    lower = sigma - gamma * np.linalg.norm(cross_in, ord=2, axis=(-2, -1))
    spill = gamma * np.linalg.norm(other, ord=2, axis=(-2, -1)) + np.linalg.norm(
        cross_out, ord=2, axis=(-2, -1)
    )
    return lower / math.sqrt(1.0 + gamma**2), gamma * lower - spill


@operation("cone_certify")
def cone_certify(
    f: AnosovMap,
    grid_n: int,
    gamma: float = DEFAULT_CONE_OPENING,
    raise_on_failure: bool = True,
    executor: ParallelExecutor | None = None,
) -> ConeCertificateDTO:
    """
    고유기저 원뿔 조건 인증

    좌표 (s, u) = V⁻¹ v 에서 불안정 원뿔 |s| ≤ γ|u| 가 Df 로,
    안정 원뿔 |u| ≤ γ|s| 가 Df⁻¹ 로 엄밀히 불변이고 균등 확장되는지
    grid_n^d 표본점에서 확인한다.

    Args:
        f: Anosov 사상
        grid_n: 축당 표본 수
        gamma: 원뿔 폭
        raise_on_failure: 실패 시 예외 여부
        executor: 표본점 병렬 실행기

    Returns:
        ConeCertificateDTO: 여유와 판정

    Raises:
        ConeViolationError: 인증 실패이고 raise_on_failure 인 경우
    """
    validate_positive(grid_n, "grid_n")
    executor = executor or ParallelExecutor(chunk_size=4096)
    basis = f.eigen.basis
    basis_inv = np.linalg.inv(basis)
    k, d = f.eigen.stable_count, f.dim
    points = grid_points(grid_n, d)

    def evaluate(chunk: np.ndarray) -> np.ndarray:
        forward = basis_inv @ f.jacobian(chunk) @ basis
        backward = np.linalg.inv(forward)
        s, u = slice(0, k), slice(k, d)
        u_factor, u_inv = _cone_bounds(
            forward[:, u, u], forward[:, u, s], forward[:, s, s], forward[:, s, u], gamma
        )
        s_factor, s_inv = _cone_bounds(
            backward[:, s, s], backward[:, s, u], backward[:, u, u], backward[:, u, s], gamma
        )
        if d - k >= 2:
            w, strong = slice(k, k + 1), slice(k + 1, d)
            strong_lower = np.linalg.svd(forward[:, strong, strong], compute_uv=False)[
                ..., -1
            ] - gamma * np.linalg.norm(forward[:, strong, w], ord=2, axis=(-2, -1))
            weak_upper = np.linalg.norm(forward[:, w, w], ord=2, axis=(-2, -1)) + gamma * (
                np.linalg.norm(forward[:, w, strong], ord=2, axis=(-2, -1))
            )
            domination = strong_lower / weak_upper - 1.0
        else:
            domination = np.full(len(chunk), np.nan)
        return np.column_stack(
            [u_factor, s_factor, np.minimum(u_inv, s_inv), domination]
        )

    table = executor.map_array(evaluate, points)
    factor = np.minimum(table[:, 0], table[:, 1])
    score = np.minimum(factor - 1.0, table[:, 2])
    worst = int(np.argmin(score))
    margin = float(factor.min() - 1.0)
    invariance = float(table[:, 2].min())
    ok = margin > 0.0 and invariance > 0.0
    domination = None if d - k < 2 else float(np.min(table[:, 3]))

    logger.info(
        f"[Cone] {f.describe()} margin={margin:.4f} invariance={invariance:.4f} "
        f"samples={len(points)}"
    )
    if not ok and raise_on_failure:
        raise ConeViolationError(point=points[worst].tolist(), margin=min(margin, invariance))
    return ConeCertificateDTO(
        margin=margin,
        ok=ok,
        unstable_factor=float(table[:, 0].min()),
        stable_factor=float(table[:, 1].min()),
        invariance_margin=invariance,
        worst_point=points[worst].tolist(),
        domination_margin=domination,
        samples=len(points),
    )

# -*- coding: utf-8 -*-
"""
Common Exceptions - 공통 예외 클래스

애플리케이션 전역에서 사용하는 커스텀 예외 정의.
status_code 는 CLI 종료 코드로 사용된다 (2: 설정 오류, 3: 수치 계산 실패).
"""

from typing import Any

EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_ERROR = 3


# ==================== Base Exception ====================


class ApplicationError(Exception):
    """
    애플리케이션 기본 예외

    모든 커스텀 예외의 베이스 클래스
    """

    def __init__(
        self,
        message: str,
        code: str | None = None,
        status_code: int = 1,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message)
        self.message = message
        self.code = code or self.__class__.__name__
        self.status_code = status_code
        self.details = details or {}
        self.operation: str | None = None

    def __str__(self) -> str:
        if self.operation:
            return f"[{self.code}] {self.operation}: {self.message}"
        return f"[{self.code}] {self.message}"

    def to_dict(self) -> dict[str, Any]:
        """예외를 딕셔너리로 변환"""
        return {
            "code": self.code,
            "message": self.message,
            "status_code": self.status_code,
            "operation": self.operation,
            "details": self.details,
        }


# ==================== Validation / Configuration Exceptions ====================


class ValidationError(ApplicationError):
    """검증 실패 예외"""

    def __init__(self, message: str = "Validation failed", details: dict[str, Any] | None = None):
        super().__init__(
            message, code="VALIDATION_ERROR", status_code=EXIT_CONFIG_ERROR, details=details
        )


class ConfigurationError(ApplicationError):
    """설정 오류 예외 (실험 설정 파일 파싱/검증 실패)"""

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(
            message, code="CONFIGURATION_ERROR", status_code=EXIT_CONFIG_ERROR, details=details
        )


# ==================== Numerical Exceptions ====================


class NumericalError(ApplicationError):
    """
    수치 계산 실패 예외

    모든 도메인 모듈 오류의 베이스 클래스
    """

    def __init__(self, message: str, code: str, details: dict[str, Any] | None = None):
        super().__init__(
            message, code=code, status_code=EXIT_NUMERICAL_ERROR, details=details
        )


class NotExpandingError(NumericalError):
    """확장성 인증 실패 (하한 ≤ 1)"""

    def __init__(self, lower_bound: float):
        super().__init__(
            message=f"Expansivity bound {lower_bound:.6g} is not above 1",
            code="NOT_EXPANDING",
            details={"lambda_min_bound": lower_bound},
        )


class BudgetExceededError(NumericalError):
    """주기 예산 초과 예외"""

    def __init__(self, required: int, budget: int):
        super().__init__(
            message=f"Requested size {required} exceeds budget {budget}",
            code="BUDGET_EXCEEDED",
            details={"required": required, "budget": budget},
        )


class RootBracketFailureError(NumericalError):
    """근 구간 설정 실패 (확장성 인증이 틀렸음을 의미)"""

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message=message, code="ROOT_BRACKET_FAILURE", details=details)


class ConstantDataViolatedError(NumericalError):
    """주기 데이터가 상수가 아님"""

    def __init__(self, spread: float, exponent_min: float, exponent_max: float, tol: float):
        super().__init__(
            message=(
                f"Periodic exponents range over [{exponent_min:.6g}, {exponent_max:.6g}] "
                f"(spread {spread:.6g} >= tol {tol:.1e})"
            ),
            code="CONSTANT_DATA_VIOLATED",
            details={
                "spread": spread,
                "exponent_min": exponent_min,
                "exponent_max": exponent_max,
                "tol": tol,
            },
        )


class NoConvergenceError(NumericalError):
    """반복법 수렴 실패"""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(
            message=message, code="NO_CONVERGENCE", details={"residual": residual}
        )


class DensityVanishesError(NumericalError):
    """보간된 밀도가 하한 아래로 떨어짐"""

    def __init__(self, position: float, value: float):
        super().__init__(
            message=f"Interpolated density {value:.3e} at {position:.6f} is below threshold",
            code="DENSITY_VANISHES",
            details={"position": position, "value": value},
        )


class EndpointMismatchError(NumericalError):
    """ODE 해의 차수가 1이 아님"""

    def __init__(self, increment: float, tol: float):
        super().__init__(
            message=f"z(1) - z(0) = {increment:.12f} differs from 1 by more than {tol:.1e}",
            code="ENDPOINT_MISMATCH",
            details={"increment": increment, "tol": tol},
        )


class NotHyperbolicError(NumericalError):
    """쌍곡성 실패 (단위원 근처 고유값 또는 |det| ≠ 1)"""

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message=message, code="NOT_HYPERBOLIC", details=details)


class NotSimpleSpectrumError(NumericalError):
    """실수 단순 스펙트럼 조건 실패"""

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message=message, code="NOT_SIMPLE_SPECTRUM", details=details)


class ConeViolationError(NumericalError):
    """원뿔 조건 위반"""

    def __init__(self, point: list[float], margin: float):
        super().__init__(
            message=f"Cone condition fails at {point} (margin {margin:.4g})",
            code="CONE_VIOLATION",
            details={"point": point, "margin": margin},
        )


class NewtonDivergedError(NumericalError):
    """Newton 반복 발산"""

    def __init__(self, seed: list[float], iterations: int, step: float):
        super().__init__(
            message=f"Newton diverged from seed {seed} after {iterations} iterations",
            code="NEWTON_DIVERGED",
            details={"seed": seed, "iterations": iterations, "last_step": step},
        )


class DuplicateOrbitError(NumericalError):
    """서로 다른 시드가 같은 주기점으로 수렴"""

    def __init__(self, first: int, second: int, distance: float):
        super().__init__(
            message=f"Seeds {first} and {second} collapsed (distance {distance:.3e})",
            code="DUPLICATE_ORBIT",
            details={"first": first, "second": second, "distance": distance},
        )


class SignatureMismatchError(NumericalError):
    """지수 부호가 선형화와 불일치"""

    def __init__(self, orbit_index: int, expected_stable: int, found_stable: int):
        super().__init__(
            message=(
                f"Orbit {orbit_index} has {found_stable} negative exponents, "
                f"expected {expected_stable}"
            ),
            code="SIGNATURE_MISMATCH",
            details={
                "orbit_index": orbit_index,
                "expected_stable": expected_stable,
                "found_stable": found_stable,
            },
        )


class ResolutionExhaustedError(NumericalError):
    """선분 추적 점 개수 한도 초과"""

    def __init__(self, step: int, points: int, max_pts: int):
        super().__init__(
            message=f"Polyline needs {points} points at step {step} (max {max_pts})",
            code="RESOLUTION_EXHAUSTED",
            details={"step": step, "points": points, "max_pts": max_pts},
        )


class InversionFailureError(NumericalError):
    """f⁻¹ Newton 역변환 실패"""

    def __init__(self, failures: int, residual: float):
        super().__init__(
            message=f"Newton inversion failed at {failures} points (residual {residual:.3e})",
            code="INVERSION_FAILURE",
            details={"failures": failures, "residual": residual},
        )

# -*- coding: utf-8 -*-
"""
Validators - 공통 검증 함수

연산 사전 조건 검증을 위한 재사용 가능한 함수
"""

from src.application.common.exceptions import BudgetExceededError, ValidationError


# ==================== 숫자 검증 ====================


def validate_positive(value: int | float, field_name: str = "value") -> None:
    """
    양수 검증

    Args:
        value: 검증할 값
        field_name: 필드명

    Raises:
        ValidationError: 양수가 아닌 경우
    """
    if value <= 0:
        raise ValidationError(
            f"{field_name} must be positive, got {value}", details={"field": field_name}
        )


def validate_choice(value: int, choices: tuple[int, ...], field_name: str = "value") -> None:
    """
    허용값 검증

    Args:
        value: 검증할 값
        choices: 허용되는 값 목록
        field_name: 필드명

    Raises:
        ValidationError: 허용값이 아닌 경우
    """
    if value not in choices:
        raise ValidationError(
            f"{field_name} must be one of {choices}, got {value}", details={"field": field_name}
        )


# ==================== 예산 검증 ====================


def validate_budget(required: int, budget: int) -> None:
    """
    계산 규모 예산 검증

    Args:
        required: 필요한 점/궤도 개수 (예: d^n)
        budget: 허용 한도

    Raises:
        BudgetExceededError: 한도를 넘는 경우
    """
    if required > budget:
        raise BudgetExceededError(required=required, budget=budget)

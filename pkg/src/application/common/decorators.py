# -*- coding: utf-8 -*-
"""
Decorators - 공통 데코레이터

@operation, @log_execution 등 재사용 가능한 데코레이터
"""

import functools
import logging
import time
from collections.abc import Callable
from typing import ParamSpec, TypeVar

from src.application.common.exceptions import ApplicationError

P = ParamSpec("P")
T = TypeVar("T")

logger = logging.getLogger(__name__)


# ==================== @operation 데코레이터 ====================


def operation(name: str) -> Callable[[Callable[P, T]], Callable[P, T]]:
    """
    연산 이름 표시 데코레이터

    함수에서 빠져나가는 ApplicationError (ValidationError, NumericalError 계열) 에 연산 이름을 기록한다.
    이미 더 안쪽 연산 이름이 기록된 경우 덮어쓰지 않는다.

    Args:
        name: 연산 이름 (예: "periodic_points")

    사용 예시:
        @operation("invariant_density")
        def invariant_density(self, circle_map, bins): ...
    """

    def decorator(func: Callable[P, T]) -> Callable[P, T]:
        @functools.wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> T:
            try:
                return func(*args, **kwargs)
            except ApplicationError as e:
                if e.operation is None:
                    e.operation = name
                    logger.error(f"[{name}] {e.code}: {e.message}")
                raise

        return wrapper

    return decorator


# ==================== @log_execution 데코레이터 ====================


def log_execution(func: Callable[P, T]) -> Callable[P, T]:
    """
    실행 로깅 데코레이터

    함수 실행 시작/종료 및 실행 시간 로깅

    사용 예시:
        @log_execution
        def run_circle_report(config):
            ...
    """

    @functools.wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> T:
        func_name = func.__name__
        logger.info(f"[START] {func_name}")

        start_time = time.perf_counter()
        try:
            result = func(*args, **kwargs)
            elapsed = time.perf_counter() - start_time
            logger.info(f"[END] {func_name} (took {elapsed:.3f}s)")
            return result
        except Exception as e:
            elapsed = time.perf_counter() - start_time
            logger.error(f"[ERROR] {func_name} failed after {elapsed:.3f}s: {e}")
            raise

    return wrapper

# -*- coding: utf-8 -*-
"""
Parallel - 결정적 병렬 실행 유틸리티

인덱스 순서 청크 매핑과 고정 차수 트리 합산.
스레드 수와 무관하게 같은 결과를 보장한다.
"""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


def tree_sum(values: Sequence[float] | np.ndarray, arity: int = 4) -> float:
    """
    고정 차수 트리 합산

    Args:
        values: 더할 값들
        arity: 한 단계에서 묶는 개수

    Returns:
        float: 합 (덧셈 순서가 값의 개수에만 의존)
    """
    level = [float(v) for v in values]
    if not level:
        return 0.0
    while len(level) > 1:
        level = [sum(level[i : i + arity]) for i in range(0, len(level), arity)]
    return level[0]


def tree_mean(values: Sequence[float] | np.ndarray, arity: int = 4) -> float:
    """고정 차수 트리 평균"""
    if len(values) == 0:
        return 0.0
    return tree_sum(values, arity) / len(values)


class ParallelExecutor:
    """
    인덱스 순서 보존 병렬 실행기

    작업을 chunk_size 단위로 나누어 스레드 풀에서 실행하고,
    결과를 항상 입력 순서대로 모은다. 청크 경계는 스레드 수와 무관하다.
    """

    def __init__(self, threads: int = 1, chunk_size: int = 256):
        """
        Args:
            threads: 작업 스레드 수 (1 이면 순차 실행)
            chunk_size: 청크 하나의 항목 수
        """
        self.threads = max(1, threads)
        self.chunk_size = max(1, chunk_size)

    def chunks(self, count: int) -> list[slice]:
        """[0, count) 를 고정 크기 청크 슬라이스로 분할"""
        return [
            slice(start, min(start + self.chunk_size, count))
            for start in range(0, count, self.chunk_size)
        ]

    def map(self, func: Callable[[T], R], items: Sequence[T]) -> list[R]:
        """
        순서 보존 매핑

        Args:
            func: 항목별 함수
            items: 입력 목록

        Returns:
            list: 입력 순서의 결과 목록
        """
        if self.threads == 1 or len(items) <= 1:
            return [func(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(func, items))

    def map_array(
        self, func: Callable[[np.ndarray], np.ndarray], points: np.ndarray
    ) -> np.ndarray:
        """
        배열 청크 매핑

        첫 축을 청크로 나누어 벡터화된 func 를 적용하고 순서대로 이어 붙인다.

        Args:
            func: (m, ...) 배열을 받아 (m, ...) 배열을 돌려주는 함수
            points: 입력 배열

        Returns:
            np.ndarray: 이어 붙인 결과
        """
        pieces = self.map(lambda s: func(points[s]), self.chunks(len(points)))
        if not pieces:
            return np.empty((0,))
        logger.debug(f"[Parallel] {len(pieces)} chunks on {self.threads} threads")
        return np.concatenate(pieces, axis=0)

# -*- coding: utf-8 -*-
"""
Formatters - 데이터 포맷팅 유틸리티

판정 값 포맷팅과 CSV / 평문 아티팩트 기록.
같은 입력은 항상 바이트 단위로 같은 출력을 만든다.
"""

from collections.abc import Iterable
from pathlib import Path

import numpy as np
import pandas as pd

FLOAT_FORMAT = "%.12e"
SKIPPED = "SKIPPED"


# ==================== 값 포맷팅 ====================


def format_float(value: float | None) -> str:
    """
    실수 포맷팅 (지수 표기 12자리)

    Args:
        value: 값 (None 이면 SKIPPED)

    Returns:
        str: 포맷된 값 (예: "6.931471805599e-01")
    """
    if value is None:
        return SKIPPED
    return FLOAT_FORMAT % float(value)


def format_flag(value: bool | None) -> str:
    """
    판정 플래그 포맷팅

    Args:
        value: 판정 (None 이면 SKIPPED)

    Returns:
        str: "yes" / "no" / "SKIPPED"
    """
    if value is None:
        return SKIPPED
    return "yes" if value else "no"


def render_key_values(pairs: Iterable[tuple[str, str]]) -> str:
    """
    KEY=VALUE 블록 렌더링

    Args:
        pairs: (키, 값) 목록, 주어진 순서 그대로 출력

    Returns:
        str: 줄바꿈으로 끝나는 텍스트 블록
    """
    return "".join(f"{key}={value}\n" for key, value in pairs)


# ==================== 아티팩트 기록 ====================


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    """
    DataFrame 을 CSV 로 기록

    Args:
        frame: 기록할 표
        path: 출력 경로

    Returns:
        Path: 기록된 경로
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def write_columns(path: Path, *columns: np.ndarray) -> Path:
    """
    열 배열들을 공백 구분 평문으로 기록 (플롯용)

    Args:
        path: 출력 경로
        columns: 같은 길이의 1차원 배열들

    Returns:
        Path: 기록된 경로
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, np.column_stack(columns), fmt=FLOAT_FORMAT)
    return path


def write_text(path: Path, text: str) -> Path:
    """텍스트 파일 기록 (LF 줄바꿈 고정)"""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    return path

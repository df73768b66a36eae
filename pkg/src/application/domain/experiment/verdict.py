# -*- coding: utf-8 -*-
"""
Verdict - 판정 블록 렌더링

사상 종류별 고정 키 순서로 KEY=VALUE 줄을 만든다.
실행하지 않은 파이프라인의 키는 SKIPPED 로 남는다.
"""

from collections.abc import Mapping

from src.application.common.exceptions import ValidationError
from src.application.common.formatters import SKIPPED, render_key_values
from src.application.domain.torus.dto import EigenData

HEADER_KEYS = ["KIND", "PIPELINE", "SEED"]

CIRCLE_KEYS = [
    "CONSTANT_DATA",
    "CONSTANT_DATA_SPREAD",
    "PERIODIC_MEAN",
    "LOG_D_GAP",
    "LOG_D_MATCH",
    "INEQUALITY_WITHIN",
    "ACIM_EXPONENT",
    "ACIM_BIRKHOFF_GAP",
    "PERIODIC_BIRKHOFF_GAP",
    "DENSITY_RESIDUAL",
    "PUSHFORWARD_DEFECT",
    "REGULARITY_ALPHA",
    "REGULARITY_R2",
    "DISTORTION_CONSTANT",
    "BILIPSCHITZ",
    "BILIPSCHITZ_DRIFT",
    "CONJUGACY_RESIDUAL",
    "ODE_SYMBOLIC_DISTANCE",
    "ENTROPY_H_TOP",
    "ENTROPY_ACIM_EXPONENT",
    "ENTROPY_RUELLE_GAP",
]


def _direction_keys(side: str, count: int) -> list[str]:
    if count == 1:
        return [f"REGULARITY_ALPHA_{side}"]
    return [f"REGULARITY_ALPHA_{side}_{j}" for j in range(1, count + 1)]


def circle_verdict_keys() -> list[str]:
    """원 사상 판정 키"""
    return HEADER_KEYS + CIRCLE_KEYS


def toral_verdict_keys(eigen: EigenData) -> list[str]:
    """
    토러스 사상 판정 키 (지수 번호별 키는 안정/불안정 차원에서 정해진다)

    Args:
        eigen: 선형화 고유 분해

    Returns:
        list[str]: 고정 순서 키 목록
    """
    k, n = eigen.stable_count, eigen.unstable_count
    keys = HEADER_KEYS + ["CONE_MARGIN", "CONE_DOMINATION", "CONSTANT_DATA", "CONSTANT_DATA_SPREAD"]
    for side, count in (("S", k), ("U", n)):
        for i in range(1, count + 1):
            keys += [f"LINEAR_GAP_{side}{i}", f"LINEAR_MATCH_{side}{i}"]
    keys += ["CONSERVATIVE_INDICATOR", "CONSERVATIVE", "SRB_VOLUME_EXPONENT"]
    keys += ["FRANKS_RESIDUAL", "FRANKS_RESIDUAL_OK", "FRANKS_SUP_NORM"]
    keys += ["FRANKS_DISTANCE", "EQUIVARIANCE_ERROR", "INJECTIVITY_GAP"]
    keys += _direction_keys("STABLE", k) + _direction_keys("UNSTABLE", n)
    keys += ["ENTROPY_H_TOP", "ENTROPY_CHI_SEGMENT"]
    keys += [f"ENTROPY_CHI_FLAG_{i}" for i in range(1, n + 1)]
    keys += ["ENTROPY_SRB_SUM", "ENTROPY_RUELLE_GAP"]
    for i in range(1, n + 1):
        keys += [f"UNIFORM_DEVIATION_{i}", f"UNIFORM_HALF_SPREAD_{i}"]
    return keys


def render_verdict(keys: list[str], values: Mapping[str, str]) -> str:
    """
    판정 블록 렌더링

    Args:
        keys: 고정 순서 키
        values: 계산된 값 (없는 키는 SKIPPED)

    Returns:
        str: KEY=VALUE 줄

    Raises:
        ValidationError: 키 목록에 없는 값이 들어온 경우
    """
    unknown = sorted(set(values) - set(keys))
    if unknown:
        raise ValidationError(f"verdict has no slot for {unknown}", details={"keys": unknown})
    return render_key_values((key, values.get(key, SKIPPED)) for key in keys)


def parse_verdict(text: str) -> dict[str, str]:
    """KEY=VALUE 블록을 사전으로 읽는다"""
    pairs = (line.split("=", 1) for line in text.splitlines() if "=" in line)
    return {key: value for key, value in pairs}

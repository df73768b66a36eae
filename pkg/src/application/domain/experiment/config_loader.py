# -*- coding: utf-8 -*-
"""
Config Loader - 실험 설정 파일 로드와 사상 생성
"""

import logging
from pathlib import Path

import pydantic
import yaml

from src.application.common.exceptions import ConfigurationError, ValidationError
from src.application.domain.circle.dynamics import CircleLift, CircleMap, ConjugatedCircleMap
from src.application.domain.experiment.dto import CircleSection, ExperimentConfig, TorusSection
from src.application.domain.torus.dynamics import AnosovMap, ConjugatedToralMap, ToralMap

logger = logging.getLogger(__name__)


def load_experiment_config(path: str | Path) -> ExperimentConfig:
    """
    YAML 실험 설정 로드

    Args:
        path: 설정 파일 경로

    Returns:
        ExperimentConfig: 검증된 설정

    Raises:
        ConfigurationError: 파일 없음, YAML 문법 오류, 스키마 위반
    """
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigurationError(f"cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigurationError(f"invalid YAML in {path}: {e}") from e

    if not isinstance(raw, dict):
        raise ConfigurationError(f"config {path} must be a mapping of sections")

    try:
        config = ExperimentConfig.model_validate(raw)
    except pydantic.ValidationError as e:
        errors = [
            {"loc": ".".join(str(p) for p in err["loc"]), "msg": err["msg"]} for err in e.errors()
        ]
        raise ConfigurationError(
            f"config {path} rejected: {errors[0]['loc']}: {errors[0]['msg']}",
            details={"errors": errors},
        ) from e

    logger.info(
        f"[Config] {path.name}: kind={config.experiment.kind} "
        f"pipeline={config.experiment.pipeline}"
    )
    return config


def build_circle_map(section: CircleSection) -> CircleMap:
    """설정으로부터 원 사상 생성"""
    try:
        if section.model == "conjugated":
            return ConjugatedCircleMap(section.degree, section.conjugacy_trig_terms())
        return CircleLift(section.degree, section.trig_terms())
    except ValidationError as e:
        raise ConfigurationError(f"invalid circle map: {e.message}", details=e.details) from e


def build_toral_map(section: TorusSection) -> AnosovMap:
    """
    설정으로부터 토러스 사상 생성

    NotHyperbolic / NotSimpleSpectrum 은 수치 오류로 그대로 전달한다.
    """
    try:
        if section.model == "conjugated":
            return ConjugatedToralMap(
                section.matrix,
                section.conjugacy_toral_terms(),
                simple_spectrum=section.simple_spectrum,
            )
        return ToralMap(
            section.matrix,
            section.toral_terms(),
            epsilon=section.epsilon,
            simple_spectrum=section.simple_spectrum,
        )
    except ValidationError as e:
        raise ConfigurationError(f"invalid toral map: {e.message}", details=e.details) from e

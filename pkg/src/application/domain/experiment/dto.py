# -*- coding: utf-8 -*-
"""
Experiment DTO - 실험 설정 파일 스키마

YAML 최상위 섹션 experiment / circle / torus / numerics 를 검증한다.
모르는 키는 거부하고, numerics 기본값은 환경 설정(Settings)에서 가져온다.
"""

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.application.domain.circle.dto import TrigTermDTO
from src.application.domain.torus.dto import ToralTermDTO
from src.settings.config import get_settings

Pipeline = Literal["periodic", "density", "conjugacy", "entropy", "full-report"]


def _setting(name: str):
    """환경 설정 값을 기본값으로 쓰는 default_factory"""
    return lambda: getattr(get_settings(), name)


class StrictSection(BaseModel):
    """모르는 키를 거부하는 설정 섹션"""

    model_config = ConfigDict(extra="forbid", frozen=True)


# ==================== 섹션 ====================


class ExperimentSection(StrictSection):
    """실험 종류와 파이프라인"""

    kind: Literal["circle", "toral"] = Field(description="사상 종류")
    pipeline: Pipeline = Field(default="full-report", description="실행할 파이프라인")
    name: str = Field(default="experiment", description="실험 이름")
    seed: int | None = Field(default=None, ge=0, description="난수 시드")
    threads: int | None = Field(default=None, ge=1, le=256, description="스레드 수")


class CircleSection(StrictSection):
    """
    원 사상 매개변수

    terms / conjugacy_terms 는 [k, a, b] 목록이다. amplitude_units 가 derivative 이면
    a, b 를 도함수 진폭 2πk·a 로 해석한다.
    """

    model: Literal["trigonometric", "conjugated"] = Field(default="trigonometric")
    degree: int = Field(default=2, ge=2, le=16, description="차수 d")
    terms: list[tuple[int, float, float]] = Field(default_factory=list)
    conjugacy_terms: list[tuple[int, float, float]] = Field(default_factory=list)
    amplitude_units: Literal["map", "derivative"] = Field(default="map")

    def _convert(self, raw: list[tuple[int, float, float]]) -> list[TrigTermDTO]:
        terms = []
        for k, a, b in raw:
            if k < 1:
                raise ValueError(f"frequency must be positive, got {k}")
            scale = 1.0 / (2.0 * math.pi * k) if self.amplitude_units == "derivative" else 1.0
            terms.append(TrigTermDTO(k=k, a=a * scale, b=b * scale))
        return terms

    def trig_terms(self) -> list[TrigTermDTO]:
        return self._convert(self.terms)

    def conjugacy_trig_terms(self) -> list[TrigTermDTO]:
        return self._convert(self.conjugacy_terms)

    @model_validator(mode="after")
    def validate_model_terms(self) -> "CircleSection":
        self.trig_terms()
        self.conjugacy_trig_terms()
        if self.model == "conjugated" and not self.conjugacy_terms:
            raise ValueError("conjugated model needs conjugacy_terms")
        return self


class TorusSection(StrictSection):
    """
    토러스 사상 매개변수

    terms / conjugacy_terms 의 각 행은 [component, k_1, …, k_d, a, b] 이다.
    """

    model: Literal["trigonometric", "conjugated"] = Field(default="trigonometric")
    matrix: list[list[int]] = Field(description="정수 행렬 A")
    epsilon: float = Field(default=0.0, ge=0.0, le=1.0, description="섭동 진폭 ε")
    terms: list[list[float]] = Field(default_factory=list)
    conjugacy_terms: list[list[float]] = Field(default_factory=list)
    simple_spectrum: bool = Field(default=False, description="실수 단순 스펙트럼 요구")

    @field_validator("matrix")
    @classmethod
    def validate_matrix(cls, v: list[list[int]]) -> list[list[int]]:
        if len(v) < 2 or any(len(row) != len(v) for row in v):
            raise ValueError("matrix must be square with size >= 2")
        return v

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def _convert(self, raw: list[list[float]]) -> list[ToralTermDTO]:
        d = self.dim
        terms = []
        for row in raw:
            if len(row) != d + 3:
                raise ValueError(f"term row {row} must have {d + 3} entries")
            terms.append(
                ToralTermDTO(
                    component=int(row[0]),
                    wavevector=tuple(int(k) for k in row[1 : d + 1]),
                    a=float(row[d + 1]),
                    b=float(row[d + 2]),
                )
            )
        return terms

    def toral_terms(self) -> list[ToralTermDTO]:
        return self._convert(self.terms)

    def conjugacy_toral_terms(self) -> list[ToralTermDTO]:
        return self._convert(self.conjugacy_terms)

    @model_validator(mode="after")
    def validate_model_terms(self) -> "TorusSection":
        self.toral_terms()
        self.conjugacy_toral_terms()
        if self.model == "conjugated" and not self.conjugacy_terms:
            raise ValueError("conjugated model needs conjugacy_terms")
        return self


class NumericsSection(StrictSection):
    """수치 조절값 (기본값은 RIGIDITY_ 환경 설정)"""

    # 원
    circle_n_max: int = Field(default=8, ge=1, le=20, description="원 주기 상한")
    circle_period_budget: int = Field(default_factory=_setting("circle_period_budget"), ge=1)
    expansion_grid_n: int = Field(default_factory=_setting("expansion_grid_n"), ge=16)
    tol_cd: float = Field(default_factory=_setting("tol_cd"), gt=0.0, le=1.0)
    ulam_bins: int = Field(default_factory=_setting("ulam_bins"), ge=16, le=2**18)
    density_iters: int = Field(default_factory=_setting("density_iters"), ge=1, le=10**6)
    residual_tol: float = Field(default_factory=_setting("residual_tol"), gt=0.0)
    uniqueness_tol: float = Field(default_factory=_setting("uniqueness_tol"), gt=0.0)
    birkhoff_seeds: int = Field(default=1000, ge=1, le=10**6)
    birkhoff_steps: int = Field(default=1000, ge=1, le=10**7)
    conjugacy_level: int = Field(default_factory=_setting("conjugacy_level"), ge=6, le=24)
    ode_steps: int = Field(default_factory=_setting("ode_steps"), ge=64, le=2**24)
    wrap_tol: float = Field(default_factory=_setting("wrap_tol"), gt=0.0)
    density_floor: float = Field(default_factory=_setting("density_floor"), gt=0.0)
    drift_tol: float = Field(default_factory=_setting("drift_tol"), gt=0.0)

    # 토러스
    torus_n_max: int = Field(default=5, ge=1, le=12, description="토러스 주기 상한")
    torus_period_budget: int = Field(default_factory=_setting("torus_period_budget"), ge=1)
    cone_grid: int = Field(default=64, ge=2, le=1024)
    cone_opening: float = Field(default_factory=_setting("cone_opening"), gt=0.0, lt=1.0)
    orbit_identity_tol: float = Field(default_factory=_setting("orbit_identity_tol"), gt=0.0)
    flag_iter: int = Field(default=80, ge=2, le=10**4)
    franks_grid: int = Field(default_factory=_setting("franks_grid"), ge=16, le=4096)
    franks_iters: int = Field(default_factory=_setting("franks_iters"), ge=1)
    franks_tol: float = Field(default_factory=_setting("franks_tol"), gt=0.0)
    res_tol: float = Field(default_factory=_setting("res_tol"), gt=0.0)
    srb_seeds: int = Field(default_factory=_setting("srb_seeds"), ge=1)
    srb_horizon: int = Field(default_factory=_setting("srb_horizon"), ge=1)
    srb_transient: int = Field(default_factory=_setting("srb_transient"), ge=0)
    cocycle_points: int = Field(default=20, ge=1, le=10**5)
    cocycle_horizon: int = Field(default=200, ge=1, le=10**5)
    segment_horizon: int = Field(default=25, ge=1, le=200)
    segment_delta: float = Field(default=1e-3, gt=0.0, le=0.1)
    uniform_grid: int = Field(default=64, ge=2, le=512)
    uniform_horizons: list[int] = Field(default_factory=lambda: [10, 20, 40, 80, 160])

    @field_validator("uniform_horizons")
    @classmethod
    def validate_horizons(cls, v: list[int]) -> list[int]:
        if not v or min(v) < 1:
            raise ValueError("uniform_horizons must be positive")
        return sorted(set(v))


# ==================== 전체 설정 ====================


class ExperimentConfig(StrictSection):
    """실험 설정 파일 전체"""

    experiment: ExperimentSection
    circle: CircleSection | None = None
    torus: TorusSection | None = None
    numerics: NumericsSection = Field(default_factory=NumericsSection)

    @model_validator(mode="after")
    def validate_kind(self) -> "ExperimentConfig":
        if self.experiment.kind == "circle" and self.circle is None:
            raise ValueError("circle experiment needs a [circle] section")
        if self.experiment.kind == "toral" and self.torus is None:
            raise ValueError("toral experiment needs a [torus] section")
        return self

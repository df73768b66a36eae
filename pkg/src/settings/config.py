# -*- coding: utf-8 -*-
"""
환경 설정 모듈

Pydantic Settings를 사용한 타입 안전 환경 변수 관리.
모든 수치 기본값은 RIGIDITY_ 접두사 환경 변수로 덮어쓸 수 있다.
"""

import logging
import sys
from functools import lru_cache
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

LOG_FORMAT = "%(levelname)s - %(message)s"
FILE_LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Settings(BaseSettings):
    """애플리케이션 환경 설정"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="RIGIDITY_",
        case_sensitive=False,
        extra="ignore",
    )

    # ==================== 애플리케이션 설정 ====================
    app_version: str = Field(default="0.1.0", description="애플리케이션 버전")

    # ==================== 실행 설정 ====================
    seed: int = Field(default=42, ge=0, description="난수 시드 (모든 표본 추출 공통)")
    threads: int = Field(default=1, ge=1, le=256, description="작업 스레드 수")
    chunk_size: int = Field(default=256, ge=1, description="병렬 청크 크기")

    # ==================== 원 사상 설정 ====================
    circle_period_budget: int = Field(
        default=2**20, ge=1, description="원 주기점 예산 (d^n 상한)"
    )
    expansion_grid_n: int = Field(default=4096, ge=2, description="확장성 인증 격자 크기")
    tol_cd: float = Field(default=1e-6, gt=0.0, description="상수 주기 데이터 판정 허용오차")

    # ==================== 전이 연산자 설정 ====================
    ulam_bins: int = Field(default=4096, ge=2, description="Ulam 분할 개수 N")
    density_iters: int = Field(default=500, ge=1, description="거듭제곱 반복 최대 횟수")
    residual_tol: float = Field(default=1e-8, gt=0.0, description="L1 잔차 허용오차")
    uniqueness_tol: float = Field(default=1e-8, gt=0.0, description="밀도 유일성 L1 허용오차")

    # ==================== 원 켤레 설정 ====================
    conjugacy_level: int = Field(default=12, ge=1, description="기호 켤레 깊이 k")
    ode_steps: int = Field(default=2**14, ge=2, description="RK4 스텝 수")
    wrap_tol: float = Field(default=1e-6, gt=0.0, description="ODE 차수 허용오차")
    density_floor: float = Field(default=1e-6, gt=0.0, description="밀도 하한")
    res_tol: float = Field(default=1e-4, gt=0.0, description="켤레 잔차 허용오차")
    drift_tol: float = Field(
        default=0.05, gt=0.0, description="쌍립시츠 로그폭 기울기 허용치 (nats/level)"
    )

    # ==================== 토러스 설정 ====================
    torus_period_budget: int = Field(
        default=20000, ge=1, description="토러스 주기점 예산 (|det(A^n - I)| 상한)"
    )
    cone_opening: float = Field(default=0.5, gt=0.0, description="원뿔 개구 γ")
    orbit_identity_tol: float = Field(default=1e-8, gt=0.0, description="궤도 동일성 판정 거리")

    # ==================== 불안정 엔트로피 설정 ====================
    srb_seeds: int = Field(default=1000, ge=1, description="SRB 표본 시드 수")
    srb_horizon: int = Field(default=1000, ge=1, description="SRB 표본 지평")
    srb_transient: int = Field(default=100, ge=0, description="SRB 과도 구간")

    # ==================== Franks 켤레 설정 ====================
    franks_grid: int = Field(default=512, ge=4, description="Franks 격자 해상도 N")
    franks_iters: int = Field(default=400, ge=1, description="Franks 최대 스윕 횟수")
    franks_tol: float = Field(default=1e-10, gt=0.0, description="스윕 간 sup 차이 종료 기준")

    # ==================== 로깅 설정 ====================
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="INFO", description="로그 레벨"
    )
    log_file: str | None = Field(default=None, description="로그 파일 경로 (없으면 stderr 만)")
    log_max_bytes: int = Field(default=10485760, ge=1, description="로그 파일 최대 크기 (바이트)")
    log_backup_count: int = Field(default=5, ge=0, description="로그 파일 백업 개수")


@lru_cache
def get_settings() -> Settings:
    """
    설정 싱글톤 인스턴스 반환

    @lru_cache 데코레이터를 사용하여 싱글톤 패턴 구현
    """
    return Settings()


def configure_logging(settings: Settings) -> None:
    """
    로깅 초기화

    stderr 핸들러를 설치하고, log_file 이 지정된 경우 회전 파일 핸들러를 추가한다.

    Args:
        settings: 애플리케이션 설정
    """
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    handlers[0].setFormatter(logging.Formatter(LOG_FORMAT))

    if settings.log_file:
        Path(settings.log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            settings.log_file,
            maxBytes=settings.log_max_bytes,
            backupCount=settings.log_backup_count,
            encoding="utf-8",
        )
        file_handler.setFormatter(logging.Formatter(FILE_LOG_FORMAT))
        handlers.append(file_handler)

    logging.basicConfig(level=settings.log_level, handlers=handlers, force=True)

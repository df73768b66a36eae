# -*- coding: utf-8 -*-
"""
Experiment Service - 실험 실행과 판정 기록

설정 파일 하나를 받아 사상을 만들고, 선택된 파이프라인을 순서대로 돌린 뒤
verdict.txt 를 기록한다.
"""

import logging
from pathlib import Path

from src.application.common.exceptions import ConfigurationError
from src.application.common.formatters import write_text
from src.application.common.parallel import ParallelExecutor
from src.application.domain.circle.service import CircleReportService
from src.application.domain.experiment.config_loader import build_circle_map, build_toral_map
from src.application.domain.experiment.dto import ExperimentConfig
from src.application.domain.experiment.verdict import (
    circle_verdict_keys,
    render_verdict,
    toral_verdict_keys,
)
from src.application.domain.torus.service import TorusReportService
from src.settings.config import get_settings

logger = logging.getLogger(__name__)

VERDICT_FILE = "verdict.txt"


class ExperimentService:
    """설정 기반 실험 실행 서비스"""

    def __init__(
        self,
        config: ExperimentConfig,
        output_dir: Path,
        seed: int | None = None,
        threads: int | None = None,
    ):
        """
        Args:
            config: 검증된 실험 설정
            output_dir: 아티팩트 디렉터리
            seed: 시드 (우선순위: 인자 > 설정 파일 > 환경 설정)
            threads: 스레드 수 (같은 우선순위)
        """
        settings = get_settings()
        self.config = config
        self.output_dir = Path(output_dir)
        self.seed = next(s for s in (seed, config.experiment.seed, settings.seed) if s is not None)
        self.threads = next(
            t for t in (threads, config.experiment.threads, settings.threads) if t is not None
        )
        self.executor = ParallelExecutor(threads=self.threads, chunk_size=settings.chunk_size)

    def run(self, pipeline: str | None = None, kind: str | None = None) -> str:
        """
        실험 실행

        Args:
            pipeline: 설정의 파이프라인을 대신할 값
            kind: 요구하는 사상 종류 (다르면 설정 오류)

        Returns:
            str: 판정 블록 (verdict.txt 와 같은 내용)

        Raises:
            ConfigurationError: 사상 종류가 요구와 다름
            NumericalError: 파이프라인 수치 실패
        """
        experiment = self.config.experiment
        if kind is not None and experiment.kind != kind:
            raise ConfigurationError(
                f"command needs a {kind} experiment, config describes {experiment.kind}",
                details={"kind": experiment.kind},
            )
        pipeline = pipeline or experiment.pipeline
        logger.info(
            f"[Experiment] {experiment.name}: kind={experiment.kind} pipeline={pipeline} "
            f"seed={self.seed} threads={self.threads}"
        )

        if experiment.kind == "circle":
            assert self.config.circle is not None
            circle_map = build_circle_map(self.config.circle)
            values = CircleReportService(
                circle_map, self.config.numerics, self.output_dir, self.seed, self.executor
            ).run(pipeline)
            keys = circle_verdict_keys()
        else:
            assert self.config.torus is not None
            toral_map = build_toral_map(self.config.torus)
            values = TorusReportService(
                toral_map, self.config.numerics, self.output_dir, self.seed, self.executor
            ).run(pipeline)
            keys = toral_verdict_keys(toral_map.eigen)

        values.update({"KIND": experiment.kind, "PIPELINE": pipeline, "SEED": str(self.seed)})
        verdict = render_verdict(keys, values)
        write_text(self.output_dir / VERDICT_FILE, verdict)
        return verdict

# -*- coding: utf-8 -*-
"""
Rigidity CLI - 명령행 실험 드라이버

하위 명령:
- circle-report / torus-report: 설정 파일의 파이프라인 실행 (사상 종류 확인)
- periodic / density / conjugacy / entropy: 해당 파이프라인만 실행

종료 코드: 0 성공, 2 설정 오류, 3 수치 실패.
"""

import argparse
import logging
import sys
from collections.abc import Sequence

from src.application.common.exceptions import (
    EXIT_CONFIG_ERROR,
    ApplicationError,
    ConfigurationError,
)
from src.application.domain.experiment.config_loader import load_experiment_config
from src.application.domain.experiment.service import ExperimentService
from src.settings.config import get_settings

logger = logging.getLogger(__name__)

EXIT_OK = 0

# 하위 명령 -> (요구 종류, 파이프라인)
COMMANDS: dict[str, tuple[str | None, str | None]] = {
    "circle-report": ("circle", None),
    "torus-report": ("toral", None),
    "periodic": (None, "periodic"),
    "density": (None, "density"),
    "conjugacy": (None, "conjugacy"),
    "entropy": (None, "entropy"),
}


def build_parser() -> argparse.ArgumentParser:
    """하위 명령과 공통 플래그를 가진 파서"""
    parser = argparse.ArgumentParser(
        prog="rigidity",
        description="Periodic-data rigidity experiments for circle and toral maps.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {get_settings().app_version}"
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = commands.add_parser(name, help=f"run the {name} pipeline")
        sub.add_argument("--config", required=True, help="YAML experiment file")
        sub.add_argument("--out", default="out", help="artifact directory (default: out)")
        sub.add_argument("--seed", type=int, default=None, help="sampling seed")
        sub.add_argument("--threads", type=int, default=None, help="worker threads")
    return parser


def _report_error(error: ApplicationError) -> None:
    operation = error.operation or "-"
    print(
        f"error: operation={operation} code={error.code} {error.message}",
        file=sys.stderr,
    )
    if error.details:
        print(f"details: {error.details}", file=sys.stderr)


def run(argv: Sequence[str] | None = None) -> int:
    """
    명령행 실행

    Args:
        argv: 인자 목록 (None 이면 sys.argv)

    Returns:
        int: 종료 코드
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_CONFIG_ERROR

    kind, pipeline = COMMANDS[args.command]
    logger.debug(f"[CLI] {args.command} config={args.config} out={args.out}")
    try:
        if args.seed is not None and args.seed < 0:
            raise ConfigurationError(f"--seed must be non-negative, got {args.seed}")
        if args.threads is not None and args.threads < 1:
            raise ConfigurationError(f"--threads must be positive, got {args.threads}")
        config = load_experiment_config(args.config)
        service = ExperimentService(config, args.out, seed=args.seed, threads=args.threads)
        verdict = service.run(pipeline=pipeline, kind=kind)
    except ApplicationError as e:
        _report_error(e)
        return e.status_code

    sys.stdout.write(verdict)
    return EXIT_OK

# -*- coding: utf-8 -*-
"""
Rigidity Lab - Main Entry Point

명령행 진입점 (pyproject 의 rigidity 스크립트)
"""

import sys

from src.application.interface.cli import run
from src.settings.config import configure_logging, get_settings


def main() -> None:
    """로깅 설정 후 CLI 실행, 종료 코드로 프로세스 종료"""
    configure_logging(get_settings())
    sys.exit(run())


if __name__ == "__main__":
    main()

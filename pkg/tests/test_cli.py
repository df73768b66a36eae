# -*- coding: utf-8 -*-
"""
명령행 드라이버 테스트 (종료 코드, 출력, 판정 파일)
"""

from pathlib import Path

import pytest

from src.application.interface.cli import COMMANDS, build_parser, run

LINEAR_CIRCLE = """
experiment:
  kind: circle
  pipeline: periodic
circle:
  degree: 2
numerics:
  circle_n_max: 3
  expansion_grid_n: 256
"""

STRONG_CIRCLE = """
experiment:
  kind: circle
circle:
  degree: 2
  amplitude_units: derivative
  terms: [[1, 1.2, 0]]
numerics:
  expansion_grid_n: 256
"""


def write(tmp_path: Path, text: str) -> str:
    path = tmp_path / "config.yaml"
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestParser:
    """인자 파서 테스트"""

    def test_all_commands_registered(self):
        """하위 명령 여섯 개"""
        parser = build_parser()
        args = parser.parse_args(["entropy", "--config", "x.yaml"])

        assert set(COMMANDS) == {
            "circle-report",
            "torus-report",
            "periodic",
            "density",
            "conjugacy",
            "entropy",
        }
        assert args.out == "out"
        assert args.seed is None

    def test_usage_errors_exit_with_config_code(self):
        """인자 오류는 종료 코드 2"""
        assert run([]) == 2
        assert run(["periodic"]) == 2
        assert run(["periodic", "--config", "x.yaml", "--seed", "abc"]) == 2

    def test_help_exits_cleanly(self, capsys):
        """--help 는 0"""
        assert run(["--help"]) == 0
        assert "circle-report" in capsys.readouterr().out

    def test_version(self, capsys):
        """--version 은 설정의 버전 출력"""
        assert run(["--version"]) == 0
        assert capsys.readouterr().out.startswith("rigidity ")


class TestRun:
    """실행 경로 테스트"""

    def test_periodic_success(self, tmp_path, capsys):
        """성공: 판정 블록을 stdout 과 verdict.txt 에 기록"""
        out = tmp_path / "out"
        code = run(["periodic", "--config", write(tmp_path, LINEAR_CIRCLE), "--out", str(out)])

        printed = capsys.readouterr().out
        assert code == 0
        assert "CONSTANT_DATA=yes" in printed
        assert (out / "verdict.txt").read_text() == printed

    def test_report_kind_mismatch(self, tmp_path, capsys):
        """torus-report 에 원 설정: 설정 오류"""
        code = run(["torus-report", "--config", write(tmp_path, LINEAR_CIRCLE)])

        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_config(self, tmp_path, capsys):
        """설정 파일 없음"""
        code = run(["circle-report", "--config", str(tmp_path / "none.yaml")])

        assert code == 2
        assert "operation=-" in capsys.readouterr().err

    @pytest.mark.parametrize("flag,value", [("--seed", "-1"), ("--threads", "0")])
    def test_invalid_flags(self, tmp_path, flag, value):
        """음수 시드, 0 스레드"""
        assert run(["periodic", "--config", write(tmp_path, LINEAR_CIRCLE), flag, value]) == 2

    def test_not_expanding_is_numerical_failure(self, tmp_path, capsys):
        """확장이 아닌 사상: 종료 코드 3, 실패 연산 이름 출력"""
        code = run(["circle-report", "--config", write(tmp_path, STRONG_CIRCLE), "--out", str(tmp_path)])

        err = capsys.readouterr().err
        assert code == 3
        assert "operation=check_expanding" in err

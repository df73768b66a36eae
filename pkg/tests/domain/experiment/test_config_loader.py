# -*- coding: utf-8 -*-
"""
실험 설정 로드와 사상 생성 테스트
"""

import math
from pathlib import Path

import pytest

from src.application.common.exceptions import ConfigurationError, NotHyperbolicError
from src.application.domain.circle.dynamics import CircleLift, ConjugatedCircleMap
from src.application.domain.experiment.config_loader import (
    build_circle_map,
    build_toral_map,
    load_experiment_config,
)
from src.application.domain.torus.dynamics import ConjugatedToralMap, ToralMap

CONFIG_DIR = Path(__file__).resolve().parents[3] / "configs"


def write_config(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "experiment.yaml"
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadExperimentConfig:
    """YAML 설정 로드 테스트"""

    def test_minimal_circle_config_defaults(self, tmp_path):
        """빠진 값은 기본값"""
        config = load_experiment_config(
            write_config(tmp_path, "experiment:\n  kind: circle\ncircle:\n  degree: 3\n")
        )

        assert config.experiment.pipeline == "full-report"
        assert config.experiment.seed is None
        assert config.circle.degree == 3
        assert config.numerics.tol_cd == pytest.approx(1e-6)
        assert config.numerics.ulam_bins == 4096

    def test_unknown_key_rejected(self, tmp_path):
        """모르는 키는 설정 오류"""
        path = write_config(
            tmp_path, "experiment:\n  kind: circle\n  colour: blue\ncircle:\n  degree: 2\n"
        )

        with pytest.raises(ConfigurationError) as exc_info:
            load_experiment_config(path)

        assert exc_info.value.status_code == 2
        assert exc_info.value.details["errors"][0]["loc"] == "experiment.colour"

    def test_missing_section(self, tmp_path):
        """종류에 맞는 섹션 필요"""
        with pytest.raises(ConfigurationError):
            load_experiment_config(write_config(tmp_path, "experiment:\n  kind: toral\n"))

    def test_missing_file_and_bad_yaml(self, tmp_path):
        """파일 없음, 문법 오류, 매핑이 아닌 문서"""
        with pytest.raises(ConfigurationError):
            load_experiment_config(tmp_path / "absent.yaml")
        with pytest.raises(ConfigurationError):
            load_experiment_config(write_config(tmp_path, "experiment: [kind: circle\n"))
        with pytest.raises(ConfigurationError):
            load_experiment_config(write_config(tmp_path, "- just\n- a list\n"))

    def test_out_of_range_numerics(self, tmp_path):
        """수치 범위 위반"""
        path = write_config(
            tmp_path,
            "experiment:\n  kind: circle\ncircle:\n  degree: 2\nnumerics:\n  conjugacy_level: 3\n",
        )

        with pytest.raises(ConfigurationError):
            load_experiment_config(path)

    def test_uniform_horizons_sorted(self, tmp_path):
        """지평 목록 정렬, 중복 제거"""
        path = write_config(
            tmp_path,
            "experiment:\n  kind: toral\ntorus:\n  matrix: [[2, 1], [1, 1]]\n"
            "numerics:\n  uniform_horizons: [40, 10, 40]\n",
        )

        assert load_experiment_config(path).numerics.uniform_horizons == [10, 40]

    @pytest.mark.parametrize(
        "name",
        [
            "circle_linear.yaml",
            "circle_perturbed.yaml",
            "circle_conjugated.yaml",
            "torus_cat.yaml",
            "torus_generic.yaml",
            "torus_conjugated.yaml",
            "torus_3d.yaml",
        ],
    )
    def test_shipped_configs_load(self, name):
        """저장소의 예제 설정은 모두 유효"""
        config = load_experiment_config(CONFIG_DIR / name)

        assert config.experiment.kind in ("circle", "toral")


class TestBuildMaps:
    """설정으로부터 사상 생성 테스트"""

    def test_derivative_units(self, tmp_path):
        """derivative 단위: 도함수 진폭 a 는 사상 진폭 a/2πk"""
        config = load_experiment_config(
            write_config(
                tmp_path,
                "experiment:\n  kind: circle\ncircle:\n  degree: 2\n"
                "  amplitude_units: derivative\n  terms: [[1, 0.5, 0]]\n",
            )
        )
        f = build_circle_map(config.circle)

        assert isinstance(f, CircleLift)
        assert f.derivative(0.0) == pytest.approx(2.5)
        assert f.lambda_min == pytest.approx(1.5, abs=1e-6)
        assert f.series.terms[0].a == pytest.approx(0.5 / (2 * math.pi))

    def test_conjugated_circle_needs_terms(self, tmp_path):
        """켤레 모형은 conjugacy_terms 필수"""
        path = write_config(
            tmp_path, "experiment:\n  kind: circle\ncircle:\n  model: conjugated\n"
        )

        with pytest.raises(ConfigurationError):
            load_experiment_config(path)

    def test_conjugated_circle_map(self):
        """예제 켤레 설정"""
        config = load_experiment_config(CONFIG_DIR / "circle_conjugated.yaml")

        assert isinstance(build_circle_map(config.circle), ConjugatedCircleMap)

    def test_toral_maps(self):
        """예제 토러스 설정"""
        generic = load_experiment_config(CONFIG_DIR / "torus_generic.yaml")
        conjugated = load_experiment_config(CONFIG_DIR / "torus_conjugated.yaml")

        f = build_toral_map(generic.torus)
        g = build_toral_map(conjugated.torus)
        assert isinstance(f, ToralMap) and not f.is_linear
        assert isinstance(g, ConjugatedToralMap)

    def test_term_row_width(self, tmp_path):
        """토러스 항 행 길이는 d + 3"""
        path = write_config(
            tmp_path,
            "experiment:\n  kind: toral\ntorus:\n  matrix: [[2, 1], [1, 1]]\n"
            "  epsilon: 0.1\n  terms: [[0, 1, 0.5]]\n",
        )

        with pytest.raises(ConfigurationError):
            load_experiment_config(path)

    def test_oversized_conjugacy_field(self, tmp_path):
        """‖Dq‖ ≥ 1 은 설정 오류로 변환"""
        path = write_config(
            tmp_path,
            "experiment:\n  kind: toral\ntorus:\n  model: conjugated\n"
            "  matrix: [[2, 1], [1, 1]]\n  conjugacy_terms: [[0, 1, 0, 0.5, 0]]\n",
        )
        config = load_experiment_config(path)

        with pytest.raises(ConfigurationError):
            build_toral_map(config.torus)

    def test_non_hyperbolic_matrix_is_numerical(self, tmp_path):
        """쌍곡이 아닌 행렬은 수치 오류 (종료 코드 3)"""
        path = write_config(
            tmp_path, "experiment:\n  kind: toral\ntorus:\n  matrix: [[1, 1], [0, 1]]\n"
        )
        config = load_experiment_config(path)

        with pytest.raises(NotHyperbolicError) as exc_info:
            build_toral_map(config.torus)
        assert exc_info.value.status_code == 3

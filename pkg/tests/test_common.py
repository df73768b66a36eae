# -*- coding: utf-8 -*-
"""
공통 유틸리티 테스트 (검증, 병렬 실행, 포맷팅, 예외, 데코레이터)
"""

import numpy as np
import pandas as pd
import pytest

from src.application.common.decorators import operation
from src.application.common.exceptions import (
    BudgetExceededError,
    ConfigurationError,
    NoConvergenceError,
    NumericalError,
    ValidationError,
)
from src.application.common.formatters import (
    SKIPPED,
    format_flag,
    format_float,
    render_key_values,
    write_columns,
    write_csv,
)
from src.application.common.parallel import ParallelExecutor, tree_mean, tree_sum
from src.application.common.validators import (
    validate_budget,
    validate_choice,
    validate_positive,
)


class TestValidators:
    """검증 함수 테스트"""

    def test_validate_positive_rejects_zero(self):
        """0 은 양수가 아님"""
        with pytest.raises(ValidationError) as exc_info:
            validate_positive(0, "bins")

        assert exc_info.value.details == {"field": "bins"}
        assert exc_info.value.status_code == 2

    def test_validate_choice(self):
        """허용값 외 거부"""
        validate_choice(2, (2, 3))
        with pytest.raises(ValidationError):
            validate_choice(4, (2, 3), "dim")

    def test_validate_budget_raises_numerical_error(self):
        """예산 초과는 수치 오류 (종료 코드 3)"""
        with pytest.raises(BudgetExceededError) as exc_info:
            validate_budget(2**21, 2**20)

        assert exc_info.value.status_code == 3
        assert exc_info.value.details["required"] == 2**21


class TestParallel:
    """결정적 병렬 실행 테스트"""

    def test_tree_sum_matches_exact_sum(self):
        """정수 값의 트리 합은 정확"""
        assert tree_sum(range(1, 101)) == 5050.0
        assert tree_sum([]) == 0.0
        assert tree_mean([1.0, 2.0, 3.0]) == pytest.approx(2.0)

    def test_chunks_independent_of_threads(self):
        """청크 경계는 스레드 수와 무관"""
        single = ParallelExecutor(threads=1, chunk_size=3).chunks(10)
        multi = ParallelExecutor(threads=8, chunk_size=3).chunks(10)

        assert single == multi
        assert [s.stop - s.start for s in single] == [3, 3, 3, 1]

    def test_map_array_preserves_order(self):
        """스레드 수와 무관하게 같은 순서의 결과"""
        points = np.arange(1000, dtype=float)
        single = ParallelExecutor(threads=1, chunk_size=64).map_array(np.sqrt, points)
        multi = ParallelExecutor(threads=8, chunk_size=64).map_array(np.sqrt, points)

        assert np.array_equal(single, multi)
        assert np.array_equal(single, np.sqrt(points))


class TestFormatters:
    """포맷팅과 아티팩트 기록 테스트"""

    def test_format_float_and_flag(self):
        """12자리 지수 표기와 yes/no/SKIPPED"""
        assert format_float(0.5) == "5.000000000000e-01"
        assert format_float(None) == SKIPPED
        assert format_flag(True) == "yes"
        assert format_flag(False) == "no"
        assert format_flag(None) == SKIPPED

    def test_render_key_values_keeps_order(self):
        """입력 순서 유지"""
        text = render_key_values([("B", "1"), ("A", "2")])

        assert text == "B=1\nA=2\n"

    def test_write_csv_is_byte_stable(self, tmp_path):
        """같은 표는 같은 바이트"""
        frame = pd.DataFrame({"period": [1, 2], "exponent": [np.log(2.0), np.log(2.0)]})
        first = write_csv(frame, tmp_path / "a" / "x.csv").read_bytes()
        second = write_csv(frame, tmp_path / "b" / "x.csv").read_bytes()

        assert first == second
        assert b"6.931471805599e-01" in first

    def test_write_columns_creates_parent(self, tmp_path):
        """상위 디렉터리 생성 후 두 열 기록"""
        path = write_columns(tmp_path / "deep" / "d.txt", np.array([0.0, 0.5]), np.ones(2))

        rows = path.read_text().splitlines()
        assert len(rows) == 2
        assert rows[1].split() == ["5.000000000000e-01", "1.000000000000e+00"]


class TestOperationDecorator:
    """@operation 데코레이터 테스트"""

    def test_stamps_operation_name(self):
        """빠져나가는 수치 오류에 연산 이름 기록"""

        @operation("inner_solve")
        def failing():
            raise NoConvergenceError("stalled", residual=1.0)

        with pytest.raises(NumericalError) as exc_info:
            failing()

        assert exc_info.value.operation == "inner_solve"
        assert exc_info.value.to_dict()["operation"] == "inner_solve"

    def test_innermost_name_wins(self):
        """안쪽 연산 이름을 덮어쓰지 않음"""

        @operation("inner")
        def inner():
            raise NoConvergenceError("stalled")

        @operation("outer")
        def outer():
            inner()

        with pytest.raises(NoConvergenceError) as exc_info:
            outer()

        assert exc_info.value.operation == "inner"

    def test_input_errors_are_stamped_too(self):
        """입력 오류 계열도 연산 이름 기록"""

        @operation("loader")
        def load():
            raise ConfigurationError("bad file")

        @operation("grid_check")
        def check():
            raise ValidationError("bad grid")

        with pytest.raises(ConfigurationError) as config_info:
            load()
        with pytest.raises(ValidationError) as validation_info:
            check()

        assert config_info.value.operation == "loader"
        assert validation_info.value.operation == "grid_check"
        assert validation_info.value.status_code == 2

# -*- coding: utf-8 -*-
"""
판정 블록 렌더링 테스트
"""

import pytest

from src.application.common.exceptions import ValidationError
from src.application.domain.experiment.verdict import (
    HEADER_KEYS,
    circle_verdict_keys,
    parse_verdict,
    render_verdict,
    toral_verdict_keys,
)
from src.application.domain.torus.dynamics import eigen_split


class TestVerdictKeys:
    """판정 키 목록 테스트"""

    def test_circle_keys_start_with_header(self):
        """헤더 키가 맨 앞"""
        keys = circle_verdict_keys()

        assert keys[:3] == HEADER_KEYS
        assert len(keys) == len(set(keys))
        assert "BILIPSCHITZ" in keys

    def test_toral_keys_follow_dimensions(self):
        """2차원: 지수별 키 한 쌍, 방향 키는 번호 없음"""
        keys = toral_verdict_keys(eigen_split([[2, 1], [1, 1]]))

        assert "LINEAR_GAP_S1" in keys and "LINEAR_GAP_U1" in keys
        assert "LINEAR_GAP_U2" not in keys
        assert "REGULARITY_ALPHA_STABLE" in keys
        assert "REGULARITY_ALPHA_UNSTABLE" in keys
        assert keys.index("CONE_MARGIN") < keys.index("CONSTANT_DATA")
        assert keys.index("FRANKS_SUP_NORM") < keys.index("FRANKS_DISTANCE")
        assert keys.index("UNIFORM_DEVIATION_1") + 1 == keys.index("UNIFORM_HALF_SPREAD_1")

    def test_toral_keys_three_dimensional(self):
        """3차원: 불안정 방향 두 개, 플래그 두 개"""
        keys = toral_verdict_keys(eigen_split([[2, 1, 1], [1, 2, 0], [1, 0, 1]]))

        assert "REGULARITY_ALPHA_UNSTABLE_1" in keys
        assert "REGULARITY_ALPHA_UNSTABLE_2" in keys
        assert "ENTROPY_CHI_FLAG_2" in keys
        assert "UNIFORM_DEVIATION_2" in keys
        assert "UNIFORM_HALF_SPREAD_2" in keys
        assert "REGULARITY_ALPHA_UNSTABLE" not in keys


class TestRenderVerdict:
    """판정 블록 렌더링 테스트"""

    def test_missing_values_are_skipped(self):
        """계산하지 않은 키는 SKIPPED, 순서 고정"""
        text = render_verdict(["KIND", "CONSTANT_DATA", "BILIPSCHITZ"], {"KIND": "circle"})

        assert text == "KIND=circle\nCONSTANT_DATA=SKIPPED\nBILIPSCHITZ=SKIPPED\n"

    def test_unknown_value_rejected(self):
        """자리가 없는 값"""
        with pytest.raises(ValidationError) as exc_info:
            render_verdict(["KIND"], {"KIND": "toral", "EXTRA": "1"})

        assert exc_info.value.details == {"keys": ["EXTRA"]}

    def test_parse_verdict(self):
        """블록을 사전으로"""
        parsed = parse_verdict("KIND=circle\nREGULARITY_ALPHA=9.9e-01\n\n")

        assert parsed == {"KIND": "circle", "REGULARITY_ALPHA": "9.9e-01"}

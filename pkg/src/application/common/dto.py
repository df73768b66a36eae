# -*- coding: utf-8 -*-
"""
Common DTO - 공통 데이터 전송 객체

Base DTO 및 numpy 배열을 담는 결과 DTO 정의
"""

from pydantic import BaseModel, ConfigDict, Field


# ==================== Base DTO ====================


class BaseDTO(BaseModel):
    """
    Base DTO 클래스

    모든 DTO의 기본 클래스
    """

    model_config = ConfigDict(
        populate_by_name=True,  # alias와 실제 이름 모두 사용 가능
        use_enum_values=True,  # Enum을 값으로 직렬화
        frozen=True,
    )


class ArrayDTO(BaseDTO):
    """
    numpy 배열 필드를 허용하는 DTO

    수치 결과(밀도, 켤레 표본, 격자 필드 등)를 담는다.
    """

    model_config = ConfigDict(
        populate_by_name=True,
        use_enum_values=True,
        frozen=True,
        arbitrary_types_allowed=True,
    )


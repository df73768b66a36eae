# -*- coding: utf-8 -*-
"""
Circle Domain - 확장 원 사상의 주기 데이터, 불변 밀도, 켤레
"""

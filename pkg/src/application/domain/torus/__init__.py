# -*- coding: utf-8 -*-
"""
Torus Domain - 토러스 Anosov 사상의 주기 데이터, 불안정 엔트로피, Franks 켤레
"""

# -*- coding: utf-8 -*-
"""
Experiment Domain - 실험 설정, 실행, 판정
"""

"""
Rigidity Lab - 확장 원 사상과 토러스 Anosov 사상의 강성 수치 실험실
"""

__version__ = "0.1.0"

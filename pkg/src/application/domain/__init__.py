"""
Domain Layer - 원 사상 / 토러스 사상 / 실험 도메인
"""

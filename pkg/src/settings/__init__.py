"""
Settings - 환경 설정 및 구성 관리
"""

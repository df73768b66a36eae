"""
Interface Layer - 명령행 인터페이스
"""

"""
Application Layer - 비즈니스 로직 계층
"""

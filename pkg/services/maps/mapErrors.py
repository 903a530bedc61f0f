# services/maps/mapErrors.py

"""
mapErrors.py

스칼라 맵 계열 함수들이 공통으로 쓰는 예외 정의.
"""
from __future__ import annotations


class MapDomainError(ValueError):
    """정의역 밖 입력 (허용오차 1e-12 를 넘는 이탈, NaN 포함)"""
    pass


class MapSingularityError(ArithmeticError):
    """ζ'' 의 끝점, Δ_φ=1 에서 w→1 일 때 ω 발산 등 특이점"""
    pass


class NotApplicableError(ValueError):
    """Δ_φ = 0 처럼 해당 양이 정의되지 않는 경우"""
    pass


__all__ = ["MapDomainError", "MapSingularityError", "NotApplicableError"]

# tests/conftest.py

import os
import sys

# 상위 디렉토리(eocntk)를 Python path에 추가하여 services, cli 모듈 접근 가능
PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
sys.path.insert(0, PROJECT_ROOT)

import numpy as np
import pytest

from services.kernel.dataset import makeDataset, sampleSphereDataset
from services.maps.activation import makeActivation


@pytest.fixture(autouse=True)
def _isolatedLogDir(tmp_path, monkeypatch):
    """서비스 로그 파일이 저장소 data/ 아래에 쌓이지 않도록 테스트마다 임시 디렉터리 사용"""
    import loggerConfig

    monkeypatch.setattr(loggerConfig, "LOG_ROOT", str(tmp_path / "logs"))
    yield


@pytest.fixture
def relu():
    """(½, ½) = ReLU, Δ_φ = 1/2"""
    return makeActivation(0.5, 0.5)


@pytest.fixture
def absolute():
    """(0, 1) = |·|, Δ_φ = 1"""
    return makeActivation(0.0, 1.0)


@pytest.fixture
def identity():
    """(1, 0) = 항등, Δ_φ = 0"""
    return makeActivation(1.0, 0.0)


@pytest.fixture
def orthonormalPair():
    return makeDataset(np.eye(2))


@pytest.fixture
def smallSphere():
    return sampleSphereDataset(6, 4, seed=7)


@pytest.fixture
def sphere16():
    return sampleSphereDataset(16, 8, seed=2024)

# cli/config.py

import os

from dotenv import load_dotenv

# 현재 파일(config.py)의 위치: .../eocntk/cli/config.py
BASE_DIR = os.path.dirname(os.path.abspath(__file__))

# 프로젝트 루트: .../eocntk
PROJECT_ROOT = os.path.dirname(BASE_DIR)

# .env 가 있으면 Config 를 읽기 전에 환경변수로 올린다 (이미 있는 값은 덮어쓰지 않음)
load_dotenv(os.path.join(PROJECT_ROOT, ".env"))


class Config:
    # --- 1. 재현성 ---
    # 데이터셋 i 는 (SEED, stream=i) 하위 스트림에서 뽑는다
    SEED = int(os.getenv("EOCNTK_SEED", "2024"))

    # --- 2. 데이터셋 기본값 (단위구면 R^16 위 32 점) ---
    N = 32
    DIM = 16
    SEEDS = 100

    # --- 3. 깊이 ---
    DEPTH = 8
    DEPTH_MIN = 4
    DEPTH_MAX = 64

    # --- 4. verify-bounds ---
    K_MAX = 10_000
    SANDWICH_K_MAX = 1_000

    # --- 5. dual-check ---
    QUADRATURE_ORDER = 64

    # --- 6. empirical ---
    TRIALS = 10

    # --- 7. 실행 환경 ---
    # 스레드 수는 결과에 영향을 주지 않는다
    WORKERS = int(os.getenv("EOCNTK_WORKERS", "1"))
    LOG_LEVEL = os.getenv("EOCNTK_LOG_LEVEL", "INFO")

    # 파일 출력 기본 위치 (예: /home/user/eocntk/data/outputs)
    OUTPUT_DIR = os.getenv("EOCNTK_OUTPUT_DIR", os.path.join(PROJECT_ROOT, "data", "outputs"))

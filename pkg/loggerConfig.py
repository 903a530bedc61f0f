# loggerConfig.py

import os
import logging
from logging.handlers import TimedRotatingFileHandler
from datetime import datetime
from contextlib import contextmanager
import contextvars

PROJECT_ROOT = os.path.abspath(os.path.dirname(__file__))
LOG_ROOT = os.getenv(
    "EOCNTK_LOG_DIR",
    os.path.join(PROJECT_ROOT, "data", "logs", "services"),
)

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s - %(message)s"

# CLI 가 다루는 서비스 목록. 서비스별로 로그 파일이 분리된다.
SERVICE_NAMES = (
    "dualCheckService",
    "boundService",
    "spectrumService",
    "sweepService",
    "empiricalService",
)

current_service: contextvars.ContextVar[str | None] = contextvars.ContextVar(
    "current_service",
    default=None,
)


def setup_root_logging(level: int | str = logging.INFO) -> None:
    """
    root logger 기본 설정.
    - 콘솔(stderr) 출력만 담당하는 기본 핸들러를 설정합니다.
    - 서비스별 파일 핸들러는 아래 setup_service_file_handlers()에서 추가합니다.
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO

    if not logging.getLogger().handlers:
        logging.basicConfig(level=level, format=LOG_FORMAT)
    else:
        logging.getLogger().setLevel(level)


class ServiceFilter(logging.Filter):
    """
    current_service 컨텍스트 변수를 보고,
    해당 서비스에서 발생한 로그만 통과시키는 필터.
    """

    def __init__(self, target_service: str) -> None:
        super().__init__()
        self.target_service = target_service

    def filter(self, record: logging.LogRecord) -> bool:
        return current_service.get() == self.target_service


def _create_service_file_handler(service_name: str) -> TimedRotatingFileHandler:
    """
    특정 service_name(sweepService, spectrumService 등)에 대한
    TimedRotatingFileHandler를 생성합니다.
    로그 디렉터리는 import 시점이 아니라 여기서 만들어집니다.
    """
    today = datetime.now().strftime("%Y_%m_%d")
    log_dir = os.path.join(LOG_ROOT, service_name)
    os.makedirs(log_dir, exist_ok=True)

    handler = TimedRotatingFileHandler(
        os.path.join(log_dir, f"{today}.log"),
        when="midnight",
        interval=1,
        encoding="utf-8",
        backupCount=30,
    )
    handler.suffix = "%Y_%m_%d"
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.addFilter(ServiceFilter(service_name))
    return handler


_service_handlers_initialized = False


def setup_service_file_handlers() -> None:
    """
    SERVICE_NAMES 각각의 파일 핸들러를 root logger에 한 번만 붙입니다.
    라이브러리 코드는 호출하지 않고, CLI 진입점에서만 호출합니다.
    """
    global _service_handlers_initialized
    if _service_handlers_initialized:
        return

    root_logger = logging.getLogger()
    for service_name in SERVICE_NAMES:
        root_logger.addHandler(_create_service_file_handler(service_name))

    _service_handlers_initialized = True


@contextmanager
def service_log_context(service_name: str):
    """
    with 블록 안에서 current_service를 service_name으로 설정했다가,
    블록 종료 시 원래 값으로 복원합니다.

    예:
        with service_log_context("sweepService"):
            ...  # 여기서 발생하는 모든 로그는 sweepService용 파일에 기록
    """
    token = current_service.set(service_name)
    try:
        yield
    finally:
        current_service.reset(token)

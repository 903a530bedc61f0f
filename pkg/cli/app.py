# cli/app.py

import logging
import os
import sys
from typing import Annotated

# 상위 디렉토리(eocntk)를 Python path에 추가하여 services 모듈 접근 가능
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import typer

from cli.config import Config
from cli.extensions import app
from loggerConfig import setup_root_logging, setup_service_file_handlers

# 명령 모듈 불러오기 (import 시점에 app 에 명령이 등록된다)
from cli import commands_dataset, commands_dual, commands_empirical, commands_maps, commands_spectrum  # noqa: F401

logger = logging.getLogger(__name__)


@app.callback()
def main(
    log_level: Annotated[
        str, typer.Option("--log-level", help="DEBUG | INFO | WARNING | ERROR")
    ] = Config.LOG_LEVEL,
) -> None:
    """EOC (a,b)-ReLU 극한 NTK 도구"""
    setup_root_logging(log_level)
    setup_service_file_handlers()
    logger.info("[CLI] eocntk 시작 (log_level=%s)", log_level)


if __name__ == "__main__":
    app()

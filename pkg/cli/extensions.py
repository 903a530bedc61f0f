# cli/extensions.py

import typer
from rich.console import Console

# 순환 참조 방지를 위해 Typer 앱과 콘솔 객체만 따로 생성
app = typer.Typer(
    name="eocntk",
    help="EOC (a,b)-ReLU 극한 NTK 계산 / 경계 검증 / 깊이 sweep CLI",
    no_args_is_help=True,
    add_completion=False,
)

# 요약 표는 stderr 로 보낸다. stdout 은 CSV/JSON 데이터 전용.
console = Console(stderr=True)

import logging
import sys
from typing import TextIO


def setup_logging(level: str = "INFO", stream: TextIO = sys.stdout) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        stream=stream,
        format="%(asctime)s - [%(levelname)s] - %(name)s - %(message)s",
    )
    # Библиотеки вычислений шумят на DEBUG, оставляем только предупреждения
    logging.getLogger("asyncio").setLevel(logging.WARNING)
    logging.getLogger("numpy").setLevel(logging.WARNING)
    logging.getLogger("sympy").setLevel(logging.WARNING)

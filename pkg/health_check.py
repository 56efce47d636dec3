"""
health_check.py - resource and outcome monitoring for suite runs
"""

import threading
import time
from datetime import datetime
from typing import Any, Dict

import psutil

from exceptions import ResourceCapExceeded
from models import Status


class HealthMonitor:
    def __init__(self):
        self.start_time = time.time()
        self.last_error_time = None
        self.error_count = 0
        self.scenario_counts: Dict[Status, int] = {status: 0 for status in Status}
        self._lock = threading.Lock()

    def record_error(self):
        """Records an error occurrence."""
        with self._lock:
            self.error_count += 1
            self.last_error_time = datetime.now()

    def record_scenario(self, status: Status):
        """Records a finished scenario."""
        with self._lock:
            self.scenario_counts[status] += 1

    @staticmethod
    def memory_mb() -> float:
        return round(psutil.Process().memory_info().rss / 1024 / 1024, 2)

    def check_memory(self, limit_mb: int) -> None:
        """Raises ResourceCapExceeded once the process RSS passes the limit."""
        used = self.memory_mb()
        if used > limit_mb:
            raise ResourceCapExceeded("resident memory (MB)", limit_mb, int(used))

    def get_stats(self) -> Dict[str, Any]:
        """Returns current process stats."""
        process = psutil.Process()
        uptime = time.time() - self.start_time

        return {
            "status": "healthy" if self.error_count < 10 else "degraded",
            "uptime_seconds": int(uptime),
            "uptime_hours": round(uptime / 3600, 2),
            "memory_mb": self.memory_mb(),
            "cpu_percent": process.cpu_percent(interval=0.1),
            "error_count": self.error_count,
            "last_error": self.last_error_time.isoformat() if self.last_error_time else None,
            "scenarios": {status.value: count for status, count in self.scenario_counts.items()},
        }

from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from pydantic_core import to_jsonable_python


def _numpy_to_python(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def jsonable(value: Any) -> Any:
    """JSON-ready copy of value; numpy scalars and arrays become Python ones."""
    return to_jsonable_python(value, fallback=_numpy_to_python)


class Status(str, Enum):
    """Outcome of one scenario."""
    PASS = "PASS"
    MISMATCH = "MISMATCH"
    SKIPPED = "SKIPPED"
    ERROR = "ERROR"


class Mode(str, Enum):
    SIMPLY_CONNECTED = "sc"
    ADJOINT = "adjoint"


class ScenarioRecord(BaseModel):
    """
    One exercised cell: a check applied to a class, a q and a mode.
    """
    model_config = ConfigDict(frozen=True)

    check: str
    class_index: Optional[int] = None
    q: Optional[int] = None
    mode: Optional[Mode] = None
    status: Status
    expected: Optional[Any] = None
    observed: Optional[Any] = None
    detail: Dict[str, Any] = Field(default_factory=dict)
    elapsed_ms: Optional[float] = None

    @property
    def key(self) -> str:
        parts = [self.check]
        if self.class_index is not None:
            parts.append(f"class={self.class_index}")
        if self.q is not None:
            parts.append(f"q={self.q}")
        if self.mode is not None:
            parts.append(f"mode={self.mode.value}")
        return " ".join(parts)


class ReportSummary(BaseModel):
    total: int
    counts: Dict[Status, int]
    verdict: Status

    @classmethod
    def from_records(cls, records: List[ScenarioRecord]) -> "ReportSummary":
        counts = {status: 0 for status in Status}
        for r in records:
            counts[r.status] += 1
        if counts[Status.MISMATCH] or counts[Status.ERROR]:
            verdict = Status.MISMATCH
        elif counts[Status.SKIPPED]:
            verdict = Status.SKIPPED
        else:
            verdict = Status.PASS
        return cls(total=len(records), counts=counts, verdict=verdict)


class Report(BaseModel):
    config: Dict[str, Any]
    records: List[ScenarioRecord]
    summary: ReportSummary

    @classmethod
    def build(cls, config: Dict[str, Any], records: List[ScenarioRecord]) -> "Report":
        return cls(config=config, records=records, summary=ReportSummary.from_records(records))

    @property
    def exit_code(self) -> int:
        """0 pass, 1 mismatch or error, 2 skipped scenarios only."""
        return {Status.PASS: 0, Status.MISMATCH: 1, Status.SKIPPED: 2}[self.summary.verdict]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)

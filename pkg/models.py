import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from sqlalchemy import (
    Column,
    Integer,
    String,
    Boolean,
    Float,
    TIMESTAMP,
    JSON,
)
from sqlalchemy.ext.declarative import declarative_base

Base = declarative_base()


class ReportRecord(Base):
    __tablename__ = "reports"

    id = Column(Integer, primary_key=True, autoincrement=True)

    suite = Column(String(64), nullable=False)
    params = Column(JSON)

    cases = Column(Integer)
    failures = Column(Integer)
    passed = Column(Boolean)
    wall_ms = Column(Float)

    # the full report as printed by `verify`
    payload = Column(JSON)

    created_at = Column(TIMESTAMP)


def witness(value: Any) -> Any:
    """JSON-ready form of a case input or an identity side."""
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(key): witness(v) for key, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [witness(v) for v in value]
    if isinstance(value, (bool, int, float)) or value is None:
        return value
    return str(value)


@dataclass
class Report:
    """Outcome of one verification suite."""

    suite: str
    params: Dict[str, Any]
    cases: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    wall_ms: Optional[float] = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, case: Any, lhs: Any, rhs: Any) -> bool:
        self.cases += 1
        if lhs == rhs:
            return True
        self.fail(case, lhs, rhs)
        return False

    def fail(self, case: Any, lhs: Any, rhs: Any):
        entry = {"input": witness(case), "lhs": witness(lhs), "rhs": witness(rhs)}
        self.failures.append(entry)
        logging.warning("%s: identity failed for %s", self.suite, entry["input"])

    def merge(self, other: "Report"):
        self.cases += other.cases
        self.failures.extend(other.failures)
        for key, value in other.data.items():
            self.data.setdefault(key, value)

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "suite": self.suite,
            "params": dict(sorted(self.params.items())),
            "cases": self.cases,
            "passed": self.passed,
            "failures": self.failures,
        }
        if self.data:
            out["data"] = witness(self.data)
        if self.wall_ms is not None:
            out["wall_ms"] = self.wall_ms
        return out

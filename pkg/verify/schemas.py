"""Report models for verification runs."""
from __future__ import annotations

from typing import Dict, List, Literal

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Outcome of one named check."""

    name: str
    status: Literal["pass", "fail"]
    detail: str = ""
    elapsed_ms: float = Field(0.0, ge=0, description="Wall time; left out of the deterministic payload")


class VerificationReport(BaseModel):
    suite: str
    parameters: Dict[str, int]
    checks: List[CheckResult]

    @property
    def overall(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.overall else 1

    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    def to_json(self) -> str:
        """Deterministic JSON: same suite and parameters give the same bytes."""
        payload = self.model_dump(exclude={"checks": {"__all__": {"elapsed_ms"}}})
        payload["overall"] = "pass" if self.overall else "fail"
        return VerificationPayload.model_validate(payload).model_dump_json(indent=2)

    def to_table(self) -> str:
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [f"{'check'.ljust(width)}  status  ms      detail"]
        for c in self.checks:
            lines.append(f"{c.name.ljust(width)}  {c.status:<6}  {c.elapsed_ms:>6.0f}  {c.detail}")
        lines.append(f"overall: {'pass' if self.overall else 'fail'}")
        return "\n".join(lines)


class StrippedCheck(BaseModel):
    name: str
    status: Literal["pass", "fail"]
    detail: str = ""


class VerificationPayload(BaseModel):
    suite: str
    parameters: Dict[str, int]
    checks: List[StrippedCheck]
    overall: Literal["pass", "fail"]

"""Result record shared by the verification checks and the admissibility probe."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class CheckResult:
    """One verification item.

    ``status`` is ``pass``/``fail`` when the relation could be evaluated and
    ``inconclusive`` when a stated precondition is unmet or the compared
    quantities are not resolved at working precision.
    """

    suite: str
    name: str
    params: dict
    observed: float
    target: float
    relation: str
    status: str
    runtime_ms: int = 0
    notes: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL


def status_of(ok: bool, conclusive: bool = True) -> str:
    if not conclusive:
        return INCONCLUSIVE
    return PASS if ok else FAIL

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from kktlab.config.settings import (CHECK_COUNT, CHECK_DETAILS, CHECK_MODE,
                                    CHECK_NAME, CHECK_PASSED, CHECK_SEED,
                                    CHECK_WITNESS)
from kktlab.logic.exactnum import Rational, rat_to_str


def jsonable(value: Any) -> Any:
    """
    Converts rationals, tuples and numpy scalars recursively into JSON-ready values.
    Rationals become "p/q" strings.
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Rational):
        return rat_to_str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "item"):
        return jsonable(value.item())
    return str(value)


@dataclass
class Mode:
    """Full enumeration or a fixed number of random samples."""
    full: bool = True
    samples: int = 0

    def __str__(self):
        return "full" if self.full else f"sampled={self.samples}"


@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int = 0
    mode: str = "full"
    seed: Optional[int] = None
    witness: Any = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            CHECK_NAME: self.name,
            CHECK_PASSED: self.passed,
            CHECK_COUNT: self.checked,
            CHECK_MODE: self.mode,
            CHECK_SEED: self.seed,
            CHECK_WITNESS: jsonable(self.witness),
            CHECK_DETAILS: jsonable(self.details),
        }

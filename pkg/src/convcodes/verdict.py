from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome that carries supporting evidence.

    ``witness`` holds whatever justifies the answer: a message polynomial
    for membership, or an offending minor's index sets for a failed
    optimality check.
    """

    ok: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return bool(self.ok)

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Tuple


@dataclass(frozen=True)
class Verdict:
    """A decided boolean with an optional certificate.

    Truthiness follows ``result``, so deciders can be used directly in
    conditionals. ``witness`` is JSON-shaped data and only accompanies a
    positive result.
    """

    result: bool
    witness: Optional[Any] = field(default=None, compare=True)
    diagnostics: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "result", bool(self.result))
        object.__setattr__(self, "diagnostics", tuple(self.diagnostics))
        if self.witness is not None and not self.result:
            raise ValueError("a witness may only accompany a positive verdict")

    def __bool__(self) -> bool:
        return self.result

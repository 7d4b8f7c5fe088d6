from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ReldpError
from ..problem import RelativeDpp


class ProcessorError(ReldpError):
    """Invalid processor arguments (for example a delete set that is not a subset)."""


@dataclass(frozen=True)
class ProcessorResult:
    """Successor problems plus everything needed to re-run the processor.

    Soundness contract: if every successor is finite, so is the input.
    """

    processor: str
    successors: tuple[RelativeDpp, ...]
    params: dict = field(default_factory=dict, hash=False)

    def made_progress(self, d: RelativeDpp) -> bool:
        return not (len(self.successors) == 1 and self.successors[0].same_as(d))

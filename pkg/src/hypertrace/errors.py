from __future__ import annotations


class ResourceLimitError(RuntimeError):
    """A configured cap would be exceeded; raised before any enumeration starts."""

    def __init__(self, cap: str, limit: int, predicted: int):
        self.cap = cap
        self.limit = limit
        self.predicted = predicted
        super().__init__(f"refusing: predicted {cap} {predicted} exceeds limit {limit}")

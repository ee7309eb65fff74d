"""Primitive-operation counting used by the benchmarks and scaling checks."""


class OpCounter:
    """Accumulates a count of primitive operations.

    Hot loops add their iteration totals once at the end instead of
    incrementing per step.
    """

    __slots__ = ("ops",)

    def __init__(self):
        self.ops = 0

    def add(self, n: int = 1) -> None:
        self.ops += n

    def __repr__(self):
        return f"OpCounter(ops={self.ops})"


class _NullCounter:
    __slots__ = ()

    def add(self, n: int = 1) -> None:
        pass


NULL = _NullCounter()

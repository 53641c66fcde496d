"""Provide functions on the manifold of lines and the integral transforms that
produce them.
"""

import logging
import threading
from collections import OrderedDict
from collections.abc import Callable

from igeuler.geometry import LineNH
from igeuler.utils.types import Convention

_logger = logging.getLogger(__name__)

MEMO_QUANTUM = 1e-9
MEMO_LIMIT = 65_536


class NormalizationError(Exception):
    """Indicates disagreement between the chart and unit-speed paths of a transform."""


def convert(
    value: float, line: LineNH, rank: int, source: Convention, target: Convention
) -> float:
    """Convert a line integral of a rank-``rank`` field between normalizations.

    The chart integral ``∫ f(α,…,α) dt`` and the unit-speed integral
    ``∫ f(e_m,…,e_m) ds`` differ by ``k^{1−rank}``.

    :param value: transform value in the ``source`` normalization
    :param line: line the value belongs to
    :param rank: tensor rank of the integrated field
    :param source: normalization of ``value``
    :param target: requested normalization
    """
    if source == target:
        return value
    power = 1 - rank if source == Convention.CHART else rank - 1
    return value * line.k**power


class GrassmannFunction:
    """Scalar function on non-horizontal lines, with provenance.

    Evaluation is pure; the optional memo is keyed by line coordinates quantized on
    a 1e−9 grid, holds at most ``memo_limit`` values (least recently used are
    dropped first) and may be filled concurrently.
    """

    def __init__(
        self,
        evaluator: Callable[[LineNH], float],
        provenance: str,
        convention: Convention = Convention.UNIT_SPEED,
        sources: tuple = (),
        memoize: bool = False,
        memo_limit: int = MEMO_LIMIT,
    ) -> None:
        """Wrap an evaluator.

        :param evaluator: maps a line to a value
        :param provenance: name of the construction that produced the function
        :param convention: normalization of the returned values
        :param sources: fields the function was built from
        :param memoize: cache values by quantized line coordinates
        :param memo_limit: maximum number of cached values
        :raise ValueError: if ``memo_limit`` is not positive
        """
        if memo_limit < 1:
            msg = f"Memo limit must be positive, got {memo_limit}"
            raise ValueError(msg)
        self.evaluator = evaluator
        self.provenance = provenance
        self.convention = convention
        self.sources = sources
        self.memoize = memoize
        self.memo_limit = memo_limit
        self._memo: OrderedDict[tuple[int, ...], float] = OrderedDict()
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"GrassmannFunction({self.provenance!r}, {self.convention.value})"

    def __call__(self, line: LineNH) -> float:
        """Evaluate at a line."""
        if not self.memoize:
            return float(self.evaluator(line))
        key = tuple(round(c / MEMO_QUANTUM) for c in line.coords)
        with self._lock:
            if key in self._memo:
                self._memo.move_to_end(key)
                return self._memo[key]
        value = float(self.evaluator(line))
        with self._lock:
            value = self._memo.setdefault(key, value)
            self._memo.move_to_end(key)
            while len(self._memo) > self.memo_limit:
                self._memo.popitem(last=False)
        return value

    def at(self, y1: float, y2: float, a1: float, a2: float) -> float:
        """Evaluate at chart coordinates."""
        return self(LineNH(y1, y2, a1, a2))

    @property
    def memo_size(self) -> int:
        """Return the number of memoized values."""
        with self._lock:
            return len(self._memo)

    def clear_memo(self) -> None:
        """Drop memoized values."""
        with self._lock:
            self._memo.clear()

    def with_memo(self) -> "GrassmannFunction":
        """Return a memoizing copy with an empty cache."""
        return GrassmannFunction(
            self.evaluator,
            self.provenance,
            self.convention,
            self.sources,
            True,
            self.memo_limit,
        )

    def scaled(self, factor: float) -> "GrassmannFunction":
        """Return ``factor`` times this function."""
        return GrassmannFunction(
            lambda line: factor * self.evaluator(line),
            f"{factor}*{self.provenance}",
            self.convention,
            self.sources,
            self.memoize,
            self.memo_limit,
        )


__all__ = ["GrassmannFunction", "NormalizationError", "convert"]

"""Deterministic logical-time message bus with an optional seeded fault schedule."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from akasim.engines.messages import AkaMessage


@dataclass(frozen=True)
class FaultSchedule:
    drop: float = 0.0
    duplicate: float = 0.0
    reorder: float = 0.0

    @property
    def empty(self) -> bool:
        return not (self.drop or self.duplicate or self.reorder)


class Bus:
    """With an empty fault schedule delivery is FIFO and lossless, one tick per hop."""

    def __init__(self, seed: int | None = 0, faults: FaultSchedule | None = None):
        self.faults = faults or FaultSchedule()
        self._rng = random.Random(seed)
        self._pending: list[tuple[int, int, AkaMessage]] = []
        self._seq = 0
        self._taps: list[Callable[[AkaMessage], None]] = []

    def tap(self, observer: Callable[[AkaMessage], None]) -> None:
        """Register an observer that sees every message as it is sent."""
        self._taps.append(observer)

    def _enqueue(self, deliver_at: int, msg: AkaMessage):
        self._pending.append((deliver_at, self._seq, msg))
        self._seq += 1

    def send(self, msg: AkaMessage, now: int) -> None:
        for observer in self._taps:
            observer(msg)
        if self.faults.empty:
            self._enqueue(now + 1, msg)
            return
        if self._rng.random() < self.faults.drop:
            return
        delay = 1 + (self._rng.randint(1, 3) if self._rng.random() < self.faults.reorder else 0)
        self._enqueue(now + delay, msg)
        if self._rng.random() < self.faults.duplicate:
            self._enqueue(now + delay + 1, msg)

    def deliver(self, now: int) -> list[AkaMessage]:
        due = sorted(p for p in self._pending if p[0] <= now)
        self._pending = [p for p in self._pending if p[0] > now]
        return [m for _, _, m in due]

    def idle(self) -> bool:
        return not self._pending

import random

import pytest

from akasim.engines.messages import MessageKind as K
from akasim.harness.bus import Bus


class TamperBus(Bus):
    """Bus that rewrites the first challenge sent to the UE with ``mutate``."""

    def __init__(self, seed, mutate):
        super().__init__(seed)
        self.mutate = mutate
        self.done = False

    def send(self, msg, now):
        if not self.done and msg.kind in (K.AUTH_REQUEST, K.EAP_REQUEST) and \
                msg.receiver.value == "ue":
            msg = self.mutate(msg)
            self.done = True
        super().send(msg, now)


def flip_bit(data: bytes, bit: int) -> bytes:
    b = bytearray(data)
    b[bit // 8] ^= 0x80 >> (bit % 8)
    return bytes(b)


@pytest.fixture
def rng():
    return random.Random(1234)

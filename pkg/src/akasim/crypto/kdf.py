"""The generic length-prefixed HMAC-SHA-256 key derivation and its FC registry."""

from __future__ import annotations

import hashlib
import hmac
from enum import IntEnum
from typing import Sequence

from akasim.errors import MalformedInputError


class FC(IntEnum):
    """Function codes, one per derivation.  Test vectors depend on these values."""

    KASME = 0x10
    CK_IK_PRIME = 0x20
    KC128 = 0x32
    KI128 = 0x33
    KAUSF = 0x6A
    RES_STAR = 0x6B
    KSEAF = 0x6C
    KAMF = 0x6D


def kdf(key: bytes, fc: int, params: Sequence[bytes]) -> bytes:
    """HMAC-SHA-256(key, FC || P0 || L0 || P1 || L1 || ...), lengths 16-bit big-endian."""
    if not 0 <= int(fc) <= 0xFF:
        raise MalformedInputError(f"fc must fit in 8 bits, got {fc}")
    s = bytearray([int(fc)])
    for p in params:
        if len(p) > 0xFFFF:
            raise MalformedInputError(f"kdf parameter of {len(p)} octets exceeds 65535")
        s += p
        s += len(p).to_bytes(2, "big")
    out = hmac.new(bytes(key), bytes(s), hashlib.sha256).digest()
    assert len(out) == 32
    return out

"""Resynchronisation token: AUTS = (SQN_MS ^ AK*) || MAC-S, AMF* all zeros."""

from __future__ import annotations

import hmac

from akasim.crypto._util import require_width, xor
from akasim.crypto.milenage import DEFAULT_ALGORITHMS, AlgorithmSet
from akasim.crypto.types import RootKey
from akasim.errors import IntegrityError

RESYNC_AMF = bytes(2)


def build_auts(root: RootKey, rand: bytes, sqn_ms: bytes,
               algorithms: AlgorithmSet = DEFAULT_ALGORITHMS) -> bytes:
    sqn_ms = require_width("sqn_ms", sqn_ms, 6)
    out = algorithms.compute(root, rand, sqn_ms, RESYNC_AMF)
    return xor(sqn_ms, out.ak_s) + out.mac_s


def open_auts(root: RootKey, rand: bytes, auts: bytes,
              algorithms: AlgorithmSet = DEFAULT_ALGORITHMS) -> bytes:
    """Recover SQN_MS from AUTS, raising IntegrityError if MAC-S does not verify."""
    auts = require_width("auts", auts, 14)
    # AK* depends only on RAND, so any SQN works for the first pass
    ak_s = algorithms.compute(root, rand, bytes(6), RESYNC_AMF).ak_s
    sqn_ms = xor(auts[:6], ak_s)
    mac_s = algorithms.compute(root, rand, sqn_ms, RESYNC_AMF).mac_s
    if not hmac.compare_digest(mac_s, auts[6:]):
        raise IntegrityError("AUTS MAC-S mismatch")
    return sqn_ms

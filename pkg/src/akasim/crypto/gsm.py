"""2G and EC-GSM-IoT key material.

A3/A8 are operator-discretionary; the default slot applies the standard
3G-to-2G conversion functions to MILENAGE output rather than any legacy
COMP128 variant.
"""

from __future__ import annotations

import abc

from akasim.crypto._util import require_width, xor
from akasim.crypto.kdf import FC, kdf
from akasim.crypto.milenage import DEFAULT_ALGORITHMS, AlgorithmSet
from akasim.crypto.types import RootKey

_ZERO_SQN = bytes(6)
_ZERO_AMF = bytes(2)


def sres_from_res(res: bytes) -> bytes:
    """Fold RES down to a 32-bit SRES (c2)."""
    if len(res) < 4 or len(res) > 16 or len(res) % 4:
        from akasim.errors import MalformedInputError
        raise MalformedInputError("res must be 32..128 bits in 32-bit steps")
    out = bytes(4)
    for i in range(0, len(res), 4):
        out = xor(out, res[i:i + 4])
    return out


def kc_from_ck_ik(ck: bytes, ik: bytes) -> bytes:
    """c3: Kc = CK1 ^ CK2 ^ IK1 ^ IK2 over the 64-bit halves."""
    ck = require_width("ck", ck, 16)
    ik = require_width("ik", ik, 16)
    return xor(xor(ck[:8], ck[8:]), xor(ik[:8], ik[8:]))


class A3A8(abc.ABC):
    @abc.abstractmethod
    def derive(self, root: RootKey, rand: bytes) -> tuple[bytes, bytes]:
        """Return (sres, kc)."""


class ConversionA3A8(A3A8):
    def __init__(self, algorithms: AlgorithmSet = DEFAULT_ALGORITHMS):
        self.algorithms = algorithms

    def derive(self, root, rand):
        out = self.algorithms.compute(root, rand, _ZERO_SQN, _ZERO_AMF)
        return sres_from_res(out.res), kc_from_ck_ik(out.ck, out.ik)


DEFAULT_A3A8 = ConversionA3A8()


def gsm_derive(root: RootKey, rand: bytes, algo: A3A8 = DEFAULT_A3A8) -> tuple[bytes, bytes]:
    rand = require_width("rand", rand, 16)
    sres, kc = algo.derive(root, rand)
    return require_width("sres", sres, 4), require_width("kc", kc, 8)


def kc128_ki128(ck: bytes, ik: bytes) -> tuple[bytes, bytes]:
    """EC-GSM-IoT ciphering and integrity keys from CK||IK.

    Each is the least significant 128 bits of a KDF run under its own FC code.
    """
    key = require_width("ck", ck, 16) + require_width("ik", ik, 16)
    return kdf(key, FC.KC128, [])[16:], kdf(key, FC.KI128, [])[16:]

"""MILENAGE f1, f1*, f2, f3, f4, f5 and f5* over AES-128.

``op_c`` is the per-subscriber personalised constant; OP to OPc conversion
is not offered.  The algorithm set is reachable through :class:`AlgorithmSet`
so that another set (e.g. TUAK) can be slotted in by the home operator.
"""

from __future__ import annotations

import abc

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

from akasim.crypto._util import require_width, xor
from akasim.crypto.types import MilenageOutput, RootKey

# rotation amounts r1..r5 in bytes and constants c1..c5 (last octet only)
_ROT = (8, 0, 4, 8, 12)
_CONST = (0x00, 0x01, 0x02, 0x04, 0x08)


def _rot(block: bytes, nbytes: int) -> bytes:
    return block[nbytes:] + block[:nbytes]


def _const(i: int) -> bytes:
    return bytes(15) + bytes([_CONST[i]])


def _aes(key: bytes, block: bytes) -> bytes:
    enc = Cipher(algorithms.AES(key), modes.ECB()).encryptor()
    return enc.update(block) + enc.finalize()


def milenage(root: RootKey, rand: bytes, sqn: bytes, amf_field: bytes) -> MilenageOutput:
    rand = require_width("rand", rand, 16)
    sqn = require_width("sqn", sqn, 6)
    amf_field = require_width("amf_field", amf_field, 2)
    k, opc = root.k, root.op_c

    temp = _aes(k, xor(rand, opc))
    in1 = sqn + amf_field + sqn + amf_field
    out1 = xor(_aes(k, xor(xor(temp, _rot(xor(in1, opc), _ROT[0])), _const(0))), opc)

    def out(i: int) -> bytes:
        return xor(_aes(k, xor(_rot(xor(temp, opc), _ROT[i]), _const(i))), opc)

    out2, out3, out4, out5 = out(1), out(2), out(3), out(4)
    return MilenageOutput(
        res=out2[8:],
        ck=out3,
        ik=out4,
        ak=out2[:6],
        mac_a=out1[:8],
        mac_s=out1[8:],
        ak_s=out5[:6],
    )


class AlgorithmSet(abc.ABC):
    """The operator-selected f1..f5 family."""

    name: str

    @abc.abstractmethod
    def compute(self, root: RootKey, rand: bytes, sqn: bytes, amf_field: bytes) -> MilenageOutput:
        ...


class Milenage(AlgorithmSet):
    name = "milenage"

    def compute(self, root, rand, sqn, amf_field):
        return milenage(root, rand, sqn, amf_field)


DEFAULT_ALGORITHMS = Milenage()

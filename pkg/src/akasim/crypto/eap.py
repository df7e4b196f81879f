"""EAP-AKA and EAP-AKA' key schedules.

EAP-AKA expands SHA-1(identity|IK|CK) with the FIPS 186-2 generator, which
needs the bare SHA-1 compression function; hashlib does not expose it, so it
is implemented here.
"""

from __future__ import annotations

import hashlib
import hmac
import struct
from typing import NamedTuple

from akasim.crypto._util import require_width
from akasim.errors import MalformedInputError

_SHA1_H = (0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476, 0xC3D2E1F0)
_M32 = 0xFFFFFFFF


def _rol(x: int, n: int) -> int:
    return ((x << n) | (x >> (32 - n))) & _M32


def sha1_compress(state: tuple[int, ...], block: bytes) -> tuple[int, ...]:
    """One application of the SHA-1 compression function to a 64-byte block."""
    w = list(struct.unpack(">16I", block))
    for t in range(16, 80):
        w.append(_rol(w[t - 3] ^ w[t - 8] ^ w[t - 14] ^ w[t - 16], 1))
    a, b, c, d, e = state
    for t in range(80):
        if t < 20:
            f = (b & c) | ((~b) & d)
            k = 0x5A827999
        elif t < 40:
            f = b ^ c ^ d
            k = 0x6ED9EBA1
        elif t < 60:
            f = (b & c) | (b & d) | (c & d)
            k = 0x8F1BBCDC
        else:
            f = b ^ c ^ d
            k = 0xCA62C1D6
        a, b, c, d, e = (_rol(a, 5) + f + e + k + w[t]) & _M32, a, _rol(b, 30), c, d
    return tuple((x + y) & _M32 for x, y in zip(state, (a, b, c, d, e)))


def fips186_prf(key: bytes, nbytes: int) -> bytes:
    """FIPS 186-2 change notice 1 generator with a 160-bit XKEY and no XSEED."""
    key = require_width("mk", key, 20)
    xkey = int.from_bytes(key, "big")
    out = bytearray()
    while len(out) < nbytes:
        for _ in range(2):
            g = sha1_compress(_SHA1_H, xkey.to_bytes(20, "big") + bytes(44))
            w = struct.pack(">5I", *g)
            xkey = (1 + xkey + int.from_bytes(w, "big")) % (1 << 160)
            out += w
    return bytes(out[:nbytes])


class EapAkaKeys(NamedTuple):
    k_encr: bytes
    k_aut: bytes
    msk: bytes
    emsk: bytes


class EapAkaPrimeKeys(NamedTuple):
    k_encr: bytes
    k_aut: bytes
    k_re: bytes
    msk: bytes
    emsk: bytes


def eap_aka_keys(identity: bytes, ik: bytes, ck: bytes) -> EapAkaKeys:
    if not identity:
        raise MalformedInputError("identity must be non-empty")
    ik = require_width("ik", ik, 16)
    ck = require_width("ck", ck, 16)
    mk = hashlib.sha1(identity + ik + ck).digest()
    block = fips186_prf(mk, 160)
    keys = EapAkaKeys(block[:16], block[16:32], block[32:96], block[96:160])
    assert len(keys.msk) == 64 and len(keys.emsk) == 64
    return keys


def prf_prime(key: bytes, seed: bytes, nbytes: int) -> bytes:
    """PRF' = T1 | T2 | ... with Tn = HMAC-SHA-256(key, Tn-1 | seed | n)."""
    if nbytes > 255 * 32:
        raise MalformedInputError("PRF' output too long")
    out, t = bytearray(), b""
    n = 1
    while len(out) < nbytes:
        t = hmac.new(key, t + seed + bytes([n]), hashlib.sha256).digest()
        out += t
        n += 1
    return bytes(out[:nbytes])


METHOD_STRING = b"EAP-AKA'"


def eap_aka_prime_keys(identity: bytes, ik_prime: bytes, ck_prime: bytes) -> EapAkaPrimeKeys:
    if not identity:
        raise MalformedInputError("identity must be non-empty")
    key = require_width("ik_prime", ik_prime, 16) + require_width("ck_prime", ck_prime, 16)
    mk = prf_prime(key, METHOD_STRING + identity, 208)
    return EapAkaPrimeKeys(mk[:16], mk[16:48], mk[48:80], mk[80:144], mk[144:208])

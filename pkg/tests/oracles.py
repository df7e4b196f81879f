"""Independent scratch reference implementations used only by the tests.

Everything here is written from the algorithm descriptions in a deliberately
different style from the package (integers instead of byte strings, a hand
rolled HMAC, a list-based SHA-1 compression) so that agreement between the
two is meaningful.  Only AES itself is shared with the package, and the
MILENAGE oracle is anchored to the published conformance set to cover that.
"""

import hashlib
import struct

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

MASK128 = (1 << 128) - 1


def _aes_int(k: int, x: int) -> int:
    enc = Cipher(algorithms.AES(k.to_bytes(16, "big")), modes.ECB()).encryptor()
    return int.from_bytes(enc.update(x.to_bytes(16, "big")) + enc.finalize(), "big")


def _rotl128(x: int, r: int) -> int:
    r %= 128
    return ((x << r) | (x >> (128 - r))) & MASK128 if r else x


def milenage_oracle(k: bytes, opc: bytes, rand: bytes, sqn: bytes, amf: bytes) -> dict:
    K = int.from_bytes(k, "big")
    OPC = int.from_bytes(opc, "big")
    R = int.from_bytes(rand, "big")
    temp = _aes_int(K, R ^ OPC)
    sqn_i = int.from_bytes(sqn, "big")
    amf_i = int.from_bytes(amf, "big")
    in1 = (sqn_i << 80) | (amf_i << 64) | (sqn_i << 16) | amf_i
    c = [0, 1, 2, 4, 8]
    r = [64, 0, 32, 64, 96]
    out1 = _aes_int(K, temp ^ _rotl128(in1 ^ OPC, r[0]) ^ c[0]) ^ OPC
    outs = []
    for i in range(1, 5):
        outs.append(_aes_int(K, _rotl128(temp ^ OPC, r[i]) ^ c[i]) ^ OPC)
    out2, out3, out4, out5 = outs
    return {
        "mac_a": (out1 >> 64).to_bytes(8, "big"),
        "mac_s": (out1 & ((1 << 64) - 1)).to_bytes(8, "big"),
        "res": (out2 & ((1 << 64) - 1)).to_bytes(8, "big"),
        "ak": (out2 >> 80).to_bytes(6, "big"),
        "ck": out3.to_bytes(16, "big"),
        "ik": out4.to_bytes(16, "big"),
        "ak_s": (out5 >> 80).to_bytes(6, "big"),
    }


def hmac_sha256_oracle(key: bytes, msg: bytes) -> bytes:
    block = 64
    if len(key) > block:
        key = hashlib.sha256(key).digest()
    key = key.ljust(block, b"\x00")
    ipad = bytes(b ^ 0x36 for b in key)
    opad = bytes(b ^ 0x5C for b in key)
    return hashlib.sha256(opad + hashlib.sha256(ipad + msg).digest()).digest()


def kdf_oracle(key: bytes, fc: int, params: list) -> bytes:
    s = bytes([fc])
    for p in params:
        s += p + struct.pack(">H", len(p))
    return hmac_sha256_oracle(key, s)


def sha1_compress_oracle(state: list, block: bytes) -> list:
    w = [int.from_bytes(block[4 * i:4 * i + 4], "big") for i in range(16)]
    for t in range(16, 80):
        x = w[t - 3] ^ w[t - 8] ^ w[t - 14] ^ w[t - 16]
        w.append(((x << 1) | (x >> 31)) & 0xFFFFFFFF)
    a, b, c, d, e = state
    for t in range(80):
        if t < 20:
            f, kk = (b & c) | (~b & d), 0x5A827999
        elif t < 40:
            f, kk = b ^ c ^ d, 0x6ED9EBA1
        elif t < 60:
            f, kk = (b & c) | (b & d) | (c & d), 0x8F1BBCDC
        else:
            f, kk = b ^ c ^ d, 0xCA62C1D6
        tmp = ((((a << 5) | (a >> 27)) & 0xFFFFFFFF) + (f & 0xFFFFFFFF) + e + kk + w[t]) & 0xFFFFFFFF
        e, d, c, b, a = d, c, ((b << 30) | (b >> 2)) & 0xFFFFFFFF, a, tmp
    return [(s + v) & 0xFFFFFFFF for s, v in zip(state, [a, b, c, d, e])]


SHA1_IV = [0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476, 0xC3D2E1F0]


def fips186_prf_oracle(mk: bytes, nbytes: int) -> bytes:
    """FIPS 186-2 (change notice 1) generator as used by EAP-AKA."""
    xkey = int.from_bytes(mk, "big")
    mod = 1 << 160
    out = b""
    while len(out) < nbytes:
        for _ in range(2):
            xval = xkey.to_bytes(20, "big") + bytes(44)
            w = sha1_compress_oracle(list(SHA1_IV), xval)
            wi = 0
            for word in w:
                wi = (wi << 32) | word
            xkey = (1 + xkey + wi) % mod
            out += wi.to_bytes(20, "big")
    return out[:nbytes]


def eap_aka_keys_oracle(identity: bytes, ik: bytes, ck: bytes) -> dict:
    mk = hashlib.sha1(identity + ik + ck).digest()
    blk = fips186_prf_oracle(mk, 160)
    return {"k_encr": blk[:16], "k_aut": blk[16:32], "msk": blk[32:96], "emsk": blk[96:160]}


def prf_prime_oracle(key: bytes, s: bytes, nbytes: int) -> bytes:
    out, t, n = b"", b"", 1
    while len(out) < nbytes:
        t = hmac_sha256_oracle(key, t + s + bytes([n]))
        out += t
        n += 1
    return out[:nbytes]


def eap_aka_prime_keys_oracle(identity: bytes, ik_p: bytes, ck_p: bytes) -> dict:
    mk = prf_prime_oracle(ik_p + ck_p, b"EAP-AKA'" + identity, 208)
    return {
        "k_encr": mk[:16], "k_aut": mk[16:48], "k_re": mk[48:80],
        "msk": mk[80:144], "emsk": mk[144:208],
    }


def res_star_oracle(ck, ik, snn: bytes, rand, res) -> bytes:
    return kdf_oracle(ck + ik, 0x6B, [snn, rand, res])[16:]


def hres_star_oracle(rand, res_star) -> bytes:
    return hashlib.sha256(rand + res_star).digest()[16:]

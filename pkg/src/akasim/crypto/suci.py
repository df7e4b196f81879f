"""SUPI concealment: the null scheme and ECIES profile A (X25519).

Profile A: X25519 key agreement, ANSI X9.63 KDF over SHA-256 with the
ephemeral public key as shared info, AES-128-CTR and a 64-bit
HMAC-SHA-256 tag.
"""

from __future__ import annotations

import hashlib
import hmac

from cryptography.hazmat.primitives import hashes, serialization
from cryptography.hazmat.primitives.asymmetric.x25519 import X25519PrivateKey, X25519PublicKey
from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes
from cryptography.hazmat.primitives.kdf.x963kdf import X963KDF

from akasim.crypto.types import SuciEnvelope, SuciScheme
from akasim.errors import IntegrityError, MalformedInputError, UnsupportedSchemeError

TAG_LEN = 8

_RAW = dict(encoding=serialization.Encoding.Raw, format=serialization.PublicFormat.Raw)


def generate_hn_keypair(seed: bytes | None = None) -> tuple[bytes, bytes]:
    """Return (private, public) raw X25519 keys; ``seed`` makes it reproducible."""
    priv = X25519PrivateKey.from_private_bytes(seed) if seed else X25519PrivateKey.generate()
    return (priv.private_bytes(serialization.Encoding.Raw, serialization.PrivateFormat.Raw,
                               serialization.NoEncryption()),
            priv.public_key().public_bytes(**_RAW))


def _keys(shared: bytes, eph_pub: bytes) -> tuple[bytes, bytes, bytes]:
    block = X963KDF(algorithm=hashes.SHA256(), length=64, sharedinfo=eph_pub).derive(shared)
    return block[:16], block[16:32], block[32:]


def _ctr(key: bytes, icb: bytes, data: bytes) -> bytes:
    c = Cipher(algorithms.AES(key), modes.CTR(icb)).encryptor()
    return c.update(data) + c.finalize()


def _scheme(scheme) -> SuciScheme:
    try:
        return SuciScheme(scheme) if not isinstance(scheme, str) else SuciScheme[scheme.upper()]
    except (ValueError, KeyError) as exc:
        raise UnsupportedSchemeError(f"unsupported SUCI scheme {scheme!r}") from exc


def suci_conceal(supi: bytes, scheme, hn_pubkey: bytes = b"", *, hn_key_id: int = 0,
                 ephemeral_key: bytes | None = None) -> SuciEnvelope:
    if not supi:
        raise MalformedInputError("supi must be non-empty")
    scheme = _scheme(scheme)
    if scheme is SuciScheme.NULL:
        return SuciEnvelope(scheme, 0, b"", bytes(supi), b"")
    if len(hn_pubkey) != 32:
        raise MalformedInputError("profile A needs a 32-byte X25519 home network key")
    eph = (X25519PrivateKey.from_private_bytes(ephemeral_key) if ephemeral_key
           else X25519PrivateKey.generate())
    eph_pub = eph.public_key().public_bytes(**_RAW)
    shared = eph.exchange(X25519PublicKey.from_public_bytes(hn_pubkey))
    enc_key, icb, mac_key = _keys(shared, eph_pub)
    ct = _ctr(enc_key, icb, bytes(supi))
    tag = hmac.new(mac_key, ct, hashlib.sha256).digest()[:TAG_LEN]
    return SuciEnvelope(scheme, hn_key_id, eph_pub, ct, tag)


def suci_deconceal(env: SuciEnvelope, hn_privkey: bytes = b"") -> bytes:
    scheme = _scheme(env.scheme_id)
    if scheme is SuciScheme.NULL:
        return env.ciphertext
    if len(hn_privkey) != 32 or len(env.ephemeral_pubkey) != 32:
        raise MalformedInputError("profile A needs 32-byte X25519 keys")
    priv = X25519PrivateKey.from_private_bytes(hn_privkey)
    shared = priv.exchange(X25519PublicKey.from_public_bytes(env.ephemeral_pubkey))
    enc_key, icb, mac_key = _keys(shared, env.ephemeral_pubkey)
    expected = hmac.new(mac_key, env.ciphertext, hashlib.sha256).digest()[:TAG_LEN]
    if not hmac.compare_digest(expected, env.mac_tag):
        raise IntegrityError("SUCI MAC tag mismatch")
    return _ctr(enc_key, icb, env.ciphertext)

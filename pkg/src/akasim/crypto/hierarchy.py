"""4G and 5G key hierarchy derivations bound to serving network, SUPI and ABBA."""

from __future__ import annotations

import enum
import hashlib
from typing import NamedTuple

from akasim.crypto._util import require_width
from akasim.crypto.kdf import FC, kdf
from akasim.crypto.types import ServingNetworkId
from akasim.errors import DomainError, MalformedInputError


def _expect(net: ServingNetworkId, *kinds: str) -> ServingNetworkId:
    if not isinstance(net, ServingNetworkId) or net.kind not in kinds:
        got = getattr(net, "kind", type(net).__name__)
        raise DomainError(f"expected serving network id of kind {'/'.join(kinds)}, got {got}")
    return net


def _ck_ik(ck: bytes, ik: bytes) -> bytes:
    return require_width("ck", ck, 16) + require_width("ik", ik, 16)


def derive_kasme(ck: bytes, ik: bytes, snid: ServingNetworkId, sqn_xor_ak: bytes) -> bytes:
    _expect(snid, "snid_4g")
    return kdf(_ck_ik(ck, ik), FC.KASME, [snid.value, require_width("sqn_xor_ak", sqn_xor_ak, 6)])


def derive_ck_ik_prime(ck: bytes, ik: bytes, net_name: ServingNetworkId,
                       sqn_xor_ak: bytes) -> tuple[bytes, bytes]:
    """CK' is the most significant half of the output, IK' the rest."""
    _expect(net_name, "ani", "snn")
    out = kdf(_ck_ik(ck, ik), FC.CK_IK_PRIME,
              [net_name.value, require_width("sqn_xor_ak", sqn_xor_ak, 6)])
    return out[:16], out[16:]


def derive_res_star(ck: bytes, ik: bytes, snn: ServingNetworkId, rand: bytes, res: bytes) -> bytes:
    _expect(snn, "snn")
    if not 4 <= len(res) <= 16:
        raise MalformedInputError("res must be 32..128 bits")
    out = kdf(_ck_ik(ck, ik), FC.RES_STAR, [snn.value, require_width("rand", rand, 16), res])
    return out[16:]


def derive_hres_star(rand: bytes, res_star: bytes) -> bytes:
    digest = hashlib.sha256(require_width("rand", rand, 16)
                            + require_width("res_star", res_star, 16)).digest()
    return digest[16:]


class FiveGMode(str, enum.Enum):
    FIVEG_AKA = "fiveg_aka"
    FIVEG_EAP_AKA_PRIME = "fiveg_eap_aka_prime"


class FiveGKeys(NamedTuple):
    kausf: bytes
    kseaf: bytes
    kamf: bytes


def derive_kseaf(kausf: bytes, snn: ServingNetworkId) -> bytes:
    _expect(snn, "snn")
    return kdf(require_width("kausf", kausf, 32), FC.KSEAF, [snn.value])


def derive_kamf(kseaf: bytes, supi: bytes, abba: bytes) -> bytes:
    if not supi:
        raise MalformedInputError("supi must be non-empty")
    return kdf(require_width("kseaf", kseaf, 32), FC.KAMF, [supi, abba])


def derive_kausf_kseaf_kamf(ck: bytes, ik: bytes, snn: ServingNetworkId, sqn_xor_ak: bytes,
                            supi: bytes, abba: bytes, mode: FiveGMode | str,
                            emsk: bytes | None = None) -> FiveGKeys:
    mode = FiveGMode(mode)
    _expect(snn, "snn")
    if mode is FiveGMode.FIVEG_EAP_AKA_PRIME:
        if emsk is None:
            raise DomainError("5G EAP-AKA' needs the EMSK to derive KAUSF")
        kausf = require_width("emsk", emsk, 64)[:32]
    else:
        kausf = kdf(_ck_ik(ck, ik), FC.KAUSF,
                    [snn.value, require_width("sqn_xor_ak", sqn_xor_ak, 6)])
    kseaf = derive_kseaf(kausf, snn)
    kamf = derive_kamf(kseaf, supi, abba)
    return FiveGKeys(kausf, kseaf, kamf)

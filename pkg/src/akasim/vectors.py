"""Authentication vector generation for every generation of AKA."""

from __future__ import annotations

import random
from dataclasses import dataclass, fields

from akasim.crypto._util import require_width, xor
from akasim.crypto.eap import eap_aka_keys, eap_aka_prime_keys
from akasim.crypto.gsm import gsm_derive, kc128_ki128
from akasim.crypto.hierarchy import (FiveGMode, derive_ck_ik_prime, derive_hres_star,
                                     derive_kasme, derive_kausf_kseaf_kamf, derive_kseaf,
                                     derive_res_star)
from akasim.crypto.milenage import DEFAULT_ALGORITHMS, AlgorithmSet
from akasim.crypto.types import ServingNetworkId, assemble_autn
from akasim.errors import DomainError
from akasim.store import SubscriberRecord, SubscriberStore
from akasim.variants import Variant

SEPARATION_BIT = 0x8000
DEFAULT_XRES_LEN = 8


def with_separation_bit(amf_field: bytes, value: bool = True) -> bytes:
    """Set or clear AMF bit 0, the most significant bit of the field."""
    amf = int.from_bytes(amf_field, "big")
    amf = amf | SEPARATION_BIT if value else amf & ~SEPARATION_BIT
    return amf.to_bytes(2, "big")


def separation_bit(amf_field: bytes) -> bool:
    return bool(int.from_bytes(amf_field, "big") & SEPARATION_BIT)


class _Vector:
    """Shared text rendering: ``kind name=hex name=hex ...``."""

    kind = "vector"

    def to_text(self) -> str:
        parts = [self.kind]
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, ServingNetworkId):
                v = f"{v.kind}:{v.text()}"
            elif isinstance(v, bytes):
                v = v.hex()
            parts.append(f"{f.name}={v}")
        return " ".join(parts)


@dataclass(frozen=True)
class GsmTriplet(_Vector):
    rand: bytes
    xres: bytes
    kc: bytes
    kind = "gsm_triplet"

    def __post_init__(self):
        require_width("rand", self.rand, 16)
        require_width("xres", self.xres, 4)
        require_width("kc", self.kc, 8)


def _check_xres(xres: bytes):
    if not 4 <= len(xres) <= 16:
        raise DomainError("xres must be 32..128 bits")


@dataclass(frozen=True)
class UmtsQuintet(_Vector):
    rand: bytes
    xres: bytes
    ck: bytes
    ik: bytes
    autn: bytes
    kind = "umts_quintet"

    def __post_init__(self):
        require_width("rand", self.rand, 16)
        _check_xres(self.xres)
        require_width("ck", self.ck, 16)
        require_width("ik", self.ik, 16)
        require_width("autn", self.autn, 16)


@dataclass(frozen=True)
class EcGsmAv(_Vector):
    """Quintet whose CK/IK have been replaced by Kc128/Ki128 for EC-GSM-IoT."""

    rand: bytes
    xres: bytes
    kc128: bytes
    ki128: bytes
    autn: bytes
    kind = "ecgsm_iot_av"


@dataclass(frozen=True)
class EpsAv(_Vector):
    rand: bytes
    xres: bytes
    autn: bytes
    kasme: bytes
    snid: ServingNetworkId
    kind = "eps_av"

    def __post_init__(self):
        _check_xres(self.xres)
        require_width("kasme", self.kasme, 32)


@dataclass(frozen=True)
class FiveGHeAv(_Vector):
    rand: bytes
    autn: bytes
    xres_star: bytes
    kausf: bytes
    snn: ServingNetworkId
    kind = "fiveg_he_av"

    def __post_init__(self):
        require_width("xres_star", self.xres_star, 16)
        require_width("kausf", self.kausf, 32)


@dataclass(frozen=True)
class FiveGSeAv(_Vector):
    rand: bytes
    autn: bytes
    hxres_star: bytes
    kseaf: bytes
    kind = "fiveg_se_av"

    def __post_init__(self):
        require_width("hxres_star", self.hxres_star, 16)
        require_width("kseaf", self.kseaf, 32)


@dataclass(frozen=True)
class EapMaterial(_Vector):
    variant: str
    identity: bytes
    rand: bytes
    autn: bytes
    xres: bytes
    k_encr: bytes
    k_aut: bytes
    msk: bytes
    emsk: bytes
    net_name: ServingNetworkId | None = None
    kind = "eap_material"

    def __post_init__(self):
        require_width("msk", self.msk, 64)
        require_width("emsk", self.emsk, 64)


class VectorFactory:
    """Issues vectors on behalf of the home network.

    All randomness comes from the injected ``rng``; pass a seeded
    ``random.Random`` for reproducible output.
    """

    def __init__(self, store: SubscriberStore, rng: random.Random | None = None,
                 algorithms: AlgorithmSet = DEFAULT_ALGORITHMS, xres_len: int = DEFAULT_XRES_LEN):
        if not 4 <= xres_len <= 8:
            raise DomainError("MILENAGE f2 yields at most 64 bits; xres_len must be 4..8 octets")
        self.store = store
        self.rng = rng if rng is not None else random.Random()
        self.algorithms = algorithms
        self.xres_len = xres_len

    def _record(self, subscriber) -> SubscriberRecord:
        if isinstance(subscriber, SubscriberRecord):
            subscriber = subscriber.imsi
        return self.store.lookup(subscriber)

    def _rand(self) -> bytes:
        return self.rng.randbytes(16)

    def _umts(self, rec: SubscriberRecord, amf_field: bytes):
        sqn = self.store.next_sqn(rec.imsi).to_bytes(6, "big")
        rand = self._rand()
        out = self.algorithms.compute(rec.root, rand, sqn, amf_field)
        sqn_xor_ak = xor(sqn, out.ak)
        return rand, out, sqn_xor_ak, assemble_autn(sqn_xor_ak, amf_field, out.mac_a)

    def gen_triplet(self, subscriber) -> GsmTriplet:
        rec = self._record(subscriber)
        rand = self._rand()
        sres, kc = gsm_derive(rec.root, rand)
        return GsmTriplet(rand, sres, kc)

    def gen_quintet(self, subscriber, amf_field: bytes | None = None) -> UmtsQuintet:
        rec = self._record(subscriber)
        rand, out, _, autn = self._umts(rec, amf_field if amf_field is not None else rec.amf_field)
        return UmtsQuintet(rand, out.res[:self.xres_len], out.ck, out.ik, autn)

    def gen_ecgsm_av(self, subscriber) -> EcGsmAv:
        q = self.gen_quintet(subscriber)
        kc128, ki128 = kc128_ki128(q.ck, q.ik)
        return EcGsmAv(q.rand, q.xres, kc128, ki128, q.autn)

    def gen_eps_av(self, subscriber, snid: ServingNetworkId) -> EpsAv:
        if not isinstance(snid, ServingNetworkId) or snid.kind != "snid_4g":
            raise DomainError("EPS vectors need a 4G serving network identity")
        rec = self._record(subscriber)
        rand, out, sqn_xor_ak, autn = self._umts(rec, with_separation_bit(rec.amf_field))
        kasme = derive_kasme(out.ck, out.ik, snid, sqn_xor_ak)
        return EpsAv(rand, out.res[:self.xres_len], autn, kasme, snid)

    def gen_5g_he_av(self, subscriber, snn: ServingNetworkId) -> FiveGHeAv:
        if not isinstance(snn, ServingNetworkId) or snn.kind != "snn":
            raise DomainError("5G vectors need a serving network name")
        rec = self._record(subscriber)
        rand, out, sqn_xor_ak, autn = self._umts(rec, with_separation_bit(rec.amf_field))
        xres_star = derive_res_star(out.ck, out.ik, snn, rand, out.res[:self.xres_len])
        keys = derive_kausf_kseaf_kamf(out.ck, out.ik, snn, sqn_xor_ak, rec.supi.encode(),
                                       b"\x00\x00", FiveGMode.FIVEG_AKA)
        return FiveGHeAv(rand, autn, xres_star, keys.kausf, snn)

    @staticmethod
    def reduce_to_se_av(he: FiveGHeAv) -> FiveGSeAv:
        return FiveGSeAv(he.rand, he.autn, derive_hres_star(he.rand, he.xres_star),
                         derive_kseaf(he.kausf, he.snn))

    def gen_eap_material(self, subscriber, variant: Variant | str,
                         net_name: ServingNetworkId | None = None) -> EapMaterial:
        variant = Variant(variant)
        rec = self._record(subscriber)
        if variant is Variant.EAP_AKA:
            rand, out, _, autn = self._umts(rec, rec.amf_field)
            identity = rec.imsi.encode()
            k = eap_aka_keys(identity, out.ik, out.ck)
            return EapMaterial(variant.value, identity, rand, autn, out.res[:self.xres_len],
                               k.k_encr, k.k_aut, k.msk, k.emsk, None)
        if variant not in (Variant.EAP_AKA_PRIME, Variant.FIVEG_EAP_AKA_PRIME):
            raise DomainError(f"{variant.value} is not an EAP variant")
        if net_name is None:
            raise DomainError("EAP-AKA' needs a network name for CK'/IK'")
        rand, out, sqn_xor_ak, autn = self._umts(rec, with_separation_bit(rec.amf_field))
        ck_p, ik_p = derive_ck_ik_prime(out.ck, out.ik, net_name, sqn_xor_ak)
        identity = (rec.supi if variant is Variant.FIVEG_EAP_AKA_PRIME else rec.imsi).encode()
        k = eap_aka_prime_keys(identity, ik_p, ck_p)
        return EapMaterial(variant.value, identity, rand, autn, out.res[:self.xres_len],
                           k.k_encr, k.k_aut, k.msk, k.emsk, net_name)

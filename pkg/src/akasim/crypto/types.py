from __future__ import annotations

import re
from dataclasses import dataclass
from enum import IntEnum

from akasim.crypto._util import require_width
from akasim.errors import DomainError, MalformedInputError


class RootKey:
    """Long-term subscriber secret: K and the personalised operator constant OPc.

    Deliberately has no serialiser, no readable repr and refuses pickling, so
    it cannot leak into a transcript or message.  Only the subscriber store and
    the simulated USIM ever hold one.
    """

    __slots__ = ("_k", "_op_c")

    def __init__(self, k: bytes, op_c: bytes):
        object.__setattr__(self, "_k", require_width("k", k, 16))
        object.__setattr__(self, "_op_c", require_width("op_c", op_c, 16))

    @property
    def k(self) -> bytes:
        return self._k

    @property
    def op_c(self) -> bytes:
        return self._op_c

    def __setattr__(self, name, value):
        raise AttributeError("RootKey is immutable")

    def __eq__(self, other):
        return isinstance(other, RootKey) and self._k == other._k and self._op_c == other._op_c

    def __hash__(self):
        return hash((self._k, self._op_c))

    def __repr__(self):
        return "RootKey(<redacted>)"

    def __reduce_ex__(self, protocol):
        raise TypeError("RootKey cannot be serialised")

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self


@dataclass(frozen=True)
class Challenge:
    rand: bytes
    autn: bytes | None = None

    def __post_init__(self):
        require_width("rand", self.rand, 16)
        if self.autn is not None:
            require_width("autn", self.autn, 16)

    @property
    def sqn_xor_ak(self) -> bytes:
        return self._autn()[:6]

    @property
    def amf_field(self) -> bytes:
        return self._autn()[6:8]

    @property
    def mac(self) -> bytes:
        return self._autn()[8:]

    def _autn(self) -> bytes:
        if self.autn is None:
            raise DomainError("challenge carries no AUTN")
        return self.autn


def assemble_autn(sqn_xor_ak: bytes, amf_field: bytes, mac: bytes) -> bytes:
    return (require_width("sqn_xor_ak", sqn_xor_ak, 6) + require_width("amf_field", amf_field, 2)
            + require_width("mac", mac, 8))


@dataclass(frozen=True)
class MilenageOutput:
    res: bytes
    ck: bytes
    ik: bytes
    ak: bytes
    mac_a: bytes
    mac_s: bytes
    ak_s: bytes

    def __post_init__(self):
        for name, width in (("res", 8), ("ck", 16), ("ik", 16), ("ak", 6), ("mac_a", 8),
                            ("mac_s", 8), ("ak_s", 6)):
            require_width(name, getattr(self, name), width)


_SNN_RE = re.compile(rb"^5G:.+")


@dataclass(frozen=True)
class ServingNetworkId:
    """Serving-network binding input: a 4G SNID, an access network name or a 5G SNN."""

    kind: str
    value: bytes

    def __post_init__(self):
        if self.kind == "snid_4g":
            require_width("snid_4g", self.value, 3)
        elif self.kind == "snn":
            if not isinstance(self.value, bytes) or not _SNN_RE.match(self.value):
                raise MalformedInputError("serving network name must start with '5G:'")
        elif self.kind == "ani":
            if not isinstance(self.value, bytes) or not self.value:
                raise MalformedInputError("access network identity must be non-empty bytes")
        else:
            raise MalformedInputError(f"unknown serving network id kind {self.kind!r}")
        if len(self.value) > 0xFFFF:
            raise MalformedInputError("serving network id too long")

    @classmethod
    def snid(cls, mcc: str, mnc: str) -> ServingNetworkId:
        """Pack MCC/MNC into the 3-octet PLMN identity (BCD, filler nibble 0xF)."""
        if not (re.fullmatch(r"\d{3}", mcc) and re.fullmatch(r"\d{2,3}", mnc)):
            raise MalformedInputError(f"bad PLMN {mcc}/{mnc}")
        d = [int(c) for c in mcc]
        m = [int(c) for c in mnc]
        mnc3 = m[2] if len(m) == 3 else 0xF
        return cls("snid_4g", bytes([(d[1] << 4) | d[0], (mnc3 << 4) | d[2], (m[1] << 4) | m[0]]))

    @classmethod
    def ani(cls, name: str | bytes) -> ServingNetworkId:
        return cls("ani", name.encode() if isinstance(name, str) else name)

    @classmethod
    def snn(cls, name: str | bytes) -> ServingNetworkId:
        return cls("snn", name.encode() if isinstance(name, str) else name)

    @classmethod
    def snn_for_plmn(cls, mcc: str, mnc: str) -> ServingNetworkId:
        return cls.snn(f"5G:mnc{int(mnc):03d}.mcc{mcc}.3gppnetwork.org")

    @classmethod
    def parse(cls, kind: str, text: str) -> ServingNetworkId:
        """Build from CLI text: ``001-01`` style for snid, raw strings otherwise."""
        if kind == "snid_4g":
            m = re.fullmatch(r"(\d{3})[-/.]?(\d{2,3})", text.strip())
            if m:
                return cls.snid(m.group(1), m.group(2))
            try:
                return cls("snid_4g", bytes.fromhex(text))
            except ValueError as exc:
                raise MalformedInputError(f"bad snid {text!r}") from exc
        return cls(kind, text.encode())

    def text(self) -> str:
        return self.value.hex() if self.kind == "snid_4g" else self.value.decode(errors="replace")


class SuciScheme(IntEnum):
    NULL = 0
    ECIES_PROFILE_A = 1


@dataclass(frozen=True)
class SuciEnvelope:
    scheme_id: SuciScheme
    home_network_pubkey_id: int
    ephemeral_pubkey: bytes
    ciphertext: bytes
    mac_tag: bytes

    def to_bytes(self) -> bytes:
        out = bytes([int(self.scheme_id), self.home_network_pubkey_id & 0xFF])
        for field in (self.ephemeral_pubkey, self.ciphertext, self.mac_tag):
            out += len(field).to_bytes(2, "big") + field
        return out

    @classmethod
    def from_bytes(cls, data: bytes) -> SuciEnvelope:
        if len(data) < 8:
            raise MalformedInputError("SUCI envelope truncated")
        try:
            scheme = SuciScheme(data[0])
        except ValueError as exc:
            from akasim.errors import UnsupportedSchemeError
            raise UnsupportedSchemeError(f"scheme id {data[0]}") from exc
        pos, fields = 2, []
        for _ in range(3):
            if pos + 2 > len(data):
                raise MalformedInputError("SUCI envelope truncated")
            n = int.from_bytes(data[pos:pos + 2], "big")
            fields.append(data[pos + 2:pos + 2 + n])
            if len(fields[-1]) != n:
                raise MalformedInputError("SUCI envelope truncated")
            pos += 2 + n
        if pos != len(data):
            raise MalformedInputError("trailing bytes after SUCI envelope")
        return cls(scheme, data[1], *fields)

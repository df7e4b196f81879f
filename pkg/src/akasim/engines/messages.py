from __future__ import annotations

import enum
from dataclasses import dataclass

from akasim.errors import MalformedInputError
from akasim.variants import Role


class MessageKind(str, enum.Enum):
    IDENTITY = "identity"
    AV_REQUEST = "av_request"
    AV_RESPONSE = "av_response"
    AUTH_REQUEST = "auth_request"
    AUTH_RESPONSE = "auth_response"
    AUTH_FAILURE = "auth_failure"
    AUTH_CONFIRM = "auth_confirm"
    AUTH_RESULT = "auth_result"
    RESYNC = "resync"
    EAP_REQUEST = "eap_request"
    EAP_RESPONSE = "eap_response"


# the radio interface; everything else is the core network leg
AIR = frozenset({Role.UE, Role.SERVING})


@dataclass(frozen=True)
class AkaMessage:
    kind: MessageKind
    sender: Role
    receiver: Role
    fields: tuple[tuple[str, bytes], ...] = ()

    def __post_init__(self):
        for name, value in self.fields:
            if not isinstance(value, bytes):
                raise MalformedInputError(f"message field {name} must be bytes")

    @classmethod
    def make(cls, kind, sender, receiver, **fields: bytes) -> AkaMessage:
        return cls(MessageKind(kind), Role(sender), Role(receiver), tuple(sorted(fields.items())))

    def __getitem__(self, name: str) -> bytes:
        for key, value in self.fields:
            if key == name:
                return value
        raise KeyError(name)

    def get(self, name: str, default=None):
        try:
            return self[name]
        except KeyError:
            return default

    @property
    def on_air(self) -> bool:
        return {self.sender, self.receiver} == AIR

    def payload(self) -> bytes:
        """Canonical encoding: per field, 1-byte name length, name, 2-byte value length, value."""
        out = bytearray()
        for name, value in self.fields:
            raw = name.encode()
            out += bytes([len(raw)]) + raw + len(value).to_bytes(2, "big") + value
        return bytes(out)

    @staticmethod
    def parse_payload(data: bytes) -> tuple[tuple[str, bytes], ...]:
        pos, fields = 0, []
        try:
            while pos < len(data):
                n = data[pos]
                name = data[pos + 1:pos + 1 + n].decode()
                pos += 1 + n
                vlen = int.from_bytes(data[pos:pos + 2], "big")
                value = data[pos + 2:pos + 2 + vlen]
                if len(value) != vlen or len(data[pos:pos + 2]) != 2:
                    raise MalformedInputError("truncated message payload")
                pos += 2 + vlen
                fields.append((name, value))
        except (IndexError, UnicodeDecodeError) as exc:
            raise MalformedInputError("bad message payload") from exc
        return tuple(fields)

    def replace(self, **fields: bytes) -> AkaMessage:
        merged = dict(self.fields)
        merged.update(fields)
        return AkaMessage(self.kind, self.sender, self.receiver, tuple(sorted(merged.items())))

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from akasim.errors import MalformedInputError
from akasim.variants import Variant

KEY_BITS = {
    "kc": 64, "ck": 128, "ik": 128, "kc128": 128, "ki128": 128, "kasme": 256,
    "msk": 512, "emsk": 512, "kausf": 256, "kseaf": 256, "kamf": 256,
}

VARIANT_KEYS = {
    Variant.GSM: ("kc",),
    Variant.UMTS: ("ck", "ik"),
    Variant.ECGSM_IOT: ("kc128", "ki128"),
    Variant.EPS: ("kasme",),
    Variant.EAP_AKA: ("msk", "emsk"),
    Variant.EAP_AKA_PRIME: ("msk", "emsk"),
    Variant.FIVEG_AKA: ("kausf", "kseaf", "kamf"),
    Variant.FIVEG_EAP_AKA_PRIME: ("kausf", "kseaf", "kamf"),
}


@dataclass(frozen=True)
class SessionKeys:
    """Keys one party holds after a successful run, with widths enforced."""

    variant: Variant
    keys: dict = field(default_factory=dict)

    def __post_init__(self):
        allowed = VARIANT_KEYS[self.variant]
        for name, value in self.keys.items():
            if name not in allowed:
                raise MalformedInputError(f"{name} is not a {self.variant.value} session key")
            if len(value) * 8 != KEY_BITS[name]:
                raise MalformedInputError(
                    f"{name} must be {KEY_BITS[name]} bits, got {len(value) * 8}")

    def __getitem__(self, name):
        return self.keys[name]

    def __contains__(self, name):
        return name in self.keys

    def names(self) -> tuple[str, ...]:
        return tuple(n for n in VARIANT_KEYS[self.variant] if n in self.keys)

    def fingerprint(self, name: str) -> str:
        return hashlib.sha256(self.keys[name]).hexdigest()[:16]

    def shared_with(self, other: SessionKeys) -> tuple[str, ...]:
        return tuple(n for n in self.names() if n in other.keys)

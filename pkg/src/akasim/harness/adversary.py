"""Adversaries.  They see only bytes that crossed the bus; never a root key."""

from __future__ import annotations

import enum
from akasim.crypto.types import RootKey
from akasim.engines.messages import AkaMessage, MessageKind as K
from akasim.engines.parties import Phase
from akasim.engines.usim import Usim
from akasim.variants import Role, Variant


class AdversaryKind(str, enum.Enum):
    PASSIVE_EAVESDROPPER = "passive_eavesdropper"
    FALSE_BASE_STATION = "false_base_station"
    REPLAYER = "replayer"
    CROSS_NETWORK_KEY_REUSE = "cross_network_key_reuse"
    ROGUE_SERVING_NETWORK = "rogue_serving_network"


class Adversary:
    def __init__(self, kind: AdversaryKind):
        self.kind = AdversaryKind(kind)
        self.captured: list[AkaMessage] = []
        self.observed_keys: dict[str, bytes] = {}

    def observe(self, msg: AkaMessage) -> None:
        """Bus tap: keep radio-interface traffic only."""
        if msg.on_air:
            self.captured.append(msg)

    def challenge(self) -> AkaMessage | None:
        for msg in self.captured:
            if msg.kind in (K.AUTH_REQUEST, K.EAP_REQUEST) and msg.sender is Role.SERVING:
                return msg
        return None

    def identity(self) -> bytes | None:
        for msg in self.captured:
            if msg.kind is K.IDENTITY:
                return msg["identity"]
        return None

    def observed_bytes(self) -> bytes:
        return b"".join(m.payload() for m in self.captured)


def assert_sound(adversary: Adversary, secrets) -> None:
    """Fail loudly if the adversary ever came to hold long-term secret material."""
    seen: set[int] = set()

    def walk(obj):
        if id(obj) in seen:
            return
        seen.add(id(obj))
        if isinstance(obj, (RootKey, Usim)):
            raise AssertionError(f"adversary holds {type(obj).__name__}")
        if isinstance(obj, (bytes, bytearray)):
            for secret in secrets:
                if secret and bytes(secret) in obj:
                    raise AssertionError("adversary holds long-term key bytes")
        elif isinstance(obj, dict):
            for k, v in obj.items():
                walk(k)
                walk(v)
        elif isinstance(obj, (list, tuple, set, frozenset)):
            for v in obj:
                walk(v)
        elif hasattr(obj, "__dict__"):
            walk(vars(obj))

    walk(adversary)
    walk(adversary.observed_bytes())


class ImpersonatingNetwork:
    """Stands in for the serving network on the radio side.

    ``forge`` turns the captured challenge into the one actually sent.
    """

    role = Role.SERVING

    def __init__(self, variant: Variant, adversary: Adversary, challenge: AkaMessage, forge=None):
        self.variant = variant
        self.adversary = adversary
        self._challenge = challenge
        self._forge = forge or (lambda m: m)
        self.phase = Phase.INITIAL
        self.victim_identity: bytes | None = None
        self.response: AkaMessage | None = None

    @property
    def terminal(self):
        return self.phase.terminal

    def step(self, inbox):
        out = []
        for msg in inbox:
            self.adversary.observe(msg)
            if msg.kind is K.IDENTITY and self.phase is Phase.INITIAL:
                self.victim_identity = msg["identity"]
                forged = self._forge(self._challenge)
                sent = AkaMessage(forged.kind, Role.SERVING, Role.UE, forged.fields)
                self.phase = Phase.AWAIT_RESPONSE
                out.append(sent)
            elif self.phase is Phase.AWAIT_RESPONSE:
                self.response = msg
                ok = msg.kind in (K.AUTH_RESPONSE, K.EAP_RESPONSE) and msg.get("cause") is None \
                    and msg.get("auts") is None
                self.phase = Phase.SUCCESS if ok else Phase.AUTH_REJECT
        return out


def forge_fresh_sqn(step: int):
    """Keep RAND, shift the concealed SQN forward by one step; the MAC cannot follow."""

    def forge(msg: AkaMessage) -> AkaMessage:
        autn = msg.get("autn")
        if autn is None:
            return msg
        shifted = (int.from_bytes(autn[:6], "big") ^ step).to_bytes(6, "big")
        return msg.replace(autn=shifted + autn[6:])

    return forge


class RogueServingNetwork:
    """A serving network that talks to the home network without any UE present."""

    role = Role.SERVING

    def __init__(self, variant: Variant, identity: bytes, network: bytes | None,
                 request_variant: Variant | None = None):
        self.variant = request_variant or variant
        self.identity = identity
        self.network = network
        self.phase = Phase.INITIAL
        self.received: list[AkaMessage] = []

    @property
    def terminal(self):
        return self.phase.terminal

    def step(self, inbox):
        if self.phase is Phase.INITIAL and not inbox:
            self.phase = Phase.AWAIT_VECTOR
            fields = {"identity": self.identity}
            if self.network is not None:
                fields["serving_network"] = self.network
            return [AkaMessage.make(K.AV_REQUEST, Role.SERVING, Role.HOME, **fields)]
        out = []
        for msg in inbox:
            self.received.append(msg)
            if self.phase is not Phase.AWAIT_VECTOR:
                if msg.kind is K.AUTH_RESULT:
                    self.phase = Phase.SUCCESS if msg["ok"] == b"\x01" else Phase.AUTH_REJECT
                continue
            # claim the UE answered, without being able to know what it would say
            if msg.kind is K.AV_RESPONSE and "hxres_star" in dict(msg.fields):
                self.phase = Phase.AWAIT_RESULT
                out.append(AkaMessage.make(K.AUTH_CONFIRM, Role.SERVING, Role.HOME,
                                           res_star=bytes(16)))
            elif msg.kind is K.EAP_REQUEST:
                self.phase = Phase.AWAIT_RESULT
                out.append(AkaMessage.make(K.EAP_RESPONSE, Role.SERVING, Role.HOME,
                                           res=bytes(8)))
            else:
                self.phase = Phase.SUCCESS if msg.kind is K.AV_RESPONSE else Phase.AUTH_REJECT
        return out

"""State machines for the UE, the serving core network and the home core network.

Each party is stepped with the messages addressed to it and returns the
messages it wants sent.  Every cryptographic check happens at the party that
owns it in the real system; a message arriving in the wrong phase is logged
as a violation and otherwise ignored.
"""

from __future__ import annotations

import enum
import hmac
import random
from dataclasses import dataclass

from akasim.crypto.eap import eap_aka_keys, eap_aka_prime_keys
from akasim.crypto.gsm import kc128_ki128
from akasim.crypto.hierarchy import (FiveGMode, derive_ck_ik_prime, derive_hres_star, derive_kamf,
                                     derive_kasme, derive_kausf_kseaf_kamf, derive_kseaf,
                                     derive_res_star)
from akasim.crypto.suci import suci_conceal, suci_deconceal
from akasim.crypto.types import ServingNetworkId, SuciEnvelope, SuciScheme
from akasim.engines.keys import VARIANT_KEYS, SessionKeys
from akasim.engines.messages import AkaMessage, MessageKind as K
from akasim.engines.usim import Usim, UsimStatus
from akasim.errors import AkaError, ConfigurationError, UnavailableError
from akasim.variants import Role, Variant
from akasim.vectors import VectorFactory

OK = b"\x01"
FAIL = b"\x00"
DEFAULT_ABBA = b"\x00\x00"


class Phase(str, enum.Enum):
    INITIAL = "initial"
    AWAIT_CHALLENGE = "await_challenge"
    AWAIT_VECTOR = "await_vector"
    AWAIT_RESPONSE = "await_response"
    AWAIT_CONFIRM = "await_confirm"
    AWAIT_RESULT = "await_result"
    SUCCESS = "success"
    AUTH_REJECT = "auth_reject"
    MAC_FAILURE = "mac_failure"
    SYNC_FAILURE = "sync_failure"
    RES_MISMATCH = "res_mismatch"

    @property
    def terminal(self) -> bool:
        return self in TERMINAL


TERMINAL = frozenset({Phase.SUCCESS, Phase.AUTH_REJECT, Phase.MAC_FAILURE, Phase.SYNC_FAILURE,
                      Phase.RES_MISMATCH})


@dataclass
class PartyConfig:
    """Material a party legitimately holds.  Unused fields stay None."""

    usim: Usim | None = None
    serving_network: ServingNetworkId | None = None
    factory: VectorFactory | None = None
    hn_private_key: bytes | None = None
    hn_public_key: bytes | None = None
    hn_key_id: int = 1
    suci_scheme: SuciScheme = SuciScheme.ECIES_PROFILE_A
    abba: bytes = DEFAULT_ABBA
    rng: random.Random | None = None


class Party:
    role: Role

    def __init__(self, variant: Variant, config: PartyConfig):
        self.variant = Variant(variant)
        self.config = config
        self.phase = Phase.INITIAL
        self.keys: dict[str, bytes] = {}
        self.violations: list[str] = []
        self.peer_identity: bytes | None = None

    def __repr__(self):
        return f"{type(self).__name__}({self.variant.value}, phase={self.phase.value})"

    @property
    def terminal(self) -> bool:
        return self.phase.terminal

    def _send(self, kind, receiver, **fields) -> AkaMessage:
        return AkaMessage.make(kind, self.role, receiver, **fields)

    def _violation(self, msg: AkaMessage):
        self.violations.append(f"{msg.kind.value} from {msg.sender.value} in {self.phase.value}")

    def step(self, inbox: list[AkaMessage]) -> list[AkaMessage]:
        if self.phase is Phase.INITIAL and not inbox:
            return self._start()
        outbox: list[AkaMessage] = []
        for msg in inbox:
            try:
                out = self._handle(msg)
            except AkaError as exc:
                self.violations.append(f"{msg.kind.value}: {exc}")
                out = None
            if out is None:
                self._violation(msg)
            else:
                outbox.extend(out)
        return outbox

    def _start(self) -> list[AkaMessage]:
        return []

    def _handle(self, msg: AkaMessage) -> list[AkaMessage] | None:
        """Return the messages to send, or None when ``msg`` is unexpected here."""
        raise NotImplementedError

    def held_keys(self) -> tuple[str, ...]:
        raise NotImplementedError

    def session_keys(self) -> SessionKeys:
        if self.phase is not Phase.SUCCESS:
            raise UnavailableError(f"{self.role.value} ended in {self.phase.value}")
        return SessionKeys(self.variant, {n: self.keys[n] for n in self.held_keys()
                                          if n in self.keys})


def _need_network(variant: Variant, config: PartyConfig, role: Role):
    kind = variant.network_kind
    if kind is None:
        return
    net = config.serving_network
    if net is None or net.kind != kind:
        raise ConfigurationError(f"{role.value} for {variant.value} needs a {kind} serving network")


class UeParty(Party):
    role = Role.UE

    def __init__(self, variant, config):
        super().__init__(variant, config)
        if config.usim is None:
            raise ConfigurationError("UE needs a USIM holding the root key")
        _need_network(self.variant, config, self.role)
        if self.variant.is_5g and config.suci_scheme is not SuciScheme.NULL \
                and config.hn_public_key is None:
            raise ConfigurationError("UE needs the home network public key to conceal its SUPI")
        self.rng = config.rng or random.Random()

    @property
    def usim(self) -> Usim:
        return self.config.usim

    def held_keys(self):
        return VARIANT_KEYS[self.variant]

    def _identity(self) -> bytes:
        if not self.variant.is_5g:
            return self.usim.imsi.encode()
        env = suci_conceal(self.usim.supi.encode(), self.config.suci_scheme,
                           self.config.hn_public_key or b"", hn_key_id=self.config.hn_key_id,
                           ephemeral_key=self.rng.randbytes(32))
        return env.to_bytes()

    def _start(self):
        self.phase = Phase.AWAIT_CHALLENGE
        return [self._send(K.IDENTITY, Role.SERVING, identity=self._identity())]

    def _fail(self, phase: Phase, cause: str):
        self.phase = phase
        kind = K.EAP_RESPONSE if self.variant.is_eap else K.AUTH_FAILURE
        return [self._send(kind, Role.SERVING, cause=cause.encode())]

    def _handle(self, msg):
        expected = K.EAP_REQUEST if self.variant.is_eap else K.AUTH_REQUEST
        if self.phase is not Phase.AWAIT_CHALLENGE or msg.kind is not expected:
            return None
        v = self.variant
        rand = msg["rand"]
        if v is Variant.GSM:
            sres, kc = self.usim.run_gsm(rand)
            self.keys["kc"] = kc
            self.phase = Phase.SUCCESS
            return [self._send(K.AUTH_RESPONSE, Role.SERVING, res=sres)]

        own_net = self.config.serving_network
        if v in (Variant.EAP_AKA_PRIME, Variant.FIVEG_EAP_AKA_PRIME):
            # explicit check of the network name the home network used
            if msg.get("kdf_input") != own_net.value:
                return self._fail(Phase.AUTH_REJECT, "network_name_mismatch")

        result = self.usim.authenticate(rand, msg["autn"], check_amf=v.checks_amf)
        if result.status is UsimStatus.MAC_FAILURE:
            return self._fail(Phase.MAC_FAILURE, "mac_failure")
        if result.status is UsimStatus.AMF_FAILURE:
            return self._fail(Phase.AUTH_REJECT, "amf_separation")
        if result.status is UsimStatus.SYNC_FAILURE:
            self.phase = Phase.SYNC_FAILURE
            kind = K.EAP_RESPONSE if v.is_eap else K.RESYNC
            return [self._send(kind, Role.SERVING, auts=result.auts)]

        ck, ik, res = result.ck, result.ik, result.res
        reply_kind, reply = K.AUTH_RESPONSE, {"res": res}
        if v is Variant.UMTS:
            self.keys.update(ck=ck, ik=ik)
        elif v is Variant.ECGSM_IOT:
            self.keys["kc128"], self.keys["ki128"] = kc128_ki128(ck, ik)
        elif v is Variant.EPS:
            self.keys["kasme"] = derive_kasme(ck, ik, own_net, result.sqn_xor_ak)
        elif v is Variant.EAP_AKA:
            k = eap_aka_keys(self.usim.imsi.encode(), ik, ck)
            self.keys.update(msk=k.msk, emsk=k.emsk)
            reply_kind = K.EAP_RESPONSE
        elif v is Variant.EAP_AKA_PRIME:
            ck_p, ik_p = derive_ck_ik_prime(ck, ik, own_net, result.sqn_xor_ak)
            k = eap_aka_prime_keys(self.usim.imsi.encode(), ik_p, ck_p)
            self.keys.update(msk=k.msk, emsk=k.emsk)
            reply_kind = K.EAP_RESPONSE
        elif v is Variant.FIVEG_AKA:
            abba = msg.get("abba", DEFAULT_ABBA)
            reply = {"res_star": derive_res_star(ck, ik, own_net, rand, res)}
            self.keys.update(derive_kausf_kseaf_kamf(ck, ik, own_net, result.sqn_xor_ak,
                                                     self.usim.supi.encode(), abba,
                                                     FiveGMode.FIVEG_AKA)._asdict())
        elif v is Variant.FIVEG_EAP_AKA_PRIME:
            abba = msg.get("abba", DEFAULT_ABBA)
            ck_p, ik_p = derive_ck_ik_prime(ck, ik, own_net, result.sqn_xor_ak)
            k = eap_aka_prime_keys(self.usim.supi.encode(), ik_p, ck_p)
            self.keys.update(derive_kausf_kseaf_kamf(ck, ik, own_net, result.sqn_xor_ak,
                                                     self.usim.supi.encode(), abba,
                                                     FiveGMode.FIVEG_EAP_AKA_PRIME,
                                                     emsk=k.emsk)._asdict())
            reply_kind = K.EAP_RESPONSE
        self.phase = Phase.SUCCESS
        return [self._send(reply_kind, Role.SERVING, **reply)]


class ServingParty(Party):
    """MSC/VLR, SGSN, MME, ePDG, SEAF/AMF depending on the variant."""

    role = Role.SERVING

    def __init__(self, variant, config):
        super().__init__(variant, config)
        _need_network(self.variant, config, self.role)
        self.expected: bytes | None = None
        self.rand: bytes | None = None
        self.pending: dict[str, bytes] = {}

    def held_keys(self):
        return {
            Variant.EAP_AKA: ("msk",),
            Variant.EAP_AKA_PRIME: ("msk",),
            Variant.FIVEG_AKA: ("kseaf", "kamf"),
            Variant.FIVEG_EAP_AKA_PRIME: ("kseaf", "kamf"),
        }.get(self.variant, VARIANT_KEYS[self.variant])

    def _handle(self, msg):
        v = self.variant
        if msg.sender is Role.UE:
            return self._from_ue(msg)
        if self.phase is Phase.AWAIT_VECTOR and msg.kind is K.AV_RESPONSE and not v.is_eap:
            self.rand = msg["rand"]
            if v is Variant.FIVEG_AKA:
                self.expected = msg["hxres_star"]
            else:
                self.expected = msg["xres"]
                for name in VARIANT_KEYS[v]:
                    self.pending[name] = msg[name]
            self.phase = Phase.AWAIT_RESPONSE
            req = {"rand": self.rand}
            if v.has_autn:
                req["autn"] = msg["autn"]
            if v is Variant.FIVEG_AKA:
                req["abba"] = self.config.abba
            return [self._send(K.AUTH_REQUEST, Role.UE, **req)]
        if self.phase is Phase.AWAIT_VECTOR and msg.kind is K.EAP_REQUEST and v.is_eap:
            self.phase = Phase.AWAIT_RESPONSE
            fields = dict(msg.fields)
            if v is Variant.FIVEG_EAP_AKA_PRIME:
                fields["abba"] = self.config.abba
            return [self._send(K.EAP_REQUEST, Role.UE, **fields)]
        if self.phase is Phase.AWAIT_VECTOR and msg.kind is K.AUTH_RESULT:
            # home network refused to issue a vector
            self.phase = Phase.AUTH_REJECT
            return []
        if self.phase is Phase.AWAIT_RESULT and msg.kind is K.AUTH_RESULT:
            if msg["ok"] != OK:
                self.phase = Phase.AUTH_REJECT
                return []
            if v.is_5g:
                self.keys["kseaf"] = msg["kseaf"]
                self.peer_identity = msg["supi"]
                self.keys["kamf"] = derive_kamf(msg["kseaf"], msg["supi"], self.config.abba)
            else:
                self.keys["msk"] = msg["msk"]
            self.phase = Phase.SUCCESS
            return []
        if self.phase is Phase.AWAIT_RESULT and msg.kind is K.RESYNC:
            return []
        return None

    def _from_ue(self, msg):
        v = self.variant
        if self.phase is Phase.INITIAL and msg.kind is K.IDENTITY:
            self.peer_identity = msg["identity"]
            self.phase = Phase.AWAIT_VECTOR
            req = {"identity": msg["identity"]}
            if self.config.serving_network is not None:
                req["serving_network"] = self.config.serving_network.value
            return [self._send(K.AV_REQUEST, Role.HOME, **req)]
        if self.phase is not Phase.AWAIT_RESPONSE:
            return None
        if v.is_eap and msg.kind is K.EAP_RESPONSE:
            # authenticator only relays; the home network decides
            self.phase = Phase.SYNC_FAILURE if msg.get("auts") else Phase.AWAIT_RESULT
            return [self._send(K.EAP_RESPONSE, Role.HOME, **dict(msg.fields))]
        if msg.kind is K.AUTH_FAILURE:
            self.phase = Phase.RES_MISMATCH
            return []
        if msg.kind is K.RESYNC:
            self.phase = Phase.SYNC_FAILURE
            return [self._send(K.RESYNC, Role.HOME, rand=self.rand, auts=msg["auts"])]
        if msg.kind is not K.AUTH_RESPONSE:
            return None
        if v is Variant.FIVEG_AKA:
            res_star = msg["res_star"]
            if not hmac.compare_digest(derive_hres_star(self.rand, res_star), self.expected):
                self.phase = Phase.RES_MISMATCH
                return []
            self.phase = Phase.AWAIT_RESULT
            return [self._send(K.AUTH_CONFIRM, Role.HOME, res_star=res_star)]
        if not hmac.compare_digest(msg["res"], self.expected):
            self.phase = Phase.RES_MISMATCH
            return []
        self.keys.update(self.pending)
        self.phase = Phase.SUCCESS
        return []


class HomeParty(Party):
    """AuC/HLR, HSS, 3GPP AAA server, or AUSF+UDM+SIDF depending on the variant."""

    role = Role.HOME

    def __init__(self, variant, config):
        super().__init__(variant, config)
        if config.factory is None:
            raise ConfigurationError("home network needs a vector factory bound to its store")
        if self.variant.is_5g and config.suci_scheme is not SuciScheme.NULL \
                and config.hn_private_key is None:
            raise ConfigurationError("home network needs its SUCI private key")
        # True only once the home network itself has checked a UE response
        self.ue_verified = False
        self.record = None
        self.expected: bytes | None = None
        self.rand: bytes | None = None
        self.resynchronized = False
        self._result: dict[str, bytes] = {}

    @property
    def factory(self) -> VectorFactory:
        return self.config.factory

    def held_keys(self):
        return {
            Variant.EAP_AKA: ("emsk",),
            Variant.EAP_AKA_PRIME: ("emsk",),
            Variant.FIVEG_AKA: ("kausf",),
            Variant.FIVEG_EAP_AKA_PRIME: ("kausf",),
        }.get(self.variant, ())

    def _resolve(self, identity: bytes):
        if self.variant.is_5g:
            env = SuciEnvelope.from_bytes(identity)
            identity = suci_deconceal(env, self.config.hn_private_key or b"")
        rec = self.factory.store.lookup(identity.decode())
        if self.variant not in rec.enabled_generations:
            raise ConfigurationError(f"{self.variant.value} not enabled for subscriber")
        return rec

    def _network(self, msg, kind):
        return ServingNetworkId(kind, msg["serving_network"])

    def _handle(self, msg):
        if msg.kind is K.RESYNC or (msg.kind is K.EAP_RESPONSE and msg.get("auts")):
            if self.record is None or self.rand is None:
                return None
            self.factory.store.resynchronize(self.record.imsi, self.rand, msg["auts"])
            self.resynchronized = True
            if not self.phase.terminal:
                self.phase = Phase.SYNC_FAILURE
            return []
        if self.phase is Phase.INITIAL and msg.kind is K.AV_REQUEST:
            try:
                self.record = self._resolve(msg["identity"])
            except AkaError as exc:
                self.violations.append(f"identity rejected: {exc}")
                self.phase = Phase.AUTH_REJECT
                return [self._send(K.AUTH_RESULT, Role.SERVING, ok=FAIL)]
            return self._issue(msg)
        if self.phase is Phase.AWAIT_CONFIRM and msg.kind is K.AUTH_CONFIRM:
            return self._verify(msg["res_star"])
        if self.phase is Phase.AWAIT_RESPONSE and msg.kind is K.EAP_RESPONSE:
            if msg.get("cause") is not None:
                self.phase = Phase.RES_MISMATCH
                return [self._send(K.AUTH_RESULT, Role.SERVING, ok=FAIL)]
            return self._verify(msg["res"])
        return None

    def _verify(self, response: bytes):
        if not hmac.compare_digest(response, self.expected):
            self.phase = Phase.RES_MISMATCH
            return [self._send(K.AUTH_RESULT, Role.SERVING, ok=FAIL)]
        self.ue_verified = True
        self.phase = Phase.SUCCESS
        return [self._send(K.AUTH_RESULT, Role.SERVING, ok=OK, **self._result)]

    def _issue(self, msg):
        v, rec, f = self.variant, self.record, self.factory
        if v is Variant.GSM:
            t = f.gen_triplet(rec)
            self.rand = t.rand
            self.phase = Phase.SUCCESS
            return [self._send(K.AV_RESPONSE, Role.SERVING, rand=t.rand, xres=t.xres, kc=t.kc)]
        if v is Variant.UMTS:
            q = f.gen_quintet(rec)
            av = dict(rand=q.rand, xres=q.xres, ck=q.ck, ik=q.ik, autn=q.autn)
        elif v is Variant.ECGSM_IOT:
            q = f.gen_ecgsm_av(rec)
            av = dict(rand=q.rand, xres=q.xres, kc128=q.kc128, ki128=q.ki128, autn=q.autn)
        elif v is Variant.EPS:
            e = f.gen_eps_av(rec, self._network(msg, "snid_4g"))
            av = dict(rand=e.rand, xres=e.xres, autn=e.autn, kasme=e.kasme)
        elif v is Variant.FIVEG_AKA:
            he = f.gen_5g_he_av(rec, self._network(msg, "snn"))
            se = f.reduce_to_se_av(he)
            self.rand, self.expected = he.rand, he.xres_star
            self.keys["kausf"] = he.kausf
            # KSEAF is withheld until the home network has seen RES*
            self._result = {"kseaf": se.kseaf, "supi": rec.supi.encode()}
            self.phase = Phase.AWAIT_CONFIRM
            return [self._send(K.AV_RESPONSE, Role.SERVING, rand=se.rand, autn=se.autn,
                               hxres_star=se.hxres_star)]
        else:
            net = None
            if v is Variant.EAP_AKA_PRIME:
                net = self._network(msg, "ani")
            elif v is Variant.FIVEG_EAP_AKA_PRIME:
                net = self._network(msg, "snn")
            m = f.gen_eap_material(rec, v, net)
            self.rand, self.expected = m.rand, m.xres
            if v is Variant.FIVEG_EAP_AKA_PRIME:
                kausf = m.emsk[:32]
                self.keys["kausf"] = kausf
                self._result = {"kseaf": derive_kseaf(kausf, net), "supi": rec.supi.encode()}
            else:
                self.keys["emsk"] = m.emsk
                self._result = {"msk": m.msk}
            self.phase = Phase.AWAIT_RESPONSE
            req = dict(rand=m.rand, autn=m.autn)
            if net is not None:
                req["kdf_input"] = net.value
            return [self._send(K.EAP_REQUEST, Role.SERVING, **req)]
        # serving-terminated variants: the home network's part ends here,
        # without ever seeing a response from the UE
        self.rand = av["rand"]
        self.phase = Phase.SUCCESS
        return [self._send(K.AV_RESPONSE, Role.SERVING, **av)]


_ROLE_CLASSES = {Role.UE: UeParty, Role.SERVING: ServingParty, Role.HOME: HomeParty}


def new_party(role: Role | str, variant: Variant | str, config: PartyConfig) -> Party:
    return _ROLE_CLASSES[Role(role)](Variant(variant), config)


def step(party: Party, inbox: list[AkaMessage]) -> tuple[Party, list[AkaMessage]]:
    """Advance ``party`` in place; returned for call-chaining convenience."""
    outbox = party.step(inbox)
    return party, outbox


def extract_session_keys(party: Party) -> SessionKeys:
    return party.session_keys()

"""Attack scenarios.  Each verdict comes from a predicate over party outcomes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from akasim.engines.messages import AkaMessage, MessageKind as K
from akasim.engines.parties import Phase
from akasim.engines.runner import ProtocolTranscript, run_to_completion
from akasim.errors import NotFoundError
from akasim.harness.adversary import (Adversary, AdversaryKind, ImpersonatingNetwork,
                                      RogueServingNetwork, assert_sound, forge_fresh_sqn)
from akasim.harness.bus import Bus
from akasim.harness.world import NETWORK_A, NETWORK_B, World, build_world
from akasim.variants import Role, Variant


@dataclass
class ScenarioOutcome:
    scenario: str
    variant: Variant
    seed: int
    verdicts: dict[str, str]
    attack_succeeded: bool
    evidence: list[tuple[str, ProtocolTranscript]] = field(default_factory=list)
    notes: dict[str, str] = field(default_factory=dict)

    def evidence_text(self) -> str:
        parts = [f"# scenario {self.scenario} variant {self.variant.value} seed {self.seed}",
                 f"# attack_succeeded {str(self.attack_succeeded).lower()}"]
        for k in sorted(self.verdicts):
            parts.append(f"# verdict {k} {self.verdicts[k]}")
        for k in sorted(self.notes):
            parts.append(f"# note {k} {self.notes[k]}")
        for label, tr in self.evidence:
            parts.append(f"## transcript {label}")
            parts.append(tr.dumps().rstrip("\n"))
        return "\n".join(parts) + "\n"


def _legit_run(world: World, adversary: Adversary | None = None):
    bus = world.bus()
    if adversary is not None:
        bus.tap(adversary.observe)
    ue, sn, hn = world.parties()
    tr = run_to_completion([ue, sn, hn], bus)
    return tr, ue, sn, hn


def _verdicts(prefix: str, transcript: ProtocolTranscript) -> dict[str, str]:
    return {f"{prefix}.{r.value}": p for r, p in transcript.outcome.items()}


def false_base_station(variant: Variant, seed: int, **world_kw) -> ScenarioOutcome:
    """A fake network reuses a captured challenge, trying to pass it off as fresh."""
    world = build_world(variant, seed, **world_kw)
    adv = Adversary(AdversaryKind.FALSE_BASE_STATION)
    legit, *_ = _legit_run(world, adv)
    fbs = ImpersonatingNetwork(world.variant, adv, adv.challenge(),
                               forge_fresh_sqn(world.store.policy.step))
    victim = world.ue()
    attack = run_to_completion([victim, fbs], Bus(seed))
    assert_sound(adv, world.secrets())
    verdicts = {**_verdicts("legit", legit), **_verdicts("attack", attack)}
    return ScenarioOutcome("false_base_station", world.variant, seed, verdicts,
                           victim.phase is Phase.SUCCESS,
                           [("legit", legit), ("attack", attack)])


def replay(variant: Variant, seed: int, **world_kw) -> ScenarioOutcome:
    """Replay a captured challenge verbatim to the same UE after the legitimate run."""
    world = build_world(variant, seed, **world_kw)
    adv = Adversary(AdversaryKind.REPLAYER)
    legit, *_ = _legit_run(world, adv)
    victim = world.ue()
    attack = run_to_completion([victim, ImpersonatingNetwork(world.variant, adv, adv.challenge())],
                               Bus(seed))
    assert_sound(adv, world.secrets())
    verdicts = {**_verdicts("legit", legit), **_verdicts("attack", attack)}
    return ScenarioOutcome("replay", world.variant, seed, verdicts,
                           victim.phase is Phase.SUCCESS, [("legit", legit), ("attack", attack)])


def cross_network_key_reuse(variant: Variant, seed: int, **world_kw) -> ScenarioOutcome:
    """Identical subscriber, RAND and SQN at two serving networks: do the keys coincide?"""
    adv = Adversary(AdversaryKind.CROSS_NETWORK_KEY_REUSE)
    runs = {}
    for label, nets in (("A", NETWORK_A), ("B", NETWORK_B)):
        world = build_world(variant, seed, network_set=nets, **world_kw)
        tr, ue, sn, hn = _legit_run(world, adv if label == "A" else None)
        runs[label] = (world, tr, ue)
    (wa, tra, uea), (_, trb, ueb) = runs["A"], runs["B"]
    keys_a, keys_b = uea.session_keys(), ueb.session_keys()
    # network A's operator holds A's session keys; nothing more
    adv.observed_keys = dict(keys_a.keys)
    assert_sound(adv, wa.secrets())
    same = {n: keys_a[n] == keys_b[n] for n in keys_a.names()}
    notes = {f"equal.{n}": str(v).lower() for n, v in same.items()}
    notes["rand_equal"] = str(_first(tra, "rand") == _first(trb, "rand")).lower()
    if Variant(variant) is Variant.FIVEG_AKA:
        notes["equal.res_star"] = str(_first(tra, "res_star") == _first(trb, "res_star")).lower()
    verdicts = {**_verdicts("A", tra), **_verdicts("B", trb)}
    return ScenarioOutcome("cross_network_key_reuse", wa.variant, seed, verdicts,
                           all(same.values()), [("network_A", tra), ("network_B", trb)], notes)


def _first(tr: ProtocolTranscript, name: str):
    for m in tr.messages(air_only=True):
        if m.get(name) is not None:
            return m[name]
    return None


def home_presence_check(variant: Variant, seed: int, **world_kw) -> ScenarioOutcome:
    """A serving network asserts a UE is attached using only a captured identity."""
    world = build_world(variant, seed, **world_kw)
    adv = Adversary(AdversaryKind.ROGUE_SERVING_NETWORK)
    legit, *_ = _legit_run(world, adv)
    net = world.serving_network.value if world.serving_network else None
    rogue = RogueServingNetwork(world.variant, adv.identity(), net)
    home = world.home()
    attack = run_to_completion([rogue, home], Bus(seed))
    assert_sound(adv, world.secrets())
    verdicts = {**_verdicts("legit", legit), **_verdicts("attack", attack)}
    return ScenarioOutcome("home_presence_check", world.variant, seed, verdicts,
                           home.phase is Phase.SUCCESS, [("legit", legit), ("attack", attack)],
                           {"home_verified_ue": str(home.ue_verified).lower()})


def identity_exposure(variant: Variant, seed: int, **world_kw) -> ScenarioOutcome:
    """A passive listener on the radio link looks for the permanent identifier."""
    world = build_world(variant, seed, **world_kw)
    adv = Adversary(AdversaryKind.PASSIVE_EAVESDROPPER)
    legit, *_ = _legit_run(world, adv)
    assert_sound(adv, world.secrets())
    exposed = world.usim.imsi.encode() in adv.observed_bytes()
    ident = adv.identity() or b""
    return ScenarioOutcome("identity_exposure", world.variant, seed, _verdicts("legit", legit),
                           exposed, [("legit", legit)],
                           {"observed_identity": ident.hex()})


def amf_separation(variant: Variant, seed: int, **world_kw) -> ScenarioOutcome:
    """Serve the UE a valid vector that was issued for 3G (AMF bit 0 clear)."""
    world = build_world(variant, seed, **world_kw)
    adv = Adversary(AdversaryKind.ROGUE_SERVING_NETWORK)
    # acting as a legitimate 3G network, obtain a UMTS quintet for the subscriber
    identity = world.usim.imsi.encode()
    rogue = RogueServingNetwork(Variant.UMTS, identity, None)
    fetch = run_to_completion([rogue, world.home(Variant.UMTS)], Bus(seed))
    av = next(m for m in rogue.received if m.kind is K.AV_RESPONSE)
    fields = {"rand": av["rand"]}
    if world.variant.has_autn:
        fields["autn"] = av["autn"]
    if world.ue_network is not None and world.variant.is_eap:
        fields["kdf_input"] = world.ue_network.value
    if world.variant.is_5g:
        fields["abba"] = world.abba
    kind = K.EAP_REQUEST if world.variant.is_eap else K.AUTH_REQUEST
    challenge = AkaMessage.make(kind, Role.SERVING, Role.UE, **fields)
    adv.captured.append(challenge)
    victim = world.ue()
    attack = run_to_completion([victim, ImpersonatingNetwork(world.variant, adv, challenge)],
                               Bus(seed))
    assert_sound(adv, world.secrets())
    verdicts = {**_verdicts("fetch", fetch), **_verdicts("attack", attack)}
    return ScenarioOutcome("amf_separation", world.variant, seed, verdicts,
                           victim.phase is Phase.SUCCESS, [("fetch", fetch), ("attack", attack)])


SCENARIOS: dict[str, Callable[..., ScenarioOutcome]] = {
    "false_base_station": false_base_station,
    "replay": replay,
    "cross_network_key_reuse": cross_network_key_reuse,
    "home_presence_check": home_presence_check,
    "identity_exposure": identity_exposure,
    "amf_separation": amf_separation,
}

# property a scenario probes; the property holds exactly when the attack is blocked
PROPERTY_OF = {
    "false_base_station": "network_authentication",
    "replay": "replay_protection",
    "cross_network_key_reuse": "serving_network_binding",
    "home_presence_check": "home_verifies_ue",
    "identity_exposure": "identity_concealment",
    "amf_separation": "service_type_check",
}


def run_scenario(name: str, variant: Variant | str, seed: int = 0,
                 config: dict | None = None) -> ScenarioOutcome:
    """``config`` holds keyword overrides for :func:`build_world` (policy, abba, imsi)."""
    try:
        fn = SCENARIOS[name]
    except KeyError:
        raise NotFoundError(f"unknown scenario {name!r}") from None
    return fn(Variant(variant), seed, **(config or {}))

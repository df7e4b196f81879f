"""Build a self-contained simulated deployment for one variant and seed."""

from __future__ import annotations

import random
from dataclasses import dataclass

from akasim.crypto.suci import generate_hn_keypair
from akasim.crypto.types import RootKey, ServingNetworkId
from akasim.engines.parties import (DEFAULT_ABBA, HomeParty, PartyConfig, ServingParty, UeParty,
                                    new_party)
from akasim.engines.usim import Usim
from akasim.harness.bus import Bus
from akasim.store import SqnPolicy, SubscriberRecord, SubscriberStore
from akasim.variants import Role, Variant
from akasim.vectors import VectorFactory

DEFAULT_IMSI = "001010000000001"

NETWORK_A = {
    "snid_4g": ServingNetworkId.snid("001", "01"),
    "ani": ServingNetworkId.ani("WLAN-net-A"),
    "snn": ServingNetworkId.snn_for_plmn("001", "01"),
}
NETWORK_B = {
    "snid_4g": ServingNetworkId.snid("001", "02"),
    "ani": ServingNetworkId.ani("WLAN-net-B"),
    "snn": ServingNetworkId.snn_for_plmn("001", "02"),
}


def network_for(variant: Variant, which: dict = NETWORK_A) -> ServingNetworkId | None:
    kind = Variant(variant).network_kind
    return which[kind] if kind else None


@dataclass
class World:
    variant: Variant
    seed: int
    store: SubscriberStore
    factory: VectorFactory
    usim: Usim
    hn_private_key: bytes
    hn_public_key: bytes
    serving_network: ServingNetworkId | None
    ue_network: ServingNetworkId | None
    abba: bytes
    rng: random.Random

    def ue(self) -> UeParty:
        """A fresh UE session on the same (persistent) USIM."""
        return new_party(Role.UE, self.variant, PartyConfig(
            usim=self.usim, serving_network=self.ue_network, hn_public_key=self.hn_public_key,
            rng=self.rng))

    def serving(self, network: ServingNetworkId | None = None) -> ServingParty:
        return new_party(Role.SERVING, self.variant, PartyConfig(
            serving_network=network or self.serving_network, abba=self.abba))

    def home(self, variant: Variant | None = None) -> HomeParty:
        return new_party(Role.HOME, variant or self.variant, PartyConfig(
            factory=self.factory, hn_private_key=self.hn_private_key,
            hn_public_key=self.hn_public_key))

    def parties(self):
        return [self.ue(), self.serving(), self.home()]

    def bus(self) -> Bus:
        return Bus(seed=self.seed)

    def secrets(self) -> tuple[bytes, ...]:
        rec = self.store.lookup(self.usim.imsi)
        return rec.root.k, rec.root.op_c, self.hn_private_key


def build_world(variant: Variant | str, seed: int, *, serving_network: ServingNetworkId | None = None,
                ue_network: ServingNetworkId | None = None, network_set: dict = NETWORK_A,
                abba: bytes = DEFAULT_ABBA, policy: SqnPolicy | None = None,
                ue_root: RootKey | None = None, imsi: str = DEFAULT_IMSI) -> World:
    """Provision one subscriber and matching USIM from ``seed``.

    The home SQN starts one step above the USIM's so the first vector is fresh.
    ``ue_root`` lets a test hand the UE a different key from the one the home
    network holds.
    """
    variant = Variant(variant)
    policy = policy or SqnPolicy()
    material = random.Random(f"{seed}:subscriber")
    root = RootKey(material.randbytes(16), material.randbytes(16))
    hn_priv, hn_pub = generate_hn_keypair(material.randbytes(32))
    store = SubscriberStore(policy=policy)
    store.provision(SubscriberRecord(imsi=imsi, root=root, sqn_hn=policy.step))
    factory = VectorFactory(store, random.Random(f"{seed}:home"))
    usim = Usim(ue_root or root, imsi, policy=policy)
    net = serving_network or network_for(variant, network_set)
    return World(variant, seed, store, factory, usim, hn_priv, hn_pub, net,
                 ue_network or net, abba, random.Random(f"{seed}:ue"))


def world_from_store(store: SubscriberStore, ident: str, variant: Variant | str, seed: int, *,
                     serving_network: ServingNetworkId | None = None,
                     abba: bytes = DEFAULT_ABBA, ue_sqn: int | None = None) -> World:
    """Wrap an existing subscriber database; the USIM starts in step with the home SQN."""
    variant = Variant(variant)
    rec = store.lookup(ident)
    material = random.Random(f"{seed}:subscriber")
    hn_priv, hn_pub = generate_hn_keypair(material.randbytes(32))
    if ue_sqn is None:
        ue_sqn = max(rec.sqn_hn - store.policy.step, 0)
    usim = Usim(rec.root, rec.imsi, rec.supi, sqn_ms=ue_sqn, policy=store.policy)
    factory = VectorFactory(store, random.Random(f"{seed}:home"))
    return World(variant, seed, store, factory, usim, hn_priv, hn_pub, serving_network,
                 serving_network, abba, random.Random(f"{seed}:ue"))

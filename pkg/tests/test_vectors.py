import dataclasses
import random

import pytest

from akasim.crypto import RootKey, ServingNetworkId, derive_hres_star, gsm_derive, milenage
from akasim.crypto.hierarchy import derive_res_star
from akasim.errors import DomainError, ExhaustionError, NotFoundError
from akasim.store import SQN_MAX, SubscriberRecord, SubscriberStore
from akasim.vectors import (EapMaterial, FiveGSeAv, VectorFactory, separation_bit,
                            with_separation_bit)
from oracles import (eap_aka_keys_oracle, eap_aka_prime_keys_oracle, kdf_oracle, milenage_oracle,
                     res_star_oracle)

IMSI = "001010000000001"
ROOT = RootKey(bytes.fromhex("465b5ce8b199b49faa5f0a2ee238a6bc"),
               bytes.fromhex("cd63cb71954a9f4e48a5994e37a02baf"))
SNID_A = ServingNetworkId.snid("001", "01")
SNID_B = ServingNetworkId.snid("001", "02")
SNN_A = ServingNetworkId.snn_for_plmn("001", "01")
SNN_B = ServingNetworkId.snn_for_plmn("001", "02")
ANI = ServingNetworkId.ani("WLAN-net-A")


def factory(seed=1, **kw):
    store = SubscriberStore()
    store.provision(SubscriberRecord(imsi=IMSI, root=ROOT, **kw))
    return VectorFactory(store, random.Random(seed))


def open_autn(autn, rand):
    """Recover (sqn, amf, mac) from an AUTN using the oracle's AK."""
    ak = milenage_oracle(ROOT.k, ROOT.op_c, rand, bytes(6), bytes(2))["ak"]
    sqn = bytes(a ^ b for a, b in zip(autn[:6], ak))
    return sqn, autn[6:8], autn[8:]


def test_separation_bit_helpers():
    assert with_separation_bit(b"\x00\x00") == b"\x80\x00"
    assert with_separation_bit(b"\xff\xff", False) == b"\x7f\xff"
    assert separation_bit(b"\x80\x00") and not separation_bit(b"\x7f\xff")


def test_triplet():
    f = factory()
    t = f.gen_triplet(IMSI)
    assert (len(t.rand) * 8, len(t.xres) * 8, len(t.kc) * 8) == (128, 32, 64)
    assert (t.xres, t.kc) == gsm_derive(ROOT, t.rand)
    assert factory(2).gen_triplet(IMSI).rand != t.rand
    assert factory(1).gen_triplet(IMSI) == t
    with pytest.raises(NotFoundError):
        f.gen_triplet("001010000000002")


def test_quintet_consistency_and_freshness():
    f = factory()
    sqns = []
    for _ in range(5):
        q = f.gen_quintet(IMSI)
        assert [len(x) * 8 for x in (q.rand, q.xres, q.ck, q.ik, q.autn)] == [128, 64, 128, 128, 128]
        sqn, amf, mac = open_autn(q.autn, q.rand)
        o = milenage_oracle(ROOT.k, ROOT.op_c, q.rand, sqn, amf)
        assert (mac, q.xres, q.ck, q.ik, amf) == (o["mac_a"], o["res"], o["ck"], o["ik"], b"\x00\x00")
        sqns.append(int.from_bytes(sqn, "big"))
    assert sqns == [0, 32, 64, 96, 128]


def test_xres_length_configurable():
    q = VectorFactory(factory().store, random.Random(0), xres_len=4).gen_quintet(IMSI)
    assert len(q.xres) == 4
    with pytest.raises(DomainError):
        VectorFactory(SubscriberStore(), xres_len=9)


def test_quintet_propagates_exhaustion():
    f = factory(sqn_hn=SQN_MAX - 1)
    with pytest.raises(ExhaustionError):
        f.gen_quintet(IMSI)


def test_ecgsm_av():
    av = factory().gen_ecgsm_av(IMSI)
    sqn, amf, _ = open_autn(av.autn, av.rand)
    o = milenage_oracle(ROOT.k, ROOT.op_c, av.rand, sqn, amf)
    assert av.kc128 == kdf_oracle(o["ck"] + o["ik"], 0x32, [])[16:]
    assert av.ki128 == kdf_oracle(o["ck"] + o["ik"], 0x33, [])[16:]


def test_eps_av_binding_and_amf():
    a = factory(5).gen_eps_av(IMSI, SNID_A)
    b = factory(5).gen_eps_av(IMSI, SNID_B)
    assert a.rand == b.rand and a.autn == b.autn
    assert a.kasme != b.kasme and len(a.kasme) * 8 == 256
    sqn, amf, mac = open_autn(a.autn, a.rand)
    assert separation_bit(amf)
    o = milenage_oracle(ROOT.k, ROOT.op_c, a.rand, sqn, amf)
    assert mac == o["mac_a"]
    assert a.kasme == kdf_oracle(o["ck"] + o["ik"], 0x10, [SNID_A.value, a.autn[:6]])
    with pytest.raises(DomainError):
        factory().gen_eps_av(IMSI, SNN_A)


def test_5g_he_and_se_av():
    f = factory(3)
    he = f.gen_5g_he_av(IMSI, SNN_A)
    se = VectorFactory.reduce_to_se_av(he)
    assert isinstance(se, FiveGSeAv)
    assert "xres_star" not in {fl.name for fl in dataclasses.fields(se)}
    assert "kausf" not in {fl.name for fl in dataclasses.fields(se)}
    assert se.hxres_star == derive_hres_star(he.rand, he.xres_star)
    sqn, amf, _ = open_autn(he.autn, he.rand)
    assert separation_bit(amf)
    o = milenage_oracle(ROOT.k, ROOT.op_c, he.rand, sqn, amf)
    assert he.xres_star == res_star_oracle(o["ck"], o["ik"], SNN_A.value, he.rand, o["res"])
    assert he.kausf == kdf_oracle(o["ck"] + o["ik"], 0x6A, [SNN_A.value, he.autn[:6]])
    assert se.kseaf == kdf_oracle(he.kausf, 0x6C, [SNN_A.value])
    other = factory(3).gen_5g_he_av(IMSI, SNN_B)
    assert other.rand == he.rand and other.xres_star != he.xres_star
    with pytest.raises(DomainError):
        f.gen_5g_he_av(IMSI, SNID_A)


def test_se_av_sufficiency():
    # the serving check on HRES* passes exactly when the home check on RES* passes
    f = factory(4)
    rng = random.Random(0)
    for _ in range(20):
        he = f.gen_5g_he_av(IMSI, SNN_A)
        se = f.reduce_to_se_av(he)
        sqn, amf, _ = open_autn(he.autn, he.rand)
        out = milenage(ROOT, he.rand, sqn, amf)
        good = derive_res_star(out.ck, out.ik, SNN_A, he.rand, out.res)
        bad = bytes(b ^ (1 << rng.randrange(8)) if i == rng.randrange(16) else b
                    for i, b in enumerate(good))
        for res_star in (good, bad):
            assert (derive_hres_star(he.rand, res_star) == se.hxres_star) == \
                (res_star == he.xres_star)


def test_eap_material():
    f = factory(6)
    m = f.gen_eap_material(IMSI, "eap_aka")
    assert isinstance(m, EapMaterial) and (len(m.msk) * 8, len(m.emsk) * 8) == (512, 512)
    sqn, amf, _ = open_autn(m.autn, m.rand)
    o = milenage_oracle(ROOT.k, ROOT.op_c, m.rand, sqn, amf)
    assert m.msk == eap_aka_keys_oracle(IMSI.encode(), o["ik"], o["ck"])["msk"]

    p = factory(6).gen_eap_material(IMSI, "eap_aka_prime", ANI)
    assert p.rand == m.rand and p.msk != m.msk
    sqn, amf, _ = open_autn(p.autn, p.rand)
    assert separation_bit(amf)
    o = milenage_oracle(ROOT.k, ROOT.op_c, p.rand, sqn, amf)
    prime = kdf_oracle(o["ck"] + o["ik"], 0x20, [ANI.value, p.autn[:6]])
    assert p.msk == eap_aka_prime_keys_oracle(IMSI.encode(), prime[16:], prime[:16])["msk"]

    with pytest.raises(DomainError):
        f.gen_eap_material(IMSI, "eap_aka_prime")
    with pytest.raises(DomainError):
        f.gen_eap_material(IMSI, "umts")


def test_vectors_never_share_sqn():
    f = factory(8)
    seen = set()
    for gen in [lambda: f.gen_quintet(IMSI), lambda: f.gen_eps_av(IMSI, SNID_A),
                lambda: f.gen_5g_he_av(IMSI, SNN_A),
                lambda: f.gen_eap_material(IMSI, "eap_aka_prime", ANI)] * 5:
        av = gen()
        seen.add(open_autn(av.autn, av.rand)[0])
    assert len(seen) == 20


def test_to_text():
    t = factory().gen_triplet(IMSI)
    assert t.to_text() == f"gsm_triplet rand={t.rand.hex()} xres={t.xres.hex()} kc={t.kc.hex()}"
    assert "snid=snid_4g:00f110" in factory().gen_eps_av(IMSI, SNID_A).to_text()

import pickle
import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from akasim.crypto import (FC, Challenge, FiveGMode, RootKey, ServingNetworkId, SuciEnvelope,
                           SuciScheme, assemble_autn, derive_ck_ik_prime, derive_hres_star,
                           derive_kasme, derive_kausf_kseaf_kamf, derive_res_star, eap_aka_keys,
                           eap_aka_prime_keys, generate_hn_keypair, gsm_derive, kc128_ki128, kdf,
                           milenage, sha1_compress, suci_conceal, suci_deconceal)
from akasim.crypto.auts import build_auts, open_auts
from akasim.crypto.gsm import kc_from_ck_ik, sres_from_res
from akasim.crypto.testvectors import parse_line, read_vector_file
from akasim.errors import (DomainError, IntegrityError, MalformedInputError,
                           UnsupportedSchemeError)
from oracles import (SHA1_IV, eap_aka_keys_oracle, eap_aka_prime_keys_oracle, hres_star_oracle,
                     kdf_oracle, milenage_oracle, res_star_oracle, sha1_compress_oracle)

VECTORS = Path(__file__).parent / "vectors" / "milenage.txt"
SNN = ServingNetworkId.snn("5G:mnc001.mcc001.3gppnetwork.org")
b16 = st.binary(min_size=16, max_size=16)


def _rng_vectors(n, seed=1):
    rng = random.Random(seed)
    for _ in range(n):
        yield {k: rng.randbytes(w) for k, w in
               (("k", 16), ("opc", 16), ("rand", 16), ("sqn", 6), ("amf", 2), ("ck", 16),
                ("ik", 16), ("res", 8), ("sqn_xor_ak", 6))}


def flip(data: bytes, bit: int) -> bytes:
    b = bytearray(data)
    b[bit // 8] ^= 0x80 >> (bit % 8)
    return bytes(b)


# --- MILENAGE ------------------------------------------------------------

def test_milenage_frozen_vector_file():
    vectors = read_vector_file(VECTORS)
    assert len(vectors) >= 20
    assert vectors[0].name == "ts1_published"
    for v in vectors:
        assert v.check() == [], v.name


def test_milenage_widths_and_determinism():
    root = RootKey(bytes(16), bytes(16))
    a = milenage(root, bytes(16), bytes(6), bytes(2))
    assert a == milenage(root, bytes(16), bytes(6), bytes(2))
    assert [len(x) * 8 for x in (a.res, a.ck, a.ik, a.ak, a.mac_a, a.mac_s, a.ak_s)] == \
        [64, 128, 128, 48, 64, 64, 48]


@pytest.mark.parametrize("field,value", [("rand", bytes(15)), ("sqn", bytes(7)), ("amf", bytes(1))])
def test_milenage_rejects_bad_widths(field, value):
    args = {"rand": bytes(16), "sqn": bytes(6), "amf": bytes(2)}
    args[field] = value
    with pytest.raises(MalformedInputError):
        milenage(RootKey(bytes(16), bytes(16)), args["rand"], args["sqn"], args["amf"])


@settings(max_examples=30, deadline=None)
@given(b16, b16, b16, st.binary(min_size=6, max_size=6), st.binary(min_size=2, max_size=2))
def test_milenage_matches_oracle(k, opc, rand, sqn, amf):
    out = milenage(RootKey(k, opc), rand, sqn, amf)
    assert {n: getattr(out, n) for n in milenage_oracle(k, opc, rand, sqn, amf)} == \
        milenage_oracle(k, opc, rand, sqn, amf)


def test_vector_line_format():
    line = VECTORS.read_text().splitlines()[2]
    assert parse_line(line).to_line() == line
    with pytest.raises(MalformedInputError):
        parse_line(line.upper().replace("TS1_PUBLISHED", "x"))
    with pytest.raises(MalformedInputError):
        parse_line("short 00")


# --- RootKey custody -----------------------------------------------------

def test_root_key_has_no_serialiser():
    root = RootKey(b"\x11" * 16, b"\x22" * 16)
    assert "11" not in repr(root)
    with pytest.raises(TypeError):
        pickle.dumps(root)
    with pytest.raises(AttributeError):
        root.k = bytes(16)
    assert not hasattr(root, "to_bytes") and not hasattr(root, "__dict__")
    with pytest.raises(MalformedInputError):
        RootKey(bytes(15), bytes(16))


# --- AUTN / challenge ----------------------------------------------------

def test_autn_layout():
    autn = assemble_autn(b"\x01" * 6, b"\x80\x00", b"\x02" * 8)
    ch = Challenge(bytes(16), autn)
    assert (ch.sqn_xor_ak, ch.amf_field, ch.mac) == (b"\x01" * 6, b"\x80\x00", b"\x02" * 8)
    with pytest.raises(DomainError):
        Challenge(bytes(16)).mac


def test_auts_round_trip_and_tamper():
    root = RootKey(b"\x01" * 16, b"\x02" * 16)
    rand = b"\x03" * 16
    sqn = (123456).to_bytes(6, "big")
    auts = build_auts(root, rand, sqn)
    assert len(auts) * 8 == 112
    assert open_auts(root, rand, auts) == sqn
    with pytest.raises(IntegrityError):
        open_auts(root, rand, flip(auts, 100))


# --- 2G / EC-GSM-IoT -----------------------------------------------------

def test_gsm_derive_widths_and_oracle():
    seen = set()
    for v in _rng_vectors(25):
        root = RootKey(v["k"], v["opc"])
        sres, kc = gsm_derive(root, v["rand"])
        assert (len(sres) * 8, len(kc) * 8) == (32, 64)
        assert (sres, kc) == gsm_derive(root, v["rand"])
        o = milenage_oracle(v["k"], v["opc"], v["rand"], bytes(6), bytes(2))
        r = int.from_bytes(o["res"], "big")
        assert sres == ((r >> 32) ^ (r & 0xFFFFFFFF)).to_bytes(4, "big")
        c, i = int.from_bytes(o["ck"], "big"), int.from_bytes(o["ik"], "big")
        m = (1 << 64) - 1
        assert kc == ((c >> 64) ^ (c & m) ^ (i >> 64) ^ (i & m)).to_bytes(8, "big")
        seen.add((sres, kc))
    assert len(seen) == 25


def test_gsm_conversion_helpers():
    assert sres_from_res(bytes.fromhex("0102030410203040")) == bytes.fromhex("11223344")
    assert kc_from_ck_ik(bytes(16), bytes(16)) == bytes(8)
    with pytest.raises(MalformedInputError):
        sres_from_res(b"\x01\x02\x03")
    with pytest.raises(MalformedInputError):
        gsm_derive(RootKey(bytes(16), bytes(16)), bytes(8))


def test_kc128_ki128():
    for v in _rng_vectors(20):
        kc128, ki128 = kc128_ki128(v["ck"], v["ik"])
        assert (len(kc128), len(ki128)) == (16, 16)
        assert kc128 == kdf_oracle(v["ck"] + v["ik"], 0x32, [])[16:]
        assert ki128 == kdf_oracle(v["ck"] + v["ik"], 0x33, [])[16:]
        assert (kc128, ki128) == kc128_ki128(v["ck"], v["ik"])
    with pytest.raises(MalformedInputError):
        kc128_ki128(bytes(8), bytes(16))


# --- KDF -----------------------------------------------------------------

def test_fc_registry_is_distinct():
    assert len({int(c) for c in FC}) == len(FC)


def test_kdf_matches_oracle_and_separates_params():
    rng = random.Random(5)
    for _ in range(25):
        key = rng.randbytes(32)
        params = [rng.randbytes(rng.randrange(0, 40)) for _ in range(rng.randrange(0, 4))]
        fc = rng.randrange(256)
        out = kdf(key, fc, params)
        assert len(out) * 8 == 256
        assert out == kdf_oracle(key, fc, params)
        p = rng.randbytes(8)
        assert kdf(key, fc, [p]) != kdf(key, fc, [flip(p, 3)])


def test_kdf_edge_cases():
    assert len(kdf(b"k", 0x10, [])) == 32
    assert kdf(b"k", 0x10, [b"ab", b""]) != kdf(b"k", 0x10, [b"a", b"b"])
    with pytest.raises(MalformedInputError):
        kdf(b"k", 0x10, [bytes(65536)])
    assert len(kdf(b"k", 0x10, [bytes(65535)])) == 32


# --- 4G ------------------------------------------------------------------

def test_kasme():
    snid = ServingNetworkId.snid("001", "01")
    assert snid.value == bytes.fromhex("00f110")
    for v in _rng_vectors(20):
        out = derive_kasme(v["ck"], v["ik"], snid, v["sqn_xor_ak"])
        assert len(out) * 8 == 256
        assert out == kdf_oracle(v["ck"] + v["ik"], 0x10, [snid.value, v["sqn_xor_ak"]])
        for bit in range(24):
            other = ServingNetworkId("snid_4g", flip(snid.value, bit))
            assert derive_kasme(v["ck"], v["ik"], other, v["sqn_xor_ak"]) != out
    with pytest.raises(DomainError):
        derive_kasme(bytes(16), bytes(16), SNN, bytes(6))


def test_serving_network_id_validation():
    assert ServingNetworkId.snid("234", "015").value == bytes.fromhex("325410")
    assert ServingNetworkId.parse("snid_4g", "001-01") == ServingNetworkId.snid("001", "01")
    with pytest.raises(MalformedInputError):
        ServingNetworkId.snn("4G:foo")
    with pytest.raises(MalformedInputError):
        ServingNetworkId("snid_4g", bytes(4))
    with pytest.raises(MalformedInputError):
        ServingNetworkId.ani(b"")


def test_ck_ik_prime_rfc_vector_and_binding():
    ck, ik = bytes.fromhex("5349fbe098649f948f5d2e973a81c00f"), \
        bytes.fromhex("9744871ad32bf9bbd1dd5ce54e3e2e5a")
    ck_p, ik_p = derive_ck_ik_prime(ck, ik, ServingNetworkId.ani("WLAN"),
                                    bytes.fromhex("bb52e91c747a"))
    assert ck_p.hex() == "0093962d0dd84aa5684b045c9edffa04"
    assert ik_p.hex() == "ccfc230ca74fcc96c0a5d61164f5a76c"
    a = derive_ck_ik_prime(ck, ik, ServingNetworkId.ani("WLAN-net-A"), bytes(6))
    b = derive_ck_ik_prime(ck, ik, ServingNetworkId.ani("WLAN-net-B"), bytes(6))
    assert a != b and a == derive_ck_ik_prime(ck, ik, ServingNetworkId.ani("WLAN-net-A"), bytes(6))
    with pytest.raises(DomainError):
        derive_ck_ik_prime(ck, ik, ServingNetworkId.snid("001", "01"), bytes(6))


def test_eap_aka_keys_match_oracle():
    rng = random.Random(9)
    for _ in range(20):
        ident = str(rng.randrange(10 ** 14, 10 ** 15)).encode()
        ik, ck = rng.randbytes(16), rng.randbytes(16)
        got = eap_aka_keys(ident, ik, ck)
        assert got._asdict() == eap_aka_keys_oracle(ident, ik, ck)
        assert (len(got.msk) * 8, len(got.emsk) * 8) == (512, 512)
    with pytest.raises(MalformedInputError):
        eap_aka_keys(b"", bytes(16), bytes(16))


def test_sha1_compress_matches_oracle():
    rng = random.Random(3)
    for _ in range(20):
        block = rng.randbytes(64)
        assert list(sha1_compress(tuple(SHA1_IV), block)) == sha1_compress_oracle(list(SHA1_IV), block)


def test_eap_aka_prime_keys():
    ck_p = bytes.fromhex("0093962d0dd84aa5684b045c9edffa04")
    ik_p = bytes.fromhex("ccfc230ca74fcc96c0a5d61164f5a76c")
    got = eap_aka_prime_keys(b"0555444333222111", ik_p, ck_p)
    assert got.k_encr.hex() == "766fa0a6c317174b812d52fbcd11a179"
    rng = random.Random(11)
    for _ in range(20):
        ident, ik, ck = rng.randbytes(15), rng.randbytes(16), rng.randbytes(16)
        keys = eap_aka_prime_keys(ident, ik, ck)
        assert keys._asdict() == eap_aka_prime_keys_oracle(ident, ik, ck)
        assert (len(keys.msk), len(keys.emsk)) == (64, 64)
    a = eap_aka_prime_keys(b"001010000000001", ik_p, ck_p)
    b = eap_aka_prime_keys(b"001010000000002", ik_p, ck_p)
    assert a.msk != b.msk and a.emsk != b.emsk
    with pytest.raises(MalformedInputError):
        eap_aka_prime_keys(b"", ik_p, ck_p)


# --- 5G ------------------------------------------------------------------

def test_res_star_and_hres_star_match_oracle():
    for v in _rng_vectors(25):
        rs = derive_res_star(v["ck"], v["ik"], SNN, v["rand"], v["res"])
        assert len(rs) * 8 == 128
        assert rs == res_star_oracle(v["ck"], v["ik"], SNN.value, v["rand"], v["res"])
        hr = derive_hres_star(v["rand"], rs)
        assert len(hr) * 8 == 128 and hr == hres_star_oracle(v["rand"], rs)
        other = ServingNetworkId.snn("5G:mnc002.mcc001.3gppnetwork.org")
        assert derive_res_star(v["ck"], v["ik"], other, v["rand"], v["res"]) != rs
    with pytest.raises(DomainError):
        derive_res_star(bytes(16), bytes(16), ServingNetworkId.ani("x"), bytes(16), bytes(8))
    with pytest.raises(MalformedInputError):
        derive_hres_star(bytes(16), bytes(15))


def test_fiveg_key_hierarchy():
    for v in _rng_vectors(20):
        ks = derive_kausf_kseaf_kamf(v["ck"], v["ik"], SNN, v["sqn_xor_ak"], b"001010000000001",
                                     b"\x00\x00", FiveGMode.FIVEG_AKA)
        assert [len(k) * 8 for k in ks] == [256, 256, 256]
        kausf = kdf_oracle(v["ck"] + v["ik"], 0x6A, [SNN.value, v["sqn_xor_ak"]])
        kseaf = kdf_oracle(kausf, 0x6C, [SNN.value])
        kamf = kdf_oracle(kseaf, 0x6D, [b"001010000000001", b"\x00\x00"])
        assert tuple(ks) == (kausf, kseaf, kamf)
        ks1 = derive_kausf_kseaf_kamf(v["ck"], v["ik"], SNN, v["sqn_xor_ak"], b"001010000000001",
                                      b"\x00\x01", FiveGMode.FIVEG_AKA)
        assert ks1.kamf != ks.kamf and ks1.kseaf == ks.kseaf


def test_fiveg_eap_mode_uses_emsk():
    emsk = bytes(range(64))
    ks = derive_kausf_kseaf_kamf(bytes(16), bytes(16), SNN, bytes(6), b"supi", b"\x00\x00",
                                 "fiveg_eap_aka_prime", emsk=emsk)
    assert ks.kausf == emsk[:32]
    with pytest.raises(DomainError):
        derive_kausf_kseaf_kamf(bytes(16), bytes(16), SNN, bytes(6), b"supi", b"\x00\x00",
                                FiveGMode.FIVEG_EAP_AKA_PRIME)


def _binding_cases(v):
    """(callable of one binding input, base value) for every binding-sensitive derivation."""
    ck, ik, sa = v["ck"], v["ik"], v["sqn_xor_ak"]
    supi, abba = b"001010000000001", b"\x00\x00"
    ck_p, ik_p = ck, ik
    return [
        (lambda x: derive_kasme(ck, ik, ServingNetworkId("snid_4g", x), sa), b"\x00\xf1\x10"),
        (lambda x: derive_ck_ik_prime(ck, ik, ServingNetworkId("ani", x), sa), b"WLAN-net-A"),
        (lambda x: derive_res_star(ck, ik, ServingNetworkId("snn", b"5G:" + x), v["rand"],
                                   v["res"]), b"mnc001.mcc001"),
        (lambda x: derive_kausf_kseaf_kamf(ck, ik, ServingNetworkId("snn", b"5G:" + x), sa, supi,
                                           abba, "fiveg_aka")[:2], b"mnc001.mcc001"),
        (lambda x: derive_kausf_kseaf_kamf(ck, ik, SNN, sa, x, abba, "fiveg_aka").kamf, supi),
        (lambda x: derive_kausf_kseaf_kamf(ck, ik, SNN, sa, supi, x, "fiveg_aka").kamf, abba),
        (lambda x: eap_aka_keys(x, ik, ck).msk, supi),
        (lambda x: eap_aka_prime_keys(x, ik_p, ck_p).msk, supi),
        (lambda x: eap_aka_prime_keys(x[:0] + b"\x00" + supi, ik_p, ck_p).msk
         if x != supi else eap_aka_prime_keys(supi, ik_p, ck_p).msk, supi),
    ]


def test_binding_sensitivity_over_random_vectors():
    for v in _rng_vectors(100, seed=77):
        rng = random.Random(v["k"])
        for fn, base in _binding_cases(v):
            ref = fn(base)
            bit = rng.randrange(len(base) * 8)
            assert fn(flip(base, bit)) != ref


def test_method_string_is_bound():
    # same keys and identity through the two EAP schedules give unrelated MSKs
    ident, ik, ck = b"001010000000001", bytes(range(16)), bytes(range(16, 32))
    assert eap_aka_keys(ident, ik, ck).msk != eap_aka_prime_keys(ident, ik, ck).msk


def test_purity_all_derivations():
    for v in _rng_vectors(5):
        ck, ik = v["ck"], v["ik"]
        for fn in (lambda: derive_kasme(ck, ik, ServingNetworkId.snid("001", "01"), bytes(6)),
                   lambda: derive_ck_ik_prime(ck, ik, SNN, bytes(6)),
                   lambda: derive_res_star(ck, ik, SNN, v["rand"], v["res"]),
                   lambda: derive_hres_star(v["rand"], ck),
                   lambda: eap_aka_keys(b"id", ik, ck),
                   lambda: eap_aka_prime_keys(b"id", ik, ck),
                   lambda: kc128_ki128(ck, ik)):
            assert fn() == fn()


# --- SUCI ----------------------------------------------------------------

def test_suci_null_scheme():
    env = suci_conceal(b"001010123456789", SuciScheme.NULL)
    assert env.ciphertext == b"001010123456789" and env.ephemeral_pubkey == b"" == env.mac_tag
    assert suci_deconceal(env) == b"001010123456789"


def test_suci_profile_a_round_trip_and_wrong_key():
    priv, pub = generate_hn_keypair(bytes(range(32)))
    wrong, _ = generate_hn_keypair(bytes(range(1, 33)))
    env = suci_conceal(b"001010123456789", SuciScheme.ECIES_PROFILE_A, pub, hn_key_id=3)
    assert b"001010123456789" not in env.to_bytes()
    assert SuciEnvelope.from_bytes(env.to_bytes()) == env
    assert suci_deconceal(env, priv) == b"001010123456789"
    with pytest.raises(IntegrityError):
        suci_deconceal(env, wrong)
    tampered = SuciEnvelope(env.scheme_id, env.home_network_pubkey_id, env.ephemeral_pubkey,
                            flip(env.ciphertext, 0), env.mac_tag)
    with pytest.raises(IntegrityError):
        suci_deconceal(tampered, priv)


def test_suci_deterministic_with_fixed_ephemeral():
    _, pub = generate_hn_keypair(bytes(range(32)))
    a = suci_conceal(b"imsi", 1, pub, ephemeral_key=b"\x07" * 32)
    assert a == suci_conceal(b"imsi", 1, pub, ephemeral_key=b"\x07" * 32)


def test_suci_unsupported_scheme():
    with pytest.raises(UnsupportedSchemeError):
        suci_conceal(b"x", 2, bytes(32))
    with pytest.raises(UnsupportedSchemeError):
        SuciEnvelope.from_bytes(bytes([9, 0]) + bytes(6))

"""Stateless derivations used by every protocol variant."""

from akasim.crypto.eap import (EapAkaKeys, EapAkaPrimeKeys, eap_aka_keys, eap_aka_prime_keys,
                               fips186_prf, prf_prime, sha1_compress)
from akasim.crypto.gsm import A3A8, ConversionA3A8, gsm_derive, kc128_ki128
from akasim.crypto.hierarchy import (FiveGKeys, FiveGMode, derive_ck_ik_prime, derive_hres_star,
                                     derive_kamf, derive_kasme, derive_kausf_kseaf_kamf,
                                     derive_kseaf, derive_res_star)
from akasim.crypto.kdf import FC, kdf
from akasim.crypto.milenage import AlgorithmSet, Milenage, milenage
from akasim.crypto.suci import generate_hn_keypair, suci_conceal, suci_deconceal
from akasim.crypto.types import (Challenge, MilenageOutput, RootKey, ServingNetworkId,
                                 SuciEnvelope, SuciScheme, assemble_autn)

__all__ = [
    "A3A8", "AlgorithmSet", "Challenge", "ConversionA3A8", "EapAkaKeys", "EapAkaPrimeKeys", "FC",
    "FiveGKeys", "FiveGMode", "Milenage", "MilenageOutput", "RootKey", "ServingNetworkId",
    "SuciEnvelope", "SuciScheme", "assemble_autn", "derive_ck_ik_prime", "derive_hres_star",
    "derive_kamf", "derive_kasme", "derive_kausf_kseaf_kamf", "derive_kseaf", "derive_res_star",
    "eap_aka_keys", "eap_aka_prime_keys", "fips186_prf", "generate_hn_keypair", "gsm_derive",
    "kc128_ki128", "kdf", "milenage", "prf_prime", "sha1_compress", "suci_conceal",
    "suci_deconceal",
]

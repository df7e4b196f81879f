import enum


class Variant(str, enum.Enum):
    GSM = "gsm"
    UMTS = "umts"
    ECGSM_IOT = "ecgsm_iot"
    EPS = "eps"
    EAP_AKA = "eap_aka"
    EAP_AKA_PRIME = "eap_aka_prime"
    FIVEG_AKA = "fiveg_aka"
    FIVEG_EAP_AKA_PRIME = "fiveg_eap_aka_prime"

    @classmethod
    def parse(cls, text: str) -> "Variant":
        """Accept both ``fiveg_aka`` and ``fiveg-aka`` spellings."""
        return cls(text.strip().lower().replace("-", "_"))

    @property
    def has_autn(self) -> bool:
        return self is not Variant.GSM

    @property
    def is_5g(self) -> bool:
        return self in (Variant.FIVEG_AKA, Variant.FIVEG_EAP_AKA_PRIME)

    @property
    def is_eap(self) -> bool:
        return self in (Variant.EAP_AKA, Variant.EAP_AKA_PRIME, Variant.FIVEG_EAP_AKA_PRIME)

    @property
    def checks_amf(self) -> bool:
        """Whether the UE verifies the AMF separation bit."""
        return self in (Variant.EPS, Variant.EAP_AKA_PRIME, Variant.FIVEG_AKA,
                        Variant.FIVEG_EAP_AKA_PRIME)

    @property
    def network_kind(self):
        """Which ServingNetworkId variant the serving side must hold, if any."""
        if self is Variant.EPS:
            return "snid_4g"
        if self is Variant.EAP_AKA_PRIME:
            return "ani"
        if self.is_5g:
            return "snn"
        return None


class Role(str, enum.Enum):
    UE = "ue"
    SERVING = "serving_cn"
    HOME = "home_cn"


ALL_VARIANTS = tuple(Variant)

"""The tamper-resistant half of the UE: holds K and SQN_MS, runs the AKA checks."""

from __future__ import annotations

import enum
import hmac
from dataclasses import dataclass

from akasim.crypto._util import xor
from akasim.crypto.auts import build_auts
from akasim.crypto.gsm import DEFAULT_A3A8, A3A8, gsm_derive
from akasim.crypto.milenage import DEFAULT_ALGORITHMS, AlgorithmSet
from akasim.crypto.types import Challenge, RootKey
from akasim.store import SqnPolicy, SqnVerdict, accept_sqn
from akasim.vectors import DEFAULT_XRES_LEN, separation_bit


class UsimStatus(str, enum.Enum):
    OK = "ok"
    MAC_FAILURE = "mac_failure"
    AMF_FAILURE = "amf_failure"
    SYNC_FAILURE = "sync_failure"


@dataclass(frozen=True)
class UsimResult:
    status: UsimStatus
    res: bytes = b""
    ck: bytes = b""
    ik: bytes = b""
    sqn_xor_ak: bytes = b""
    auts: bytes = b""


class Usim:
    """SIM/USIM application.  The root key never leaves this object."""

    def __init__(self, root: RootKey, imsi: str, supi: str | None = None, sqn_ms: int = 0,
                 policy: SqnPolicy | None = None, algorithms: AlgorithmSet = DEFAULT_ALGORITHMS,
                 a3a8: A3A8 = DEFAULT_A3A8, res_len: int = DEFAULT_XRES_LEN):
        self._root = root
        self.imsi = imsi
        self.supi = supi or imsi
        self.sqn_ms = sqn_ms
        self.policy = policy or SqnPolicy()
        self.algorithms = algorithms
        self.a3a8 = a3a8
        self.res_len = res_len

    def __repr__(self):
        return f"Usim(imsi={self.imsi!r}, sqn_ms={self.sqn_ms})"

    def __reduce_ex__(self, protocol):
        raise TypeError("Usim cannot be serialised")

    def run_gsm(self, rand: bytes) -> tuple[bytes, bytes]:
        return gsm_derive(self._root, rand, self.a3a8)

    def authenticate(self, rand: bytes, autn: bytes, check_amf: bool = False) -> UsimResult:
        """Check MAC, then the AMF separation bit, then SQN freshness.

        MAC goes first: it proves origin, and only then do SQN semantics mean
        anything.  On success SQN_MS advances to the received value.
        """
        ch = Challenge(rand, autn)
        ak = self.algorithms.compute(self._root, rand, bytes(6), ch.amf_field).ak
        sqn = xor(ch.sqn_xor_ak, ak)
        out = self.algorithms.compute(self._root, rand, sqn, ch.amf_field)
        if not hmac.compare_digest(out.mac_a, ch.mac):
            return UsimResult(UsimStatus.MAC_FAILURE)
        if check_amf and not separation_bit(ch.amf_field):
            return UsimResult(UsimStatus.AMF_FAILURE)
        received = int.from_bytes(sqn, "big")
        if accept_sqn(received, self.sqn_ms, self.policy) is SqnVerdict.SYNC_FAILURE:
            auts = build_auts(self._root, rand, self.sqn_ms.to_bytes(6, "big"), self.algorithms)
            return UsimResult(UsimStatus.SYNC_FAILURE, auts=auts)
        self.sqn_ms = received
        return UsimResult(UsimStatus.OK, out.res[:self.res_len], out.ck, out.ik, ch.sqn_xor_ak)

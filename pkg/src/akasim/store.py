"""Home-network subscriber database: records, SQN issuance and persistence."""

from __future__ import annotations

import enum
import os
import re
import tempfile
import threading
from dataclasses import dataclass, field
from pathlib import Path

from akasim.crypto.auts import open_auts
from akasim.crypto.milenage import DEFAULT_ALGORITHMS, AlgorithmSet
from akasim.crypto.types import RootKey
from akasim.errors import ConflictError, ExhaustionError, MalformedInputError, NotFoundError
from akasim.variants import Variant

SQN_MAX = (1 << 48) - 1
FORMAT_VERSION = 1
DEFAULT_WINDOW = 100
DEFAULT_STEP = 32

_IMSI_RE = re.compile(r"\d{15}")


@dataclass(frozen=True)
class SqnPolicy:
    window_size: int = DEFAULT_WINDOW
    step: int = DEFAULT_STEP

    def __post_init__(self):
        if self.window_size < 1 or self.step < 1:
            raise MalformedInputError("window_size and step must be >= 1")


class SqnVerdict(str, enum.Enum):
    ACCEPT = "accept"
    SYNC_FAILURE = "sync_failure"


def accept_sqn(sqn_received: int, sqn_ms: int, policy: SqnPolicy) -> SqnVerdict:
    """Accept iff sqn_ms < received <= sqn_ms + window_size * step."""
    if sqn_ms < sqn_received <= sqn_ms + policy.window_size * policy.step:
        return SqnVerdict.ACCEPT
    return SqnVerdict.SYNC_FAILURE


@dataclass
class SubscriberRecord:
    imsi: str
    root: RootKey
    supi: str = ""
    sqn_hn: int = 0
    amf_field: bytes = b"\x00\x00"
    enabled_generations: frozenset = field(default_factory=lambda: frozenset(Variant))

    def __post_init__(self):
        if not isinstance(self.imsi, str) or not _IMSI_RE.fullmatch(self.imsi):
            raise MalformedInputError(f"imsi must be 15 decimal digits, got {self.imsi!r}")
        if not self.supi:
            self.supi = self.imsi
        if " " in self.supi:
            raise MalformedInputError("supi may not contain spaces")
        if not 0 <= self.sqn_hn <= SQN_MAX:
            raise MalformedInputError("sqn_hn must fit in 48 bits")
        if len(self.amf_field) != 2:
            raise MalformedInputError("amf_field must be 16 bits")
        self.enabled_generations = frozenset(Variant(v) for v in self.enabled_generations)
        if not isinstance(self.root, RootKey):
            raise MalformedInputError("root must be a RootKey")


class SubscriberStore:
    """AuC/HSS/UDM view of the subscriber base.

    Single writer: every mutation runs under one lock, and when the store is
    bound to a file the new state is written before the mutation returns.
    """

    def __init__(self, path: str | os.PathLike | None = None, policy: SqnPolicy | None = None,
                 algorithms: AlgorithmSet = DEFAULT_ALGORITHMS):
        self.path = Path(path) if path is not None else None
        self.policy = policy or SqnPolicy()
        self.algorithms = algorithms
        self._records: dict[str, SubscriberRecord] = {}
        self._lock = threading.RLock()

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        return iter(list(self._records.values()))

    def provision(self, record: SubscriberRecord) -> None:
        with self._lock:
            if record.imsi in self._records or self._find_supi(record.supi) is not None:
                raise ConflictError(f"subscriber {record.imsi} already provisioned")
            self._records[record.imsi] = record
            self._persist()

    def _find_supi(self, supi: str):
        for rec in self._records.values():
            if rec.supi == supi:
                return rec
        return None

    def lookup(self, ident: str) -> SubscriberRecord:
        rec = self._records.get(ident) or self._find_supi(ident)
        if rec is None:
            raise NotFoundError(ident)
        return rec

    def next_sqn(self, imsi: str) -> int:
        with self._lock:
            rec = self.lookup(imsi)
            sqn = rec.sqn_hn
            if sqn + self.policy.step > SQN_MAX:
                raise ExhaustionError(f"SQN space exhausted for {rec.imsi}")
            rec.sqn_hn = sqn + self.policy.step
            self._persist()
            return sqn

    def resynchronize(self, imsi: str, rand: bytes, auts: bytes) -> int:
        """Verify AUTS and realign sqn_hn with the USIM; returns the new sqn_hn.

        If the next SQN the home would issue is already inside the USIM's
        window nothing changes, which makes repeated identical AUTS harmless.
        """
        with self._lock:
            rec = self.lookup(imsi)
            sqn_ms = int.from_bytes(open_auts(rec.root, rand, auts, self.algorithms), "big")
            if accept_sqn(rec.sqn_hn, sqn_ms, self.policy) is SqnVerdict.ACCEPT:
                return rec.sqn_hn
            if sqn_ms + self.policy.step > SQN_MAX:
                raise ExhaustionError(f"SQN space exhausted for {rec.imsi}")
            rec.sqn_hn = sqn_ms + self.policy.step
            self._persist()
            return rec.sqn_hn

    # persistence

    def _persist(self):
        if self.path is not None:
            self.save(self.path)

    def dumps(self) -> str:
        lines = [f"# akasim-subscribers format={FORMAT_VERSION} "
                 f"window={self.policy.window_size} step={self.policy.step}"]
        for rec in sorted(self._records.values(), key=lambda r: r.imsi):
            gens = ",".join(v.value for v in Variant if v in rec.enabled_generations) or "-"
            lines.append(" ".join([rec.imsi, rec.supi, rec.root.k.hex(), rec.root.op_c.hex(),
                                   f"{rec.sqn_hn:012x}", rec.amf_field.hex(), gens]))
        return "\n".join(lines) + "\n"

    def save(self, path: str | os.PathLike) -> None:
        path = Path(path)
        with self._lock:
            text = self.dumps()
            fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=".subscribers.")
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, path)

    @classmethod
    def loads(cls, text: str, path=None, algorithms: AlgorithmSet = DEFAULT_ALGORITHMS):
        lines = text.splitlines()
        if not lines:
            raise MalformedInputError("empty subscriber file")
        m = re.fullmatch(r"# akasim-subscribers format=(\d+) window=(\d+) step=(\d+)",
                         lines[0].strip())
        if not m:
            raise MalformedInputError("missing subscriber file header")
        if int(m.group(1)) != FORMAT_VERSION:
            raise MalformedInputError(f"unsupported subscriber file format {m.group(1)}")
        store = cls(None, SqnPolicy(int(m.group(2)), int(m.group(3))), algorithms)
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 7:
                raise MalformedInputError(f"line {lineno}: expected 7 fields, got {len(parts)}")
            imsi, supi, k, opc, sqn, amf, gens = parts
            try:
                rec = SubscriberRecord(
                    imsi=imsi, supi=supi, root=RootKey(bytes.fromhex(k), bytes.fromhex(opc)),
                    sqn_hn=int(sqn, 16), amf_field=bytes.fromhex(amf),
                    enabled_generations=frozenset() if gens == "-" else
                    frozenset(Variant(g) for g in gens.split(",")))
            except ValueError as exc:
                raise MalformedInputError(f"line {lineno}: {exc}") from exc
            store.provision(rec)
        store.path = Path(path) if path is not None else None
        return store

    @classmethod
    def load(cls, path: str | os.PathLike, algorithms: AlgorithmSet = DEFAULT_ALGORITHMS):
        path = Path(path)
        if not path.exists():
            raise NotFoundError(f"subscriber database {path} does not exist")
        return cls.loads(path.read_text(), path=path, algorithms=algorithms)

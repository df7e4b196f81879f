"""Hex test-vector files: ``name k op_c rand sqn amf expected...`` one per line."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from akasim.crypto.milenage import milenage
from akasim.crypto.types import RootKey
from akasim.errors import MalformedInputError

MILENAGE_OUTPUTS = ("res", "ck", "ik", "ak", "mac_a", "mac_s", "ak_s")


@dataclass(frozen=True)
class MilenageVector:
    name: str
    k: bytes
    op_c: bytes
    rand: bytes
    sqn: bytes
    amf: bytes
    expected: dict

    def to_line(self) -> str:
        cols = [self.name] + [b.hex() for b in (self.k, self.op_c, self.rand, self.sqn, self.amf)]
        cols += [self.expected[n].hex() for n in MILENAGE_OUTPUTS if n in self.expected]
        return " ".join(cols)

    def check(self) -> list[str]:
        """Names of outputs that disagree with a fresh computation."""
        out = milenage(RootKey(self.k, self.op_c), self.rand, self.sqn, self.amf)
        return [n for n, v in self.expected.items() if getattr(out, n) != v]


def parse_line(line: str) -> MilenageVector:
    cols = line.split()
    if len(cols) < 6:
        raise MalformedInputError(f"vector line needs at least 6 columns: {line!r}")
    if any(c != c.lower() for c in cols[1:]):
        raise MalformedInputError("hex fields must be lowercase")
    try:
        raw = [bytes.fromhex(c) for c in cols[1:]]
    except ValueError as exc:
        raise MalformedInputError(str(exc)) from exc
    if len(raw) - 5 > len(MILENAGE_OUTPUTS):
        raise MalformedInputError("too many expected columns")
    return MilenageVector(cols[0], *raw[:5], dict(zip(MILENAGE_OUTPUTS, raw[5:])))


def read_vector_file(path) -> list[MilenageVector]:
    out = []
    for line in Path(path).read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            out.append(parse_line(line))
    return out


def write_vector_file(path, vectors) -> None:
    Path(path).write_text("".join(v.to_line() + "\n" for v in vectors))

"""Drive parties over a bus and record what happened."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from akasim.engines.messages import AkaMessage, MessageKind
from akasim.engines.parties import Party
from akasim.errors import MalformedInputError
from akasim.variants import Role, Variant

MAX_ROUNDS = 64
_ORDER = (Role.UE, Role.SERVING, Role.HOME)


@dataclass(frozen=True)
class TranscriptEntry:
    t: int
    message: AkaMessage

    @property
    def sender(self) -> Role:
        return self.message.sender

    @property
    def receiver(self) -> Role:
        return self.message.receiver

    def to_line(self) -> str:
        m = self.message
        return f"{self.t} {m.sender.value} {m.receiver.value} {m.kind.value} {m.payload().hex() or '-'}"

    @classmethod
    def from_line(cls, line: str) -> TranscriptEntry:
        parts = line.split()
        if len(parts) != 5:
            raise MalformedInputError(f"bad transcript line {line!r}")
        t, sender, receiver, kind, payload = parts
        try:
            fields = AkaMessage.parse_payload(b"" if payload == "-" else bytes.fromhex(payload))
            msg = AkaMessage(MessageKind(kind), Role(sender), Role(receiver), fields)
            return cls(int(t), msg)
        except ValueError as exc:
            raise MalformedInputError(f"bad transcript line {line!r}: {exc}") from exc


@dataclass
class ProtocolTranscript:
    variant: Variant
    entries: list[TranscriptEntry] = field(default_factory=list)
    outcome: dict[Role, str] = field(default_factory=dict)
    stalled: bool = False

    def messages(self, air_only: bool = False) -> list[AkaMessage]:
        return [e.message for e in self.entries if not air_only or e.message.on_air]

    def dumps(self) -> str:
        lines = [f"# variant {self.variant.value}"]
        lines += [e.to_line() for e in self.entries]
        for role in _ORDER:
            if role in self.outcome:
                lines.append(f"# outcome {role.value} {self.outcome[role]}")
        if self.stalled:
            lines.append("# stalled")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> ProtocolTranscript:
        variant, entries, outcome, stalled = None, [], {}, False
        for line in text.splitlines():
            if not line.strip():
                continue
            if line.startswith("#"):
                words = line[1:].split()
                if words[:1] == ["variant"] and len(words) == 2:
                    variant = Variant(words[1])
                elif words[:1] == ["outcome"] and len(words) == 3:
                    outcome[Role(words[1])] = words[2]
                elif words == ["stalled"]:
                    stalled = True
                continue
            entries.append(TranscriptEntry.from_line(line))
        if variant is None:
            raise MalformedInputError("transcript has no variant header")
        return cls(variant, entries, outcome, stalled)

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path) -> ProtocolTranscript:
        return cls.loads(Path(path).read_text())


def run_to_completion(parties, bus=None, max_rounds: int = MAX_ROUNDS) -> ProtocolTranscript:
    """Step parties until the bus drains; past ``max_rounds`` the run is marked stalled."""
    if bus is None:
        from akasim.harness.bus import Bus
        bus = Bus()
    if isinstance(parties, dict):
        by_role = {Role(r): p for r, p in parties.items()}
    else:
        by_role = {p.role: p for p in parties}
    variants = {p.variant for p in by_role.values()}
    if len(variants) != 1:
        raise MalformedInputError("all parties must run the same variant")
    transcript = ProtocolTranscript(variants.pop())

    t = 0
    for role in _ORDER:
        if role in by_role:
            for msg in by_role[role].step([]):
                bus.send(msg, t)
    while not bus.idle():
        t += 1
        if t > max_rounds:
            transcript.stalled = True
            break
        inboxes: dict[Role, list[AkaMessage]] = {}
        for msg in bus.deliver(t):
            transcript.entries.append(TranscriptEntry(t, msg))
            inboxes.setdefault(msg.receiver, []).append(msg)
        for role in _ORDER:
            if role in inboxes and role in by_role:
                for out in by_role[role].step(inboxes[role]):
                    bus.send(out, t)
    transcript.outcome = {r: by_role[r].phase.value for r in _ORDER if r in by_role}
    return transcript


def replay_inbound(transcript: ProtocolTranscript, party: Party) -> str:
    """Feed ``party`` every message the transcript delivered to its role; return its verdict."""
    party.step([])
    by_t: dict[int, list[AkaMessage]] = {}
    for e in transcript.entries:
        if e.receiver is party.role:
            by_t.setdefault(e.t, []).append(e.message)
    for t in sorted(by_t):
        party.step(by_t[t])
    return party.phase.value

"""Per-variant protocol state machines for UE, serving network and home network."""

from akasim.engines.keys import KEY_BITS, VARIANT_KEYS, SessionKeys
from akasim.engines.messages import AkaMessage, MessageKind
from akasim.engines.parties import (TERMINAL, HomeParty, Party, PartyConfig, Phase, ServingParty,
                                    UeParty, extract_session_keys, new_party, step)
from akasim.engines.runner import (ProtocolTranscript, TranscriptEntry, replay_inbound,
                                   run_to_completion)
from akasim.engines.usim import Usim, UsimResult, UsimStatus

__all__ = [
    "AkaMessage", "HomeParty", "KEY_BITS", "MessageKind", "Party", "PartyConfig", "Phase",
    "ProtocolTranscript", "ServingParty", "SessionKeys", "TERMINAL", "TranscriptEntry",
    "UeParty", "Usim", "UsimResult", "UsimStatus", "VARIANT_KEYS", "extract_session_keys",
    "new_party", "replay_inbound", "run_to_completion", "step",
]

"""Executable models of the 3GPP authentication and key agreement family.

Eight protocol variants, from GSM triplets to 5G EAP-AKA', run between a
simulated UE, serving network and home network over a deterministic bus.
"""

from akasim.variants import Role, Variant

__version__ = "0.1.0"

__all__ = ["Role", "Variant", "__version__"]

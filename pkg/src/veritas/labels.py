"""Label and polarity constants.

``deceptive`` is the positive class everywhere: it maps to +1 / 1 and wins
every tie-break (votes, posteriors, zero margins).
"""

from __future__ import annotations

DECEPTIVE = "deceptive"
TRUTHFUL = "truthful"
CLASS_ORDER: tuple[str, str] = (DECEPTIVE, TRUTHFUL)

POSITIVE = "positive"
NEGATIVE = "negative"
UNKNOWN = "unknown"
POLARITIES: tuple[str, str, str] = (POSITIVE, NEGATIVE, UNKNOWN)


def signed(label: str) -> int:
    """deceptive -> +1, truthful -> -1."""
    return 1 if label == DECEPTIVE else -1


def from_signed(value: float) -> str:
    """Sign decision with the global tie rule: 0 counts as deceptive."""
    return DECEPTIVE if value >= 0 else TRUTHFUL

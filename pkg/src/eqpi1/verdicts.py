"""Three-valued verdicts with evidence levels.

Checks that hinge on the word problem cannot always decide; every answer is
therefore Verified, Refuted (with a witness), or Undecided (with a reason),
and carries the level of evidence that produced it: syntactic (reduced-word
equality), abelianized (exponent-sum argument), or undecided.
"""

from __future__ import annotations

from dataclasses import dataclass

VERIFIED = "verified"
REFUTED = "refuted"
UNDECIDED = "undecided"

LEVEL_SYNTACTIC = "syntactic"
LEVEL_ABELIANIZED = "abelianized"
LEVEL_UNDECIDED = "undecided"

_LEVEL_RANK = {LEVEL_SYNTACTIC: 0, LEVEL_ABELIANIZED: 1, LEVEL_UNDECIDED: 2}


@dataclass(frozen=True)
class Verdict:
    status: str
    level: str
    witness: object = None
    reason: str | None = None

    @staticmethod
    def verified(level: str = LEVEL_SYNTACTIC) -> "Verdict":
        return Verdict(VERIFIED, level)

    @staticmethod
    def refuted(witness, level: str = LEVEL_SYNTACTIC) -> "Verdict":
        return Verdict(REFUTED, level, witness=witness)

    @staticmethod
    def undecided(reason: str) -> "Verdict":
        return Verdict(UNDECIDED, LEVEL_UNDECIDED, reason=reason)

    @property
    def is_verified(self) -> bool:
        return self.status == VERIFIED

    @property
    def is_refuted(self) -> bool:
        return self.status == REFUTED

    @property
    def is_undecided(self) -> bool:
        return self.status == UNDECIDED

    def __str__(self) -> str:
        out = f"{self.status}[{self.level}]"
        if self.witness is not None:
            out += f" witness={self.witness!r}"
        if self.reason is not None:
            out += f" reason={self.reason}"
        return out


def combine(verdicts) -> Verdict:
    """Aggregate: any Refuted wins, then any Undecided, else Verified at the
    weakest contributing evidence level."""
    verdicts = list(verdicts)
    for v in verdicts:
        if v.is_refuted:
            return v
    for v in verdicts:
        if v.is_undecided:
            return v
    if not verdicts:
        return Verdict.verified()
    level = max((v.level for v in verdicts), key=_LEVEL_RANK.__getitem__)
    return Verdict.verified(level)

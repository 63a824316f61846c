"""Uncertainty-bands tactic selector.

A schedule-based strategy tracks its filled-shares position against a
band envelope.  The position's zone fixes how opportunistic the next
child order may be; this module maps each zone to its allowed tactics,
ordered from most to least preferred.  Band generation itself is out of
scope: the zone arrives as an input.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple


class BandPosition(Enum):
    """Filled-shares position relative to the schedule bands."""

    ABOVE_MIDDLE = "above_middle"
    BETWEEN_MIDDLE_AND_LOWER = "between_middle_and_lower"
    BELOW_LOWER = "below_lower"


class TacticKind(Enum):
    PWT = "pwt"
    DARK_MIN_SIZE = "dark_min_size"
    PT = "pt"
    OLTT = "oltt"
    UTT = "utt"


@dataclass(frozen=True)
class TacticChoice:
    """A selectable tactic; ``depth`` refines PWT's posting level if set."""

    kind: TacticKind
    depth: Optional[int] = None


_SELECTION = {
    # Ahead of schedule: wait for price improvement deep in the book or
    # in the dark with a high minimum execution size.
    BandPosition.ABOVE_MIDDLE: (
        TacticChoice(TacticKind.PWT),
        TacticChoice(TacticKind.DARK_MIN_SIZE),
    ),
    # Slipping: less opportunistic passive and block tactics.
    BandPosition.BETWEEN_MIDDLE_AND_LOWER: (
        TacticChoice(TacticKind.PT),
        TacticChoice(TacticKind.OLTT),
    ),
    # Behind the lower band: pay up and trade uniformly.
    BandPosition.BELOW_LOWER: (TacticChoice(TacticKind.UTT),),
}


def select_tactic(pos: BandPosition) -> Tuple[TacticChoice, ...]:
    """Allowed tactics for a band position, most preferred first.

    The mapping is total and deterministic; the uniform trading tactic,
    the most expensive way to trade, appears only below the lower band.
    The order within a zone is documentation, not a contract.
    """
    return _SELECTION[pos]

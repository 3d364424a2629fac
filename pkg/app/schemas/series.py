import enum
from dataclasses import dataclass


class TailMethod(enum.Enum):
    LEMMA = "lemma"
    RATIO = "ratio"
    REFLECTION = "reflection"
    HEURISTIC = "heuristic"


@dataclass(frozen=True)
class TailEstimate:
    bound: float
    method: TailMethod
    certified: bool


@dataclass(frozen=True)
class TruncatedValue:
    """A series value whose infinite-sum limit lies within tail_bound of value on |z| <= 1."""

    value: complex
    tail_bound: float
    terms_used: int
    method: TailMethod = TailMethod.LEMMA
    certified: bool = True

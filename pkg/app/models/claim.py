import enum


class ClaimId(enum.Enum):
    L1I = "l1i"
    L1II = "l1ii"
    L1III = "l1iii"
    L2I = "l2i"
    L2II = "l2ii"
    T21_RATIO = "t21-ratio"
    T21_INVERSE = "t21-inverse"
    T22_RATIO = "t22-ratio"
    T22_INVERSE = "t22-inverse"
    T23_RATIO = "t23-ratio"
    T23_INVERSE = "t23-inverse"
    T31_RATIO = "t31-ratio"
    T31_INVERSE = "t31-inverse"
    T32_RATIO = "t32-ratio"
    T32_INVERSE = "t32-inverse"
    R24_RATIO = "r24-ratio"
    R24_INVERSE = "r24-inverse"
    STAR_RADIUS_FIRST = "star-radius-first"
    STAR_RADIUS_SECOND = "star-radius-second"


class ClaimVariant(enum.Enum):
    STATEMENT = "statement"
    PROOF = "proof"


class ClaimShape(enum.Enum):
    MODULUS = "modulus"    # max |f| <= bound
    RATIO = "ratio"        # inf Re(num/den) >= bound
    RADIUS = "radius"      # Re(z p'/p) > 0 inside the bound radius


class Driver(enum.Enum):
    """Parameter combination a bound formula is written in."""
    MU = "mu"
    LAMBDA_PLUS_MU = "lambda+mu"


class Verdict(enum.Enum):
    CERTIFIED = "certified"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"

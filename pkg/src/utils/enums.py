from enum import Enum, IntEnum


class DecompositionKind(Enum):
    TWO_EC = "two-ec"
    NEARLY_FOUR_EC = "nearly-four-ec"


class ExitCode(IntEnum):
    OK = 0              # 成功・検証通過
    VIOLATION = 1       # 違反・不在
    INPUT_ERROR = 2
    CAPACITY_ERROR = 3


class CertificateKind(Enum):
    IMMERSION = "immersion"
    HALF_INTEGRAL = "half-integral"
    SUBDIVISION = "subdivision"
    THORNS = "thorns"
    TANGLE = "tangle"
    EDGE_TANGLE = "edge-tangle"
    DECOMPOSITION = "decomposition"
    PACKING = "packing"
    COVER = "cover"

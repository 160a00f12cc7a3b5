from enum import Enum


class Strategy(str, Enum):
    """Multiple-access strategy used to build the transmit signal."""

    RSMA = "rsma"
    SDMA = "sdma"


class PowerConstraintKind(str, Enum):
    """Shape of the transmit power constraint set."""

    SUM_POWER = "sum_power"
    PER_ANTENNA = "per_antenna"


class ChannelModelKind(str, Enum):
    """Supported channel generators."""

    RAYLEIGH_IID = "rayleigh_iid"
    MULTIBEAM_GEO = "multibeam_geo"


class Initialization(str, Enum):
    """Starting point of the precoder optimizer."""

    MRT_SVD = "mrt_svd"
    RANDOM = "random"


class StreamClass(str, Enum):
    """Common stream vs. per-group private streams"""

    COMMON = "common"
    PRIVATE = "private"


class OperatingAxis(str, Enum):
    """Quantity swept across operating points."""

    SNR_DB = "snr_db"
    POWER_DBW = "power_dbw"


class PointStatus(str, Enum):
    """Outcome of one operating point in a campaign."""

    OK = "ok"
    INVALID = "invalid"

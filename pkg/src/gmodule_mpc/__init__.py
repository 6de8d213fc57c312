"""Three-party semi-honest MPC over G-modules.

P0 and P1 hold additive shares; P2 deals correlated randomness offline and
stays silent online.  Every message goes through a simulated network that
meters information bits and rounds.
"""

from .algebra import (
    MapSpace,
    PrimeField,
    ProductPow,
    RotateScaleModule,
    Semidirect,
    SignModule,
    Signs,
    UnitsMod,
    UnitsModule,
    Zmod,
)
from .comparison import fnz, run_drelu, run_fnz, run_sc, secure_compare, drelu
from .costs import Cost
from .errors import (
    CommodityModelViolation,
    ConfigurationError,
    CorruptedInputError,
    GModuleMPCError,
    InvalidGroupElementError,
    MalformedInputError,
    ProtocolLogicError,
    ProtocolStateError,
)
from .protocols import aot, gm, gmr, mot, run_aot, run_gm, run_gmr, run_mot, run_sgm, sgm
from .reports import measure
from .selection import relu, run_relu, run_select_share, run_sss, select_share, sss
from .session import RunResult, Session
from .transport import Meter, Network

__version__ = "0.1.0"

__all__ = [
    "MapSpace", "PrimeField", "ProductPow", "RotateScaleModule", "Semidirect", "SignModule", "Signs",
    "UnitsMod", "UnitsModule", "Zmod",
    "gm", "sgm", "gmr", "aot", "mot", "fnz", "secure_compare", "drelu", "sss", "select_share", "relu",
    "run_gm", "run_sgm", "run_gmr", "run_aot", "run_mot", "run_fnz", "run_sc", "run_drelu",
    "run_sss", "run_select_share", "run_relu",
    "Session", "RunResult", "Meter", "Network", "Cost", "measure",
    "GModuleMPCError", "MalformedInputError", "InvalidGroupElementError", "ConfigurationError",
    "ProtocolStateError", "ProtocolLogicError", "CommodityModelViolation", "CorruptedInputError",
]

"""Stage, platform and arrival-process definitions."""

from enum import Enum


class Stage(str, Enum):
    """The four per-packet stages of the kernel datapath, in charging order."""

    CPU_COUNTERS = "cpu_counters"
    LOOKUP = "lookup"
    UPCALL = "upcall"
    STATS_UPDATE = "stats_update"


class Platform(str, Enum):
    """Where the switch runs."""

    VOI = "VOI"  # virtual machine on a hypervisor
    BOI = "BOI"  # directly on the hardware


class ArrivalProcess(str, Enum):
    """Packet arrival processes understood by the traffic generator."""

    CBR = "cbr"
    POISSON = "poisson"


STAGES = tuple(Stage)

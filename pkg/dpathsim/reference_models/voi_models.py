"""Reference models for the switch running inside a Xen virtual machine.

Stage bounds add up to 40 us and the hit path never drops below 10.5 us.
CPU-wait tails on cpu_counters and lookup put the slowest packets near 37 us.
Lower data rates shift the body upward and add more CPU-wait tail.
"""

from functools import partial
from typing import Callable, Dict, Tuple

from dpathsim.models.stage import Platform
from dpathsim.models.stage_delay_model import StageDelayModel

from .synthetic import ReferenceModelSpec, StageProfile, synthesize_model

CPU_COUNTERS = StageProfile(lo=6.0, body_hi=12.0, hi=28.0, shape_a=2.0, tail_lo=27.0)
LOOKUP = StageProfile(lo=3.0, body_hi=6.0, hi=7.0, shape_a=2.0, tail_prob=0.05, tail_lo=6.5)
UPCALL = StageProfile(lo=2.0, body_hi=3.0, hi=3.0, shape_a=2.0)
STATS_UPDATE = StageProfile(lo=1.5, body_hi=2.0, hi=2.0, shape_a=2.0)

# name: (body shape, CPU-wait tail probability, workload)
DATASETS: Dict[str, Tuple[float, float, str]] = {
    "voi-56b-ram0.5gb": (3.4, 0.060, "VOI, RAM 0.5GB, 1 core, 56B packets, 10-15 Kb/s"),
    "voi-56b-ram1.0gb": (3.3, 0.055, "VOI, RAM 1.0GB, 1 core, 56B packets, 10-15 Kb/s"),
    "voi-56b-ram1.5gb": (3.2, 0.050, "VOI, RAM 1.5GB, 1 core, 56B packets, 10-15 Kb/s"),
    "voi-56b-ram2.0gb": (3.1, 0.050, "VOI, RAM 2.0GB, 1 core, 56B packets, 10-15 Kb/s"),
    "voi-576b-250kbps": (3.0, 0.050, "VOI, RAM 1.0GB, 1 core, 576B packets, 250 Kb/s"),
    "voi-576b-500kbps": (2.5, 0.035, "VOI, RAM 1.0GB, 1 core, 576B packets, 500 Kb/s"),
    "voi-576b-750kbps": (2.0, 0.020, "VOI, RAM 1.0GB, 1 core, 576B packets, 750 Kb/s"),
    "voi-576b-1000kbps": (1.8, 0.015, "VOI, RAM 1.0GB, 1 core, 576B packets, 1000 Kb/s"),
    "voi-vps-750kbps": (2.1, 0.020, "VOI, RAM 1.0GB, 1 core, variable packet size, 750 Kb/s"),
}


def create_spec(name: str) -> ReferenceModelSpec:
    """Create the recipe of a VOI reference model.

    Args:
        name: A key of DATASETS.

    Returns:
        ReferenceModelSpec: The recipe.
    """
    shape, tail, workload = DATASETS[name]
    return ReferenceModelSpec(
        name=name,
        platform=Platform.VOI,
        description=workload,
        cpu_counters=CPU_COUNTERS.with_shape(shape, tail),
        lookup=LOOKUP.with_shape(shape),
        upcall=UPCALL.with_shape(shape),
        stats_update=STATS_UPDATE.with_shape(shape),
    )


def model_factories() -> Dict[str, Callable[[], StageDelayModel]]:
    """Lazy builders for every VOI reference model.

    Returns:
        Dict[str, Callable[[], StageDelayModel]]: Builder per model name.
    """
    return {name: partial(synthesize_model, create_spec(name)) for name in DATASETS}

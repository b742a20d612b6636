"""Reference models for the switch installed directly on the hardware.

Stage bounds add up to 8.8 us, and every stage is narrower than its VOI
counterpart: one level of CPU scheduling instead of two.
"""

from functools import partial
from typing import Callable, Dict, Tuple

from dpathsim.models.stage import Platform
from dpathsim.models.stage_delay_model import StageDelayModel

from .synthetic import ReferenceModelSpec, StageProfile, synthesize_model

CPU_COUNTERS = StageProfile(lo=2.0, body_hi=3.0, hi=5.0, shape_a=2.0, tail_lo=4.0)
LOOKUP = StageProfile(lo=1.0, body_hi=2.0, hi=2.0, shape_a=2.0)
UPCALL = StageProfile(lo=0.5, body_hi=1.0, hi=1.0, shape_a=2.0)
STATS_UPDATE = StageProfile(lo=0.5, body_hi=0.8, hi=0.8, shape_a=2.0)

DATASETS: Dict[str, Tuple[float, float, str]] = {
    "boi-576b-250kbps": (3.0, 0.020, "BOI, RAM 8.0GB, 4 cores, 576B packets, 250 Kb/s"),
    "boi-576b-500kbps": (2.5, 0.015, "BOI, RAM 8.0GB, 4 cores, 576B packets, 500 Kb/s"),
    "boi-576b-750kbps": (2.0, 0.010, "BOI, RAM 8.0GB, 4 cores, 576B packets, 750 Kb/s"),
    "boi-576b-1000kbps": (1.8, 0.008, "BOI, RAM 8.0GB, 4 cores, 576B packets, 1000 Kb/s"),
    "boi-vps-750kbps": (2.1, 0.010, "BOI, RAM 8.0GB, 4 cores, variable packet size, 750 Kb/s"),
}


def create_spec(name: str) -> ReferenceModelSpec:
    """Create the recipe of a BOI reference model.

    Args:
        name: A key of DATASETS.

    Returns:
        ReferenceModelSpec: The recipe.
    """
    shape, tail, workload = DATASETS[name]
    return ReferenceModelSpec(
        name=name,
        platform=Platform.BOI,
        description=workload,
        cpu_counters=CPU_COUNTERS.with_shape(shape, tail),
        lookup=LOOKUP.with_shape(shape),
        upcall=UPCALL.with_shape(shape),
        stats_update=STATS_UPDATE.with_shape(shape),
    )


def model_factories() -> Dict[str, Callable[[], StageDelayModel]]:
    """Lazy builders for every BOI reference model.

    Returns:
        Dict[str, Callable[[], StageDelayModel]]: Builder per model name.
    """
    return {name: partial(synthesize_model, create_spec(name)) for name in DATASETS}

"""Registry of bundled reference stage models."""

import importlib
import pkgutil
from pathlib import Path
from typing import Callable, Dict, List

from loguru import logger

from dpathsim.exceptions import UnknownModelError
from dpathsim.models.stage_delay_model import StageDelayModel
from dpathsim.reference_models import boi_models, voi_models
from dpathsim.trace_io import load_model

ModelFactory = Callable[[], StageDelayModel]


class ModelRegistry:
    """Central registry of reference models, built lazily and cached."""

    def __init__(self, use_dynamic_loading: bool = False):
        """Initialize the model registry.

        Args:
            use_dynamic_loading: If True, discover ``model_factories`` in every
                module of the reference_models package. If False, use the
                hardcoded module list (default).
        """
        self._factories: Dict[str, ModelFactory] = {}
        self._models: Dict[str, StageDelayModel] = {}

        if use_dynamic_loading:
            self._load_factories_dynamically()
        else:
            self._load_factories_hardcoded()

    def _load_factories_hardcoded(self) -> None:
        """Register the VOI and BOI reference models."""
        for module in (voi_models, boi_models):
            self._factories.update(module.model_factories())

    def _load_factories_dynamically(self) -> None:
        """Discover reference model modules in the reference_models package."""
        models_path = Path(__file__).parent / "reference_models"

        for _, module_name, _ in pkgutil.iter_modules([str(models_path)]):
            if module_name.startswith("_") or module_name == "synthetic":
                continue
            module = importlib.import_module(f".reference_models.{module_name}", package="dpathsim")
            factories = getattr(module, "model_factories", None)
            if not callable(factories):
                logger.debug(f"[MODEL] Skipping {module_name}: no model_factories()")
                continue
            for name, factory in factories().items():
                if name in self._factories:
                    raise ValueError(f"Reference model '{name}' is defined twice")
                self._factories[name] = factory

    def register(self, name: str, factory: ModelFactory) -> None:
        """Register an extra model under a name.

        Args:
            name: The model name used as model_source.
            factory: Builds the model on first use.
        """
        self._factories[name] = factory
        self._models.pop(name, None)

    def get_model_names(self) -> List[str]:
        """Get the names of all registered models.

        Returns:
            List[str]: A sorted list of model names.
        """
        return sorted(self._factories)

    def __contains__(self, name: str) -> bool:
        """Whether a model name is registered."""
        return name in self._factories

    def get_model(self, name: str) -> StageDelayModel:
        """Get a registered model by name, building it on first use.

        Args:
            name: The model name (e.g., "voi-576b-750kbps").

        Returns:
            StageDelayModel: The model.

        Raises:
            UnknownModelError: If no model has that name.
        """
        if name not in self._factories:
            raise UnknownModelError(name)
        if name not in self._models:
            self._models[name] = self._factories[name]()
        return self._models[name]

    def get_all_models(self) -> Dict[str, StageDelayModel]:
        """Build (or fetch) every registered model.

        Returns:
            Dict[str, StageDelayModel]: Model per name, sorted by name.
        """
        return {name: self.get_model(name) for name in self.get_model_names()}

    def resolve(self, source: str) -> StageDelayModel:
        """Resolve a model_source: a registered name, else a model file path.

        Args:
            source: The model_source value.

        Returns:
            StageDelayModel: The model.

        Raises:
            UnknownModelError: If the source is neither a name nor a readable file.
        """
        if source in self._factories:
            return self.get_model(source)
        path = Path(source)
        if not path.is_file():
            raise UnknownModelError(source)
        try:
            content = path.read_bytes()
        except OSError as e:
            raise UnknownModelError(source) from e
        logger.debug(f"[MODEL] Loading model file {path}")
        return load_model(content)


# Global registry instance
model_reg = ModelRegistry(use_dynamic_loading=True)


def build_reference_models() -> Dict[str, StageDelayModel]:
    """Build every bundled reference model.

    Returns:
        Dict[str, StageDelayModel]: Model per name.
    """
    return model_reg.get_all_models()

"""Run configuration: a JSON document plus command line overrides."""

import json
import logging
import pathlib

from dataclasses import dataclass,field,asdict,replace
from typing import Optional,Union

from pathvalidate import validate_filepath,ValidationError

from vistawise.shared import MAX_STEPS,RECALL_STEPS
from vistawise.exceptions import VistaConfigError
from vistawise.graph import DEFAULT_GRAPH
from vistawise.retrieval import DEFAULT_TASKS,Verbosity
from vistawise.perception import RangeConfig
from vistawise.sim import DEFAULT_SCENARIO

logger = logging.getLogger('vistawise.harness.config')

POLICIES = ('scripted', 'remote')
_PATHS = ('graph_file', 'scenario_file', 'tasks_file', 'endpoint', 'output_dir')

@dataclass(frozen=True)
class RunConfig:
    task: str = 'diamond'
    seed: int = 0
    max_steps: int = MAX_STEPS
    policy: str = 'scripted'
    endpoint: Optional[str] = None
    graph_file: str = str(DEFAULT_GRAPH)
    scenario_file: str = str(DEFAULT_SCENARIO)
    tasks_file: str = str(DEFAULT_TASKS)
    recall_steps: int = RECALL_STEPS
    textualization: str = Verbosity.NAMES.value
    range: dict = field(default_factory=dict)
    output_dir: Optional[str] = None

    @classmethod
    def from_dict(cls, data: dict, base_dir: Union[str, pathlib.Path] = None) -> 'RunConfig':
        """Build a config, resolving relative paths against base_dir.

        Raises:
            VistaConfigError: unknown fields or a field of the wrong type
        """

        if not isinstance(data, dict):
            raise VistaConfigError("run config must be a JSON object")
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise VistaConfigError(f"unknown run config fields: {', '.join(sorted(unknown))}")

        data = dict(data)
        if base_dir is not None:
            for key in _PATHS:
                if data.get(key) is not None:
                    data[key] = str(pathlib.Path(base_dir) / data[key])
        return cls(**data)

    def override(self, **changes) -> 'RunConfig':
        """Return a copy with every change that is not None applied."""

        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    @property
    def verbosity(self) -> Verbosity:
        return Verbosity(self.textualization)

    @property
    def range_config(self) -> RangeConfig:
        return RangeConfig.from_dict(self.range)

    def check(self) -> 'RunConfig':
        """Validate every field and that the referenced files exist.

        Raises:
            VistaConfigError: naming the offending field
        """

        for key in ('seed', 'max_steps', 'recall_steps'):
            if not isinstance(getattr(self, key), int) or isinstance(getattr(self, key), bool):
                raise VistaConfigError(f"'{key}' must be an integer")
        if self.max_steps <= 0:
            raise VistaConfigError(f"'max_steps' must be positive, got {self.max_steps}")
        if self.recall_steps < 0:
            raise VistaConfigError(f"'recall_steps' must not be negative, got {self.recall_steps}")
        if self.policy not in POLICIES:
            raise VistaConfigError(f"'policy' must be one of {', '.join(POLICIES)}, got {self.policy}")
        if self.policy == 'remote' and not self.endpoint:
            raise VistaConfigError("a remote policy needs an 'endpoint' config")
        if self.textualization not in [v.value for v in Verbosity]:
            raise VistaConfigError(f"unknown 'textualization' {self.textualization}")

        for key in ('graph_file', 'scenario_file', 'tasks_file', 'endpoint'):
            path = getattr(self, key)
            if path is not None and not pathlib.Path(path).is_file():
                raise VistaConfigError(f"'{key}' {path} does not exist")

        if self.output_dir is not None:
            try:
                validate_filepath(self.output_dir, platform='auto')
            except ValidationError as err:
                raise VistaConfigError(f"'output_dir' is not a usable path: {err}")

        try:
            RangeConfig.from_dict(self.range)
        except (AttributeError, KeyError, TypeError, ValueError) as err:
            raise VistaConfigError(f"'range' is malformed: {err}")
        return self

    def to_dict(self) -> dict:
        return asdict(self)

    def differs_from(self, other: 'RunConfig') -> set:
        """Names of the fields whose values differ."""

        mine, theirs = self.to_dict(), other.to_dict()
        return {key for key in mine if mine[key] != theirs[key]}

def load_config(path: Union[str, pathlib.Path]) -> RunConfig:
    path = pathlib.Path(path)
    try:
        data = json.loads(path.read_text(encoding='utf8'))
    except OSError as err:
        raise VistaConfigError(f"can not read run config {path}: {err}")
    except ValueError as err:
        raise VistaConfigError(f"run config {path} is not JSON: {err}")
    return RunConfig.from_dict(data, path.parent)

"""Run configuration: settings defaults, then a toml file, then command flags."""
try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib
from typing import Literal, Optional, Union

from django.conf import settings
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, model_validator

from boundary_liouville.exceptions import DomainError

SECTIONS = ('tolerances', 'mc', 'contour')


class MCBudget(BaseModel):
    model_config = ConfigDict(extra='forbid')

    n_samples: int = Field(ge=2)
    n_modes: int = Field(ge=1)
    n_grid: int = Field(ge=2)
    seed: int


class RunConfig(BaseModel):
    command: Literal['eval', 'verify', 'mc', 'sweep']
    gamma: float = Field(1.0, gt=0, lt=2)
    tolerances: dict[str, PositiveFloat]
    mc_budget: MCBudget
    contour: dict[str, Union[PositiveInt, PositiveFloat]]
    output_path: Optional[str] = None
    format: Literal['json', 'csv'] = 'json'
    threads: int = Field(ge=1)

    @model_validator(mode='after')
    def within_ceilings(self):
        mc = settings.BCFT_MC
        budget = self.mc_budget
        for name, ceiling in (('n_samples', 'max_samples'), ('n_modes', 'max_modes'), ('n_grid', 'max_grid')):
            if getattr(budget, name) > mc[ceiling]:
                raise ValueError(f"{name}={getattr(budget, name)} is above the ceiling {mc[ceiling]}")
        return self


def read_config_file(path):
    with open(path, 'rb') as f:
        data = tomllib.load(f)
    unknown = sorted(set(data) - set(SECTIONS))
    if unknown:
        raise DomainError(f"{path}: unknown sections {unknown}, expected {list(SECTIONS)}")
    return data


def load_run_config(command, options, default_format='json'):
    """Build the RunConfig of one command from settings, the toml file and ``options``."""
    mc = settings.BCFT_MC
    values = {
        'command': command,
        'tolerances': dict(settings.BCFT_TOLERANCES),
        'mc_budget': {name: mc[name] for name in ('n_samples', 'n_modes', 'n_grid', 'seed')},
        'contour': dict(settings.BCFT_CONTOUR),
        'threads': settings.BCFT_THREADS,
        'format': default_format,
    }
    path = options.get('config') or settings.BCFT_CONFIG
    if path:
        data = read_config_file(path)
        values['tolerances'].update(data.get('tolerances', {}))
        values['mc_budget'].update(data.get('mc', {}))
        values['contour'].update(data.get('contour', {}))

    # flags win
    for flag, key in (('gamma', 'gamma'), ('output', 'output_path'), ('format', 'format'), ('threads', 'threads')):
        if options.get(flag) is not None:
            values[key] = options[flag]
    for flag in ('n_samples', 'n_modes', 'n_grid', 'seed'):
        if options.get(flag) is not None:
            values['mc_budget'][flag] = options[flag]
    return RunConfig.model_validate(values)


def add_common_arguments(parser):
    parser.add_argument('--gamma', type=float, help='coupling in (0, 2)')
    parser.add_argument('--config', help='toml file with tolerances, mc and contour sections')
    parser.add_argument('--output', help='write records here instead of stdout')
    parser.add_argument('--format', choices=('json', 'csv'))
    parser.add_argument('--threads', type=int, help='worker count, capped by BCFT_THREADS')
    parser.add_argument('--seed', type=int)

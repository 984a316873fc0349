import math
from typing import Optional, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field


def plain(value):
    """JSON-friendly form of a parameter: a float when real, else its string."""
    if isinstance(value, complex):
        if value.imag == 0:
            return value.real
        return str(value)
    return value


class EvalRecord(BaseModel):
    kind: str
    gamma: float
    params: dict[str, Union[float, int, str]]
    value_re: float
    value_im: float
    abs_error_estimate: float


class SweepRow(BaseModel):
    target: str
    axis: str
    value: float
    value_re: Optional[float] = None
    value_im: Optional[float] = None
    skipped: bool = False
    reason: str = ''


class MCCheckRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    check: str
    # coarse, fine, extrapolated, or fit for the tail slope
    stage: str
    gamma: float
    p: Optional[float] = None
    beta: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None
    exact: float
    mc_mean: float
    mc_stderr: float
    z_score: Optional[float] = None
    n_samples: int
    # fourier modes on the circle, grid cells on the interval
    n_modes: int
    seed: int
    passed: Optional[bool] = Field(None, alias='pass')


def json_lines(records):
    return ''.join(record.model_dump_json(by_alias=True) + '\n' for record in records)


def csv_table(records):
    """RFC 4180 table, columns in field order, floats round-trippable."""
    frame = pd.DataFrame([record.model_dump(by_alias=True) for record in records])
    return frame.to_csv(index=False, float_format='%.17g', lineterminator='\r\n')


def render(records, fmt):
    return json_lines(records) if fmt == 'json' else csv_table(records)


def finite(value):
    return math.isfinite(value.real) and math.isfinite(value.imag)

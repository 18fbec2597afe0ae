"""Pydantic request/response models for the HTTP service and the CLI client."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field

CHECK_NAMES = (
    "thm-i",
    "thm-ii",
    "thm-iii",
    "delta-gamma",
    "vp",
    "convexity",
    "density",
    "cor32",
    "undefinable",
)


class EvalRequest(BaseModel):
    field: str
    expression: str


class EvalResponse(BaseModel):
    series: str
    valuation: str
    sign: str
    residue: str


class GroupRequest(BaseModel):
    group: str
    p: Optional[int] = None


class GroupResponse(BaseModel):
    group: str
    family: str
    rank: int
    least_positive: Optional[str]
    discrete: bool
    dense: bool
    divisible: bool
    p_regular_not_p_divisible: Optional[int]
    not_closed_in_divisible_hull: Optional[str]
    max_p_divisible_convex: Optional[str] = None


class CheckRequest(BaseModel):
    """Parameters for one check run; unused fields are ignored by checks
    that do not take them."""

    field: Optional[str] = None
    group: Optional[str] = None
    b: Optional[str] = None
    n: Optional[int] = None
    p: Optional[int] = None
    gamma: Optional[str] = None
    f: Optional[str] = None
    a: Optional[str] = None
    b0: Optional[str] = None
    weights: Optional[str] = None
    suffix: Optional[int] = Field(
        default=None, description="convex subgroup selector for coarsening checks"
    )
    samples: int = 1000
    seed: Optional[int] = None


class ErrorResponse(BaseModel):
    error: str
    kind: str

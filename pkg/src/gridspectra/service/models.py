"""Pydantic request/response models for the verification service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

GraphFormat = Literal["edge-list", "graph6"]


class ConstructRequest(BaseModel):
    kind: Literal["grid", "extension", "shrikhande", "complete"]
    m: Optional[int] = Field(None, description="order for grid/complete")
    s: Optional[int] = Field(None, description="clique size for extension")
    t: Optional[int] = Field(None, description="grid parameter for extension")


class ConstructResponse(BaseModel):
    n: int
    edge_count: int
    edge_list: str


class GraphRequest(BaseModel):
    graph_text: str
    format: GraphFormat = "edge-list"


class SpectrumRequest(GraphRequest):
    s: Optional[int] = None
    t: Optional[int] = None


class SpectrumResponse(BaseModel):
    integral: bool
    spectrum: Optional[list[tuple[int, int]]] = None
    matches_expected: Optional[bool] = None


class CheckRequest(GraphRequest):
    s: int
    t: int
    stage: str


class CheckResponse(BaseModel):
    stage: str
    passed: Optional[bool]
    skipped: bool
    witness: Optional[str]


class LinesRequest(GraphRequest):
    s: int
    t: int


class LinesResponse(BaseModel):
    lines: list[list[int]]
    q: list[int]
    delta: int
    alpha: int
    out_of_range: list[int]


class PipelineRequest(GraphRequest):
    s: int
    t: int
    full_report: bool = False


class StageModel(BaseModel):
    stage: str
    passed: Optional[bool] = Field(None, alias="pass")
    skipped: bool
    witness: Optional[str]
    below_bound_flag: bool

    model_config = {"populate_by_name": True}


class PipelineResponse(BaseModel):
    s: int
    t: int
    verdict: str
    stages: list[StageModel]


class ErrorResponse(BaseModel):
    error: str
    message: str

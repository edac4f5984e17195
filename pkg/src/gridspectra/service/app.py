"""FastAPI service wrapping the verification library.

The handler functions are plain request-model -> response-model functions;
the CLI calls them directly when no server is configured, so both transports
share one implementation and one validation surface.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import GridspectraError, InvalidParameterError, error_kind
from ..graphs import (
    ExtensionParams,
    Graph,
    clique_extension,
    complete_graph,
    format_graph,
    grid_graph,
    parse_graph,
    parse_graph6,
    shrikhande_graph,
)
from ..lines import find_lines
from ..reconstruct import run_pipeline, run_stage
from ..spectra import certified_integral_spectrum, expected_spectrum
from .models import (
    CheckRequest,
    CheckResponse,
    ConstructRequest,
    ConstructResponse,
    GraphRequest,
    LinesRequest,
    LinesResponse,
    PipelineRequest,
    PipelineResponse,
    SpectrumRequest,
    SpectrumResponse,
    StageModel,
)


def _load_graph(req: GraphRequest) -> Graph:
    if req.format == "graph6":
        return parse_graph6(req.graph_text)
    return parse_graph(req.graph_text)


def handle_construct(req: ConstructRequest) -> ConstructResponse:
    if req.kind == "complete":
        if req.m is None:
            raise InvalidParameterError("complete needs m")
        g = complete_graph(req.m)
    elif req.kind == "grid":
        if req.m is None:
            raise InvalidParameterError("grid needs m")
        g = grid_graph(req.m)
    elif req.kind == "shrikhande":
        g = shrikhande_graph()
    else:
        if req.s is None or req.t is None:
            raise InvalidParameterError("extension needs s and t")
        params = ExtensionParams(req.s, req.t)
        params.require_extension_scale()
        g = clique_extension(grid_graph(params.t + 1), params.s)
    return ConstructResponse(n=g.n, edge_count=g.edge_count, edge_list=format_graph(g))


def handle_spectrum(req: SpectrumRequest) -> SpectrumResponse:
    g = _load_graph(req)
    spectrum = certified_integral_spectrum(g)
    if spectrum is None:
        return SpectrumResponse(integral=False)
    matches = None
    if req.s is not None or req.t is not None:
        if req.s is None or req.t is None:
            raise InvalidParameterError("s and t must be given together")
        matches = spectrum == expected_spectrum(ExtensionParams(req.s, req.t))
    return SpectrumResponse(
        integral=True, spectrum=[(theta, m) for theta, m in spectrum.pairs], matches_expected=matches
    )


def handle_check(req: CheckRequest) -> CheckResponse:
    g = _load_graph(req)
    result = run_stage(g, ExtensionParams(req.s, req.t), req.stage)
    return CheckResponse(
        stage=result.stage, passed=result.passed, skipped=result.skipped, witness=result.witness
    )


def handle_lines(req: LinesRequest) -> LinesResponse:
    g = _load_graph(req)
    ls = find_lines(g, ExtensionParams(req.s, req.t))
    return LinesResponse(
        lines=[list(line.vertices) for line in ls.lines],
        q=list(ls.q),
        delta=ls.delta,
        alpha=ls.alpha,
        out_of_range=list(ls.out_of_range),
    )


def handle_pipeline(req: PipelineRequest) -> PipelineResponse:
    g = _load_graph(req)
    report = run_pipeline(g, ExtensionParams(req.s, req.t), full_report=req.full_report)
    data = report.to_json_dict()
    return PipelineResponse(
        s=data["s"],
        t=data["t"],
        verdict=data["verdict"],
        stages=[StageModel(**entry) for entry in data["stages"]],
    )


app = FastAPI(title="gridspectra", version=__version__)


@app.exception_handler(GridspectraError)
async def _domain_error(request: Request, exc: GridspectraError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": error_kind(exc), "message": str(exc)})


@app.get("/")
def root() -> dict:
    return {
        "name": "gridspectra",
        "version": __version__,
        "endpoints": ["/construct", "/spectrum", "/check", "/lines", "/pipeline"],
    }


@app.post("/construct", response_model=ConstructResponse)
def construct(req: ConstructRequest) -> ConstructResponse:
    return handle_construct(req)


@app.post("/spectrum", response_model=SpectrumResponse)
def spectrum(req: SpectrumRequest) -> SpectrumResponse:
    return handle_spectrum(req)


@app.post("/check", response_model=CheckResponse)
def check(req: CheckRequest) -> CheckResponse:
    return handle_check(req)


@app.post("/lines", response_model=LinesResponse)
def lines(req: LinesRequest) -> LinesResponse:
    return handle_lines(req)


@app.post("/pipeline", response_model=PipelineResponse)
def pipeline(req: PipelineRequest) -> PipelineResponse:
    return handle_pipeline(req)

"""
Serialized forms of solver output.

The pydantic models below are the documented JSON schema
(`SolveReportSchema.model_json_schema()`). Exact endpoints are dyadic pairs
{"m": "<int>", "e": <int>} meaning m * 2**e; `approx` is a rounded decimal
for reading only and is never used to rebuild an interval.
"""
from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel

from .arith import Dyadic
from .parser import format_poly, format_uni

APPROX_DIGITS = 12


class DyadicSchema(BaseModel):
    m: str
    e: int
    approx: str

    def to_dyadic(self):
        return Dyadic(int(self.m), self.e)


class IntervalSchema(BaseModel):
    lo: DyadicSchema
    hi: DyadicSchema
    kind: str


class BoxSchema(BaseModel):
    x: IntervalSchema
    y: IntervalSchema
    x_index: int
    y_index: int
    status: str
    depth: int
    note: Optional[str] = None


class MagnitudeSchema(BaseModel):
    n: int
    tau: int


class StatsSchema(BaseModel):
    f: MagnitudeSchema
    g: MagnitudeSchema
    rx: MagnitudeSchema
    ry: MagnitudeSchema
    x_roots: int
    y_roots: int
    x_isolation_nodes: int
    x_isolation_depth: int
    y_isolation_nodes: int
    y_isolation_depth: int
    min_sep_lower_bound: Optional[str] = None
    candidates: int
    excluded: int
    certified_unique: int
    certified_fiber: int
    undecided: int
    fibers_analyzed: int
    max_depth: int
    timings_ms: Optional[Dict[str, float]] = None


class SolveReportSchema(BaseModel):
    f: str
    g: str
    rx: str
    ry: str
    all_decided: bool
    solutions: List[BoxSchema]
    undecided: List[BoxSchema]
    stats: StatsSchema


class IsolateReportSchema(BaseModel):
    var: str
    poly: str
    roots: List[IntervalSchema]


class ResultantReportSchema(BaseModel):
    var: str
    resultant: str
    magnitude: Optional[MagnitudeSchema] = None


def approx(value):
    return f"{float(Fraction(value)):.{APPROX_DIGITS}g}"


def dyadic_schema(d):
    return DyadicSchema(m=str(d.m), e=d.e, approx=approx(d.to_fraction()))


def interval_schema(iv):
    return IntervalSchema(lo=dyadic_schema(iv.lo), hi=dyadic_schema(iv.hi), kind=iv.kind.value)


def box_schema(box):
    return BoxSchema(
        x=interval_schema(box.ix),
        y=interval_schema(box.iy),
        x_index=box.x_index,
        y_index=box.y_index,
        status=box.status.value,
        depth=box.depth,
        note=box.note.value if box.note else None,
    )


def magnitude_schema(m):
    return MagnitudeSchema(n=m.n, tau=m.tau)


def to_schema(report, f_poly, g_poly, include_timings=False):
    s = report.stats
    stats = StatsSchema(
        f=magnitude_schema(s.f_magnitude),
        g=magnitude_schema(s.g_magnitude),
        rx=magnitude_schema(s.rx_magnitude),
        ry=magnitude_schema(s.ry_magnitude),
        x_roots=s.x_roots,
        y_roots=s.y_roots,
        x_isolation_nodes=s.x_isolation.nodes,
        x_isolation_depth=s.x_isolation.max_depth,
        y_isolation_nodes=s.y_isolation.nodes,
        y_isolation_depth=s.y_isolation.max_depth,
        min_sep_lower_bound=(
            str(s.min_sep_lower_bound) if s.min_sep_lower_bound is not None else None
        ),
        candidates=s.candidates,
        excluded=s.excluded,
        certified_unique=s.certified_unique,
        certified_fiber=s.certified_fiber,
        undecided=s.undecided,
        fibers_analyzed=s.fibers_analyzed,
        max_depth=s.max_depth,
        timings_ms=dict(s.timings) if include_timings else None,
    )
    return SolveReportSchema(
        f=format_poly(f_poly),
        g=format_poly(g_poly),
        rx=format_uni(report.rx, "x"),
        ry=format_uni(report.ry, "y"),
        all_decided=report.all_decided,
        solutions=[box_schema(b) for b in report.solutions],
        undecided=[box_schema(b) for b in report.undecided],
        stats=stats,
    )


def without_timings(schema):
    stats = schema.stats.model_copy(update={"timings_ms": None})
    return schema.model_copy(update={"stats": stats})


def render_json(schema):
    return schema.model_dump_json(indent=2, exclude_none=False)


def _box_line(n, box):
    line = (
        f"  {n}. {box.status}  x in {_interval_text_schema(box.x)}"
        f"  y in {_interval_text_schema(box.y)}"
    )
    if box.note:
        line += f"  ({box.note})"
    return line


def _interval_text_schema(iv):
    lo, hi = iv.lo.to_dyadic(), iv.hi.to_dyadic()
    if lo == hi:
        return f"{{{lo} ~ {iv.lo.approx}}}"
    return f"[{lo}, {hi}] ~ [{iv.lo.approx}, {iv.hi.approx}]"


def render_text(schema):
    """Human-readable rendering of a SolveReportSchema."""
    s = schema.stats
    lines = [
        f"F = {schema.f}",
        f"G = {schema.g}",
        f"Rx = {schema.rx}",
        f"Ry = {schema.ry}",
        f"solutions: {len(schema.solutions)}",
    ]
    lines.extend(_box_line(n, b) for n, b in enumerate(schema.solutions, 1))
    lines.append(f"undecided: {len(schema.undecided)}")
    lines.extend(_box_line(n, b) for n, b in enumerate(schema.undecided, 1))
    lines.append(
        f"candidates={s.candidates} excluded={s.excluded} "
        f"certified_unique={s.certified_unique} certified_fiber={s.certified_fiber} "
        f"undecided={s.undecided} depth={s.max_depth}"
    )
    if s.timings_ms is not None:
        lines.append(
            "timings_ms: " + " ".join(f"{k}={v}" for k, v in s.timings_ms.items())
        )
    return "\n".join(lines) + "\n"


def isolate_schema(p, intervals, var="x"):
    return IsolateReportSchema(
        var=var, poly=format_uni(p, var), roots=[interval_schema(iv) for iv in intervals]
    )


def render_isolate_text(schema):
    lines = [f"p = {schema.poly}", f"roots: {len(schema.roots)}"]
    lines.extend(
        f"  {n}. {_interval_text_schema(iv)}" for n, iv in enumerate(schema.roots, 1)
    )
    return "\n".join(lines) + "\n"


def resultant_schema(res, var, mag):
    other = "y" if var == "x" else "x"
    return ResultantReportSchema(
        var=var,
        resultant=format_uni(res, other),
        magnitude=magnitude_schema(mag) if mag else None,
    )


def render_resultant_text(schema):
    out = f"res_{schema.var} = {schema.resultant}\n"
    if schema.magnitude:
        out += f"degree={schema.magnitude.n} bitlength={schema.magnitude.tau}\n"
    return out

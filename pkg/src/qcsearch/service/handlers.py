"""Command implementations behind the service routes and the CLI.

Every command funnels into an :class:`Envelope` and a single pair of
renderers, so the bytes a client sees are identical whether the call
came over HTTP or through the in-process CLI path.  Timestamps live in
the metadata only; payloads are deterministic functions of the request
(and seed).
"""
from __future__ import annotations

import csv
import io
import json
import math
from datetime import datetime, timezone
from typing import Any, Optional

from .. import __version__
from ..bitstring import BitString
from ..combinatorics import LogReal, ball_count
from ..errors import InvariantError
from ..hybrid import CounterStats, MonteCarloConfig, MonteCarloSummary, monte_carlo
from ..oracles import (
    SolutionInstance,
    analytic_sublevel_count,
    build_promise,
    validate_promise_instance,
)
from ..query_model import (
    HybridModel,
    evaluate,
    evaluate_promise,
    g_min_closed_form,
    k_opt,
    reference_table,
)
from .schemas import (
    Envelope,
    GainRequest,
    KoptRequest,
    Metadata,
    PromiseRequest,
    SimulateRequest,
    Table1Request,
)

TOOL_NAME = "qcsearch"

PROMISE_VALIDATION_MAX_BITS = 16


def _sci(value: LogReal, sig: int = 6) -> str:
    """Scientific-notation string straight from the log-domain value."""
    if value.is_zero:
        return "0"
    exponent = math.floor(value.log10)
    mantissa = 10.0 ** (value.log10 - exponent)
    text = f"{mantissa:.{sig - 1}f}"
    if text.startswith("10"):
        exponent += 1
        text = f"{mantissa / 10.0:.{sig - 1}f}"
    return f"{text}e{exponent:+03d}"


def _metadata(command: str, seed: Optional[int] = None) -> Metadata:
    return Metadata(
        tool=TOOL_NAME,
        version=__version__,
        command=command,
        seed=seed,
        timestamp=datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
    )


def _model_row(model: HybridModel) -> dict[str, Any]:
    return {
        "n": model.n,
        "k": model.k,
        "M": str(model.m),
        "log10_NG": model.n_g.log10,
        "log10_NC": model.n_c.log10,
        "log10_NGC": model.n_gc.log10,
        "log10_G": model.g.log10,
        "G_sci": _sci(model.g),
    }


# -- command handlers ---------------------------------------------------------


def handle_gain(req: GainRequest) -> Envelope:
    model = evaluate(req.n, req.k)
    return Envelope(
        format=req.format,
        metadata=_metadata("gain"),
        payload=_model_row(model),
    )


def handle_kopt(req: KoptRequest) -> Envelope:
    k_star, best = k_opt(req.n)
    closed = g_min_closed_form(req.n)
    payload: dict[str, Any] = {
        "n": req.n,
        "k_star": k_star,
        "best": _model_row(best),
        "log10_G_closed_form": closed.log10,
        "G_closed_form_sci": _sci(closed),
    }
    if req.sweep:
        payload["sweep"] = [_model_row(evaluate(req.n, k)) for k in range(req.n + 1)]
    return Envelope(format=req.format, metadata=_metadata("kopt"), payload=payload)


def handle_table1(req: Table1Request) -> Envelope:
    rows = []
    for row in reference_table():
        rows.append(
            {
                "n": row.n,
                "k_ref": row.k_ref,
                "G_ref_sci": _sci(LogReal.from_float(row.g_ref)),
                "log10_G_ref": math.log10(row.g_ref),
                "k_star": row.k_star,
                "delta_k": row.delta_k,
                "log10_G_at_k_ref": row.g_at_k_ref.log10,
                "log10_G_at_k_star": row.g_at_k_star.log10,
                "G_at_k_star_sci": _sci(row.g_at_k_star),
                "log10_G_closed_form": row.g_closed_form.log10,
                "delta_log10_at_k_ref": row.delta_log10_at_k_ref,
                "delta_log10_at_k_star": row.delta_log10_at_k_star,
                "delta_log10_closed_form": row.delta_log10_closed_form,
            }
        )
    return Envelope(
        format=req.format, metadata=_metadata("table1"), payload={"rows": rows}
    )


def _stats_row(stats: CounterStats) -> dict[str, float]:
    return {
        "mean": stats.mean,
        "stddev": stats.stddev,
        "min": stats.min,
        "max": stats.max,
        "ci95_low": stats.ci95_low,
        "ci95_high": stats.ci95_high,
    }


def _summary_payload(summary: MonteCarloSummary) -> dict[str, Any]:
    stats = {kind: _stats_row(s) for kind, s in summary.per_kind.items()}
    stats["restarts"] = _stats_row(summary.restarts)
    return {
        "strategy": summary.strategy,
        "n": summary.n,
        "k": summary.k,
        "trials": summary.trials,
        "seed": summary.seed,
        "engine": summary.engine,
        "order": summary.order,
        "found_rate": summary.found_rate,
        "stats": stats,
        "model": _model_row(summary.model) if summary.model is not None else None,
    }


def handle_simulate(req: SimulateRequest) -> Envelope:
    strategy = "smart_classical" if req.strategy == "smart" else req.strategy
    config = MonteCarloConfig(
        strategy=strategy,
        n=req.n,
        trials=req.trials,
        seed=req.seed,
        k=req.k,
        engine=req.engine,
        order=req.order,
    )
    summary = monte_carlo(config)
    return Envelope(
        format=req.format,
        metadata=_metadata("simulate", seed=req.seed),
        payload=_summary_payload(summary),
    )


def handle_promise(req: PromiseRequest) -> Envelope:
    pf = build_promise(req.g, req.n, req.l, req.k)
    m_gl = analytic_sublevel_count(req.g, req.n, req.l)
    model = evaluate_promise(req.n, req.k, m_gl, req.l)
    enumeration: dict[str, Any] = {"checked": False}
    if req.n <= PROMISE_VALIDATION_MAX_BITS:
        inst = SolutionInstance(BitString.zeros(req.n))
        count, diameter = validate_promise_instance(pf, inst)
        if count != m_gl:
            raise InvariantError(
                f"enumerated sublevel count {count} disagrees with the "
                f"analytic count {m_gl}"
            )
        if diameter > req.k:
            raise ValueError(
                f"promise violated: sublevel set has pairwise diameter "
                f"{diameter} > promised bound k={req.k}"
            )
        enumeration = {
            "checked": True,
            "M_gl_enumerated": count,
            "max_pairwise_distance": diameter,
            "diameter_ok": True,
        }
    payload = {
        "n": req.n,
        "k": req.k,
        "l": req.l,
        "g": req.g,
        "M_gl": str(m_gl),
        "ball_sum": str(ball_count(req.n, req.k)),
        "log10_NGC": model.n_gc.log10,
        "NGC_sci": _sci(model.n_gc),
        "log10_G": model.g.log10,
        "G_sci": _sci(model.g),
        "enumeration": enumeration,
    }
    return Envelope(format=req.format, metadata=_metadata("promise"), payload=payload)


# -- rendering ----------------------------------------------------------------

_GAIN_COLUMNS = ["n", "k", "M", "log10_NG", "log10_NC", "log10_NGC", "log10_G", "G_sci"]

_TABLE1_COLUMNS = [
    "n",
    "k_ref",
    "G_ref_sci",
    "log10_G_ref",
    "k_star",
    "delta_k",
    "log10_G_at_k_ref",
    "log10_G_at_k_star",
    "G_at_k_star_sci",
    "log10_G_closed_form",
    "delta_log10_at_k_ref",
    "delta_log10_at_k_star",
    "delta_log10_closed_form",
]

_STATS_COLUMNS = ["kind", "mean", "stddev", "min", "max", "ci95_low", "ci95_high"]

_PROMISE_COLUMNS = [
    "n",
    "k",
    "l",
    "g",
    "M_gl",
    "ball_sum",
    "log10_NGC",
    "NGC_sci",
    "log10_G",
    "G_sci",
    "enum_checked",
    "M_gl_enumerated",
    "max_pairwise_distance",
]


def render(envelope: Envelope) -> tuple[str, str]:
    """Serialize an envelope to (content, media type), deterministically."""
    if envelope.format == "json":
        return json.dumps(envelope.model_dump(), indent=2), "application/json"
    return _render_csv(envelope), "text/csv"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv_text(metadata: Metadata, columns: list[str], rows: list[dict[str, Any]]) -> str:
    buf = io.StringIO()
    buf.write(f"# tool: {metadata.tool} {metadata.version}\n")
    buf.write(f"# command: {metadata.command}\n")
    if metadata.seed is not None:
        buf.write(f"# seed: {metadata.seed}\n")
    buf.write(f"# timestamp: {metadata.timestamp}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(col)) for col in columns])
    return buf.getvalue().rstrip("\n")


def _render_csv(envelope: Envelope) -> str:
    command = envelope.metadata.command
    payload = envelope.payload
    if command == "gain":
        return _csv_text(envelope.metadata, _GAIN_COLUMNS, [payload])
    if command == "kopt":
        columns = _GAIN_COLUMNS + ["is_kopt", "log10_G_closed_form"]
        source = payload["sweep"] if "sweep" in payload else [payload["best"]]
        rows = []
        for r in source:
            row = dict(r)
            row["is_kopt"] = int(row["k"] == payload["k_star"])
            row["log10_G_closed_form"] = payload["log10_G_closed_form"]
            rows.append(row)
        return _csv_text(envelope.metadata, columns, rows)
    if command == "table1":
        return _csv_text(envelope.metadata, _TABLE1_COLUMNS, payload["rows"])
    if command == "simulate":
        rows = [{"kind": kind, **stats} for kind, stats in payload["stats"].items()]
        return _csv_text(envelope.metadata, _STATS_COLUMNS, rows)
    if command == "promise":
        row = dict(payload)
        enumeration = row.pop("enumeration")
        row["enum_checked"] = int(enumeration["checked"])
        if enumeration["checked"]:
            row["M_gl_enumerated"] = enumeration["M_gl_enumerated"]
            row["max_pairwise_distance"] = enumeration["max_pairwise_distance"]
        return _csv_text(envelope.metadata, _PROMISE_COLUMNS, [row])
    raise ValueError(f"no CSV renderer for command {command!r}")

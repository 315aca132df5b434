"""Thin command-line client for the analysis service.

By default each subcommand validates its arguments with the service's
request models and runs the service handler in process, printing exactly
the bytes the HTTP route would return.  Point ``--server`` at a running
instance (see ``qcsearch serve``) to go over the wire instead.

Exit codes: 0 success, 2 bad arguments or configuration, 3 internal
invariant violation.
"""
from __future__ import annotations

import sys
from typing import Any

import click
import httpx
from pydantic import ValidationError

from .errors import InvariantError
from .service import handlers
from .service.schemas import (
    GainRequest,
    KoptRequest,
    PromiseRequest,
    SimulateRequest,
    Table1Request,
)

EXIT_USAGE = 2
EXIT_INVARIANT = 3

_COMMANDS = {
    "gain": (GainRequest, handlers.handle_gain),
    "kopt": (KoptRequest, handlers.handle_kopt),
    "table1": (Table1Request, handlers.handle_table1),
    "simulate": (SimulateRequest, handlers.handle_simulate),
    "promise": (PromiseRequest, handlers.handle_promise),
}


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _dispatch(ctx: click.Context, command: str, body: dict[str, Any]) -> None:
    server = ctx.obj.get("server")
    if server:
        _dispatch_remote(server, command, body)
        return
    model, handler = _COMMANDS[command]
    try:
        request = model(**body)
        envelope = handler(request)
    except ValidationError as exc:
        details = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}"
            for err in exc.errors()
        )
        _fail(details, EXIT_USAGE)
        return
    except InvariantError as exc:
        _fail(str(exc), EXIT_INVARIANT)
        return
    except (ValueError, ZeroDivisionError) as exc:
        _fail(str(exc), EXIT_USAGE)
        return
    content, _ = handlers.render(envelope)
    click.echo(content)


def _dispatch_remote(server: str, command: str, body: dict[str, Any]) -> None:
    url = f"{server.rstrip('/')}/v1/{command}"
    try:
        response = httpx.post(url, json=body, timeout=600.0)
    except httpx.HTTPError as exc:
        _fail(f"request to {url} failed: {exc}", EXIT_USAGE)
        return
    if response.status_code >= 500:
        _fail(response.text, EXIT_INVARIANT)
    elif response.status_code >= 400:
        _fail(response.text, EXIT_USAGE)
    else:
        click.echo(response.text)


format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
    help="Output format.",
)


@click.group()
@click.version_option()
@click.option(
    "--server",
    default=None,
    metavar="URL",
    help="Base URL of a running qcsearch service; default runs in process.",
)
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Analyze and simulate hybrid quantum-then-classical search."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command()
@click.option("--n", type=int, required=True, help="Bit width of the search space.")
@click.option("--k", type=int, required=True, help="Switchover Hamming radius.")
@format_option
@click.pass_context
def gain(ctx: click.Context, n: int, k: int, fmt: str) -> None:
    """Model costs and gain at one (n, k) operating point."""
    _dispatch(ctx, "gain", {"n": n, "k": k, "format": fmt})


@main.command()
@click.option("--n", type=int, required=True, help="Bit width of the search space.")
@click.option("--sweep", is_flag=True, help="Emit every k from 0 to n.")
@format_option
@click.pass_context
def kopt(ctx: click.Context, n: int, sweep: bool, fmt: str) -> None:
    """Optimal switchover radius and the closed-form gain floor."""
    _dispatch(ctx, "kopt", {"n": n, "sweep": sweep, "format": fmt})


@main.command()
@format_option
@click.pass_context
def table1(ctx: click.Context, fmt: str) -> None:
    """Recompute the published optimal-gain table with reconciliation deltas."""
    _dispatch(ctx, "table1", {"format": fmt})


@main.command()
@click.option(
    "--strategy",
    type=click.Choice(["hybrid", "pure_quantum", "pure_classical", "smart"]),
    required=True,
)
@click.option("--n", type=int, required=True, help="Bit width of the search space.")
@click.option("--k", type=int, default=None, help="Switchover radius (hybrid only).")
@click.option("--trials", type=int, required=True, help="Independent trials to run.")
@click.option("--seed", type=int, required=True, help="Root seed (mandatory).")
@click.option(
    "--engine",
    type=click.Choice(["statevector", "idealized"]),
    default="statevector",
    show_default=True,
)
@click.option(
    "--order",
    type=click.Choice(["shuffled", "canonical"]),
    default="shuffled",
    show_default=True,
    help="Classical scan order.",
)
@format_option
@click.pass_context
def simulate(
    ctx: click.Context,
    strategy: str,
    n: int,
    k: int | None,
    trials: int,
    seed: int,
    engine: str,
    order: str,
    fmt: str,
) -> None:
    """Monte Carlo query accounting for one strategy."""
    _dispatch(
        ctx,
        "simulate",
        {
            "strategy": strategy,
            "n": n,
            "k": k,
            "trials": trials,
            "seed": seed,
            "engine": engine,
            "order": order,
            "format": fmt,
        },
    )


@main.command()
@click.option("--n", type=int, required=True, help="Bit width of the search space.")
@click.option("--g", "gspec", required=True, help="'distance' or 'prefix:<bits>'.")
@click.option("--l", "threshold", type=int, required=True, help="Score threshold.")
@click.option("--k", type=int, required=True, help="Promised pairwise diameter bound.")
@format_option
@click.pass_context
def promise(
    ctx: click.Context, n: int, gspec: str, threshold: int, k: int, fmt: str
) -> None:
    """Cost model for marking through a scoring function with a diameter promise."""
    _dispatch(
        ctx,
        "promise",
        {"n": n, "g": gspec, "l": threshold, "k": k, "format": fmt},
    )


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()

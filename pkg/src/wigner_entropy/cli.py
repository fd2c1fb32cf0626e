"""Command-line client for the entropy service.

Every command is a thin HTTP client.  Without ``--server`` the requests run
against the bundled FastAPI app in-process (no socket, same wire format);
with ``--server URL`` they go to a remote instance.

Units are natural (c = 1): mass and width share one arbitrary unit, so only
the ratio width/mass and the rapidity are physical.  Exit codes: 0 success,
1 bad arguments, 2 quadrature non-convergence, 3 frame-search
non-convergence.
"""

from __future__ import annotations

import asyncio
import json
import os

import click
import httpx

NODES_ENV_VAR = "WIGNER_ENTROPY_NODES"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_QUADRATURE = 2
EXIT_SEARCH = 3

CSV_HEADER = "w,m,alpha,t,S_numeric,S_leading,nz_numeric,nz_leading,quad_error"
_CSV_KEYS = ("w", "m", "alpha", "t", "s_numeric", "s_leading", "nz_numeric", "nz_leading", "quad_error")


def _post(path: str, payload: dict, server: str | None) -> tuple[int, dict]:
    """POST to the service; in-process ASGI unless a server URL is given."""
    if server:
        try:
            with httpx.Client(base_url=server, timeout=600.0) as client:
                response = client.post(path, json=payload)
        except httpx.HTTPError as exc:
            click.echo(f"error: cannot reach server {server}: {exc}", err=True)
            raise SystemExit(EXIT_USAGE) from exc
        return response.status_code, response.json()

    from .service.app import app

    async def _go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://service") as client:
            return await client.post(path, json=payload)

    response = asyncio.run(_go())
    return response.status_code, response.json()


def _fail_from_status(status: int, body: dict) -> None:
    detail = body.get("detail", body)
    if status == 409:
        message = detail.get("message", "quadrature did not converge")
        click.echo(f"error: {message}", err=True)
        raise SystemExit(EXIT_QUADRATURE)
    if isinstance(detail, list):  # schema validation report
        for item in detail:
            loc = ".".join(str(x) for x in item.get("loc", []) if x != "body")
            where = f"{loc}: " if loc else ""
            message = item.get("msg", "invalid value").removeprefix("Value error, ")
            click.echo(f"error: {where}{message}", err=True)
    else:
        click.echo(f"error: {detail.get('message', detail)}", err=True)
    raise SystemExit(EXIT_USAGE)


def _parse_spin(text: str | None):
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise click.BadParameter("expected two comma-separated components, e.g. '0.6,0.8'")
    try:
        comps = [complex(part.strip()) for part in parts]
    except ValueError as exc:
        raise click.BadParameter(f"cannot parse spinor component: {exc}") from exc
    return [[c.real, c.imag] for c in comps]


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def _nodes_option(nodes: int | None) -> int | None:
    if nodes is not None:
        return nodes
    env = os.environ.get(NODES_ENV_VAR)
    return int(env) if env else None


def _csv_row(row: dict) -> str:
    # repr of a float is the shortest form that round-trips, always with '.'
    return ",".join(repr(float(row[key])) for key in _CSV_KEYS)


def _echo_json(data: dict) -> None:
    click.echo(json.dumps(data, indent=2))


server_option = click.option("--server", default=None, help="Service URL; defaults to in-process.")
nodes_option = click.option("--nodes", type=int, default=None,
                            help=f"Quadrature nodes per axis (default 48; env {NODES_ENV_VAR}).")


@click.group()
@click.version_option(package_name="wigner-entropy")
def main():
    """Spin entropy of boosted wave packets, from the command line."""


@main.command()
@click.option("--mass", type=float, required=True, help="Particle mass (natural units).")
@click.option("--width", type=float, required=True, help="Gaussian momentum width.")
@click.option("--rapidity", type=float, default=None, help="Boost rapidity.")
@click.option("--beta", type=float, default=None, help="Boost velocity; alternative to --rapidity.")
@click.option("--axis", type=click.Choice(["x", "y", "z"]), default="x", show_default=True)
@click.option("--spin", default=None, help="Spinor components 'c1,c2' (complex allowed).")
@click.option("--spin-up", "spin_up", is_flag=True, default=False, help="Shortcut for --spin 1,0.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@nodes_option
@server_option
def entropy(mass, width, rapidity, beta, axis, spin, spin_up, fmt, nodes, server):
    """Entropy of a boosted Gaussian packet, with the leading-order comparison."""
    if spin and spin_up:
        raise click.UsageError("use either --spin or --spin-up")
    payload = {
        "mass": mass,
        "width": width,
        "rapidity": rapidity,
        "beta": beta,
        "axis": axis,
        "spin": _parse_spin("1,0" if spin_up else spin),
        "nodes": _nodes_option(nodes),
    }
    status, body = _post("/entropy", payload, server)
    if status != 200:
        _fail_from_status(status, body)
    if fmt == "csv":
        row = dict(body, quad_error=body["quadrature"]["error_estimate"])
        click.echo(CSV_HEADER)
        click.echo(_csv_row(row))
    else:
        _echo_json(body)
    raise SystemExit(EXIT_OK)


@main.command()
@click.option("--mass", type=float, required=True)
@click.option("--widths", required=True, help="Comma-separated packet widths.")
@click.option("--alphas", required=True, help="Comma-separated boost rapidities.")
@click.option("--axis", type=click.Choice(["x", "y", "z"]), default="x", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@nodes_option
@server_option
def scan(mass, widths, alphas, axis, fmt, nodes, server):
    """Sweep a (width, rapidity) grid; rows ordered widths-outer, alphas-inner."""
    payload = {
        "mass": mass,
        "widths": _parse_floats(widths),
        "alphas": _parse_floats(alphas),
        "axis": axis,
        "nodes": _nodes_option(nodes),
    }
    status, body = _post("/scan", payload, server)
    if status != 200:
        _fail_from_status(status, body)
    if fmt == "json":
        _echo_json(body)
    else:
        click.echo(CSV_HEADER)
        for row in body["rows"]:
            click.echo(_csv_row(row))
    raise SystemExit(EXIT_OK)


@main.command()
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomized checks.")
@nodes_option
@server_option
def verify(seed, nodes, server):
    """Run the self-verification suite; one PASS/FAIL line per check.

    Exit 0 when everything passes, 1 if any algebraic identity fails,
    2 if only quadrature-backed checks fail (e.g. with coarse --nodes).
    """
    payload = {"seed": seed, "nodes": _nodes_option(nodes)}
    status, body = _post("/verify", payload, server)
    if status != 200:
        _fail_from_status(status, body)
    failed_categories = set()
    for check in body["checks"]:
        tag = "PASS" if check["passed"] else "FAIL"
        line = (
            f"{tag} {check['name']} [{check['category']}] "
            f"measured={check['measured']:.3e} threshold={check['threshold']:.3e}"
        )
        if check["detail"]:
            line += f" ({check['detail']})"
        click.echo(line)
        if not check["passed"]:
            failed_categories.add(check["category"])
    if not failed_categories:
        click.echo("all checks passed")
        raise SystemExit(EXIT_OK)
    raise SystemExit(EXIT_USAGE if "algebraic" in failed_categories else EXIT_QUADRATURE)


def _frame_command(path, mass, width, boost_rapidity, boost_beta, boost_axis, spin,
                   nodes, server, extra):
    payload = {
        "mass": mass,
        "width": width,
        "boost_rapidity": boost_rapidity,
        "boost_beta": boost_beta,
        "boost_axis": boost_axis,
        "spin": _parse_spin(spin),
        "nodes": _nodes_option(nodes),
        **extra,
    }
    status, body = _post(path, payload, server)
    if status != 200:
        _fail_from_status(status, body)
    _echo_json(body)
    raise SystemExit(EXIT_OK if body["converged"] else EXIT_SEARCH)


frame_options = [
    click.option("--mass", type=float, required=True),
    click.option("--width", type=float, required=True),
    click.option("--boost-rapidity", type=float, default=None,
                 help="Preparation boost applied to the packet before the search."),
    click.option("--boost-beta", type=float, default=None),
    click.option("--boost-axis", type=click.Choice(["x", "y", "z"]), default="x", show_default=True),
    click.option("--spin", default=None, help="Spinor components 'c1,c2'."),
]


def _with_frame_options(fn):
    for option in reversed(frame_options):
        fn = option(fn)
    return fn


@main.command()
@_with_frame_options
@click.option("--max-evals", type=int, default=500, show_default=True,
              help="Entropy evaluation budget per simplex run.")
@nodes_option
@server_option
def minframe(mass, width, boost_rapidity, boost_beta, boost_axis, spin, max_evals, nodes, server):
    """Search for the Lorentz frame minimizing the spin entropy (exit 3 if not converged)."""
    _frame_command(
        "/frame/min-entropy", mass, width, boost_rapidity, boost_beta, boost_axis,
        spin, nodes, server, {"max_evaluations": max_evals},
    )


@main.command()
@_with_frame_options
@click.option("--max-iterations", type=int, default=50, show_default=True)
@nodes_option
@server_option
def restframe(mass, width, boost_rapidity, boost_beta, boost_axis, spin, max_iterations, nodes, server):
    """Find the frame where the mean momentum vanishes (exit 3 if not converged)."""
    _frame_command(
        "/frame/rest", mass, width, boost_rapidity, boost_beta, boost_axis,
        spin, nodes, server, {"max_iterations": max_iterations},
    )


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("wigner_entropy.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()

"""Command line front end.

The CLI is a thin client of the HTTP service: every command sends a
request to the FastAPI app (in process by default, or to ``--server URL``)
and renders the JSON reply as CSV or a text report.  Numbers are printed
with 9 significant digits and ``\\n`` line endings, so outputs are
byte-stable across runs.

Exit codes: 0 success, 1 numerical failure (root shortfall, non-frequency
alpha, failed verification), 2 usage/validation error.
"""

from __future__ import annotations

import json
import sys
from typing import Optional

import click
import httpx

DEFAULTS = {
    "bc": "pp", "k": 1.0, "lambda0": 0.0, "lambda1": 0.0, "xi0": 0.5,
    "A": 1.0, "m": 1.0, "n_modes": 3, "alpha_max": 25.0, "grid_step": 0.01,
    "tol": 1e-12,
}


def _fmt(value: float) -> str:
    return format(value, ".9g")


class Client:
    """HTTP transport; in-process against the ASGI app unless a server URL
    is given, so the command works standalone with no daemon running."""

    def __init__(self, server: Optional[str]):
        if server:
            self._client = httpx.Client(base_url=server, timeout=300.0)
        else:
            import warnings
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import app
            self._client = TestClient(app)

    def post(self, path: str, payload: dict) -> httpx.Response:
        return self._client.post(path, json=payload)


def _merge_config(ctx: click.Context, values: dict, config_path: Optional[str],
                  verbose: bool) -> dict:
    """Effective parameters: explicit flags > config file > defaults."""
    merged = dict(values)
    if config_path:
        with open(config_path) as fh:
            try:
                config = json.load(fh)
            except json.JSONDecodeError as err:
                raise click.UsageError(f"config file is not valid JSON: {err}")
        if not isinstance(config, dict):
            raise click.UsageError("config file must hold a flat JSON object")
        for key, value in config.items():
            if key not in merged:
                raise click.UsageError(f"unknown config key {key!r}")
            source = ctx.get_parameter_source(key)
            if source is None or source.name == "DEFAULT":
                merged[key] = value
    if verbose:
        click.echo("effective config: "
                   + json.dumps(merged, sort_keys=True, default=str), err=True)
    return merged


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _request(client: Client, path: str, payload: dict) -> dict:
    try:
        response = client.post(path, payload)
    except httpx.HTTPError as err:
        click.echo(f"error: cannot reach service: {err}", err=True)
        sys.exit(1)
    if response.status_code == 422:
        click.echo(f"error: invalid parameters: {response.text}", err=True)
        sys.exit(2)
    if response.status_code != 200:
        detail = response.json().get("detail", response.text)
        click.echo(f"error: {detail}", err=True)
        sys.exit(1)
    return response.json()


def beam_options(fn):
    for name, default, help_text in reversed([
            ("bc", DEFAULTS["bc"], "boundary conditions: pp or cc"),
            ("k", DEFAULTS["k"], "right/left stiffness ratio"),
            ("lambda0", DEFAULTS["lambda0"], "crack intensity, left side"),
            ("lambda1", DEFAULTS["lambda1"], "crack intensity, right side"),
            ("xi0", DEFAULTS["xi0"], "junction/crack position in (0,1)"),
            ("A", DEFAULTS["A"], "left flexural stiffness"),
            ("m", DEFAULTS["m"], "mass per unit length"),
            ("n_modes", DEFAULTS["n_modes"], "number of modes"),
            ("alpha_max", DEFAULTS["alpha_max"], "scan cap for alpha"),
            ("grid_step", DEFAULTS["grid_step"], "scan step for alpha"),
            ("tol", DEFAULTS["tol"], "bisection tolerance on alpha")]):
        flag = "--" + name.replace("_", "-")
        if name == "bc":
            fn = click.option(flag, "bc", default=default, show_default=True,
                              type=click.Choice(["pp", "cc"]), help=help_text)(fn)
        elif name == "n_modes":
            fn = click.option(flag, name, default=default, show_default=True,
                              type=int, help=help_text)(fn)
        else:
            fn = click.option(flag, name, default=default, show_default=True,
                              type=float, help=help_text)(fn)
    return fn


def common_options(fn):
    fn = click.option("--config", "config_path", type=click.Path(exists=True),
                      default=None, help="flat JSON object with the same keys "
                                         "as the flags; flags win")(fn)
    fn = click.option("--out", "out", type=click.Path(), default=None,
                      help="output file (default: stdout)")(fn)
    fn = click.option("--server", "server", default=None,
                      help="base URL of a running service; default runs "
                           "in-process")(fn)
    fn = click.option("--verbose", is_flag=True, default=False,
                      help="echo the effective config to stderr")(fn)
    return fn


@click.group()
@click.version_option(package_name="deltabeam")
def main():
    """Characteristic frequencies and vibration modes of beams with
    stiffness jumps and point cracks."""


@main.command()
@beam_options
@common_options
@click.pass_context
def freq(ctx, config_path, out, server, verbose, **params):
    """Characteristic frequencies as CSV (mode_index,alpha,omega)."""
    cfg = _merge_config(ctx, params, config_path, verbose)
    data = _request(Client(server), "/freq", cfg)
    lines = ["mode_index,alpha,omega"]
    for row in data["modes"]:
        lines.append(f"{row['mode_index']},{_fmt(row['alpha'])},{_fmt(row['omega'])}")
    _emit("\n".join(lines) + "\n", out)
    if data.get("shortfall"):
        click.echo(f"warning: {data['shortfall']['detail']}", err=True)
        sys.exit(1)


@main.command()
@beam_options
@click.option("--param", default="lambda", show_default=True,
              type=click.Choice(["lambda", "k", "xi0"]),
              help="which parameter to sweep")
@click.option("--start", type=float, required=True, help="first grid value")
@click.option("--stop", type=float, required=True, help="last grid value")
@click.option("--count", type=int, default=11, show_default=True,
              help="number of grid points")
@common_options
@click.pass_context
def sweep(ctx, config_path, out, server, verbose, **params):
    """Frequencies along a parameter grid as CSV (param,value,alpha1,...)."""
    cfg = _merge_config(ctx, params, config_path, verbose)
    data = _request(Client(server), "/sweep", cfg)
    n = data["n_modes"]
    header = "param,value," + ",".join(f"alpha{i + 1}" for i in range(n))
    lines = [header]
    gaps = []
    for row in data["rows"]:
        cells = [data["param"], _fmt(row["value"])]
        cells += ["" if a is None else _fmt(a) for a in row["alphas"]]
        lines.append(",".join(cells))
        if row["flagged"]:
            gaps.append(f"value {_fmt(row['value'])}: {row['note'] or 'flagged'}")
    _emit("\n".join(lines) + "\n", out)
    for gap in gaps:
        click.echo(f"warning: {gap}", err=True)


@main.command()
@beam_options
@click.option("--alpha", type=float, default=None,
              help="evaluate at this frequency parameter (skips root finding)")
@click.option("--mode-index", "mode_index", type=int, default=1,
              show_default=True, help="which mode to sample when --alpha "
                                      "is not given")
@click.option("--samples", type=int, default=1001, show_default=True,
              help="number of evaluation points on [0,1]")
@common_options
@click.pass_context
def shape(ctx, config_path, out, server, verbose, **params):
    """Mode shape samples as CSV (x,phi)."""
    cfg = _merge_config(ctx, params, config_path, verbose)
    if cfg.get("alpha") is None:
        cfg.pop("alpha", None)
    data = _request(Client(server), "/shape", cfg)
    lines = ["x,phi"]
    for x, phi in zip(data["x"], data["phi"]):
        lines.append(f"{_fmt(x)},{_fmt(phi)}")
    _emit("\n".join(lines) + "\n", out)


@main.command()
@beam_options
@common_options
@click.pass_context
def verify(ctx, config_path, out, server, verbose, **params):
    """Distributional residual report for each computed mode."""
    cfg = _merge_config(ctx, params, config_path, verbose)
    data = _request(Client(server), "/verify", cfg)
    lines = []
    for mode in data["modes"]:
        deltas = " ".join(f"delta{order}={float(v):.3e}"
                          for order, v in sorted(mode["delta_coeffs"].items(),
                                                 key=lambda kv: int(kv[0])))
        lines.append(
            f"mode {mode['mode_index']}: alpha={_fmt(mode['alpha'])} {deltas} "
            f"smooth={mode['smooth_residual_max']:.3e} scale={mode['scale']:.3e} "
            f"iface_max={max(abs(v) for v in mode['interface_residual']):.3e} "
            f"{'PASS' if mode['passed'] else 'FAIL'}")
    lines.append("all modes passed" if data["all_passed"]
                 else "verification FAILED")
    _emit("\n".join(lines) + "\n", out)
    if not data["all_passed"]:
        sys.exit(1)


@main.command("algebra-check")
@click.option("--seed", type=int, default=1234, show_default=True)
@click.option("--triples", type=int, default=200, show_default=True,
              help="size of the random property family")
@common_options
@click.pass_context
def algebra_check(ctx, config_path, out, server, verbose, seed, triples):
    """Run the distribution-algebra identity and property suite."""
    cfg = _merge_config(ctx, {"seed": seed, "triples": triples},
                        config_path, verbose)
    data = _request(Client(server), "/algebra-check", cfg)
    lines = []
    for check in data["checks"]:
        lines.append(f"{'PASS' if check['passed'] else 'FAIL'} "
                     f"[max_err={check['max_error']:.3e} "
                     f"tol={check['tolerance']:.0e}] {check['name']}")
    lines.append(f"{data['n_passed']} passed, {data['n_failed']} failed")
    _emit("\n".join(lines) + "\n", out)
    if not data["all_passed"]:
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()

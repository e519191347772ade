"""Command-line client for the ccrt service.

Commands talk to the HTTP API: in-process by default, or to a running
server via --server.  Exit codes: 0 success, 2 configuration error,
3 runtime error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx

EXIT_CONFIG = 2
EXIT_RUNTIME = 3


class ConfigError(Exception):
    """Bad user input: unreadable config, failed validation, HTTP 400/422."""


class ServiceClient:
    def __init__(self, server: str | None):
        if server:
            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            from fastapi.testclient import TestClient

            from .service import app

            self._client = TestClient(app)

    def post(self, path: str, payload: dict) -> dict:
        try:
            resp = self._client.post(path, json=payload)
        except httpx.HTTPError as exc:
            raise RuntimeError(f"service request failed: {exc}") from exc
        if resp.status_code in (400, 422):
            raise ConfigError(_detail(resp))
        if resp.status_code != 200:
            raise RuntimeError(f"service returned {resp.status_code}: {_detail(resp)}")
        return resp.json()


def _detail(resp) -> str:
    try:
        return json.dumps(resp.json().get("detail"))
    except Exception:
        return resp.text


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    return data


def _run(fn):
    try:
        fn()
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except click.ClickException:
        raise
    except Exception as exc:
        click.echo(f"runtime error: {exc}", err=True)
        sys.exit(EXIT_RUNTIME)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _system_payload(config, m, cofactors) -> dict:
    if config:
        data = _load_json(config)
        if "system" not in data:
            raise ConfigError("config must contain a 'system' block")
        return data
    if m is None or not cofactors:
        raise ConfigError("provide --config or both --modulus-gcd and --cofactors")
    return {"system": {"M": m, "cofactors": [s.strip() for s in cofactors.split(",")]}}


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; in-process if omitted.")
@click.pass_context
def main(ctx, server):
    """Complex CRT reconstruction, estimation, and simulation campaigns."""
    ctx.obj = ServiceClient(server)


@main.command()
@click.option("--config", type=click.Path(), help="JSON with 'system' and optionally 'remainders'.")
@click.option("--modulus-gcd", "-M", "m", type=int, help="Common real gcd M of the moduli.")
@click.option("--cofactors", help="Comma-separated Gaussian integers, e.g. '1+4i,-3-4i'.")
@click.option("--remainders", help="Comma-separated complex remainders.")
@click.option("--out", type=click.Path(), help="Write the JSON result here instead of stdout.")
@click.pass_obj
def reconstruct(client, config, m, cofactors, remainders, out):
    """Exact reconstruction from error-free remainders."""

    def go():
        payload = _system_payload(config, m, cofactors)
        if remainders:
            payload["remainders"] = [s.strip() for s in remainders.split(",")]
        if "remainders" not in payload:
            raise ConfigError("remainders are required (flag or config)")
        result = client.post("/reconstruct", {"system": payload["system"], "remainders": payload["remainders"]})
        _emit(json.dumps(result, indent=2), out)

    _run(go)


@main.command()
@click.option("--config", type=click.Path(), help="JSON with 'system', 'remainders', 'sigmas'.")
@click.option("--modulus-gcd", "-M", "m", type=int, help="Common real gcd M of the moduli.")
@click.option("--cofactors", help="Comma-separated Gaussian integers.")
@click.option("--remainders", help="Comma-separated complex remainders.")
@click.option("--sigmas", help="Comma-separated per-channel noise sigmas.")
@click.option("--out", type=click.Path(), help="Write the JSON result here instead of stdout.")
@click.pass_obj
def estimate(client, config, m, cofactors, remainders, sigmas, out):
    """Fast maximum-likelihood estimation from noisy remainders."""

    def go():
        payload = _system_payload(config, m, cofactors)
        if remainders:
            payload["remainders"] = [s.strip() for s in remainders.split(",")]
        if sigmas:
            payload["sigmas"] = [float(s) for s in sigmas.split(",")]
        for key in ("remainders", "sigmas"):
            if key not in payload:
                raise ConfigError(f"{key} are required (flag or config)")
        result = client.post(
            "/estimate",
            {
                "system": payload["system"],
                "remainders": payload["remainders"],
                "sigmas": payload["sigmas"],
            },
        )
        _emit(json.dumps(result, indent=2), out)

    _run(go)


def _sim_command(name: str, campaign: str):
    @main.command(name=name, help=f"Run the {campaign} simulation campaign from a config file.")
    @click.option("--config", type=click.Path(), required=True)
    @click.option("--seed", type=int, default=None, help="Override the config seed.")
    @click.option("--out", type=click.Path(), help="Write CSV here (plus <out>.manifest.json).")
    @click.option("--threads", type=int, default=1, show_default=True)
    @click.pass_obj
    def cmd(client, config, seed, out, threads):
        def go():
            data = _load_json(config)
            data.setdefault("campaign", campaign)
            if data["campaign"] != campaign:
                raise ConfigError(
                    f"config declares campaign {data['campaign']!r}; this command runs {campaign!r}"
                )
            if seed is not None:
                data["seed"] = seed
            result = client.post("/simulate", {"config": data, "threads": threads})
            _emit(result["csv"], out)
            if out:
                Path(out + ".manifest.json").write_text(
                    json.dumps(result["manifest"], indent=2, sort_keys=True)
                )

        _run(go)

    return cmd


sim_rmse = _sim_command("sim-rmse", "rmse")
sim_tfr = _sim_command("sim-tfr", "tfr")
sim_prob = _sim_command("sim-prob", "prob")
sim_adc = _sim_command("sim-adc", "adc")


@main.command(name="count-ops")
@click.option("--channels", default="2,4,8", show_default=True, help="Comma-separated channel counts L.")
@click.option("--modulus-gcd", "-M", "m", type=int, default=10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), help="Write the CSV here instead of stdout.")
@click.pass_obj
def count_ops_cmd(client, channels, m, seed, out):
    """Measured search cost per channel count against the 8 L^2 bound."""

    def go():
        try:
            ls = [int(s) for s in channels.split(",")]
        except ValueError as exc:
            raise ConfigError(f"bad --channels value: {exc}") from exc
        result = client.post("/count-ops", {"channel_counts": ls, "M": m, "seed": seed})
        lines = ["L,evaluations,real_mults,bound"]
        for c in result["counts"]:
            lines.append(f"{c['L']},{c['evaluations']},{c['real_mults']},{c['bound']}")
        _emit("\n".join(lines) + "\n", out)

    _run(go)


if __name__ == "__main__":
    main()

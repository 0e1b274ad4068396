"""Named scenarios that regenerate each published figure at full scale.

A figure preset (``fig1a`` ...) expands to several series; each member is
also addressable alone as ``<figure>-<member>``, e.g. ``fig1a-hadamard-local``.
"""

from __future__ import annotations

from .config import ConfigError

SIGMAS = (1.0, 2.0, 5.0, 10.0)
RESTARTS = (500, 250, 100, 50)
ETA_DTS = (1, 2, 4, 5, 10, 20, 25, 50, 100, 125, 250, 500)

LOCAL = {"position": "local"}


def gauss(sigma0: float) -> dict:
    return {"position": "gaussian", "sigma0": sigma0}


def _pos_label(pos: dict) -> str:
    return "local" if pos["position"] == "local" else f"gauss{pos['sigma0']:g}"


def _with_positions(prefix: str, overrides: dict, positions) -> dict:
    return {f"{prefix}-{_pos_label(p)}": {**overrides, **p} for p in positions}


ALL_POSITIONS = [LOCAL] + [gauss(s) for s in SIGMAS]
G10 = gauss(10.0)

HADAMARD = {"schedule": "hadamard"}
SDD2 = {"schedule": "sdd2"}
SDDINF = {"schedule": "sdd_inf"}


def _refs(pos: dict) -> dict:
    return {
        "sdd2": {**SDD2, **pos},
        "hadamard": {**HADAMARD, **pos},
    }


def _restart(pos: dict) -> dict:
    members = {"sdd2": {**SDD2, **pos}, "sdd-inf": {**SDDINF, **pos}}
    for inner, tag in (("sdd2", "sdd2"), ("sdd_inf", "sdd-inf")):
        for at in RESTARTS:
            members[f"{tag}-restart{at}"] = {"schedule": "restart", "inner": inner, "switch": at, **pos}
    return members


def _ado(pos: dict) -> dict:
    members = {"sdd2": {**SDD2, **pos}, "sdd-inf": {**SDDINF, **pos}}
    for inner, tag in (("sdd2", "ado2"), ("sdd_inf", "ado-inf")):
        for dt in (100, 10):
            members[f"{tag}-dt{dt}"] = {"schedule": "ado", "inner": inner, "dt": dt, **pos}
    return members


def _wdd(pos: dict, ps) -> dict:
    members = {f"wdd-p{p:g}": {"schedule": "wdd", "p": p, **pos} for p in ps}
    members.update(_refs(pos))
    return members


def _transients(direction: str) -> dict:
    members = {
        f"{shape}": {"schedule": "transient", "transient": shape, "direction": direction, **G10}
        for shape in ("quadratic", "linear", "negative_quadratic")
    }
    members["wdd-p0.03"] = {"schedule": "wdd", "p": 0.03, **G10}
    members.update(_refs(G10))
    return members


SERIES_PRESETS: dict[str, dict[str, dict]] = {
    "fig1a": {
        **_with_positions("hadamard", HADAMARD, ALL_POSITIONS),
        **_with_positions("fourier", {"schedule": "fourier"}, ALL_POSITIONS),
    },
    "fig1b": {
        **_with_positions("sdd2", SDD2, ALL_POSITIONS),
        **_with_positions("sdd-inf", SDDINF, ALL_POSITIONS),
    },
    "fig1c": _restart(LOCAL),
    "fig1d": _restart(G10),
    "fig2a": _ado(LOCAL),
    "fig2b": _ado(G10),
    "fig3a": _wdd(LOCAL, (0.12, 0.25)),
    "fig3b": _wdd(LOCAL, (0.12, 0.01, 0.001)),
    "fig3c": _wdd(G10, (0.03, 0.10, 0.30)),
    "fig3d": _wdd(G10, (0.03, 0.01, 0.005, 0.001)),
    "fig5a": {
        "ado2-dt100": {"schedule": "ado", "inner": "sdd2", "dt": 100, **LOCAL},
        "wdd-p0.12": {"schedule": "wdd", "p": 0.12, **LOCAL},
        **_refs(LOCAL),
    },
    "fig5b": {
        "ado2-dt100": {"schedule": "ado", "inner": "sdd2", "dt": 100, **G10},
        "wdd-p0.03": {"schedule": "wdd", "p": 0.03, **G10},
        "periodic-fourier33": {"schedule": "periodic", "period": 33, **G10},
        **_refs(G10),
    },
    "fig6a": _transients("order_to_disorder"),
    "fig6b": _transients("disorder_to_order"),
}

# eta against the matching SDD run, for every dt that splits 1000 steps evenly
ETA_PRESETS = {"fig2c": LOCAL, "fig2d": G10}

# best-p scans at t_ref = 100 over 1000 p values in [0, 1]
PSCAN_PRESETS = {"fig4": [LOCAL] + [gauss(s) for s in (2.0, 5.0, 10.0)]}


def scenario_names() -> list[str]:
    names = list(SERIES_PRESETS) + list(ETA_PRESETS) + list(PSCAN_PRESETS)
    for fig, members in SERIES_PRESETS.items():
        names.extend(f"{fig}-{m}" for m in members)
    return names


def resolve(name: str) -> tuple[str, dict[str, dict]]:
    """Map a scenario name to ``(kind, {label: overrides})``.

    ``kind`` is ``"series"``, ``"eta"`` or ``"pscan"``.
    """
    if name in SERIES_PRESETS:
        return "series", {f"{name}-{m}": o for m, o in SERIES_PRESETS[name].items()}
    if name in ETA_PRESETS:
        return "eta", {name: ETA_PRESETS[name]}
    if name in PSCAN_PRESETS:
        return "pscan", {f"{name}-{_pos_label(p)}": p for p in PSCAN_PRESETS[name]}
    fig, _, member = name.partition("-")
    if fig in SERIES_PRESETS and member in SERIES_PRESETS[fig]:
        return "series", {name: SERIES_PRESETS[fig][member]}
    raise ConfigError(f"unknown scenario {name!r}")

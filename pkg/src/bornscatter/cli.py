"""Command-line interface: scenario ingestion, sweep orchestration, reporting.

Two subcommands::

    bornscatter run <config.json> --out <dir> [--threads N] [--seed S]
    bornscatter report <results.csv> --out <summary.json>

``run`` evaluates the configured detector sweep and writes ``results.csv``
(one row per sweep point, floats at 17 significant digits, rows in sorted
deterministic order) plus a ``manifest.json`` sidecar.  Reruns with the same
config and seed produce byte-identical CSV output.  ``report`` aggregates a
results table into a JSON summary with resolution/scaling diagnostics and
renders PNG figures next to the summary file.

Exit codes — run: 0 ok; 1 invalid config (the message names the offending
field); 2 quadrature tolerance unmet on ≥1 point (results still written, rows
flagged); 3 I/O failure.  report: 0 ok; 1 malformed, empty, or mixed-hash
results table; 3 I/O failure.

Config schema (JSON)::

    {
      "omega_ref": 1.0,                  # declared reference frequency; lengths are 1/omega_ref
      "seed": 7,                         # required when monte_carlo is enabled
      "scenario": {
        "kind": "modulated",             # or "moving_rod"
        "w": 0.5,                        # modulation speed          (modulated)
        "eta": {"kind": "gaussian", "amplitude": 0.1, "width": 2.0, "center": 0.0},
        "chi": {"isotropic_gaussian": {"amplitude": 1.0, "width": 1.0}},
                                         # or a list of three 1D factor objects
        "v": 0.5,                        # rod speed                 (moving_rod)
        "pointlike": true,               # or "profile": {1D factor} (moving_rod)
      },
      "source": {"kind": "vacuum"},
        # {"kind": "one_photon", "k": [kx,ky,kz], "polarization": [[re,im],[re,im]],
        #  "envelope_norm": 1.0}
        # {"kind": "coherent", "amplitude": [re,im], "k": [...], "polarization": [...]}
      "detector": {
        "omega": 1.0,                    # scalar, {"values": [...]}, or
                                         # {"start":..,"stop":..,"num":..,"spacing":"linear"|"log"}
        "distance": 1e3,                 # grid, modulated scenarios
        "direction": [0.0, 0.0, 1.0],    #       modulated scenarios
        "rho": {"start": 2, "stop": 20, "num": 12, "spacing": "log"}   # rod scenarios
      },
      "quadrature": {"rel_tol": 1e-6, "abs_tol": 1e-12, "max_evals": 5000000, ...},
      "monte_carlo": {"n_samples": 1000000}   # optional vacuum-part cross-check columns
    }
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import fields as dataclass_fields
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import fit_power_law, rayleigh_report
from .dielectrics import ModulatedDielectric, MovingRod
from .photon import (
    DEFAULT_GUARD_BAND,
    CoherentState,
    IncidentPhoton,
    coherent_intensity,
    photon_modulated,
    photon_rod,
)
from .profiles import Profile1D, Profile3D, isotropic_gaussian
from .quadrature import QuadratureSpec, monte_carlo_q3
from .vacuum import (
    FAR_FIELD_EXTENT_FACTOR,
    FAR_FIELD_MIN_PHASE,
    Detector,
    modulated_cutoff,
    modulated_vacuum_integrand,
    rod_covariant_cutoff,
    rod_covariant_integrand,
    vacuum_modulated,
    vacuum_rod_covariant,
)

CSV_COLUMNS = [
    "config_hash",
    "scenario",
    "source",
    "omega",
    "position",
    "value",
    "error",
    "evals",
    "part_vacuum",
    "part_photon_plus",
    "part_photon_minus",
    "part_cross",
    "probe_plus",
    "probe_minus",
    "enhancement_plus",
    "enhancement_minus",
    "tag_plus",
    "tag_minus",
    "mc_value",
    "mc_error",
    "flags",
]


class ConfigError(ValueError):
    """Invalid configuration; carries the dotted path of the offending field."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


def _fmt(x) -> str:
    """17-significant-digit decimal serialization (empty string for None)."""
    if x is None:
        return ""
    return f"{float(x):.17g}"


# ---------------------------------------------------------------------------
# config parsing


def _require(node: dict, key: str, path: str):
    if key not in node:
        raise ConfigError(f"{path}.{key}", "missing required field")
    return node[key]


def _as_float(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    return float(value)


def _build_profile(node, path: str) -> Profile1D:
    if not isinstance(node, dict):
        raise ConfigError(path, "expected a profile object")
    kind = _require(node, "kind", path)
    kwargs = {}
    for key in ("amplitude", "center", "width"):
        if key in node:
            kwargs[key] = _as_float(node[key], f"{path}.{key}")
    extra = set(node) - {"kind", "amplitude", "center", "width"}
    if extra:
        raise ConfigError(f"{path}.{sorted(extra)[0]}", "unknown profile field")
    try:
        return Profile1D(kind=kind, **kwargs)
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc


def _build_chi(node, path: str) -> Profile3D:
    if isinstance(node, dict) and "isotropic_gaussian" in node:
        sub = node["isotropic_gaussian"]
        kwargs = {}
        for key in ("amplitude", "width"):
            if key in sub:
                kwargs[key] = _as_float(sub[key], f"{path}.isotropic_gaussian.{key}")
        if "center" in sub:
            kwargs["center"] = tuple(
                _as_float(c, f"{path}.isotropic_gaussian.center") for c in sub["center"]
            )
        try:
            return isotropic_gaussian(**kwargs)
        except ValueError as exc:
            raise ConfigError(f"{path}.isotropic_gaussian", str(exc)) from exc
    if isinstance(node, list) and len(node) == 3:
        return Profile3D(tuple(_build_profile(f, f"{path}[{i}]") for i, f in enumerate(node)))
    raise ConfigError(path, "expected {'isotropic_gaussian': {...}} or a list of three 1D factors")


def _build_scenario(config: dict):
    node = _require(config, "scenario", "")
    if not isinstance(node, dict):
        raise ConfigError("scenario", "expected an object")
    kind = _require(node, "kind", "scenario")
    if kind == "modulated":
        chi = _build_chi(_require(node, "chi", "scenario"), "scenario.chi")
        eta = _build_profile(_require(node, "eta", "scenario"), "scenario.eta")
        w = _as_float(_require(node, "w", "scenario"), "scenario.w")
        try:
            return ModulatedDielectric(chi=chi, eta=eta, w=w)
        except ValueError as exc:
            raise ConfigError("scenario.w", str(exc)) from exc
    if kind == "moving_rod":
        v = _as_float(_require(node, "v", "scenario"), "scenario.v")
        pointlike = bool(node.get("pointlike", False))
        profile = _build_profile(node["profile"], "scenario.profile") if "profile" in node else None
        try:
            return MovingRod(profile=profile, v=v, pointlike=pointlike)
        except ValueError as exc:
            raise ConfigError("scenario.v" if "speed" in str(exc) else "scenario.profile", str(exc)) from exc
    raise ConfigError("scenario.kind", f"expected 'modulated' or 'moving_rod', got {kind!r}")


def _parse_complex_pair(value, path: str) -> complex:
    if not (isinstance(value, list) and len(value) == 2):
        raise ConfigError(path, "expected [re, im]")
    return complex(_as_float(value[0], path), _as_float(value[1], path))


def _parse_vec3(value, path: str) -> tuple[float, float, float]:
    if not (isinstance(value, list) and len(value) == 3):
        raise ConfigError(path, "expected a 3-vector [x, y, z]")
    return tuple(_as_float(c, path) for c in value)


def _build_source(config: dict):
    node = config.get("source", {"kind": "vacuum"})
    if not isinstance(node, dict):
        raise ConfigError("source", "expected an object")
    kind = node.get("kind", "vacuum")
    if kind == "vacuum":
        return None
    k = _parse_vec3(_require(node, "k", "source"), "source.k")
    pol = _require(node, "polarization", "source")
    if not (isinstance(pol, list) and len(pol) == 2):
        raise ConfigError("source.polarization", "expected two [re, im] pairs")
    c = tuple(_parse_complex_pair(p, "source.polarization") for p in pol)
    if kind == "one_photon":
        envelope_norm = _as_float(node.get("envelope_norm", 1.0), "source.envelope_norm")
        try:
            return IncidentPhoton(k=k, c=c, envelope_norm=envelope_norm)
        except ValueError as exc:
            raise ConfigError("source", str(exc)) from exc
    if kind == "coherent":
        amplitude = _parse_complex_pair(_require(node, "amplitude", "source"), "source.amplitude")
        envelope_norm = node.get("envelope_norm")
        if envelope_norm is not None:
            envelope_norm = _as_float(envelope_norm, "source.envelope_norm")
        try:
            return CoherentState(amplitude=amplitude, k=k, c=c, envelope_norm=envelope_norm)
        except ValueError as exc:
            raise ConfigError("source", str(exc)) from exc
    raise ConfigError("source.kind", f"expected 'vacuum', 'one_photon' or 'coherent', got {kind!r}")


def _parse_grid(node, path: str) -> np.ndarray:
    if isinstance(node, (int, float)) and not isinstance(node, bool):
        return np.array([float(node)])
    if isinstance(node, dict) and "values" in node:
        vals = node["values"]
        if not (isinstance(vals, list) and vals):
            raise ConfigError(f"{path}.values", "expected a nonempty list of numbers")
        return np.array([_as_float(v, f"{path}.values") for v in vals])
    if isinstance(node, dict):
        start = _as_float(_require(node, "start", path), f"{path}.start")
        stop = _as_float(_require(node, "stop", path), f"{path}.stop")
        num = _require(node, "num", path)
        if isinstance(num, bool) or not isinstance(num, int) or num < 1:
            raise ConfigError(f"{path}.num", "expected a positive integer")
        spacing = node.get("spacing", "linear")
        if spacing == "linear":
            return np.linspace(start, stop, num)
        if spacing == "log":
            if start <= 0 or stop <= 0:
                raise ConfigError(f"{path}.start", "log spacing needs positive endpoints")
            return np.geomspace(start, stop, num)
        raise ConfigError(f"{path}.spacing", f"expected 'linear' or 'log', got {spacing!r}")
    raise ConfigError(path, "expected a number, {'values': [...]}, or a start/stop/num grid")


def _build_quadrature(config: dict) -> QuadratureSpec:
    node = config.get("quadrature", {})
    if not isinstance(node, dict):
        raise ConfigError("quadrature", "expected an object")
    allowed = {f.name for f in dataclass_fields(QuadratureSpec)}
    extra = set(node) - allowed
    if extra:
        raise ConfigError(f"quadrature.{sorted(extra)[0]}", "unknown quadrature field")
    kwargs = {}
    for key, value in node.items():
        if key in ("max_evals", "n_theta", "n_phi"):
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"quadrature.{key}", "expected an integer")
            kwargs[key] = value
        else:
            kwargs[key] = _as_float(value, f"quadrature.{key}")
    try:
        return QuadratureSpec(**kwargs)
    except ValueError as exc:
        raise ConfigError("quadrature", str(exc)) from exc


def _load_config(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError("<config>", f"cannot read {path}: {exc}") from exc
    try:
        config = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<config>", f"invalid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError("<config>", "top level must be an object")
    return config


def _config_hash(config: dict, seed) -> str:
    canonical = dict(config)
    canonical["seed"] = seed
    payload = json.dumps(canonical, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(payload).hexdigest()[:12]


# ---------------------------------------------------------------------------
# run


def _prevalidate(scenario, source, omegas, positions, direction):
    for omega in omegas:
        if omega <= 0:
            raise ConfigError("detector.omega", f"detection frequencies must be positive, got {omega:g}")
    if np.any(positions <= 0):
        key = "detector.distance" if isinstance(scenario, ModulatedDielectric) else "detector.rho"
        raise ConfigError(key, "positions must be positive")
    if source is not None:
        k = float(np.linalg.norm(source.k))
        for omega in omegas:
            if abs(omega - k) <= DEFAULT_GUARD_BAND * max(omega, k):
                raise ConfigError(
                    "detector.omega",
                    f"ω={omega:g} lies inside the guard band around the incident |k|={k:g}",
                )
    if isinstance(scenario, ModulatedDielectric):
        extent = scenario.chi.extent()
        omega_min, dist_min = float(np.min(omegas)), float(np.min(positions))
        if omega_min * dist_min < FAR_FIELD_MIN_PHASE:
            raise ConfigError(
                "detector.distance",
                f"far field needs ω·r ≥ {FAR_FIELD_MIN_PHASE:g}; got {omega_min * dist_min:g}",
            )
        if dist_min < FAR_FIELD_EXTENT_FACTOR * extent:
            raise ConfigError(
                "detector.distance",
                f"far field needs r ≥ {FAR_FIELD_EXTENT_FACTOR:g}× source extent ({extent:g})",
            )


def _evaluate_point(scenario, source, spec, mc_samples, seed, idx, omega, position, direction):
    if isinstance(scenario, ModulatedDielectric):
        det = Detector.cartesian(omega, position * direction)
    else:
        det = Detector.cylindrical(omega, position)

    if source is None:
        if isinstance(scenario, ModulatedDielectric):
            result = vacuum_modulated(scenario, det, spec)
        else:
            result = vacuum_rod_covariant(scenario, det, spec)
    elif isinstance(source, IncidentPhoton):
        if isinstance(scenario, ModulatedDielectric):
            result = photon_modulated(scenario, det, source, spec)
        else:
            result = photon_rod(scenario, det, source, spec)
    else:
        result = coherent_intensity(scenario, det, source, spec)

    row = {
        "omega": omega,
        "position": position,
        "value": result.value,
        "error": result.error_estimate,
        "evals": result.evals,
        "part_vacuum": result.parts.get("vacuum", 0.0),
        "part_photon_plus": result.parts.get("photon_plus", 0.0),
        "part_photon_minus": result.parts.get("photon_minus", 0.0),
        "part_cross": result.parts.get("cross", 0.0),
        "flags": result.flags,
        "probe_plus": None,
        "probe_minus": None,
        "enhancement_plus": None,
        "enhancement_minus": None,
        "tag_plus": "",
        "tag_minus": "",
        "mc_value": None,
        "mc_error": None,
    }

    if source is not None:
        kvec = np.asarray(source.k, dtype=float)
        report = rayleigh_report(scenario, omega, float(np.linalg.norm(kvec)), k1=float(kvec[0]))
        row["probe_plus"], row["probe_minus"] = report.probed_args
        row["enhancement_plus"], row["enhancement_minus"] = report.enhancement_factors
        row["tag_plus"], row["tag_minus"] = report.regime_tags

    if mc_samples:
        if isinstance(scenario, ModulatedDielectric):
            integrand = modulated_vacuum_integrand(scenario, det)
            cut, _ = modulated_cutoff(scenario, det, spec)
        else:
            integrand = rod_covariant_integrand(scenario, det)
            cut, _ = rod_covariant_cutoff(scenario, det, spec)
        mc = monte_carlo_q3(integrand, mc_samples, seed=seed + idx, radial_scale=cut / 6.0)
        row["mc_value"], row["mc_error"] = mc.value, mc.error_estimate
    return row


def run_command(args) -> int:
    try:
        config = _load_config(Path(args.config))
        scenario = _build_scenario(config)
        source = _build_source(config)
        spec = _build_quadrature(config)
        omega_ref = _as_float(config.get("omega_ref", 1.0), "omega_ref")
        if omega_ref <= 0:
            raise ConfigError("omega_ref", "must be positive")

        det_node = _require(config, "detector", "")
        if not isinstance(det_node, dict):
            raise ConfigError("detector", "expected an object")
        omegas = _parse_grid(_require(det_node, "omega", "detector"), "detector.omega")
        if isinstance(scenario, ModulatedDielectric):
            if "rho" in det_node:
                raise ConfigError("detector.rho", "modulated scenarios sweep 'distance', not 'rho'")
            positions = _parse_grid(_require(det_node, "distance", "detector"), "detector.distance")
            direction = np.asarray(_parse_vec3(det_node.get("direction", [0.0, 0.0, 1.0]), "detector.direction"))
            if not np.linalg.norm(direction) > 0:
                raise ConfigError("detector.direction", "must be a nonzero vector")
            direction = direction / np.linalg.norm(direction)
        else:
            if "distance" in det_node or "direction" in det_node:
                raise ConfigError("detector.distance", "rod scenarios sweep 'rho', not 'distance'")
            positions = _parse_grid(_require(det_node, "rho", "detector"), "detector.rho")
            direction = None

        seed = config.get("seed")
        if args.seed is not None:
            seed = args.seed
        if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
            raise ConfigError("seed", "expected an integer")

        mc_node = config.get("monte_carlo")
        mc_samples = 0
        if mc_node is not None:
            if not isinstance(mc_node, dict):
                raise ConfigError("monte_carlo", "expected an object")
            n = _require(mc_node, "n_samples", "monte_carlo")
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise ConfigError("monte_carlo.n_samples", "expected a positive integer")
            mc_samples = n
            if seed is None:
                raise ConfigError("seed", "required when monte_carlo is enabled")

        _prevalidate(scenario, source, omegas, positions, direction)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    config_hash = _config_hash(config, seed)
    points = sorted((float(o), float(p)) for o in omegas for p in positions)
    seed_base = seed if seed is not None else 0

    t0 = time.perf_counter()
    try:
        def job(item):
            idx, (omega, position) = item
            return _evaluate_point(
                scenario, source, spec, mc_samples, seed_base, idx, omega, position, direction
            )

        if args.threads > 1:
            with ThreadPoolExecutor(max_workers=args.threads) as pool:
                rows = list(pool.map(job, enumerate(points)))
        else:
            rows = [job(item) for item in enumerate(points)]
    except ValueError as exc:
        print(f"config error: detector: {exc}", file=sys.stderr)
        return 1
    wall = time.perf_counter() - t0

    scenario_kind = "modulated" if isinstance(scenario, ModulatedDielectric) else "moving_rod"
    source_kind = (
        "vacuum" if source is None else ("one_photon" if isinstance(source, IncidentPhoton) else "coherent")
    )

    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(out_dir / "results.csv", "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow(
                    [
                        config_hash,
                        scenario_kind,
                        source_kind,
                        _fmt(row["omega"]),
                        _fmt(row["position"]),
                        _fmt(row["value"]),
                        _fmt(row["error"]),
                        str(row["evals"]),
                        _fmt(row["part_vacuum"]),
                        _fmt(row["part_photon_plus"]),
                        _fmt(row["part_photon_minus"]),
                        _fmt(row["part_cross"]),
                        _fmt(row["probe_plus"]),
                        _fmt(row["probe_minus"]),
                        _fmt(row["enhancement_plus"]),
                        _fmt(row["enhancement_minus"]),
                        row["tag_plus"],
                        row["tag_minus"],
                        _fmt(row["mc_value"]),
                        _fmt(row["mc_error"]),
                        ";".join(row["flags"]),
                    ]
                )
        manifest = {
            "config_hash": config_hash,
            "version": __version__,
            "omega_ref": omega_ref,
            "seed": seed,
            "scenario": scenario_kind,
            "source": source_kind,
            "n_points": len(rows),
            "evals_total": int(sum(r["evals"] for r in rows)),
            "wall_clock_seconds": wall,
            "points": [
                {
                    "omega": r["omega"],
                    "position": r["position"],
                    "value": r["value"],
                    "error": r["error"],
                    "evals": r["evals"],
                    "flags": list(r["flags"]),
                }
                for r in rows
            ],
        }
        with open(out_dir / "manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3

    if any(row["flags"] for row in rows):
        print("warning: quadrature tolerance unmet on at least one point (see flags column)", file=sys.stderr)
        return 2
    return 0


# ---------------------------------------------------------------------------
# report


def _render_figures(rows, out_dir: Path, fit_summary):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []
    positions = sorted({r["position"] for r in rows})
    omegas = sorted({r["omega"] for r in rows})

    if len(positions) > 1:
        omega0 = omegas[0]
        pts = sorted((r["position"], r["value"]) for r in rows if r["omega"] == omega0)
        xs = np.array([p for p, _ in pts])
        ys = np.array([v for _, v in pts])
        fig, ax = plt.subplots(figsize=(5.0, 3.6))
        if np.all(ys > 0):
            ax.loglog(xs, ys, "o", ms=4, label="intensity")
            if fit_summary is not None:
                ref = ys[0] * (xs / xs[0]) ** fit_summary["exponent"]
                ax.loglog(xs, ref, "--", lw=1, label=f"slope {fit_summary['exponent']:.2f}")
            ax.legend(frameon=False, fontsize=8)
        else:
            ax.plot(xs, ys, "o-", ms=4)
        ax.set_xlabel("position")
        ax.set_ylabel("intensity")
        ax.set_title(f"sweep at ω = {omega0:g}")
        fig.tight_layout()
        path = out_dir / "intensity_vs_position.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path.name)

    if len(omegas) > 1:
        pos0 = positions[0]
        pts = sorted((r["omega"], r["value"]) for r in rows if r["position"] == pos0)
        xs = np.array([o for o, _ in pts])
        ys = np.array([v for _, v in pts])
        fig, ax = plt.subplots(figsize=(5.0, 3.6))
        ax.plot(xs, ys, "o-", ms=4)
        ax.set_xlabel("detection frequency ω")
        ax.set_ylabel("intensity")
        ax.set_title(f"scan at position {pos0:g}")
        fig.tight_layout()
        path = out_dir / "intensity_vs_omega.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path.name)

    return written


def report_command(args) -> int:
    path = Path(args.results)
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or set(CSV_COLUMNS) - set(reader.fieldnames):
                print("report error: malformed results table (missing columns)", file=sys.stderr)
                return 1
            raw_rows = list(reader)
    except OSError as exc:
        print(f"report error: cannot read {path}: {exc}", file=sys.stderr)
        return 1
    if not raw_rows:
        print("report error: empty sweep (no data rows)", file=sys.stderr)
        return 1

    hashes = {r["config_hash"] for r in raw_rows}
    if len(hashes) != 1:
        print(f"report error: results mix {len(hashes)} different config hashes", file=sys.stderr)
        return 1

    try:
        rows = [
            {
                "omega": float(r["omega"]),
                "position": float(r["position"]),
                "value": float(r["value"]),
                "error": float(r["error"]),
                "enhancement_plus": float(r["enhancement_plus"]) if r["enhancement_plus"] else None,
                "enhancement_minus": float(r["enhancement_minus"]) if r["enhancement_minus"] else None,
                "tag_plus": r["tag_plus"],
                "tag_minus": r["tag_minus"],
                "flags": r["flags"],
            }
            for r in raw_rows
        ]
    except (KeyError, ValueError) as exc:
        print(f"report error: malformed results table ({exc})", file=sys.stderr)
        return 1

    positions = sorted({r["position"] for r in rows})
    omegas = sorted({r["omega"] for r in rows})

    fit_summary = None
    if len(positions) >= 8:
        omega0 = omegas[0]
        samples = sorted(
            (r["position"], r["value"]) for r in rows if r["omega"] == omega0 and r["value"] > 0
        )
        if len(samples) >= 8:
            fit = fit_power_law(samples)
            fit_summary = {
                "exponent": fit.exponent,
                "ci_halfwidth": fit.ci_halfwidth,
                "range": list(fit.range),
                "r_squared": fit.r_squared,
                "omega": omega0,
            }

    enh_plus = [r["enhancement_plus"] for r in rows if r["enhancement_plus"] is not None]
    enh_minus = [r["enhancement_minus"] for r in rows if r["enhancement_minus"] is not None]
    resolution = None
    if enh_plus or enh_minus:
        resolution = {
            "max_enhancement_plus": max(enh_plus) if enh_plus else None,
            "max_enhancement_minus": max(enh_minus) if enh_minus else None,
            "regime_tags_plus": sorted({r["tag_plus"] for r in rows if r["tag_plus"]}),
            "regime_tags_minus": sorted({r["tag_minus"] for r in rows if r["tag_minus"]}),
        }

    out_path = Path(args.out)
    out_dir = out_path.parent if out_path.parent != Path("") else Path(".")
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        figures = _render_figures(rows, out_dir, fit_summary)
        summary = {
            "config_hash": next(iter(hashes)),
            "scenario": raw_rows[0]["scenario"],
            "source": raw_rows[0]["source"],
            "n_rows": len(rows),
            "omega_range": [omegas[0], omegas[-1]],
            "position_range": [positions[0], positions[-1]],
            "flagged_rows": sum(1 for r in rows if r["flags"]),
            "scaling_fit": fit_summary,
            "resolution": resolution,
            "figures": figures,
            "columns": {
                "omega": [r["omega"] for r in rows],
                "position": [r["position"] for r in rows],
                "value": [r["value"] for r in rows],
                "error": [r["error"] for r in rows],
            },
        }
        with open(out_path, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    return 0


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bornscatter",
        description="Photodetection intensities for modulated and moving dielectrics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="evaluate a detector sweep from a JSON config")
    p_run.add_argument("config", help="path to the JSON configuration")
    p_run.add_argument("--out", required=True, help="output directory for results.csv + manifest.json")
    p_run.add_argument("--threads", type=int, default=1, help="worker threads for sweep points")
    p_run.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_run.set_defaults(func=run_command)

    p_rep = sub.add_parser("report", help="summarize a results.csv into JSON + figures")
    p_rep.add_argument("results", help="path to results.csv")
    p_rep.add_argument("--out", required=True, help="output path for summary.json")
    p_rep.set_defaults(func=report_command)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

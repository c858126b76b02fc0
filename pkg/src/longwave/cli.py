"""Command-line front end: wave construction, spectra, maps, reports.

Subcommands
    wave       wave constants + sampled profile CSV
    spectrum   Floquet spectrum cloud CSV + summary JSON (content-hash cached)
    map        classification maps over parameter-plane grids
    monodromy  band/gap classification of a single wave
    gkdv-check disk-enclosure verification for the gKdV linearization
    bands      band-edge tables of the Benney-Luke spectral problem

All numeric CSV output uses fixed 17-significant-digit floats and fixed
row orders, so identical configurations produce byte-identical files.
Exit codes: 0 success, 2 domain error, 3 numerical failure, 4 config error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, bbm, bl, floquet, gkdv, hill, rbou
from .errors import DomainError, NumericalError

FLOAT_FORMAT = "%.16e"


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


@dataclass(frozen=True)
class RunConfig:
    """One command invocation; round-trips losslessly through JSON."""

    command: str
    options: dict

    def to_json(self):
        return json.dumps(
            {"command": self.command, "options": self.options}, sort_keys=True
        )

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(data, dict) or "command" not in data:
            raise ConfigError("config must be an object with a 'command' field")
        return cls(command=data["command"], options=dict(data.get("options", {})))

    def content_hash(self):
        """Hash of the semantically relevant options (output knobs excluded)."""
        skip = {"out", "format", "jobs", "plot_script", "no_cache"}
        core = {k: v for k, v in self.options.items() if k not in skip}
        blob = json.dumps({"command": self.command, "options": core}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:24]


# ---------------------------------------------------------------------------
# output helpers


def _fmt(value):
    return FLOAT_FORMAT % value


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(c if isinstance(c, str) else _fmt(c) for c in row))
    path.write_text("\n".join(lines) + "\n")


def _write_json(path, payload):
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _emit(out_dir, stem, fmt, csv_spec=None, json_payload=None):
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if csv_spec is not None and fmt in ("csv", "both"):
        path = out_dir / f"{stem}.csv"
        _write_csv(path, *csv_spec)
        written.append(path)
    if json_payload is not None and fmt in ("json", "both"):
        path = out_dir / f"{stem}.json"
        _write_json(path, json_payload)
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# wave construction per model


def _build_wave(model, options):
    if model == "rbou":
        wave = rbou.make_rbou_wave(
            (options["alpha"], options["beta"], options["gamma"]),
            speed_sign=int(options.get("speed_sign", 1)),
        )
        return wave
    if model == "bl":
        return bl.make_bl_wave((options["m"], options["a"]))
    if model == "bbm":
        return bbm.make_bbm_wave((options["c"], options["b1"], options["b2"]))
    raise ConfigError(f"unknown model {model!r}")


def _wave_payload(model, wave, options):
    if model == "rbou":
        b2 = float(options.get("b2", 0.0))
        return {
            "model": "rbou",
            "alpha": wave.roots.alpha,
            "beta": wave.roots.beta,
            "gamma": wave.roots.gamma,
            "c": wave.c,
            "E": wave.E,
            "b_combo": wave.b_combo,
            "b1": wave.b_combo + b2 * wave.c,
            "b2": b2,
            "m": wave.m,
            "a": wave.a,
            "T": wave.T,
            "residual": wave.residual,
            "version": __version__,
        }
    if model == "bl":
        return {
            "model": "bl",
            "m": wave.params.m,
            "a": wave.params.a,
            "c": wave.c,
            "b": wave.b,
            "E": wave.E,
            "T": wave.T,
            "v0_amplitude": wave.v0_amplitude,
            "residual": wave.residual,
            "version": __version__,
        }
    return {
        "model": "bbm",
        "c": wave.params.c,
        "b1": wave.params.b1,
        "b2": wave.params.b2,
        "m": wave.m,
        "a": wave.a,
        "u0": wave.u0,
        "T": wave.T,
        "u_mean": wave.u_mean,
        "one_plus_eta_mean": wave.one_plus_eta_mean,
        "discriminant": bbm.bbm_discriminant(wave.params),
        "residual": wave.residual,
        "quartic_residual": bbm.quartic_residual(wave),
        "version": __version__,
    }


def cmd_wave(config, out_dir, fmt):
    opts = config.options
    model = opts["model"]
    wave = _build_wave(model, opts)
    n = int(opts.get("samples", 512))
    x = wave.T * np.arange(n) / n
    if model == "rbou":
        v = rbou.rbou_v_profile(wave, b2=float(opts.get("b2", 0.0)))
        header = ["x", "u", "v"]
        rows = list(zip(x, wave.u(x), v(x)))
    elif model == "bl":
        header = ["x", "v"]
        rows = list(zip(x, wave.v(x)))
    else:
        header = ["x", "u", "eta"]
        rows = list(zip(x, wave.u(x), wave.eta(x)))
    payload = _wave_payload(model, wave, opts)
    _emit(out_dir, f"wave_{model}", fmt, csv_spec=(header, rows), json_payload=payload)
    return payload


# ---------------------------------------------------------------------------
# spectrum


def _spectrum_summary(config, wave, spectrum, classification, curve):
    summary = {
        "model": config.options["model"],
        "Nk": spectrum.metadata["Nk"],
        "n_tau": spectrum.metadata["n_tau"],
        "matrix_dimension": spectrum.metadata["matrix_dimension"],
        "n_points": len(spectrum.eigenvalues),
        "max_real_part": spectrum.max_real_part,
        "wave": spectrum.metadata["wave"],
        "elapsed_seconds": spectrum.metadata["elapsed_seconds"],
        "config_hash": config.content_hash(),
        "version": __version__,
    }
    if classification is not None:
        summary["classification"] = {
            "kind": classification.kind,
            "index": classification.index,
            "label": classification.label,
            "trace": classification.bandgap.trace,
        }
        if classification.kind == "gap":
            summary["gap_sigma"] = classification.sigma
    if curve is not None:
        summary["asymptote"] = {
            "kind": curve.kind,
            "lambda1_im": curve.lambda1.imag,
            "lambda0": curve.lambda0,
            "lambda_minus1_re": curve.lambda_minus1.real,
            "lambda_minus1_im": curve.lambda_minus1.imag,
            "description": curve.description,
        }
    return summary


def _plot_script(out_dir, stem, curve):
    lines = [
        f"# gnuplot script for {stem}.csv",
        "set datafile separator ','",
        "set xlabel 'Re lambda'",
        "set ylabel 'Im lambda'",
        "set key off",
    ]
    plot = f"plot '{stem}.csv' every ::1 using 2:3 with points pt 7 ps 0.2"
    if curve is not None and curve.kind == "gap":
        s = curve.lambda0
        lines += [f"set arrow from {s}, graph 0 to {s}, graph 1 nohead dt 2",
                  f"set arrow from {-s}, graph 0 to {-s}, graph 1 nohead dt 2"]
    if curve is not None and curve.kind == "spine":
        r = abs(curve.lambda_minus1.real)
        s = curve.lambda1.imag
        t = curve.lambda_minus1.imag
        for sr in (r, -r):
            lines.append(
                f"set parametric; plot [1:40] {sr}/t, {s}*t + ({t})/t dt 2 notitle"
            )
    lines.append(plot)
    (out_dir / f"{stem}.gp").write_text("\n".join(lines) + "\n")


def cmd_spectrum(config, out_dir, fmt, jobs):
    opts = config.options
    model = opts["model"]
    wave = _build_wave(model, opts)
    nk = int(opts.get("nk", 100))
    n_tau = int(opts.get("tau_points", 200))
    request = floquet.SpectrumRequest(
        model, wave, Nk=nk, tau_grid=floquet.default_tau_grid(n_tau)
    )

    cache_dir = out_dir / ".cache"
    key = config.content_hash()
    cache_file = cache_dir / f"{key}.npz"
    cache_hit = cache_file.exists() and not opts.get("no_cache", False)
    if cache_hit:
        data = np.load(cache_file)
        spectrum = floquet.FloquetSpectrum(
            model=model,
            tau=data["tau"],
            eigenvalues=data["eig_re"] + 1j * data["eig_im"],
            edge_flag=data["edge_flag"],
            metadata={
                "model": model,
                "Nk": nk,
                "n_tau": n_tau,
                "matrix_dimension": request.matrix_dimension,
                "elapsed_seconds": 0.0,
                "wave": floquet._wave_summary(wave),
            },
        )
    else:
        spectrum = floquet.compute_spectrum(request, jobs=jobs)
        if not opts.get("no_cache", False):
            cache_dir.mkdir(parents=True, exist_ok=True)
            np.savez_compressed(
                cache_file,
                tau=spectrum.tau,
                eig_re=spectrum.eigenvalues.real,
                eig_im=spectrum.eigenvalues.imag,
                edge_flag=spectrum.edge_flag,
            )

    classification = None
    if model == "rbou":
        classification = hill.classify_rbou_infinity(wave.roots)
    elif model == "bl":
        classification = hill.classify_bl_infinity(wave.params)
    curve = floquet.asymptote(model, wave, getattr(classification, "bandgap", None))

    rows = [
        (t, ev.real, ev.imag, "1" if flag else "0")
        for t, ev, flag in zip(spectrum.tau, spectrum.eigenvalues, spectrum.edge_flag)
    ]
    summary = _spectrum_summary(config, wave, spectrum, classification, curve)
    summary["cache"] = "hit" if cache_hit else "miss"
    stem = f"spectrum_{model}"
    _emit(out_dir, stem, fmt,
          csv_spec=(["tau", "re_lambda", "im_lambda", "edge_flag"], rows),
          json_payload=summary)
    if opts.get("plot_script", False):
        _plot_script(out_dir, stem, curve)
    return summary


# ---------------------------------------------------------------------------
# classification maps


def _grid(spec):
    lo, hi, n = spec
    n = int(n)
    if n < 2:
        raise ConfigError("grid resolution must be at least 2 per axis")
    return np.linspace(float(lo), float(hi), n)


def cmd_map(config, out_dir, fmt):
    opts = config.options
    model = opts["model"]
    rows = []
    if model == "rbou":
        gamma = float(opts.get("gamma", 1.0))
        alphas = _grid(opts["alpha_range"])
        betas = _grid(opts["beta_range"])
        for a_ in alphas:
            for b_ in betas:
                try:
                    roots = rbou.RBouRoots(a_, b_, gamma)
                except DomainError:
                    rows.append((a_, b_, "outside"))
                    continue
                ell = rbou.rbou_ell(roots)
                edges = hill.lame_edges_rbou((gamma - b_) / (gamma - a_))
                kind, index = edges.locate(ell)
                rows.append((a_, b_, hill._RBOU_LABELS.get((kind, index), f"{kind}{index}")))
        header = ["alpha", "beta", "label"]
    elif model == "bl":
        ms = _grid(opts["m_range"])
        as_ = _grid(opts["a_range"])
        for m_ in ms:
            edges = hill.bl_band_edges(m_, n_edges=12)
            for a_ in as_:
                try:
                    params = bl.BLParams(m_, a_)
                except DomainError:
                    rows.append((m_, a_, "outside"))
                    continue
                try:
                    kind, index = edges.locate(bl.bl_ell(params))
                except DomainError:
                    rows.append((m_, a_, "higher"))
                    continue
                rows.append((m_, a_, f"{'g' if kind == 'gap' else 'b'}{index}"))
        header = ["m", "a", "label"]
    elif model == "bbm":
        b1s = _grid(opts["b1_range"])
        b2s = _grid(opts["b2_range"])
        for b1_ in b1s:
            for b2_ in b2s:
                rows.append((b1_, b2_, bbm.region_classify(b1_, b2_)))
        header = ["b1", "b2", "label"]
    else:
        raise ConfigError(f"unknown model {model!r}")
    rows = [(p1, p2, label) for p1, p2, label in rows]
    payload = {
        "model": model,
        "n_rows": len(rows),
        "labels": sorted({r[2] for r in rows}),
        "version": __version__,
    }
    _emit(out_dir, f"map_{model}", fmt,
          csv_spec=(["p1", "p2", "label"],
                    [(p1, p2, lab) for p1, p2, lab in rows]),
          json_payload=payload)
    return payload


# ---------------------------------------------------------------------------
# monodromy / gkdv / bands


def cmd_monodromy(config, out_dir, fmt):
    opts = config.options
    model = opts["model"]
    if model == "rbou":
        result = hill.classify_rbou_infinity(
            (opts["alpha"], opts["beta"], opts["gamma"])
        )
    elif model == "bl":
        result = hill.classify_bl_infinity((opts["m"], opts["a"]))
    else:
        raise ConfigError("monodromy classification applies to rbou and bl only")
    payload = {
        "model": model,
        "kind": result.kind,
        "index": result.index,
        "label": result.label,
        "trace": result.bandgap.trace,
        "sigma": result.sigma,
        "ell": result.ell,
        "version": __version__,
    }
    _emit(out_dir, f"monodromy_{model}", fmt, json_payload=payload)
    return payload


_BUILTIN_PROFILES = {
    "zero": lambda: np.array([0.0]),
    "cos": lambda: np.array([0.5, 0.0, 0.5]),
}


def _cnoidal_coefficients():
    wave = rbou.make_rbou_wave((-0.2, 0.1, 0.6))
    return wave.fourier_coefficients(40)


def cmd_gkdv_check(config, out_dir, fmt):
    opts = config.options
    profile = opts.get("profile")
    if profile is not None:
        if profile == "cnoidal":
            coeffs = _cnoidal_coefficients()
        elif profile in _BUILTIN_PROFILES:
            coeffs = _BUILTIN_PROFILES[profile]()
        else:
            raise ConfigError(f"unknown builtin profile {profile!r}")
    elif "coeff_file" in opts:
        path = Path(opts["coeff_file"])
        if not path.exists():
            raise ConfigError(f"coefficient file {path} does not exist")
        coeffs = np.loadtxt(path, dtype=float)
    else:
        raise ConfigError("gkdv-check needs --profile or --coeff-file")
    report = gkdv.gkdv_check(
        coeffs,
        c=float(opts["c"]),
        Nk=int(opts.get("nk", 64)),
        K_report=opts.get("k_report"),
        tau=opts.get("tau"),
    )
    payload = {
        "passed": report.passed,
        "k0": report.k0,
        "n_checked": report.n_checked,
        "fourier_l1": report.disks.fourier_l1,
        "c": report.disks.c,
        "failures": [
            {"clause": kind, "value": repr(value), "detail": detail}
            for kind, value, detail in report.failures
        ],
        "version": __version__,
    }
    _emit(out_dir, "gkdv_check", fmt, json_payload=payload)
    return payload


def cmd_bands(config, out_dir, fmt):
    opts = config.options
    m = float(opts["m"])
    n_edges = int(opts.get("n_edges", 8))
    edges = hill.bl_band_edges(
        m,
        n_edges=n_edges,
        N=int(opts.get("collocation_size", 50)),
        validate=bool(opts.get("validate", False)),
    )
    payload = {
        "m": m,
        "periodic": list(edges.periodic[:n_edges]),
        "antiperiodic": list(edges.antiperiodic[:n_edges]),
        "interlaced": list(edges.interlaced(n_edges)),
        "version": __version__,
    }
    rows = [
        (float(p), float(a)) for p, a in zip(edges.periodic[:n_edges], edges.antiperiodic[:n_edges])
    ]
    _emit(out_dir, "bands_bl", fmt,
          csv_spec=(["periodic", "antiperiodic"], rows), json_payload=payload)
    return payload


# ---------------------------------------------------------------------------
# argument parsing


def _add_model_args(parser):
    parser.add_argument("model", choices=["rbou", "bl", "bbm"])
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--speed-sign", type=int, default=1, dest="speed_sign")
    parser.add_argument("--m", type=float)
    parser.add_argument("--a", type=float)
    parser.add_argument("--c", type=float)
    parser.add_argument("--b1", type=float)
    parser.add_argument("--b2", type=float)


_REQUIRED = {"rbou": ("alpha", "beta", "gamma"), "bl": ("m", "a"), "bbm": ("c", "b1", "b2")}


def _model_options(args):
    model = args.model
    opts = {"model": model}
    for name in _REQUIRED[model]:
        value = getattr(args, name)
        if value is None:
            raise ConfigError(f"model {model} requires --{name}")
        opts[name] = value
    if model == "rbou":
        opts["speed_sign"] = args.speed_sign
        if args.b2 is not None:
            opts["b2"] = args.b2
    return opts


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--out", default=None, help="output directory (default: out)")
    common.add_argument("--format", choices=["csv", "json", "both"], default=None)
    common.add_argument("--jobs", type=int, default=None)

    parser = _Parser(prog="longwave", description=__doc__, parents=[common])
    parser.add_argument("--config", help="JSON config replacing command arguments")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p_wave = sub.add_parser("wave", help="construct a wave and dump its profile",
                            parents=[common])
    _add_model_args(p_wave)
    p_wave.add_argument("--samples", type=int, default=512)

    p_spec = sub.add_parser("spectrum", help="Floquet spectrum cloud", parents=[common])
    _add_model_args(p_spec)
    p_spec.add_argument("--nk", type=int, default=100)
    p_spec.add_argument("--tau-points", type=int, default=200, dest="tau_points")
    p_spec.add_argument("--plot-script", action="store_true", dest="plot_script")
    p_spec.add_argument("--no-cache", action="store_true", dest="no_cache")

    p_map = sub.add_parser("map", help="classification map over a parameter grid",
                           parents=[common])
    p_map.add_argument("model", choices=["rbou", "bl", "bbm"])
    p_map.add_argument("--gamma", type=float, default=1.0)
    for name in ("alpha-range", "beta-range", "m-range", "a-range", "b1-range", "b2-range"):
        p_map.add_argument(
            f"--{name}", nargs=3, type=float, metavar=("LO", "HI", "N"),
            dest=name.replace("-", "_"),
        )

    p_mono = sub.add_parser("monodromy", help="band/gap classification", parents=[common])
    _add_model_args(p_mono)

    p_gkdv = sub.add_parser("gkdv-check", help="gKdV disk-enclosure verification",
                            parents=[common])
    p_gkdv.add_argument("--profile", choices=["zero", "cos", "cnoidal"])
    p_gkdv.add_argument("--coeff-file", dest="coeff_file")
    p_gkdv.add_argument("--c", type=float, required=True)
    p_gkdv.add_argument("--nk", type=int, default=64)
    p_gkdv.add_argument("--k-report", type=int, dest="k_report")
    p_gkdv.add_argument("--tau", type=float)

    p_bands = sub.add_parser("bands", help="Benney-Luke band-edge table", parents=[common])
    p_bands.add_argument("--m", type=float, required=True)
    p_bands.add_argument("--n-edges", type=int, default=8, dest="n_edges")
    p_bands.add_argument("--collocation-size", type=int, default=50, dest="collocation_size")
    p_bands.add_argument("--validate", action="store_true")

    return parser


_MAP_RANGES = {
    "rbou": ("alpha_range", "beta_range"),
    "bl": ("m_range", "a_range"),
    "bbm": ("b1_range", "b2_range"),
}


def _config_from_args(args):
    command = args.command
    if command is None:
        raise ConfigError("a subcommand is required (see --help)")
    if command == "wave":
        opts = _model_options(args)
        opts["samples"] = args.samples
    elif command == "spectrum":
        opts = _model_options(args)
        opts.update(
            nk=args.nk,
            tau_points=args.tau_points,
            plot_script=args.plot_script,
            no_cache=args.no_cache,
        )
    elif command == "map":
        opts = {"model": args.model}
        for key in _MAP_RANGES[args.model]:
            value = getattr(args, key)
            if value is None:
                raise ConfigError(f"map {args.model} requires --{key.replace('_', '-')}")
            opts[key] = list(value)
        if args.model == "rbou":
            opts["gamma"] = args.gamma
    elif command == "monodromy":
        opts = _model_options(args)
    elif command == "gkdv-check":
        opts = {"c": args.c, "nk": args.nk}
        if args.profile:
            opts["profile"] = args.profile
        if args.coeff_file:
            opts["coeff_file"] = args.coeff_file
        if args.k_report is not None:
            opts["k_report"] = args.k_report
        if args.tau is not None:
            opts["tau"] = args.tau
    elif command == "bands":
        opts = {
            "m": args.m,
            "n_edges": args.n_edges,
            "collocation_size": args.collocation_size,
            "validate": args.validate,
        }
    else:
        raise ConfigError(f"unknown command {command!r}")
    return RunConfig(command=command, options=opts)


_DISPATCH = {
    "wave": lambda cfg, out, fmt, jobs: cmd_wave(cfg, out, fmt),
    "spectrum": cmd_spectrum,
    "map": lambda cfg, out, fmt, jobs: cmd_map(cfg, out, fmt),
    "monodromy": lambda cfg, out, fmt, jobs: cmd_monodromy(cfg, out, fmt),
    "gkdv-check": lambda cfg, out, fmt, jobs: cmd_gkdv_check(cfg, out, fmt),
    "bands": lambda cfg, out, fmt, jobs: cmd_bands(cfg, out, fmt),
}


def run(config, out_dir="out", fmt="both", jobs=1):
    """Programmatic entry point used by the CLI and the test-suite."""
    handler = _DISPATCH.get(config.command)
    if handler is None:
        raise ConfigError(f"unknown command {config.command!r}")
    return handler(config, Path(out_dir), fmt, jobs)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            path = Path(args.config)
            if not path.exists():
                raise ConfigError(f"config file {path} does not exist")
            config = RunConfig.from_json(path.read_text())
        else:
            config = _config_from_args(args)
        run(
            config,
            out_dir=args.out or "out",
            fmt=args.format or "both",
            jobs=args.jobs or os.cpu_count() or 1,
        )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 4
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

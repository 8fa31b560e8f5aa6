"""Command-line interface: ``hyperwave <command> ...``.

Angles are given in degrees on the command line and stored in radians.
Outputs are HWF1 field files, JSON manifests and reports, and CSV ridge
tables; identical inputs and flags give byte-identical outputs.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import quat_core as qc
from .cwt import CoefficientSlab, LocalityGrid, params_tag, cwt_iter, verify_identities
from .errors import HyperwaveError
from .fieldio import read_field, read_image, write_field
from .grid_spectral import QuaternionField
from .hyperanalytic import hypercomplex_extend, monogenic_extend
from .ridge import DEFAULT_THRESHOLD, hypercomplex_ridge_map, monogenic_ridge_map
from .synth import bandlimited_noise, parse_spec
from .wavelets import (LocalityIndex, MorseParams1D, MorseParamsIso, Wavelet, WaveletKind,
                       default_window, spatial_field)

KINDS = [k.value for k in WaveletKind]
MANIFEST = "manifest.json"
#: band of the default random field used by ``verify``
VERIFY_BAND = (0.015, 0.3)


def _shape(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        dims = tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size {text!r}; use N or HxW") from None
    if len(dims) == 1:
        dims = dims * 2
    if len(dims) != 2 or min(dims) <= 0:
        raise argparse.ArgumentTypeError(f"bad size {text!r}; use N or HxW")
    return dims


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _add_wavelet_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=KINDS, default=WaveletKind.ISOTROPIC_MONOGENIC.value)
    p.add_argument("--n", type=int, default=0, help="Laguerre order")
    p.add_argument("--beta", type=float, default=9.0, help="1-D Morse power")
    p.add_argument("--gamma", type=float, default=4.0, help="1-D Morse exponent")
    p.add_argument("--l", type=float, default=9.0, help="isotropic Morse power")
    p.add_argument("--m", type=float, default=4.0, help="isotropic Morse exponent")
    p.add_argument("--tilde", action="store_true", help="flip the k component")


def _wavelet_from_args(args) -> Wavelet:
    kind = WaveletKind(args.kind)
    if kind.isotropic:
        params = MorseParamsIso(args.n, args.l, args.m)
    else:
        params = MorseParams1D(args.n, args.beta, args.gamma)
    return Wavelet(kind, params, tilde=args.tilde)


def _wavelet_from_manifest(m: dict) -> Wavelet:
    kind = WaveletKind(m["kind"])
    params = dict(m["params"])
    tilde = params.pop("tilde", False)
    p2 = params.pop("params2", None)
    cls = MorseParamsIso if kind.isotropic else MorseParams1D
    return Wavelet(kind, cls(**params), MorseParams1D(**p2) if p2 else None, tilde)


def _grid_from_args(args, shape, isotropic: bool) -> LocalityGrid:
    if args.angles is None:
        angles = (0.0,) if isotropic else 32
    else:
        vals = _floats(args.angles)
        if len(vals) == 1 and vals[0].is_integer() and "." not in args.angles:
            angles = int(vals[0])
        else:
            angles = tuple(math.radians(v) % (2 * math.pi) for v in vals)
    if args.scales is None:
        amin, amax = 4.0, min(shape) / 6.0
    else:
        vals = _floats(args.scales)
        if len(vals) != 2:
            raise argparse.ArgumentTypeError("--scales takes AMIN,AMAX")
        amin, amax = vals
    return LocalityGrid.log_spaced(amin, amax, args.voices, angles)


def _dump_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_synth(args) -> int:
    gen = parse_spec(args.spec)
    write_field(args.output, gen.sample(args.size))
    return 0


def cmd_wavelet(args) -> int:
    wavelet = _wavelet_from_args(args)
    size = args.size
    if size is None:
        n = default_window(wavelet, args.scale)
        size = (n, n)
    h, w = size
    b = (h / 2, w / 2) if args.b is None else tuple(_floats(args.b))
    xi = LocalityIndex(args.scale, math.radians(args.angle), b)
    write_field(args.output, spatial_field(wavelet, xi, size, check=not args.no_check))
    return 0


def cmd_cwt(args) -> int:
    g = read_image(args.input, demean=not args.no_demean)
    wavelet = _wavelet_from_args(args)
    grid = _grid_from_args(args, g.shape, wavelet.kind.isotropic)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    index = {a: i for i, a in enumerate(grid.scales)}
    tindex = {t: i for i, t in enumerate(grid.angles)}
    entries = []
    for slab in cwt_iter(g, wavelet, grid):
        name = f"slab_{index[slab.a]:03d}_{tindex[slab.theta]:03d}.hwf"
        write_field(out / name, slab.field)
        entries.append({"file": name, "a": slab.a, "theta": slab.theta})
    _dump_json(out / MANIFEST, {
        "format": "HWF1", "kind": wavelet.kind.value, "params": params_tag(wavelet),
        "shape": list(g.shape), "scales": list(grid.scales), "angles": list(grid.angles),
        "slabs": entries,
    })
    return 0


def load_slabs(directory):
    """Slabs and wavelet described by a ``cwt`` output directory."""
    d = Path(directory)
    m = json.loads((d / MANIFEST).read_text())
    wavelet = _wavelet_from_manifest(m)
    slabs = []
    for e in m["slabs"]:
        field = read_field(d / e["file"])
        if not isinstance(field, QuaternionField):
            raise HyperwaveError(f"{e['file']} is not a QUAT field")
        slabs.append(CoefficientSlab(e["a"], e["theta"], field.data, m["kind"], m["params"]))
    return slabs, wavelet


def cmd_ridge(args) -> int:
    slabs, wavelet = load_slabs(args.slabs)
    if wavelet.kind is WaveletKind.ISOTROPIC_MONOGENIC:
        rm = monogenic_ridge_map(slabs, wavelet, args.threshold, margin=args.margin)
        header = ["b1", "b2", "a", "theta", "amplitude", "nu", "phase", "frequency"]
        rows = ((b1, b2, rm.a[b1, b2], rm.theta[b1, b2], rm.amplitude[b1, b2],
                 rm.orientation[b1, b2], rm.phase[b1, b2], rm.frequency[b1, b2])
                for b1, b2 in zip(*np.nonzero(rm.mask)))
    else:
        rm = hypercomplex_ridge_map(slabs, wavelet, args.threshold, margin=args.margin)
        header = ["b1", "b2", "a", "theta", "amplitude", "alpha", "beta",
                  "frequency1", "frequency2", "gamma_score"]
        rows = ((b1, b2, rm.a[b1, b2], rm.theta[b1, b2], rm.amplitude[b1, b2],
                 rm.alpha[b1, b2], rm.beta[b1, b2], rm.frequency[b1, b2],
                 rm.frequency2[b1, b2], rm.gamma_score[b1, b2])
                for b1, b2 in zip(*np.nonzero(rm.mask)))
    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([int(row[0]), int(row[1])] + [repr(float(v)) for v in row[2:]])
    return 0


def cmd_polar(args) -> int:
    field = read_field(args.input)
    if isinstance(field, np.ndarray):
        if np.iscomplexobj(field):
            raise HyperwaveError("polar forms need a REAL or QUAT field")
        theta = math.radians(args.angle)
        if args.form == "hypercomplex":
            field = hypercomplex_extend(field, theta=theta)
        else:
            field = monogenic_extend(field, 1, theta)
    prefix = args.output
    if args.form == "hypercomplex":
        planes = dict(zip(("magnitude", "alpha", "beta", "gamma"),
                          qc.polar_hypercomplex_arr(field.data, branch=args.branch)))
    else:
        amp, nu, phase, _ = qc.polar_monogenic_arr(field.data, fold=args.fold)
        planes = {"amplitude": amp, "orientation": nu, "phase": phase}
    for name, plane in planes.items():
        write_field(f"{prefix}_{name}.hwf", np.nan_to_num(plane))
    return 0


def cmd_verify(args) -> int:
    if args.input is None:
        g = bandlimited_noise(args.size, *VERIFY_BAND, seed=args.seed)
        source = f"band-limited noise {args.size[0]}x{args.size[1]}, seed {args.seed}"
    else:
        g = read_image(args.input, demean=not args.no_demean)
        source = str(args.input)
    kinds = args.kind or [WaveletKind.ISOTROPIC_MONOGENIC.value,
                          WaveletKind.ISOTROPIC_HYPERCOMPLEXING.value]
    thetas = [math.radians(t) for t in _floats(args.thetas)]
    reports = []
    for kind in kinds:
        wavelet = Wavelet(WaveletKind(kind))
        reports.append(verify_identities(g, wavelet, thetas))
    ok = all(r["pass"] for r in reports)
    report = {"source": source, "pass": ok, "reports": reports}
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperwave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="write a synthetic test field")
    p.add_argument("spec", help='e.g. "planewave:f0=0.08,phi0=30" or "noise:seed=7"')
    p.add_argument("--size", type=_shape, default=(128, 128))
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("wavelet", help="render a spatial wavelet")
    _add_wavelet_args(p)
    p.add_argument("--scale", type=float, default=8.0)
    p.add_argument("--angle", type=float, default=0.0, help="degrees")
    p.add_argument("--b", help="centre B1,B2 (default: field centre)")
    p.add_argument("--size", type=_shape, help="window N or HxW (default: smallest that holds it)")
    p.add_argument("--no-check", action="store_true", help="skip the window-size check")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_wavelet)

    p = sub.add_parser("cwt", help="transform a field into coefficient slabs")
    p.add_argument("input", help="HWF1 REAL field or binary PGM")
    _add_wavelet_args(p)
    p.add_argument("--scales", help="AMIN,AMAX in samples (default 4,N/6)")
    p.add_argument("--voices", type=int, default=8, help="scales per octave")
    p.add_argument("--angles", help="count, or comma-separated degrees")
    p.add_argument("--no-demean", action="store_true")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_cwt)

    p = sub.add_parser("ridge", help="extract ridges from a slab directory")
    p.add_argument("slabs", help="directory written by the cwt command")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--margin", type=int, default=0, help="border samples to skip")
    p.add_argument("-o", "--output", required=True, help="CSV file")
    p.set_defaults(func=cmd_ridge)

    p = sub.add_parser("polar", help="polar planes of a quaternion field")
    p.add_argument("input", help="QUAT field, or REAL field to extend first")
    p.add_argument("--form", choices=["hypercomplex", "monogenic"], default="hypercomplex")
    p.add_argument("--angle", type=float, default=0.0, help="frame angle for REAL input, degrees")
    p.add_argument("--branch", choices=["full", "principal"], default="full")
    p.add_argument("--fold", action="store_true", help="fold monogenic orientation into a half turn")
    p.add_argument("-o", "--output", required=True, help="output prefix")
    p.set_defaults(func=cmd_polar)

    p = sub.add_parser("verify", help="check the exact coefficient identities")
    p.add_argument("input", nargs="?", help="field to test (default: band-limited noise)")
    p.add_argument("--kind", action="append", choices=[
        WaveletKind.ISOTROPIC_MONOGENIC.value, WaveletKind.ISOTROPIC_HYPERCOMPLEXING.value,
        WaveletKind.SEPARABLE_HYPERCOMPLEXING.value])
    p.add_argument("--thetas", default="0,30,60", help="degrees")
    p.add_argument("--size", type=_shape, default=(64, 64))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-demean", action="store_true")
    p.add_argument("-o", "--output", help="JSON report (default: stdout)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HyperwaveError, ValueError, argparse.ArgumentTypeError) as exc:
        parser.exit(2, f"hyperwave: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())

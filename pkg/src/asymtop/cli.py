"""Command line interface.

Subcommands:
    levels   energy levels by every requested route, with cross-route defects
    wave     closed-form wavefunction sampled on an Euler-angle grid
    kernel   reproducing kernel at one point, with optional identity check
    verify   the full self-check suite, one line per check

Shared flags (also settable as key=value lines in a --config file; explicit
flags win): --A --B --C --jmax --routes --format --seed and one
--tol-<check> per check name.

Exit codes: 0 success, 1 verify found a failing check, 2 levels found a
cross-route disagreement above tol-route-agreement, 3 invalid parameters or
anything else that prevented computation.  All output is deterministic for a
fixed command line: data rows go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import DegenerateParamsError, DomainError
from .lambda_rep import ComplexQ, delta_j
from .so3 import IDENTITY, EulerAngles
from .spectra import ROUTES, TopParams, phi_state, require_strict, spectrum
from .verify import CHECK_NAMES, DEFAULT_TOLS, run_all
from .wavefunctions import _psi_values, kernel_conj_defect, kernel_eval

_DEFAULTS = {"A": 3.0, "B": 2.0, "C": 1.0, "jmax": 4, "seed": 42, "routes": ",".join(ROUTES), "format": "csv"}

LEVELS_HEADER = "j,s,class,E_wigner,E_lambda,E_lame,max_disagreement"
WAVE_HEADER = "phi,theta,psi,re_psi,im_psi"


def _fmt(x: float) -> str:
    return "%.17g" % (float(x) + 0.0)  # +0.0 folds -0.0 into 0


def _tol_dest(name: str) -> str:
    return "tol_" + name.replace("-", "_")


class _Parser(argparse.ArgumentParser):
    # usage errors must exit 3, not argparse's default 2 (taken by levels)
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(3)


def _add_shared(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--A", type=float, default=None, help="largest coefficient")
    sp.add_argument("--B", type=float, default=None, help="middle coefficient")
    sp.add_argument("--C", type=float, default=None, help="smallest coefficient")
    sp.add_argument("--jmax", type=int, default=None, help="largest j (default 4)")
    sp.add_argument(
        "--routes",
        default=None,
        help="comma-separated subset of %s (levels only)" % ",".join(ROUTES),
    )
    sp.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)
    sp.add_argument("--seed", type=int, default=None, help="seed for sampled checks")
    sp.add_argument("--config", default=None, help="key=value file; flags override")
    for name in CHECK_NAMES:
        sp.add_argument(
            f"--tol-{name}",
            type=float,
            default=None,
            dest=_tol_dest(name),
            help=f"tolerance for the {name} check (default {DEFAULT_TOLS[name]:g})",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="asymtop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_levels = sub.add_parser("levels", help="energy levels by every route")
    _add_shared(p_levels)

    p_wave = sub.add_parser("wave", help="sample one wavefunction on a grid")
    _add_shared(p_wave)
    p_wave.add_argument("--j", type=int, required=True)
    p_wave.add_argument("--s", type=int, required=True)
    p_wave.add_argument("--q-re", type=float, default=0.0)
    p_wave.add_argument("--q-im", type=float, default=0.0)
    p_wave.add_argument("--grid-n", type=int, default=8, help="points per angle")

    p_kernel = sub.add_parser("kernel", help="kernel value at one point")
    _add_shared(p_kernel)
    p_kernel.add_argument("--j", type=int, required=True)
    p_kernel.add_argument("--q-re", type=float, default=0.0)
    p_kernel.add_argument("--q-im", type=float, default=0.0)
    p_kernel.add_argument("--qp-re", type=float, default=0.0)
    p_kernel.add_argument("--qp-im", type=float, default=0.0)
    p_kernel.add_argument("--g-phi", type=float, default=0.0)
    p_kernel.add_argument("--g-theta", type=float, default=0.0)
    p_kernel.add_argument("--g-psi", type=float, default=0.0)
    p_kernel.add_argument(
        "--identity-check",
        action="store_true",
        help="also report delta_j and the kernel-at-identity defect",
    )

    p_verify = sub.add_parser("verify", help="run the self-check suite")
    _add_shared(p_verify)
    return parser


def load_config(path: str) -> dict[str, str]:
    """Flat key=value file; blank lines and # comments are skipped."""
    cfg: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DomainError(f"config line is not key=value: {raw!r}")
        key, val = line.split("=", 1)
        cfg[key.strip()] = val.strip()
    return cfg


def _resolve(args, cfg: dict[str, str], key: str, cast):
    flag = getattr(args, key.replace("-", "_"), None)
    if flag is not None:
        return flag
    if key in cfg:
        return cast(cfg[key])
    return _DEFAULTS[key]


def _settings(args):
    cfg = load_config(args.config) if args.config else {}
    p = TopParams(
        A=_resolve(args, cfg, "A", float),
        B=_resolve(args, cfg, "B", float),
        C=_resolve(args, cfg, "C", float),
    )
    jmax = int(_resolve(args, cfg, "jmax", int))
    if jmax < 0:
        raise DomainError("jmax must be >= 0")
    seed = int(_resolve(args, cfg, "seed", int))
    fmt = getattr(args, "fmt", None) or cfg.get("format") or _DEFAULTS["format"]
    if fmt not in ("csv", "json"):
        raise DomainError(f"unknown format {fmt!r}")
    routes = str(_resolve(args, cfg, "routes", str))
    route_list = tuple(r.strip() for r in routes.split(",") if r.strip())
    for r in route_list:
        if r not in ROUTES:
            raise DomainError(f"unknown route {r!r}; choose from {ROUTES}")
    if not route_list:
        raise DomainError("at least one route is required")
    tols = dict(DEFAULT_TOLS)
    for name in CHECK_NAMES:
        if f"tol-{name}" in cfg:
            tols[name] = float(cfg[f"tol-{name}"])
        flag = getattr(args, _tol_dest(name), None)
        if flag is not None:
            tols[name] = flag
    return p, jmax, seed, fmt, route_list, tols


def cmd_levels(args) -> int:
    p, jmax, _seed, fmt, routes, tols = _settings(args)
    routes = tuple(routes)
    skip_lame = False
    if "lame" in routes:
        try:
            require_strict(p)
        except DegenerateParamsError as exc:
            skip_lame = True
            print(f"warning: {exc}; lame column left empty", file=sys.stderr)
    worst_rel = 0.0
    rows = []
    for j in range(jmax + 1):
        per_route = {
            r: spectrum(j, p, route=r)
            for r in routes
            if not (r == "lame" and skip_lame)
        }
        for idx in range(2 * j + 1):
            evals = {r: levels[idx].E for r, levels in per_route.items()}
            cls = per_route["lame"][idx].lame_class if "lame" in per_route else None
            vals = list(evals.values())
            dis = max(vals) - min(vals) if len(vals) >= 2 else None
            if dis is not None:
                worst_rel = max(worst_rel, dis / max(1.0, max(abs(v) for v in vals)))
            rows.append(
                {
                    "j": j,
                    "s": idx - j,
                    "class": cls,
                    "E_wigner": evals.get("wigner"),
                    "E_lambda": evals.get("lambda"),
                    "E_lame": evals.get("lame"),
                    "max_disagreement": dis,
                }
            )
    if fmt == "csv":
        print(LEVELS_HEADER)
        for row in rows:
            cells = [str(row["j"]), str(row["s"])]
            cells.append("" if row["class"] is None else str(row["class"]))
            for key in ("E_wigner", "E_lambda", "E_lame", "max_disagreement"):
                cells.append("" if row[key] is None else _fmt(row[key]))
            print(",".join(cells))
    else:
        print(json.dumps({"params": {"A": p.A, "B": p.B, "C": p.C}, "levels": rows}))
    if worst_rel > tols["route-agreement"]:
        print(
            f"error: cross-route disagreement {worst_rel:.3e} exceeds "
            f"tol-route-agreement {tols['route-agreement']:.3e}",
            file=sys.stderr,
        )
        return 2
    return 0


def cmd_wave(args) -> int:
    p, _jmax, _seed, fmt, _routes, _tols = _settings(args)
    j, s, n = args.j, args.s, args.grid_n
    if j < 0 or abs(s) > j:
        raise DomainError(f"need j >= 0 and |s| <= j, got j={j}, s={s}")
    if n < 2:
        raise DomainError("grid-n must be >= 2")
    qv = complex(args.q_re, args.q_im)
    coeffs = phi_state(j, s, p).coeffs
    az = 2.0 * np.pi * np.arange(n) / n
    th = np.pi * (np.arange(n) + 1.0) / (n + 1.0)  # interior: poles excluded
    phi_g, th_g, psi_g = np.meshgrid(az, th, az, indexing="ij")
    vals = _psi_values(qv, coeffs, phi_g.ravel(), th_g.ravel(), psi_g.ravel())
    cols = np.column_stack(
        [phi_g.ravel(), th_g.ravel(), psi_g.ravel(), vals.real, vals.imag]
    )
    if fmt == "csv":
        print(WAVE_HEADER)
        for row in cols:
            print(",".join(_fmt(x) for x in row))
    else:
        print(
            json.dumps(
                {
                    "j": j,
                    "s": s,
                    "q": [qv.real, qv.imag],
                    "columns": WAVE_HEADER.split(","),
                    "rows": cols.tolist(),
                }
            )
        )
    return 0


def cmd_kernel(args) -> int:
    _p, _jmax, _seed, fmt, _routes, _tols = _settings(args)
    j = args.j
    if j < 0:
        raise DomainError("j must be >= 0")
    q = ComplexQ(args.q_re, args.q_im)
    qp = ComplexQ(args.qp_re, args.qp_im)
    g = EulerAngles(args.g_phi, args.g_theta, args.g_psi)
    val = kernel_eval(q, qp, j, g)
    out = {
        "kernel_re": val.real,
        "kernel_im": val.imag,
        "conj_defect": kernel_conj_defect(q, qp, j, g),
    }
    if args.identity_check:
        expected = delta_j(q, qp, j)
        out["delta_re"] = expected.real
        out["delta_im"] = expected.imag
        out["identity_defect"] = abs(kernel_eval(q, qp, j, IDENTITY) - expected)
    if fmt == "csv":
        print("quantity,value")
        for key, value in out.items():
            print(f"{key},{_fmt(value)}")
    else:
        print(json.dumps(out))
    return 0


def cmd_verify(args) -> int:
    p, jmax, seed, fmt, _routes, tols = _settings(args)
    require_strict(p)
    results = run_all(p, jmax=jmax, seed=seed, tols=tols)
    if fmt == "csv":
        print("check,passed,defect,tol")
        for r in results:
            print(f"{r.name},{'true' if r.passed else 'false'},{_fmt(r.defect)},{_fmt(r.tol)}")
    else:
        print(
            json.dumps(
                {
                    "checks": [
                        {
                            "check": r.name,
                            "passed": r.passed,
                            "defect": r.defect,
                            "tol": r.tol,
                        }
                        for r in results
                    ],
                    "all_passed": all(r.passed for r in results),
                }
            )
        )
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} checks passed", file=sys.stderr)
    return 0 if n_pass == len(results) else 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(sys.argv[1:] if argv is None else argv)
    handlers = {
        "levels": cmd_levels,
        "wave": cmd_wave,
        "kernel": cmd_kernel,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, RuntimeError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())

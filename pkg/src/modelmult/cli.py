"""Command-line interface.

Every operation is exposed as a subcommand emitting a deterministic JSON
report (and optionally a CSV table).  Exit codes: 0 success, 1 fixture ran
with failing checks, 2 domain/data error, 64 unknown subcommand, 65
malformed descriptor.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import fixtures
from .clark import (absolute_continuity_multiplier, clark_measure,
                    poisson_identity_residual)
from .descriptors import inner_from_json, measure_from_json
from .errors import (DataError, DescriptorError, DomainError, EvaluationError,
                     IllConditionedError, TruncationError)
from .grids import DiskGrid, default_disk_grid, sweep_workers
from .halfplane import (GeometricTail, LyubarskiiSeipProduct, ShiftedCubeProduct,
                        ahern_clark_at_infinity, lyubarskii_seip_ratio,
                        midpoints, product_e1, product_e2, transfer_norm_check)
from .inner import FiniteBlaschke
from .modelspace import kernel_norm_sq, model_space_basis
from .multiplier import (GrowthRule, cohn_carleson_sup, membership_check,
                         multiplier_basis, necessary_condition_sup,
                         quadrature_for_zeros, toeplitz_kernel_dim)
from .numerics import CircleQuadrature, Polynomial, RationalFunction
from .reports import stable_dumps, write_csv

SUBCOMMANDS = ("eval", "kernel", "basis", "mult-basis", "kernel-dim",
               "membership", "necessary-sup", "cohn-sup", "clark",
               "poisson-check", "ac-mult", "transfer", "product-eval",
               "ls-ratio", "ahern-clark", "verify-example")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_DOMAIN = 2
EXIT_UNKNOWN_COMMAND = 64
EXIT_BAD_DESCRIPTOR = 65


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise DomainError(f"cannot parse complex number from {text!r}") from exc


def _parse_complex_list(text: str):
    text = text.strip()
    if not text:
        return []
    return [_parse_complex(part) for part in text.split(",")]


def _read_arg(text: str) -> str:
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return fh.read()
    return text


def _rational_from_args(args) -> RationalFunction:
    num = Polynomial(_parse_complex_list(args.phi_num))
    den = Polynomial(_parse_complex_list(args.phi_den)) if args.phi_den else Polynomial([1.0])
    return RationalFunction(num, den)


def _grid_from_args(args) -> DiskGrid:
    rays = _parse_complex_list(args.grid_rays) if args.grid_rays else [1.0 + 0j]
    if args.grid_radii:
        return DiskGrid([float(r) for r in args.grid_radii.split(",")],
                        n_angles=args.grid_angles, rays=rays)
    return default_disk_grid(k_max=args.grid_kmax, n_angles=args.grid_angles,
                             rays=rays)


def _add_grid_options(p: argparse.ArgumentParser):
    p.add_argument("--grid-kmax", type=int, default=12)
    p.add_argument("--grid-angles", type=int, default=256)
    p.add_argument("--grid-radii", default="",
                   help="explicit comma-separated radii (overrides --grid-kmax)")
    p.add_argument("--grid-rays", default="", help="comma-separated directions")
    p.add_argument("--growth-window", type=int, default=4)
    p.add_argument("--growth-factor", type=float, default=4.0)


def _add_phi_options(p: argparse.ArgumentParser):
    p.add_argument("--phi-num", required=True,
                   help="ascending numerator coefficients, comma separated")
    p.add_argument("--phi-den", default="",
                   help="ascending denominator coefficients (default 1)")


def _rational_dict(r: RationalFunction) -> dict:
    return {"numerator": [[c.real, c.imag] for c in r.numerator.coefficients],
            "denominator": [[c.real, c.imag] for c in r.denominator.coefficients]}


# ---------------------------------------------------------------------------
# subcommand bodies: each returns (result dict, csv table or None, exit code)
# ---------------------------------------------------------------------------

def _cmd_eval(args):
    u = inner_from_json(_read_arg(args.inner))
    cv = u.eval(_parse_complex(args.z))
    return {"value": cv.value, "error_bound": cv.error}, None, EXIT_OK


def _cmd_kernel(args):
    u = inner_from_json(_read_arg(args.inner))
    lam = _parse_complex(args.lam)
    formula = kernel_norm_sq(u, lam)
    out = {"norm_sq_formula": formula}
    if args.quad_check and isinstance(u, FiniteBlaschke):
        quad = quadrature_for_zeros(u.zeros, [lam],
                                    minimum=max(args.quad_check, 1024))
        from .modelspace import KernelFunction
        k = KernelFunction(u, lam)
        qval = quad.norm_sq(k)
        out["norm_sq_quadrature"] = qval
        out["difference"] = abs(formula - qval)
        out["quad_points"] = quad.n_points
    return out, None, EXIT_OK


def _cmd_basis(args):
    u = FiniteBlaschke(_parse_complex_list(args.u_zeros))
    basis = model_space_basis(u)
    return {"dimension": basis.dimension,
            "elements": [_rational_dict(e) for e in basis.elements]}, None, EXIT_OK


def _cmd_mult_basis(args):
    basis = multiplier_basis(_parse_complex_list(args.u_zeros),
                             _parse_complex_list(args.v_zeros))
    return {"dimension": basis.dimension,
            "elements": [_rational_dict(e) for e in basis.elements]}, None, EXIT_OK


def _cmd_kernel_dim(args):
    res = toeplitz_kernel_dim(FiniteBlaschke(_parse_complex_list(args.u_zeros)),
                              FiniteBlaschke(_parse_complex_list(args.v_zeros)))
    return {"dimension": res.dimension,
            "elements": [_rational_dict(e) for e in res.elements],
            "singular_values": list(res.singular_values)}, None, EXIT_OK


def _cmd_membership(args):
    phi = _rational_from_args(args)
    u = FiniteBlaschke(_parse_complex_list(args.u_zeros))
    v = FiniteBlaschke(_parse_complex_list(args.v_zeros))
    quad = CircleQuadrature(args.quad_n) if args.quad_n else None
    return membership_check(phi, u, v, quad=quad).to_dict(), None, EXIT_OK


def _ray_csv(report) -> tuple:
    header = ["ray_index", "radius", "value"]
    rows = []
    for i, ray in enumerate(report.rays):
        for r, v in zip(ray.radii, ray.values):
            rows.append([i, float(r), float(v)])
    return header, rows


def _cmd_necessary_sup(args):
    phi = _rational_from_args(args)
    u = inner_from_json(_read_arg(args.u))
    v = inner_from_json(_read_arg(args.v))
    grid = _grid_from_args(args)
    rule = GrowthRule(window=args.growth_window, factor=args.growth_factor)
    report = necessary_condition_sup(phi, u, v, grid, rule)
    return report.to_dict(), _ray_csv(report), EXIT_OK


def _cmd_cohn_sup(args):
    phi = _rational_from_args(args)
    u = inner_from_json(_read_arg(args.u))
    grid = _grid_from_args(args)
    rule = GrowthRule(window=args.growth_window, factor=args.growth_factor)
    quad = CircleQuadrature(args.quad_n or (1 << 14))
    report = cohn_carleson_sup(phi, u, grid, quad, rule)
    return report.to_dict(), _ray_csv(report), EXIT_OK


def _cmd_clark(args):
    u = inner_from_json(_read_arg(args.inner))
    mu = clark_measure(u, n_range=args.n_range)
    return mu.to_dict(), None, EXIT_OK


def _cmd_poisson_check(args):
    u = inner_from_json(_read_arg(args.inner))
    if args.measure:
        mu = measure_from_json(_read_arg(args.measure))
    else:
        mu = clark_measure(u, n_range=args.n_range)
    rng = np.random.default_rng(args.seed)
    n = args.samples
    zs = args.radius * np.sqrt(rng.uniform(0, 1, n)) * np.exp(
        2j * np.pi * rng.uniform(0, 1, n))
    res = poisson_identity_residual(u, mu, zs)
    out = res.to_dict()
    out["seed"] = args.seed
    out["sample_radius"] = args.radius
    return out, None, EXIT_OK


def _cmd_ac_mult(args):
    mu_u = measure_from_json(_read_arg(args.sigma_u))
    mu_v = measure_from_json(_read_arg(args.sigma_v))
    return absolute_continuity_multiplier(mu_u, mu_v).to_dict(), None, EXIT_OK


def _cmd_transfer(args):
    f = _rational_from_args(args)
    if not f.h2_safe():
        raise DomainError("transfer check needs poles outside the closed disk")
    quad = CircleQuadrature(args.quad_n or (1 << 12))
    rep = transfer_norm_check(f, quad, half_width=args.half_width)
    return rep.to_dict(), None, EXIT_OK


def _product_from_args(args):
    if args.product == "e1":
        return product_e1()
    if args.product == "e2":
        return product_e2()
    if args.product == "e2-tilde":
        return ShiftedCubeProduct(product_e2())
    if args.product == "e-delta":
        return LyubarskiiSeipProduct(args.delta)
    raise DomainError(f"unknown product {args.product!r}")


def _cmd_product_eval(args):
    prod = _product_from_args(args)
    cv = prod.eval(_parse_complex(args.z))
    return {"product": args.product, "value": cv.value,
            "error_bound": cv.error}, None, EXIT_OK


def _cmd_ls_ratio(args):
    if args.xs:
        xs = [float(x) for x in args.xs.split(",")]
    else:
        xs = [float(x) for x in midpoints(args.delta, args.k_max)]
    sweep = lyubarskii_seip_ratio(args.delta, xs)
    csv = (["x", "ratio"], [[x, r] for x, r in zip(sweep.xs, sweep.ratios)])
    return sweep.to_dict(), csv, EXIT_OK


def _cmd_ahern_clark(args):
    zeros = _parse_complex_list(args.zeros)
    tail = GeometricTail(ratio=args.tail_ratio, scale=args.tail_scale)
    return ahern_clark_at_infinity(zeros, tail).to_dict(), None, EXIT_OK


def _cmd_verify_example(args):
    report = fixtures.run_fixture(args.name)
    csv = None
    growth = report.get("tables", {}).get("growth")
    if growth:
        csv = (["n", "radius", "ratio", "cohn"],
               [[n, r, q, c] for n, r, q, c in zip(
                   growth["n"], growth["radius"], growth["ratio"], growth["cohn"])])
    code = EXIT_OK if report["passed"] else EXIT_CHECK_FAILED
    return report, csv, code


# ---------------------------------------------------------------------------
# parsers
# ---------------------------------------------------------------------------

def _build_parser(name: str) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=f"modelmult {name}")
    p.add_argument("--out", default="", help="write the JSON report to a file")
    p.add_argument("--csv", default="", help="write the primary table as CSV")
    if name == "eval":
        p.add_argument("--inner", required=True, help="descriptor JSON or @file")
        p.add_argument("--z", required=True)
    elif name == "kernel":
        p.add_argument("--inner", required=True)
        p.add_argument("--lam", required=True)
        p.add_argument("--quad-check", type=int, default=0)
    elif name == "basis":
        p.add_argument("--u-zeros", required=True)
    elif name == "mult-basis":
        p.add_argument("--u-zeros", required=True)
        p.add_argument("--v-zeros", required=True)
    elif name == "kernel-dim":
        p.add_argument("--u-zeros", required=True)
        p.add_argument("--v-zeros", required=True)
    elif name == "membership":
        _add_phi_options(p)
        p.add_argument("--u-zeros", required=True)
        p.add_argument("--v-zeros", required=True)
        p.add_argument("--quad-n", type=int, default=0)
    elif name == "necessary-sup":
        _add_phi_options(p)
        p.add_argument("--u", required=True)
        p.add_argument("--v", required=True)
        _add_grid_options(p)
    elif name == "cohn-sup":
        _add_phi_options(p)
        p.add_argument("--u", required=True)
        p.add_argument("--quad-n", type=int, default=0)
        _add_grid_options(p)
    elif name == "clark":
        p.add_argument("--inner", required=True)
        p.add_argument("--n-range", type=int, default=200)
    elif name == "poisson-check":
        p.add_argument("--inner", required=True)
        p.add_argument("--measure", default="", help="measure JSON or @file")
        p.add_argument("--n-range", type=int, default=200)
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--radius", type=float, default=0.9)
        p.add_argument("--seed", type=int, default=0)
    elif name == "ac-mult":
        p.add_argument("--sigma-u", required=True)
        p.add_argument("--sigma-v", required=True)
    elif name == "transfer":
        _add_phi_options(p)
        p.add_argument("--half-width", type=float, default=2.0 ** 20)
        p.add_argument("--quad-n", type=int, default=0)
    elif name == "product-eval":
        p.add_argument("--product", required=True,
                       choices=["e1", "e2", "e2-tilde", "e-delta"])
        p.add_argument("--delta", type=float, default=0.1)
        p.add_argument("--z", required=True)
    elif name == "ls-ratio":
        p.add_argument("--delta", type=float, required=True)
        p.add_argument("--k-max", type=int, default=40)
        p.add_argument("--xs", default="", help="explicit sample points")
    elif name == "ahern-clark":
        p.add_argument("--zeros", required=True)
        p.add_argument("--tail-ratio", type=float, required=True)
        p.add_argument("--tail-scale", type=float, required=True)
    elif name == "verify-example":
        p.add_argument("name", choices=list(fixtures.FIXTURE_NAMES))
    return p


_HANDLERS = {
    "eval": _cmd_eval,
    "kernel": _cmd_kernel,
    "basis": _cmd_basis,
    "mult-basis": _cmd_mult_basis,
    "kernel-dim": _cmd_kernel_dim,
    "membership": _cmd_membership,
    "necessary-sup": _cmd_necessary_sup,
    "cohn-sup": _cmd_cohn_sup,
    "clark": _cmd_clark,
    "poisson-check": _cmd_poisson_check,
    "ac-mult": _cmd_ac_mult,
    "transfer": _cmd_transfer,
    "product-eval": _cmd_product_eval,
    "ls-ratio": _cmd_ls_ratio,
    "ahern-clark": _cmd_ahern_clark,
    "verify-example": _cmd_verify_example,
}


def _emit(text: str, out_path: str):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        sys.stdout.write("usage: modelmult <subcommand> [options]\n"
                         "subcommands: " + ", ".join(SUBCOMMANDS) + "\n")
        return EXIT_OK
    name, rest = argv[0], argv[1:]
    if name not in SUBCOMMANDS:
        sys.stdout.write(stable_dumps(
            {"error": f"unknown subcommand {name!r}",
             "known_subcommands": list(SUBCOMMANDS)}))
        return EXIT_UNKNOWN_COMMAND
    parser = _build_parser(name)
    try:
        args = parser.parse_args(rest)
    except SystemExit as exc:
        return EXIT_DOMAIN if exc.code else EXIT_OK

    try:
        result, csv_table, code = _HANDLERS[name](args)
    except DescriptorError as exc:
        _emit(stable_dumps({"error": str(exc), "schema": exc.schema_pointer}),
              args.out)
        return EXIT_BAD_DESCRIPTOR
    except (DomainError, DataError, EvaluationError, IllConditionedError,
            TruncationError, NotImplementedError, KeyError) as exc:
        _emit(stable_dumps({"error": str(exc), "type": type(exc).__name__}),
              args.out)
        return EXIT_DOMAIN

    envelope = {
        "subcommand": name,
        "config": {k: v for k, v in sorted(vars(args).items())
                   if k not in ("out", "csv")},
        "threads": sweep_workers(),
        "result": result,
    }
    _emit(stable_dumps(envelope), args.out)
    if args.csv and csv_table is not None:
        write_csv(args.csv, csv_table[0], csv_table[1])
    return code


if __name__ == "__main__":
    raise SystemExit(main())

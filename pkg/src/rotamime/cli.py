"""Command-line front end: ``rotamime <subcommand> ...``.

b is always given as two integers ``--k`` and ``--n`` so it stays exact.
Exit codes: 0 success, 1 negative verdict (non-member, invalid certificate),
2 usage error, 3 bracket error, 4 numeric failure.
"""
import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import backend
from ._parallel import default_jobs
from .bifurcation import birth_parameter, detect_windows, return_map, scan
from .conditions import check_membership, membership_threshold
from .errors import BracketError, CertificateFailed, DomainError, RotamimeError
from .farey import farey_parents, format_rational, larger_denominator_parent, make_rational
from .io import bifurcation_svg, scan_csv, windows_json
from .maps import KERNEL_TAGS, Interval, KernelFamily, MapSpec
from .orbit import basin_fraction, find_attracting_orbit, lemma_certificate

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BRACKET, EXIT_NUMERIC = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    subcommand: str
    kernel: str
    k: int
    n: int
    a: Optional[float] = None
    a_from: Optional[float] = None
    a_to: Optional[float] = None
    step: Optional[float] = None
    transient: int = 100_000
    samples: int = 100
    out: Optional[str] = None
    format: str = "csv"
    jobs: int = 1

    def validate(self):
        make_rational(self.k, self.n)
        if self.kernel not in KERNEL_TAGS:
            raise DomainError(f"unknown kernel {self.kernel!r}")
        if self.a_from is not None and self.a_to is not None and self.a_to < self.a_from:
            raise DomainError("empty a range")
        if self.step is not None and self.step <= 0:
            raise DomainError("step must be positive")
        if self.jobs < 1:
            raise DomainError("--jobs must be at least 1")
        return self

    @property
    def b_exact(self):
        return make_rational(self.k, self.n)

    def spec(self) -> MapSpec:
        return MapSpec(KernelFamily(self.kernel, self.a), self.b_exact)


def _write(stem, suffix, text):
    path = Path(f"{stem}.{suffix}")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def _emit(cfg, payload: dict):
    text = json.dumps(payload, indent=2)
    print(text)
    if cfg.out:
        _write(cfg.out, "json", text + "\n")


def cmd_check(cfg, args):
    t0 = time.perf_counter()
    report = check_membership(cfg.spec())
    payload = report.to_dict()
    payload["seconds"] = round(time.perf_counter() - t0, 6)
    _emit(cfg, payload)
    return EXIT_OK if report.member else EXIT_NEGATIVE


def cmd_orbit(cfg, args):
    spec = cfg.spec()
    orbit = find_attracting_orbit(spec, args.seed, transient=cfg.transient, max_period=args.max_period)
    payload = {"spec": spec.to_dict(), "orbit": orbit.to_dict()}
    code = EXIT_OK
    if args.certify:
        try:
            cert = lemma_certificate(spec, require_member=not args.force)
            payload["certificate"] = cert.to_dict()
            code = EXIT_OK if cert.valid else EXIT_NEGATIVE
        except CertificateFailed as exc:
            payload["certificate"] = {"valid": False, "error": str(exc), "step": exc.step}
            code = EXIT_NEGATIVE
        except DomainError as exc:
            payload["certificate"] = {"valid": False, "error": str(exc)}
            code = EXIT_NEGATIVE
    _emit(cfg, payload)
    return code


def _run_scan(cfg, args):
    return scan(cfg.b_exact, cfg.kernel, Interval(cfg.a_from, cfg.a_to) if cfg.a_to > cfg.a_from
                else None, cfg.step, transient=cfg.transient, n_samples=cfg.samples,
                max_period=args.max_period, which=args.map, jobs=cfg.jobs,
                grid=[cfg.a_from] if cfg.a_to == cfg.a_from else None)


def cmd_scan(cfg, args):
    result = _run_scan(cfg, args)
    stem = cfg.out or "scan"
    paths = [_write(stem, "csv", scan_csv(result))]
    if cfg.format == "svg":
        paths.append(_write(stem, "svg", bifurcation_svg(result)))
    elif cfg.format == "json":
        paths.append(_write(stem, "json", windows_json(detect_windows(result)) + "\n"))
    for p in paths:
        print(p)
    return EXIT_OK


def cmd_windows(cfg, args):
    result = _run_scan(cfg, args)
    text = windows_json(detect_windows(result))
    print(text)
    _write(cfg.out or "windows", "json", text + "\n")
    return EXIT_OK


def cmd_birth(cfg, args):
    a = birth_parameter(cfg.b_exact, cfg.kernel, args.target, Interval(args.a_lo, args.a_hi),
                        tol=args.tol, transient=cfg.transient)
    _emit(cfg, {"b": format_rational(cfg.b_exact), "target_period": args.target,
                "a": format(a, ".17g")})
    return EXIT_OK


def cmd_return_map(cfg, args):
    data = [return_map(cfg.b_exact, cfg.kernel, cfg.a, j).to_dict() for j in args.j]
    _emit(cfg, {"b": format_rational(cfg.b_exact), "a": format(cfg.a, ".17g"), "maps": data})
    return EXIT_OK


def cmd_farey(cfg, args):
    b = cfg.b_exact
    lo, hi = farey_parents(b)
    line = (f"parents: {format_rational(lo)}, {format_rational(hi)}; "
            f"larger-den: {format_rational(larger_denominator_parent(b))}")
    print(line)
    if cfg.out:
        _write(cfg.out, "txt", line + "\n")
    return EXIT_OK


def cmd_basin(cfg, args):
    spec = cfg.spec()
    orbit = find_attracting_orbit(spec, "plus", transient=cfg.transient)
    frac = basin_fraction(spec, orbit, cfg.samples, Interval(args.lo, args.hi),
                          max_iters=args.max_iters, tol=args.tol, jobs=cfg.jobs)
    _emit(cfg, {"spec": spec.to_dict(), "period": orbit.period, "samples": cfg.samples,
                "fraction": format(frac, ".17g")})
    return EXIT_OK


def cmd_threshold(cfg, args):
    a = membership_threshold(cfg.b_exact, cfg.kernel, Interval(args.a_lo, args.a_hi))
    _emit(cfg, {"b": format_rational(cfg.b_exact), "kernel": cfg.kernel, "a": format(a, ".17g")})
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "orbit": cmd_orbit,
    "scan": cmd_scan,
    "windows": cmd_windows,
    "birth": cmd_birth,
    "return-map": cmd_return_map,
    "farey": cmd_farey,
    "basin": cmd_basin,
    "threshold": cmd_threshold,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotamime", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s ({backend.NAME} kernels)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, need_a=True):
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--kernel", choices=KERNEL_TAGS, default="eos")
        if need_a:
            p.add_argument("--a", type=float, required=True)
        p.add_argument("--out", help="output file stem")
        return p

    def sweep(p):
        p.add_argument("--a-from", type=float, required=True)
        p.add_argument("--a-to", type=float, required=True)
        p.add_argument("--step", type=float, default=0.1)
        p.add_argument("--transient", type=int, default=100_000)
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--max-period", type=int, default=2000)
        p.add_argument("--map", choices=("F", "hybrid"), default="F")
        p.add_argument("--jobs", type=int, default=default_jobs())

    common(sub.add_parser("check", help="test membership conditions"))

    p = common(sub.add_parser("orbit", help="find the attracting orbit"))
    p.add_argument("--seed", choices=("plus", "minus"), default="plus")
    p.add_argument("--transient", type=int, default=100_000)
    p.add_argument("--max-period", type=int, default=2000)
    p.add_argument("--certify", action="store_true", help="also build the period-n certificate")
    p.add_argument("--force", action="store_true", help="certify even if membership fails")

    p = common(sub.add_parser("scan", help="bifurcation sweep over a"), need_a=False)
    sweep(p)
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")

    p = common(sub.add_parser("windows", help="periodic windows with Farey verdicts"), need_a=False)
    sweep(p)

    p = common(sub.add_parser("birth", help="a at which a target period appears"), need_a=False)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--a-lo", type=float, required=True)
    p.add_argument("--a-hi", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--transient", type=int, default=100_000)

    p = common(sub.add_parser("return-map", help="first-return data of the hybrid map"))
    p.add_argument("--j", type=int, choices=(0, 1), nargs="+", default=[0, 1])

    common(sub.add_parser("farey", help="Farey parents of k/n"), need_a=False)

    p = common(sub.add_parser("basin", help="fraction of samples attracted to the orbit"))
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--lo", type=float, default=-5.0)
    p.add_argument("--hi", type=float, default=5.0)
    p.add_argument("--max-iters", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--transient", type=int, default=100_000)
    p.add_argument("--jobs", type=int, default=default_jobs())

    p = common(sub.add_parser("threshold", help="smallest a with membership"), need_a=False)
    p.add_argument("--a-lo", type=float, default=4.0)
    p.add_argument("--a-hi", type=float, default=400.0)
    return parser


def config_from_args(args) -> RunConfig:
    fields = {k: getattr(args, k) for k in ("a", "a_from", "a_to", "step", "transient", "samples",
                                            "format", "jobs") if getattr(args, k, None) is not None}
    return RunConfig(args.subcommand, args.kernel, args.k, args.n, out=args.out, **fields).validate()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except DomainError as exc:
        print(f"rotamime: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.subcommand](cfg, args)
    except BracketError as exc:
        print(f"rotamime: bracket error: {exc}", file=sys.stderr)
        return EXIT_BRACKET
    except DomainError as exc:
        print(f"rotamime: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RotamimeError as exc:
        print(f"rotamime: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

"""``zeromodes`` command line: build, census, verify, dispersion.

Exit codes: 0 success (verdict consistent or consistent-asymptotically),
1 inconsistent verdict or invalid lattice, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .builders import (
    LatticeParseError,
    TorusWrapping,
    WrappingError,
    atomic_write,
    build_goldberg_fullerene,
    build_honeycomb_torus,
    build_octahedral_graphenoid,
    load_lattice,
    save_lattice,
)
from .fixtures import fixture_names, load_fixture
from .index_theory import Verdict, verify_lattice
from .lattice import (
    InvalidLatticeError,
    Lattice,
    LatticeError,
    defect_census,
    defect_relation_check,
    euler_characteristic,
    genus_of,
)
from .spectral import (
    DEFAULT_ZERO_TOL,
    RECIPROCAL,
    assemble_hamiltonian,
    bloch_spectrum,
    clusters_csv,
    dispersion_energy,
    full_spectrum,
    allowed_momenta,
    spectrum_csv,
    zero_mode_report,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _pair(text: str) -> tuple[int, int]:
    try:
        x, y = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'x,y', got {text!r}") from None
    return x, y


def _add_builder_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, help="Goldberg m")
    p.add_argument("--n", type=int, default=0, help="Goldberg n (default 0)")
    p.add_argument("--a", type=_pair, help="first torus wrapping vector 'x,y'")
    p.add_argument("--b", type=_pair, help="second torus wrapping vector 'x,y'")
    p.add_argument("--f", type=int, help="octahedral subdivision frequency")


def _build(kind: str, args) -> Lattice:
    try:
        if kind == "goldberg":
            if args.m is None:
                raise UsageError("goldberg needs --m")
            if args.m < 1 or args.n < 0:
                raise UsageError(f"invalid Goldberg parameters m={args.m}, n={args.n}")
            return build_goldberg_fullerene(args.m, args.n)
        if kind == "torus":
            if args.a is None or args.b is None:
                raise UsageError("torus needs --a and --b")
            return build_honeycomb_torus(TorusWrapping(args.a, args.b))
        if kind == "octahedral":
            if args.f is None or args.f < 1:
                raise UsageError("octahedral needs --f >= 1")
            return build_octahedral_graphenoid(args.f)
    except WrappingError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown builder {kind!r}")


def _source(args):
    chosen = [x for x in (args.file, args.builder, args.fixture) if x]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --file, --builder, --fixture")
    if args.file:
        return load_lattice(args.file, check=False)
    if args.fixture:
        try:
            return load_fixture(args.fixture)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    return _build(args.builder, args)


def _summary(lattice) -> list[str]:
    census = defect_census(lattice)
    g = genus_of(lattice)
    relation = defect_relation_check(census, g)
    return [
        f"lattice  {lattice.name}",
        f"V {lattice.V}  E {lattice.E}  F {lattice.F}",
        f"chi {euler_characteristic(lattice)}  genus {g}",
        f"census {census.line()}",
        f"residual {relation.residual}",
    ]


def cmd_build(args) -> int:
    lattice = _build(args.kind, args)
    if args.output:
        save_lattice(lattice, args.output)
    print("\n".join(_summary(lattice)))
    if args.output:
        print(f"wrote {args.output}")
    return EXIT_OK


def cmd_census(args) -> int:
    try:
        lattice = _source(args)
    except LatticeParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = lattice.report
    if not report.ok:
        print(f"invalid lattice {lattice.name}: {len(report.violations)} violation(s)", file=sys.stderr)
        for v in report.violations:
            print(f"  {v.rule}: {v.detail}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        census = defect_census(lattice)
        g = genus_of(lattice)
        doc = {
            "lattice": lattice.name, "V": lattice.V, "E": lattice.E, "F": lattice.F,
            "chi": euler_characteristic(lattice), "genus": g,
            "census": {str(k): v for k, v in census.items()},
            "residual": defect_relation_check(census, g).residual,
        }
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(_summary(lattice)))
    return EXIT_OK


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name).strip("_") or "lattice"


def _verify_one(lattice, args, out_dir: Path, report_path: Path | None, stem: str | None = None):
    lattice.require_valid()
    stem = stem or _slug(lattice.name)
    J = args.J
    tau = args.tau * J
    report = verify_lattice(lattice, J=J, tau=tau)
    path = report_path or out_dir / f"{stem}.report.json"
    formats = set(args.format)
    if not formats or formats - {"json", "csv"}:
        raise UsageError(f"unknown output format in {args.format}")
    if "json" in formats:
        atomic_write(path, report.to_json())
    if "csv" in formats:
        _, spectrum = zero_mode_report(lattice, J, tau, exact=False)
        if spectrum is not None:
            atomic_write(out_dir / f"{stem}.spectrum.csv", spectrum_csv(spectrum))
            atomic_write(out_dir / f"{stem}.clusters.csv", clusters_csv(spectrum))
    return report, path


def cmd_verify(args) -> int:
    if not args.J > 0 or not args.tau > 0:
        raise UsageError("--J and --tau must be positive")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.all_fixtures:
        if args.file or args.builder or args.fixture or args.output:
            raise UsageError("--all-fixtures takes no lattice source or --output")
        names = fixture_names()
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(lambda n: _verify_one(load_fixture(n), args, out_dir, None), names))
        worst = EXIT_OK
        for name, (report, path) in zip(names, results):
            print(f"{name:20s} {report.verdict.value:28s} -> {path}")
            if report.verdict is Verdict.INCONSISTENT:
                worst = EXIT_FAIL
        return worst
    try:
        lattice = _source(args)
    except LatticeParseError as exc:
        raise UsageError(str(exc)) from None
    if not lattice.is_valid:
        raise InvalidLatticeError(lattice.report)
    stem = Path(args.file).stem if args.file else None
    report, path = _verify_one(lattice, args, out_dir, Path(args.output) if args.output else None, stem)
    doc = report.to_dict()
    print(f"lattice {doc['lattice']}  genus {doc['genus']}  index ({doc['index_k1']},{doc['index_k2']})  "
          f"min_zero_modes {doc['min_zero_modes']}")
    print(f"numeric_zero_count {doc['numeric_zero_count']}  exact_zero_count {doc['exact_zero_count']}")
    print(f"verdict {doc['verdict']}")
    print(f"wrote {path}")
    return EXIT_FAIL if report.verdict is Verdict.INCONSISTENT else EXIT_OK


def cmd_dispersion(args) -> int:
    J = args.J
    if (args.grid is None) == (args.a is None and args.b is None):
        raise UsageError("give either --grid N or both --a and --b")
    lines = ["p_x,p_y,E_plus,E_minus"]
    summary = None
    if args.grid is not None:
        if args.grid < 1:
            raise UsageError("--grid must be positive")
        k = np.arange(args.grid) / args.grid
        frac = np.stack(np.meshgrid(k, k, indexing="ij"), axis=-1).reshape(-1, 2)
        p = frac @ RECIPROCAL
    else:
        if args.a is None or args.b is None:
            raise UsageError("torus dispersion needs both --a and --b")
        try:
            w = TorusWrapping(args.a, args.b)
            lattice = build_honeycomb_torus(w)
        except WrappingError as exc:
            raise UsageError(str(exc)) from None
        p = allowed_momenta(w).cartesian
        real = full_spectrum(assemble_hamiltonian(lattice, J)).eigenvalues
        bloch = bloch_spectrum(w, J).eigenvalues
        dev = float(np.max(np.abs(real - bloch))) / J
        summary = f"torus {w}: {len(p)} momenta, max deviation from real-space spectrum {dev:.3e} J"
    plus, minus = dispersion_energy(p, 1.0)
    for (px, py), ep, em in zip(p, plus, minus):
        lines.append(f"{px:.17g},{py:.17g},{ep:.17g},{em:.17g}")
    text = "\n".join(lines) + "\n"
    if args.output:
        atomic_write(args.output, text)
        print(f"wrote {len(lines) - 1} rows to {args.output}")
        if summary:
            print(summary)
    else:
        sys.stdout.write(text)
        if summary:
            print(summary, file=sys.stderr)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zeromodes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a lattice and write it to a file")
    p.add_argument("kind", choices=["goldberg", "torus", "octahedral"])
    _add_builder_params(p)
    p.add_argument("-o", "--output", help="lattice file to write")
    p.set_defaults(func=cmd_build)

    def add_source(q):
        q.add_argument("--file", help="lattice file")
        q.add_argument("--builder", choices=["goldberg", "torus", "octahedral"])
        q.add_argument("--fixture", help=f"shipped fixture ({', '.join(fixture_names())})")
        _add_builder_params(q)

    p = sub.add_parser("census", help="topology and defect census of a lattice")
    add_source(p)
    p.add_argument("--json", action="store_true", help="print JSON instead of text")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="compare measured zero modes with the predicted index")
    add_source(p)
    p.add_argument("--all-fixtures", action="store_true", help="verify every shipped fixture")
    p.add_argument("--J", type=float, default=1.0, help="hopping energy (default 1)")
    p.add_argument("--tau", type=float, default=DEFAULT_ZERO_TOL, help="zero tolerance in units of J")
    p.add_argument("--out-dir", default=".", help="directory for reports (default .)")
    p.add_argument("-o", "--output", help="report path (default <out-dir>/<name>.report.json)")
    p.add_argument("--format", type=lambda s: s.split(","), default=["json"],
                   help="comma-separated: json, csv (spectrum and cluster tables)")
    p.add_argument("--jobs", type=int, default=4, help="workers for --all-fixtures")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dispersion", help="band energies on allowed torus momenta or a grid")
    p.add_argument("--a", type=_pair)
    p.add_argument("--b", type=_pair)
    p.add_argument("--grid", type=int, help="N x N grid over the Brillouin zone")
    p.add_argument("--J", type=float, default=1.0)
    p.add_argument("-o", "--output", help="CSV file (default stdout)")
    p.set_defaults(func=cmd_dispersion)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidLatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (LatticeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

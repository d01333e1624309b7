"""Command-line front end: ``qmw <subcommand> ...``.

Exit codes: 0 success, 1 domain failure (not a quandle, not medial,
non-isomorphic inputs, cap exceeded), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import enumeration
from .classify import SizeCapError as CongruenceCapError
from .classify import classify
from .mesh import (AffineMesh, MeshShapeError, canonical_mesh, from_json, homologous,
                   is_indecomposable, is_valid, sum_quandle, to_dict, to_json, validate_mesh)
from .quandle import (NotMedialError, Quandle, QuandleParseError, brute_force_iso, is_medial,
                      reductivity_degree, validate)


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def load_quandle(path: str) -> Quandle:
    try:
        return Quandle.from_text(_read(path))
    except QuandleParseError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def load_mesh(path: str) -> AffineMesh:
    try:
        return from_json(_read(path))
    except MeshShapeError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def load_any(path: str):
    """A mesh when the file is JSON, otherwise a quandle table."""
    text = _read(path).lstrip()
    return load_mesh(path) if text.startswith("{") else load_quandle(path)


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------------------------------------------------------------- subcommands

def cmd_verify(args) -> int:
    Q = load_quandle(args.path)
    rep = validate(Q)
    if not rep.is_quandle:
        print("quandle: no")
        for line in rep.failures():
            print(f"  {line}")
        return 1
    medial = is_medial(Q)
    parts = ["quandle: yes", f"medial: {_yes(medial)}"]
    if medial:
        red = reductivity_degree(Q)
        parts.append(f"2-reductive: {_yes(red is not None and red <= 2)}")
    print(", ".join(parts))
    return 0


def _require_medial(Q: Quandle) -> None:
    rep = validate(Q)
    if not rep.is_quandle:
        raise DomainError("not a quandle: " + "; ".join(rep.failures()))
    if not is_medial(Q):
        raise DomainError("not a medial quandle")


def cmd_decompose(args) -> int:
    Q = load_quandle(args.path)
    _require_medial(Q)
    M = canonical_mesh(Q)[0]
    _write(json.dumps(to_dict(M)) + "\n", args.output)
    return 0


def cmd_sum(args) -> int:
    M = load_mesh(args.path)
    rep = validate_mesh(M)
    if not rep.valid:
        raise DomainError(f"not an affine mesh: {rep}")
    _write(sum_quandle(M).to_text(), args.output)
    return 0


def _as_indecomposable_mesh(x) -> Optional[AffineMesh]:
    """A mesh usable for the homology test, or None when x is not medial."""
    if isinstance(x, AffineMesh):
        if not is_valid(x):
            raise DomainError(f"not an affine mesh: {validate_mesh(x)}")
        return x if is_indecomposable(x) else canonical_mesh(sum_quandle(x))[0]
    if validate(x).is_quandle and is_medial(x):
        return canonical_mesh(x)[0]
    return None


def cmd_iso(args) -> int:
    a, b = load_any(args.path1), load_any(args.path2)
    Ma, Mb = _as_indecomposable_mesh(a), _as_indecomposable_mesh(b)
    if Ma is not None and Mb is not None:
        w = homologous(Ma, Mb)
        print("decided by: mesh homology")
        if w is None:
            print("non-isomorphic")
            return 1
        print("isomorphic")
        print(f"pi: {list(w.pi)}")
        for i, h in enumerate(w.psi):
            print(f"psi[{i}]: {[list(y) for y in h.images]}")
        print(f"d: {[list(x) for x in w.d]}")
        return 0
    Qa = a if isinstance(a, Quandle) else sum_quandle(a)
    Qb = b if isinstance(b, Quandle) else sum_quandle(b)
    f = brute_force_iso(Qa, Qb)
    print("decided by: brute force")
    if f is None:
        print("non-isomorphic")
        return 1
    print("isomorphic")
    print(f"map: {f}")
    return 0


def cmd_classify(args) -> int:
    Q = load_quandle(args.path)
    _require_medial(Q)
    _write(classify(Q, congruence_cap=args.congruence_cap).to_json() + "\n", args.output)
    return 0


def _write_meshes(out_dir: Path, n: int, meshes, tag: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for i, M in enumerate(meshes):
        (out_dir / f"{tag}_n{n:02d}_{i:04d}.json").write_text(to_json(M) + "\n")


def cmd_enumerate(args) -> int:
    search_max = args.search_max if args.search_max is not None else args.n_max
    print(",".join(enumeration.COLUMNS))
    for n in range(1, args.n_max + 1):
        row, reps = enumeration.count_row(n, search=n <= search_max, workers=args.workers)
        print(row.csv(), flush=True)
        if args.output_dir and n <= search_max:
            if args.involutory:
                reps = enumeration.enumerate_non2reductive(n, involutory=True, workers=args.workers)
            _write_meshes(Path(args.output_dir), n, reps, "inv" if args.involutory else "non2red")
    return 0


def cmd_tables(args) -> int:
    from .report import plot_counts

    table = enumeration.assemble_tables(args.n_max, search_max=args.search_max, workers=args.workers)
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "counts.csv"
    csv_path.write_text(table.csv())
    fig_path = plot_counts(table, out / "counts.png")
    sys.stdout.write(table.csv())
    print(f"wrote {csv_path} and {fig_path}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qmw", description="Medial quandles via affine meshes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check quandle axioms, mediality and 2-reductivity")
    s.add_argument("path")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("decompose", help="canonical mesh of a medial quandle (JSON)")
    s.add_argument("path")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("sum", help="multiplication table of the sum of a mesh")
    s.add_argument("path")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sum)

    s = sub.add_parser("iso", help="decide isomorphism of two quandles or meshes")
    s.add_argument("path1")
    s.add_argument("path2")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("classify", help="structural report (JSON)")
    s.add_argument("path")
    s.add_argument("-o", "--output")
    s.add_argument("--congruence-cap", type=int, default=12)
    s.set_defaults(func=cmd_classify)

    for name, func, text in (("enumerate", cmd_enumerate, "count rows as CSV, optionally writing mesh files"),
                             ("tables", cmd_tables, "count table as CSV plus a PNG figure")):
        s = sub.add_parser(name, help=text)
        s.add_argument("n_max", type=int)
        s.add_argument("--workers", type=int, default=None,
                       help="worker processes (default: $QMW_WORKERS or 1)")
        s.add_argument("--search-max", type=int, default=None,
                       help="largest n for the explicit search; larger rows get 2-reductive and latin columns only")
        if name == "enumerate":
            s.add_argument("--involutory", action="store_true",
                           help="write the involutory representatives instead of all of them")
            s.add_argument("--output-dir")
        else:
            s.add_argument("--output-dir", default=".")
        s.set_defaults(func=func)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "n_max", 1) is not None and getattr(args, "n_max", 1) < 1:
        print("error: n_max must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, NotMedialError, enumeration.SizeCapError, CongruenceCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

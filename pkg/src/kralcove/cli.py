"""
Command-line front end.

    kralcove enum perm|adm --group gl --n 3 --mu 1,0,0 [--I iwahori|0,2] [--format json|dot|text]
    kralcove check eq|surj|intersect --group gsp --g 2 --mu 1,1,0,0 --I 0,2 [--J 0]
    kralcove verify-witness FILE | --bundled NAME

Exit codes: 0 the check passed, 1 a counterexample was found (JSON report on
stdout), 2 invalid invocation or unreadable input.

Computed face sets are cached as JSON under $KRALCOVE_CACHE_DIR when it is
set; entries are keyed by a hash of the job and the tool version.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .faces import (Face, FaceType, element_from_alcove, face_from_json,
                    face_to_json, sort_faces)
from .order import GL, GSP, bruhat_leq, is_dominant
from .permadm import (adm_set, check_sp_triple, compare_sets, fill_to_alcove,
                      perm_set, perm_surjectivity_check, sp_perm_intersection)
from .weyl import AffineElement, length, right_mult

CACHE_ENV = "KRALCOVE_CACHE_DIR"
DOT_LIMIT = 500
BUNDLED = {
    "m62": "m62.json",
    "gsp-g2-e2": "gsp_g2_e2.json",
}

EXIT_OK, EXIT_FOUND, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- job description ----------------------------------------------------------

def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(a) for a in text.replace(" ", "").split(",") if a != "")
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def _face_type(text: str, n: int) -> FaceType:
    if text.lower() == "iwahori":
        return FaceType.iwahori(n)
    idx = _int_list(text)
    if not idx:
        raise UsageError("index set must be nonempty")
    return FaceType(n, idx)


def job_from_args(args) -> dict:
    group = GL if args.group == "gl" else GSP
    if group == GL:
        if args.n is None:
            raise UsageError("--n is required for --group gl")
        n = args.n
    else:
        if args.g is None:
            raise UsageError("--g is required for --group gsp")
        n = 2 * args.g
    if n < 1:
        raise UsageError("rank must be positive")
    mu = _int_list(args.mu)
    if len(mu) != n:
        raise UsageError(f"mu has {len(mu)} entries, expected {n}")
    if not is_dominant(mu):
        raise UsageError(f"mu={mu} is not dominant")
    ftype = _face_type(args.I, n)
    if group == GSP:
        d = mu[0]
        if mu != (d,) * (n // 2) + (0,) * (n // 2):
            raise UsageError("gsp needs mu = (d^g, 0^g)")
        if not ftype.symmetric:
            raise UsageError(f"gsp needs a symmetric index set, got {ftype.indices}")
    job = {"group": group, "n": n, "mu": list(mu), "I": list(ftype.indices)}
    if getattr(args, "J", None) is not None:
        jtype = _face_type(args.J, n)
        if not jtype.issubset(ftype):
            raise UsageError(f"J={jtype.indices} is not a subset of I={ftype.indices}")
        if group == GSP and not jtype.symmetric:
            raise UsageError(f"gsp needs a symmetric J, got {jtype.indices}")
        job["J"] = list(jtype.indices)
    return job


def _ftype(job: dict, key: str = "I") -> FaceType:
    return FaceType(job["n"], tuple(job[key]))


# -- cache --------------------------------------------------------------------

def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cache_key(job: dict, kind: str) -> str:
    payload = {"group": job["group"], "n": job["n"], "mu": job["mu"], "I": job["I"],
               "kind": kind, "version": __version__}
    return hashlib.sha256(_canonical(payload).encode()).hexdigest()


def _cache_dir() -> Optional[Path]:
    d = os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def _cache_read(key: str) -> Optional[list[Face]]:
    d = _cache_dir()
    path = d / f"{key}.json" if d else None
    if path is None or not path.exists():
        return None
    try:
        obj = json.loads(path.read_text())
        if obj.get("version") != __version__ or obj.get("key") != key:
            return None
        return [face_from_json(f) for f in obj["faces"]]
    except (ValueError, KeyError, TypeError):
        # unreadable entry: recompute and overwrite
        return None


def _cache_write(key: str, faces: Sequence[Face]) -> None:
    d = _cache_dir()
    if d is None:
        return
    d.mkdir(parents=True, exist_ok=True)
    body = _canonical({"key": key, "version": __version__,
                       "faces": [face_to_json(f) for f in faces]})
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(body)
        os.replace(tmp, d / f"{key}.json")
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def compute_set(job: dict, kind: str) -> list[Face]:
    """``kind`` is perm, adm or intersect; read through the cache when enabled."""
    key = cache_key(job, kind)
    hit = _cache_read(key)
    if hit is not None:
        return hit
    mu, ftype, group = tuple(job["mu"]), _ftype(job), job["group"]
    if kind == "perm":
        faces = perm_set(mu, ftype, group)
    elif kind == "adm":
        faces = adm_set(mu, ftype, group)
    elif kind == "intersect":
        faces = sp_perm_intersection(mu, ftype)
    else:
        raise ValueError(kind)
    faces = sort_faces(faces)
    _cache_write(key, faces)
    return faces


# -- output -------------------------------------------------------------------

def _coset_rep(x: AffineElement, ftype: FaceType) -> AffineElement:
    """Minimal representative of ``x W_I`` by stripping right descents outside I."""
    outside = [j for j in range(ftype.n) if j not in ftype.indices]
    changed = True
    while changed:
        changed = False
        for j in outside:
            y = right_mult(x, j)
            if length(y) < length(x):
                x, changed = y, True
    return x


def hasse_edges(elements: Sequence[AffineElement]) -> list[tuple[int, int]]:
    """Cover relations ``(i, j)`` meaning ``elements[i] < elements[j]`` with nothing between."""
    order = sorted(range(len(elements)), key=lambda i: (length(elements[i]), i))
    below: dict[int, int] = {}
    edges = []
    for pos, j in enumerate(order):
        mask = 0
        for i in order[:pos]:
            if length(elements[i]) < length(elements[j]) and bruhat_leq(elements[i], elements[j]):
                mask |= 1 << i
        below[j] = mask
        covered = mask
        for i in range(len(elements)):
            if mask >> i & 1:
                covered &= ~below[i]
        edges += [(i, j) for i in range(len(elements)) if covered >> i & 1]
    return sorted(edges)


def _label(f: Face) -> str:
    return " | ".join(f"{i}:" + ",".join(map(str, v)) for i, v in zip(f.indices, f.vectors))


def to_dot(faces: Sequence[Face], job: dict, kind: str) -> str:
    if len(faces) > DOT_LIMIT:
        raise UsageError(f"{len(faces)} faces exceed the DOT limit of {DOT_LIMIT}; use --format json")
    mu, group = tuple(job["mu"]), job["group"]
    reps = []
    for f in faces:
        alcove = f if f.type.is_iwahori else fill_to_alcove(f, mu, group)
        reps.append(_coset_rep(element_from_alcove(alcove), f.type))
    name = f"{kind}_{job['group']}_{'_'.join(map(str, job['mu']))}"
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for k, (f, x) in enumerate(zip(faces, reps)):
        lines.append(f'  n{k} [label="{_label(f)}\\nlength {length(x)}"];')
    for i, j in hasse_edges(reps):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_set(faces: Sequence[Face], job: dict, kind: str, fmt: str) -> str:
    if fmt == "dot":
        return to_dot(faces, job, kind)
    if fmt == "text":
        return "".join(_label(f) + "\n" for f in faces)
    out = {**job, "kind": kind, "count": len(faces), "faces": [face_to_json(f) for f in faces]}
    return json.dumps(out, indent=2) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------

def cmd_enum(args) -> int:
    job = job_from_args(args)
    faces = compute_set(job, args.kind)
    _emit(render_set(faces, job, args.kind, args.format), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    job = job_from_args(args)
    mu, ftype, group = tuple(job["mu"]), _ftype(job), job["group"]
    if args.kind == "eq":
        report = compare_sets(group, mu, ftype, compute_set(job, "perm"), compute_set(job, "adm"))
        ok, body = report.equal, report.to_json()
    elif args.kind == "surj":
        if "J" not in job:
            raise UsageError("check surj needs --J")
        report = perm_surjectivity_check(mu, ftype, _ftype(job, "J"), group)
        ok, body = report.surjective, report.to_json()
    else:
        if group != GSP:
            raise UsageError("check intersect applies to --group gsp")
        report = check_sp_triple(mu, ftype)
        ok, body = report.equal, report.to_json()
    _emit(json.dumps(body, indent=2) + "\n", args.output)
    return EXIT_OK if ok else EXIT_FOUND


def _bundled_text(name: str) -> str:
    try:
        fname = BUNDLED[name]
    except KeyError:
        raise UsageError(f"unknown bundled witness {name!r}; choose from {sorted(BUNDLED)}") from None
    return resources.files("kralcove").joinpath("data", fname).read_text()


def cmd_verify_witness(args) -> int:
    from .witness import verify_witness, witness_from_json

    if (args.file is None) == (args.bundled is None):
        raise UsageError("give exactly one of FILE or --bundled")
    try:
        text = _bundled_text(args.bundled) if args.bundled else Path(args.file).read_text()
        w = witness_from_json(json.loads(text))
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read witness: {exc}") from None
    report = verify_witness(w)
    _emit(json.dumps(report.to_json(), indent=2) + "\n", args.output)
    return EXIT_OK if report.passed else EXIT_FOUND


def _job_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", choices=["gl", "gsp"], default="gl")
    p.add_argument("--n", type=int, help="rank for gl")
    p.add_argument("--g", type=int, help="genus for gsp (rank 2g)")
    p.add_argument("--mu", required=True, help="dominant coweight, e.g. 1,1,0,0")
    p.add_argument("--I", default="iwahori", help="'iwahori' or indices mod n, e.g. 0,2")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kralcove", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enum", help="list a permissible or admissible set")
    p.add_argument("kind", choices=["perm", "adm"])
    _job_args(p)
    p.add_argument("--format", choices=["json", "dot", "text"], default="json")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("check", help="check Perm = Adm, surjectivity, or the symplectic triple")
    p.add_argument("kind", choices=["eq", "surj", "intersect"])
    _job_args(p)
    p.add_argument("--J", help="target index set for surj")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify-witness", help="verify a lifting witness exactly")
    p.add_argument("file", nargs="?")
    p.add_argument("--bundled", help=f"one of: {', '.join(sorted(BUNDLED))}")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_verify_witness)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"kralcove: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

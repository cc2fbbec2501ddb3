"""Command line front end.

Exit codes: 0 success, 1 no certificate (``metric``) or unconfirmed
counterexample, 2 invalid input.  Reports are deterministic: the same input
and seed give byte-identical JSON.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import report as rp
from .arrangement import arrangement_from_json, arrangement_to_json, load_arrangement
from .catalog import build as build_catalog
from .catalog import generic_random
from .cyclofield import CycloElement
from .errors import RamcertError, UnknownName, ValidationError
from .hopf import DEFAULT_TOL, ComplexLine2

EXIT_OK = 0
EXIT_NO_CERTIFICATE = 1
EXIT_INVALID = 2


@dataclass
class RunConfig:
    command: str
    source_kind: Optional[str] = None  # catalog | file | dir | lines
    source: object = None
    fmt: str = "json"
    tol: float = DEFAULT_TOL
    jobs: int = 1
    seed: Optional[int] = None
    extra: dict = field(default_factory=dict)


class InputError(RamcertError, ValueError):
    pass


# --- input ------------------------------------------------------------------

def _catalog_arrangement(name: str, seed: Optional[int]):
    if seed is not None and name.lower().startswith("generic") and "_seed" not in name.lower():
        try:
            return generic_random(int(name[len("generic"):]), seed)
        except ValueError:
            raise UnknownName(name) from None
    return build_catalog(name)


def _read_json(path) -> object:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: malformed JSON ({exc})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _complex(x) -> complex:
    if isinstance(x, dict):
        return complex(float(x.get("re", 0)), float(x.get("im", 0)))
    if isinstance(x, list) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if isinstance(x, str):
        return complex(x.replace(" ", ""))
    raise ValidationError(f"cannot read a complex number from {x!r}")


def hopf_lines_from_json(data) -> list:
    """Lines in C^2 as ``{"lines": [[a, b], ...]}``.

    Entries are numbers, ``{"re": .., "im": ..}``, ``[re, im]`` or complex
    literals; with ``"cyclotomic_order"`` they are exact coefficient lists.
    """
    if not isinstance(data, dict) or not isinstance(data.get("lines"), list):
        raise ValidationError("expected an object with a 'lines' list")
    order = data.get("cyclotomic_order")
    out = []
    for i, ln in enumerate(data["lines"]):
        if not isinstance(ln, list) or len(ln) != 2:
            raise ValidationError(f"line {i} must have two entries")
        try:
            if order is None:
                out.append(ComplexLine2(_complex(ln[0]), _complex(ln[1])))
            else:
                a, b = (CycloElement.from_strings(order, c) for c in ln)
                out.append(ComplexLine2.from_exact(a, b))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, RamcertError):
                raise
            raise ValidationError(f"line {i}: {exc}") from None
    return out


def parse_line_option(text: str) -> ComplexLine2:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValidationError(f"--line expects 'a,b', got {text!r}")
    try:
        return ComplexLine2(*(complex(p.strip().replace(" ", "")) for p in parts))
    except ValueError:
        raise ValidationError(f"--line: cannot parse {text!r}") from None


def _is_hopf_file(data) -> bool:
    lines = data.get("lines") if isinstance(data, dict) else None
    return isinstance(lines, list) and bool(lines) and all(isinstance(x, list) and len(x) == 2 for x in lines)


# --- commands ---------------------------------------------------------------

def _arrangement(cfg: RunConfig):
    if cfg.source_kind == "catalog":
        return _catalog_arrangement(cfg.source, cfg.seed), str(cfg.source)
    if cfg.source_kind == "file":
        return load_arrangement(cfg.source), str(cfg.source)
    raise InputError(f"{cfg.command} needs --catalog or --file")


def cmd_analyze(cfg: RunConfig) -> tuple:
    arr, src = _arrangement(cfg)
    return EXIT_OK, rp.analyze_report(arr, src)


def cmd_metric(cfg: RunConfig) -> tuple:
    arr, src = _arrangement(cfg)
    out = rp.metric_report(arr, src)
    return (EXIT_OK if out["verdict"] != "NoCertificate" else EXIT_NO_CERTIFICATE), out


def cmd_hopf(cfg: RunConfig) -> tuple:
    if cfg.source_kind == "lines":
        lines = [parse_line_option(t) for t in cfg.source]
        return EXIT_OK, rp.hopf_report(lines, "--line", cfg.tol)
    if cfg.source_kind == "file":
        data = _read_json(cfg.source)
        if _is_hopf_file(data):
            return EXIT_OK, rp.hopf_report(hopf_lines_from_json(data), str(cfg.source), cfg.tol)
        arr = arrangement_from_json(data)
        return EXIT_OK, rp.hopf_local_report(arr, str(cfg.source), cfg.tol)
    if cfg.source_kind == "catalog":
        arr = _catalog_arrangement(cfg.source, cfg.seed)
        return EXIT_OK, rp.hopf_local_report(arr, str(cfg.source), cfg.tol)
    raise InputError("hopf needs --line, --file or --catalog")


def cmd_counterexample(cfg: RunConfig) -> tuple:
    out = rp.counterexample_report(cfg.extra["n"], cfg.extra["eps"], cfg.tol)
    return (EXIT_OK if out["confirmed"] else EXIT_NO_CERTIFICATE), out


def cmd_catalog(cfg: RunConfig) -> tuple:
    action = cfg.extra["action"]
    if action == "list":
        return EXIT_OK, rp.catalog_list_report()
    name = cfg.extra.get("name")
    if not name:
        raise InputError("catalog export needs a name")
    arr = _catalog_arrangement(name, cfg.seed)
    data = arrangement_to_json(arr)
    if data["name"] is None:
        data["name"] = name
    return EXIT_OK, data


COMMANDS = {
    "analyze": cmd_analyze,
    "metric": cmd_metric,
    "hopf": cmd_hopf,
    "counterexample": cmd_counterexample,
    "catalog": cmd_catalog,
}


def _error_report(exc: BaseException) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def run(cfg: RunConfig) -> tuple:
    """Execute one command; returns (exit code, report dict)."""
    try:
        return COMMANDS[cfg.command](cfg)
    except (RamcertError, ValueError, KeyError, OSError) as exc:
        return EXIT_INVALID, _error_report(exc)


def _run_file(args: tuple) -> tuple:
    cfg, path = args
    single = RunConfig(cfg.command, "file", str(path), cfg.fmt, cfg.tol, 1, cfg.seed, cfg.extra)
    return run(single)


def run_batch(cfg: RunConfig) -> tuple:
    root = Path(cfg.source)
    if not root.is_dir():
        return EXIT_INVALID, _error_report(InputError(f"{root}: not a directory"))
    files = sorted(p for p in root.iterdir() if p.suffix == ".json")
    tasks = [(cfg, p) for p in files]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            outcomes = list(pool.map(_run_file, tasks))  # map keeps input order
    else:
        outcomes = [_run_file(t) for t in tasks]
    results = []
    for path, (code, payload) in zip(files, outcomes):
        entry = {"file": path.name, "exit_code": code}
        if "error" in payload:
            entry["error"] = payload["error"]
        else:
            entry["report"] = payload
        results.append(entry)
    code = max((r["exit_code"] for r in results), default=EXIT_OK)
    return code, {"command": cfg.command, "dir": str(root), "results": results}


# --- rendering --------------------------------------------------------------

def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)


def _text_lines(value, indent: int = 0) -> list:
    pad = "  " * indent
    out = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                out.append(f"{pad}{k}:")
                out.extend(_text_lines(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                out.append(f"{pad}-")
                out.extend(_text_lines(v, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(v)}")
    else:
        out.append(f"{pad}{_scalar(value)}")
    return out


def _flat(v) -> bool:
    if isinstance(v, dict):
        return all(not isinstance(x, (dict, list)) for x in v.values()) and len(v) <= 4
    return all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_scalar(x)}" for k, x in v.items()) or "{}"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def render_text(report: dict) -> str:
    if "error" in report:
        return f"error ({report['error']['type']}): {report['error']['message']}"
    return "\n".join(_text_lines(report))


# --- argument parsing -------------------------------------------------------

def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def _positive_int(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if x < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return x


def _common(p: argparse.ArgumentParser, sources: bool = True, lines: bool = False) -> None:
    if sources:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--catalog", metavar="NAME", help="named arrangement (see 'catalog list')")
        g.add_argument("--file", metavar="PATH", help="JSON input file")
        g.add_argument("--dir", metavar="PATH", help="process every *.json file in a directory")
        if lines:
            g.add_argument("--line", action="append", metavar="A,B",
                           help="complex line through 0 in C^2, e.g. '1,0' or '1,0.5+1j'; repeat")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--seed", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramcert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("analyze", help="incidence summary and Hirzebruch check"))
    _common(sub.add_parser("metric", help="weight LP, certificate and asphericity verdict"))
    _common(sub.add_parser("hopf", help="CAT(1) test for Hopf circles"), lines=True)
    ce = sub.add_parser("counterexample", help="doubled-triangle counterexample check")
    ce.add_argument("--n", type=int, required=True)
    ce.add_argument("--eps", required=True, help="rational or decimal, e.g. 0.01 or 1/100")
    _common(ce, sources=False)
    cat = sub.add_parser("catalog", help="list or export catalog arrangements")
    cat.add_argument("action", choices=("list", "export"))
    cat.add_argument("name", nargs="?")
    _common(cat, sources=False)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.command, fmt=ns.format, tol=ns.tol, jobs=ns.jobs, seed=ns.seed)
    for kind in ("catalog", "file", "dir", "line"):
        value = getattr(ns, kind, None)
        if value is not None:
            cfg.source_kind = "lines" if kind == "line" else kind
            cfg.source = value
    if ns.command == "counterexample":
        cfg.extra = {"n": ns.n, "eps": ns.eps}
    elif ns.command == "catalog":
        cfg.extra = {"action": ns.action, "name": ns.name}
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = config_from_args(ns)
    if cfg.source_kind == "dir":
        code, out = run_batch(cfg)
    else:
        code, out = run(cfg)
    text = render_json(out) if cfg.fmt == "json" else render_text(out)
    print(text)
    if "error" in out:
        print(f"error: {out['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line front end: ``simplecurrents <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 internal
invariant violation.  Every rational in JSON output is a ``"p/q"`` string.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .currents import LabelError, ModuleLabel, lattice_character, simple_current_list
from .exact import frac, frac_str
from .extend import ExtensionError, ExtensionSpec, InvariantViolation, classify, grading_data
from .fock import FockError, FockSpace, FockVector, delta_apply, heis_vector, lattice_vector, vacuum, virasoro
from .identities import deformed_character
from .lattice import LatticeError, RationalLattice, Sublattice, quotient
from .rootsys import RootSystemError, minimal_weights
from .verify import LATTICE_MODELS, SUITES, SuiteError, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3

INPUT_ERRORS = (
    json.JSONDecodeError,
    ExtensionError,
    LabelError,
    SuiteError,
    RootSystemError,
    LatticeError,
    FockError,
    ValueError,
    KeyError,
    TypeError,
    OSError,
)


@dataclass
class RunConfig:
    command: str
    cutoff: int | None
    output: str | None
    seed: int
    fmt: str


class InputError(ValueError):
    pass


def _load_json(text: str):
    """Inline JSON, ``-`` for stdin, or a path to a JSON file."""
    if text == "-":
        return json.loads(sys.stdin.read())
    stripped = text.strip()
    if stripped[:1] in "{[":
        return json.loads(stripped)
    return json.loads(Path(text).read_text())


def _rational_list(text: str) -> list[Fraction]:
    return [frac(x) for x in text.replace(",", " ").split()]


# ---------------------------------------------------------------------------
# commands (each returns (payload, text, exit code))


def cmd_classify(args, cfg: RunConfig):
    spec = ExtensionSpec.from_json(_load_json(args.spec))
    verdict = classify(spec)
    payload = verdict.to_json()
    payload["spec"] = spec.to_json()
    if args.tables:
        payload["tables"] = grading_data(spec).to_json()
    lines = [
        f"kind: {verdict.kind}",
        f"grading group: {' x '.join(f'Z{k}' for k in verdict.grading_group.invariant_factors) or 'trivial'}",
        "summands:",
    ]
    lines += [f"  {s.label}  lowest weight {frac_str(s.lowest_weight)}" for s in verdict.summands]
    lines.append(f"rational: {verdict.rational}")
    if verdict.holomorphic_pairs:
        lines.append("holomorphic pairs: " + "; ".join(f"{a} + {b}" for a, b in verdict.holomorphic_pairs))
    lines += [f"note: {n}" for n in verdict.notes]
    return payload, "\n".join(lines), EXIT_OK


def cmd_verify(args, cfg: RunConfig):
    report = run_suite(args.suite, args.model, cfg.cutoff, args.inject_error, cfg.seed)
    payload = report.to_json()
    payload["seed"] = cfg.seed
    return payload, report.to_text(), EXIT_OK if report.passed else EXIT_FAIL


def cmd_minimal(args, cfg: RunConfig):
    nodes = minimal_weights(args.type)
    return nodes, " ".join(str(i) for i in nodes) or "(none)", EXIT_OK


def cmd_currents(args, cfg: RunConfig):
    lst = simple_current_list(args.type, args.level)
    lines = [str(lab) for lab in lst] + [f"warning: {w}" for w in lst.warnings]
    return lst.to_json(), "\n".join(lines), EXIT_OK


def _parse_vector(space: FockSpace, text: str) -> FockVector:
    """``vacuum``, ``omega``, ``heis:i[:n]`` (1-based direction, mode -n) or ``lattice:c1,c2,...``."""
    kind, _, rest = text.partition(":")
    if kind == "vacuum":
        return vacuum(space)
    if kind == "omega":
        return virasoro(space)
    if kind == "heis":
        parts = rest.split(":")
        i = int(parts[0]) - 1
        n = int(parts[1]) if len(parts) > 1 else 1
        if not 0 <= i < space.rank:
            raise InputError(f"direction {i + 1} out of range")
        return heis_vector(space, tuple(int(j == i) for j in range(space.rank)), n)
    if kind == "lattice":
        return lattice_vector(space, _rational_list(rest))
    raise InputError(f"cannot parse vector {text!r}")


def _space(model: str) -> FockSpace:
    if model not in LATTICE_MODELS:
        raise InputError(f"unknown model {model!r}; choose from {sorted(LATTICE_MODELS)}")
    return FockSpace(LATTICE_MODELS[model][0], model)


def cmd_delta_apply(args, cfg: RunConfig):
    space = _space(args.model)
    alpha = _rational_list(args.alpha) if args.alpha else list(LATTICE_MODELS[args.model][1])
    vec = _parse_vector(space, args.vector)
    series = delta_apply(space, alpha, vec)
    return series.to_json(), series.dumps(), EXIT_OK


def cmd_character(args, cfg: RunConfig):
    space = _space(args.model)
    beta = _rational_list(args.beta) if args.beta else list(LATTICE_MODELS[args.model][1])
    cutoff = 6 if cfg.cutoff is None else cfg.cutoff
    lat = RationalLattice(tuple(tuple(frac(x) for x in r) for r in space.gram))
    deformed = deformed_character(space, beta, cutoff)
    coset = lattice_character(ModuleLabel.lattice(lat.full(), beta), cutoff)
    enc = lambda ch: {frac_str(k): v for k, v in ch.items()}  # noqa: E731
    payload = {"deformed": enc(deformed), "coset": enc(coset), "equal": deformed == coset, "cutoff": cutoff}
    text = "\n".join(f"q^{frac_str(k)}: {v}" for k, v in deformed.items()) + f"\nequal to coset count: {deformed == coset}"
    return payload, text, EXIT_OK if deformed == coset else EXIT_FAIL


def cmd_quotient(args, cfg: RunConfig):
    gram = _load_json(args.gram)
    lat = RationalLattice(tuple(tuple(frac(x) for x in r) for r in gram))
    sub = Sublattice(lat, tuple(tuple(frac(x) for x in r) for r in _load_json(args.sub)))
    amb = lat.full() if args.ambient is None else Sublattice(lat, tuple(tuple(frac(x) for x in r) for r in _load_json(args.ambient)))
    group = quotient(amb, sub)
    payload = {
        "invariant_factors": list(group.invariant_factors),
        "order": group.order,
        "representatives": [[frac_str(x) for x in r] for r in group.reps],
    }
    text = f"order {group.order}, invariant factors {list(group.invariant_factors)}"
    return payload, text, EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cutoff", type=int, default=None, help="truncation order N (default depends on the command)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
    common.add_argument("--output", default=None, help="write output to this path instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json", dest="fmt")

    parser = argparse.ArgumentParser(prog="simplecurrents", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a simple-current extension")
    p.add_argument("spec", help="extension spec: inline JSON, a path, or - for stdin")
    p.add_argument("--tables", action="store_true", help="attach grading form, commutator and cocycle tables")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--model", default=None, help="desk model (A1, A2; Z2, Z2xZ2, D4 for cocycle)")
    p.add_argument("--inject-error", action="store_true", help="run against a deliberately wrong ingredient")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("minimal", parents=[common], help="minimal nodes of a simple Lie type")
    p.add_argument("type")
    p.set_defaults(func=cmd_minimal)

    p = sub.add_parser("currents", parents=[common], help="simple currents of L(level, 0)")
    p.add_argument("type")
    p.add_argument("level", type=int)
    p.set_defaults(func=cmd_currents)

    p = sub.add_parser("delta-apply", parents=[common], help="apply Delta(alpha, z) to a Fock vector")
    p.add_argument("--model", default="A1", choices=sorted(LATTICE_MODELS))
    p.add_argument("--alpha", default=None, help="direction, e.g. '1/2' or '2/3,1/3'")
    p.add_argument("--vector", default="omega", help="vacuum | omega | heis:i[:n] | lattice:c1,c2")
    p.set_defaults(func=cmd_delta_apply)

    p = sub.add_parser("character", parents=[common], help="character of a deformed lattice algebra")
    p.add_argument("--model", default="A1", choices=sorted(LATTICE_MODELS))
    p.add_argument("--beta", default=None)
    p.set_defaults(func=cmd_character)

    p = sub.add_parser("quotient", parents=[common], help="finite quotient of lattices")
    p.add_argument("--gram", required=True, help="Gram matrix (JSON)")
    p.add_argument("--sub", required=True, help="sublattice rows (JSON)")
    p.add_argument("--ambient", default=None, help="ambient rows (JSON), default the whole lattice")
    p.set_defaults(func=cmd_quotient)
    return parser


def _emit(cfg: RunConfig, payload, text: str) -> None:
    out = json.dumps(payload, indent=2, sort_keys=True) if cfg.fmt == "json" else text
    if cfg.output:
        Path(cfg.output).write_text(out + "\n")
    else:
        print(out)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(args.command, args.cutoff, args.output, args.seed, args.fmt)
    if cfg.cutoff is not None and cfg.cutoff < 0:
        print("error: --cutoff must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        payload, text, code = args.func(args, cfg)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(cfg, payload, text)
    return code


if __name__ == "__main__":
    sys.exit(main())

# cli.py
"""
Командная строка kappa-cayley.

Примеры:
  python cli.py kappa --group 4 --set "{1,3}"
  python cli.py kappa --group 5 --set "{1,4}" --check
  python cli.py families --group 8 --set "{1}"
  python cli.py fragments --group 4 --set "{1,3}"
  python cli.py verify --max-order 8 --jobs 4

Коды выхода: 0 — чисто, 1 — контрпример/расхождение, 2 — ошибка ввода, 3 — превышен лимит.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from abelian_group import GroupSpec
from cayley_graph import build_graph, dump_dot, enumerate_fragments, fragment_is_genuine, kappa_oracle
from config import config
from connectivity import (
    FamilyEntry,
    KappaReport,
    h_family,
    kappa_formula,
    l_family,
    lstar_family,
    report_to_dict,
)
from errors import (
    EXIT_COUNTEREXAMPLE,
    EXIT_OK,
    EXIT_RESOURCE_LIMIT,
    EXIT_USAGE,
    KappaError,
    NoFragmentsError,
    ResourceLimitError,
    TheoremViolationError,
    UsageError,
)
from text_formats import format_element, format_group_spec, format_subset, parse_group_and_subset
from verification import run_verification
from verify_logger import VerificationLog

logger = logging.getLogger(__name__)

COMMANDS = ("kappa", "families", "fragments", "verify")
FORMATS = ("human", "json")


@dataclass
class RunConfig:
    command: str
    group_spec: str = ""
    subset_spec: str = ""
    max_order: int = 8
    sample_threshold: int = config.SAMPLE_THRESHOLD
    seed: int = config.SEED
    output_format: str = "human"
    parallelism: int = config.JOBS
    check: bool = False
    exhaustive: bool = False
    dump_dot: Optional[str] = None
    counterexamples_file: str = config.COUNTEREXAMPLES_FILE

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"Неизвестная команда: {self.command}")
        if self.output_format not in FORMATS:
            raise UsageError(f"--format должен быть одним из {FORMATS}")
        if self.max_order < 1:
            raise UsageError("--max-order должен быть >= 1")
        if self.sample_threshold < 1:
            raise UsageError("--sample-threshold должен быть >= 1")
        if self.parallelism < 1:
            raise UsageError("--jobs должен быть >= 1")


class CommandResult(NamedTuple):
    text: str
    exit_code: int = EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="kappa-cayley",
        description="Вершинная связность аддитивных графов Кэли на конечных абелевых группах",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("kappa", "κ по формуле (и при --check — по оракулу)"),
        ("families", "семейства ℋ, ℒ, ℒ* с их счетами"),
        ("fragments", "фрагменты, найденные оракулом"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--group", required=True, help='Модули множителей, например "4,2"')
        sub.add_argument("--set", dest="subset", required=True, help='Подмножество: "{1,3}", "complement:{0}"')
        sub.add_argument("--format", dest="output_format", choices=FORMATS, default="human")
        if name == "kappa":
            sub.add_argument("--check", action="store_true", help="Сверить с max-flow оракулом")
            sub.add_argument("--dump-dot", metavar="PATH", help="Записать граф в DOT")
        if name == "fragments":
            sub.add_argument("--exhaustive", action="store_true",
                             help=f"Все минимальные разрезы (|G| <= {config.EXHAUSTIVE_CUTS_MAX_ORDER})")

    verify = subparsers.add_parser("verify", help="исчерпывающая проверка формулы против оракула")
    verify.add_argument("--max-order", type=int, default=8)
    verify.add_argument("--sample-threshold", type=int, default=config.SAMPLE_THRESHOLD)
    verify.add_argument("--seed", type=int, default=config.SEED)
    verify.add_argument("--jobs", type=int, default=config.JOBS)
    verify.add_argument("--format", dest="output_format", choices=FORMATS, default="human")
    verify.add_argument("--counterexamples", default=config.COUNTEREXAMPLES_FILE, metavar="PATH")
    return parser


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    run = RunConfig(
        command=args.command,
        group_spec=getattr(args, "group", ""),
        subset_spec=getattr(args, "subset", ""),
        max_order=getattr(args, "max_order", 8),
        sample_threshold=getattr(args, "sample_threshold", config.SAMPLE_THRESHOLD),
        seed=getattr(args, "seed", config.SEED),
        output_format=args.output_format,
        parallelism=getattr(args, "jobs", config.JOBS),
        check=getattr(args, "check", False),
        exhaustive=getattr(args, "exhaustive", False),
        dump_dot=getattr(args, "dump_dot", None),
        counterexamples_file=getattr(args, "counterexamples", config.COUNTEREXAMPLES_FILE),
    )
    run.validate()
    return run


# === ФОРМАТИРОВАНИЕ ===

def _group_name(G: GroupSpec) -> str:
    return "⊕".join(f"Z{n}" for n in G.factors) or "{0}"


def _optional(value: Optional[int]) -> str:
    return "∞" if value is None else str(value)


def render_report_human(report: KappaReport) -> str:
    G = report.group
    lines = [
        f"G = {_group_name(G)}",
        f"S = {format_subset(report.connection_set)}",
        f"kappa = {report.kappa}",
        f"branch = {report.branch.value}",
        f"eta = {_optional(report.eta)}",
        f"lambda = {_optional(report.lambda_)}",
        f"lambda* = {_optional(report.lambda_star)}",
    ]
    if report.witness_entry is not None:
        lines.append(f"witness = {_entry_line(G, report.witness_entry)}")
    if report.fragment is not None:
        lines.append(f"fragment = {format_subset(report.fragment.vertices)}, "
                     f"boundary = {format_subset(report.fragment.boundary)}")
    return "\n".join(lines)


def _entry_line(G: GroupSpec, entry: FamilyEntry) -> str:
    line = f"{format_subset(entry.subgroup)} score={entry.score}"
    if entry.witness is not None:
        line += f" G0={format_subset(entry.witness.G0)} g0={format_element(G, entry.witness.g0.index)}"
    return line


def _entry_dict(G: GroupSpec, entry: FamilyEntry) -> dict:
    data = {"subgroup": format_subset(entry.subgroup), "score": entry.score}
    if entry.witness is not None:
        data["G0"] = format_subset(entry.witness.G0)
        data["g0"] = format_element(G, entry.witness.g0.index)
    return data


def _dumps(data) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2)


# === КОМАНДЫ ===

def _parse_instance(run: RunConfig):
    return parse_group_and_subset(run.group_spec, run.subset_spec)


def cmd_kappa(run: RunConfig) -> CommandResult:
    G, S = _parse_instance(run)
    report = kappa_formula(G, S)

    if run.dump_dot:
        dump_dot(build_graph(G, S), run.dump_dot)

    oracle = kappa_oracle(G, S) if run.check else None
    agree = oracle is None or oracle == report.kappa
    exit_code = EXIT_OK if agree else EXIT_COUNTEREXAMPLE

    if run.output_format == "json":
        data = report_to_dict(report)
        if oracle is not None:
            data.update(oracle=oracle, agree=agree)
        return CommandResult(_dumps(data), exit_code)

    text = render_report_human(report)
    if oracle is not None:
        text += f"\noracle = {oracle} ({'agree' if agree else 'DISAGREE'})"
    return CommandResult(text, exit_code)


def cmd_families(run: RunConfig) -> CommandResult:
    G, S = _parse_instance(run)
    families = {
        "H-family": h_family(G, S),
        "L-family": l_family(G, S),
        "Lstar-family": lstar_family(G, S),
    }

    if run.output_format == "json":
        return CommandResult(_dumps({
            "group": format_group_spec(G),
            "subset": format_subset(S),
            **{name: [_entry_dict(G, e) for e in entries] for name, entries in families.items()},
        }))

    lines = [f"G = {_group_name(G)}", f"S = {format_subset(S)}"]
    for name, entries in families.items():
        if not entries:
            lines.append(f"{name}: ∅")
            continue
        lines.append(f"{name}:")
        lines.extend(f"  {_entry_line(G, e)}" for e in entries)
    return CommandResult("\n".join(lines))


def cmd_fragments(run: RunConfig) -> CommandResult:
    G, S = _parse_instance(run)
    try:
        fragments = enumerate_fragments(G, S, exhaustive=run.exhaustive)
    except NoFragmentsError:
        message = "граф полный, фрагментов нет"
        if run.output_format == "json":
            return CommandResult(_dumps({"group": format_group_spec(G), "subset": format_subset(S), "fragments": []}))
        return CommandResult(message)

    graph = build_graph(G, S)
    kappa = kappa_oracle(G, S)
    rows = [(f, fragment_is_genuine(graph, f, kappa)) for f in fragments]
    exit_code = EXIT_OK if all(ok for _, ok in rows) else EXIT_COUNTEREXAMPLE

    if run.output_format == "json":
        return CommandResult(_dumps({
            "group": format_group_spec(G),
            "subset": format_subset(S),
            "kappa": kappa,
            "fragments": [
                {"vertices": format_subset(f.vertices), "boundary": format_subset(f.boundary), "genuine": ok}
                for f, ok in rows
            ],
        }), exit_code)

    lines = [f"G = {_group_name(G)}", f"S = {format_subset(S)}", f"kappa = {kappa}"]
    for f, ok in rows:
        lines.append(f"fragment {format_subset(f.vertices)} boundary {format_subset(f.boundary)} {'✓' if ok else '✗'}")
    return CommandResult("\n".join(lines), exit_code)


def cmd_verify(run: RunConfig) -> CommandResult:
    log = VerificationLog()
    summary = run_verification(run.max_order, run.sample_threshold, run.seed, run.parallelism, log)
    log.save_counterexamples(run.counterexamples_file)

    data = summary.to_dict()
    exit_code = EXIT_OK if summary.clean else EXIT_COUNTEREXAMPLE
    if run.output_format == "json":
        return CommandResult(_dumps(data), exit_code)
    return CommandResult("\n".join(f"{key} = {value}" for key, value in data.items()), exit_code)


HANDLERS = {
    "kappa": cmd_kappa,
    "families": cmd_families,
    "fragments": cmd_fragments,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        run = run_config_from_args(build_parser().parse_args(argv))
        result = HANDLERS[run.command](run)
    except ResourceLimitError as e:
        logger.error(f"❌ Превышен лимит: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE_LIMIT
    except TheoremViolationError as e:
        logger.error(f"❌ Нарушение теоремы: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    except KappaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    print(result.text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

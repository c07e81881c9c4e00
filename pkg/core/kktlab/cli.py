"""
Command line surface: one subcommand per registered command, a JSON or table report on stdout,
logs on stderr, exit code 0 when every check passed, 1 on a failed check, 2 on a usage error.
"""
import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from kktlab import KKTLab
from kktlab.config.settings import (CHECK_LIST, CHECKS, COMMAND, CONFIG_EMIT,
                                    CONFIG_MODE, CONFIG_SEED, CONFIG_THREADS,
                                    DEFAULT_EMIT, EXIT_FAILED, EXIT_OK,
                                    EXIT_USAGE, PASSED, RESULTS)
from kktlab.exceptions import (ClosureError, DegreeOverflowError, KKTLabError,
                               NotAnIdealError)

logger = logging.getLogger(__name__)

# Raised while building an algebra that should exist: the construction itself failed.
CONSTRUCTION_FAILURES = (ClosureError, NotAnIdealError, DegreeOverflowError)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit", choices=("json", "table"), default=None, help="report format (default json)")
    common.add_argument("--seed", type=int, default=None, help="seed of every sampled check")
    common.add_argument("--mode", default=None, help="full | sampled=<count> (default: by size)")
    common.add_argument("--threads", type=int, default=None, help="worker processes (KKTLAB_THREADS wins)")
    common.add_argument("--config", default=None, help="JSON run configuration")
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="kktlab", description="Kantor-Koecher-Tits constructions, verified exactly.")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    tower = commands.add_parser("tower", parents=[common], help="der, str', str and con of a Jordan algebra")
    tower.add_argument("--jordan", required=True, help="H2:R ... H3:O")
    tower.add_argument("--export", default=None, help="write the tower as JSON")

    verify = commands.add_parser("verify", parents=[common], help="run one identity or structure check")
    verify.add_argument("--check", required=True, choices=sorted(CHECKS))
    verify.add_argument("--target", required=True, help="Jordan, triple system or algebra spec")

    grade = commands.add_parser("grade", parents=[common], help="grading of a Chevalley algebra by a node")
    grade.add_argument("--type", dest="diagram", required=True, help="Cartan type, inline matrix or GCM file")
    grade.add_argument("--node", required=True,
                       help="node number or name (black, trivalent, ...); on E7 'black' is the con-row node 7, "
                            "use 'last' (node 3) for the depth-7 grading")
    grade.add_argument("--export", default=None, help="write the graded algebra and g_-1 as JSON")

    extend = commands.add_parser("extend", parents=[common], help="extend a diagram by a chain and classify")
    extend.add_argument("--type", dest="diagram", required=True)
    extend.add_argument("--node", required=True)
    extend.add_argument("--n", default=None, help="number of copies (default 2)")
    extend.add_argument("--sweep", action="store_true", help="classify n = 1..6")

    isomorphism = commands.add_parser("isomorphism", parents=[common],
                                      help="(h_-1)^n against g_-1 of the extended diagram")
    isomorphism.add_argument("--type", dest="diagram", required=True)
    isomorphism.add_argument("--node", required=True)
    isomorphism.add_argument("--n", default="2")

    fields = commands.add_parser("fields", parents=[common], help="vector field realizations")
    fields.add_argument("--family", required=True, choices=("conformal", "generalized", "kantor"))
    fields.add_argument("--signature", default=None, help="p,q")
    fields.add_argument("--n", default="1")
    fields.add_argument("--jordan", default=None, help="H2:<K> for the kantor family")
    fields.add_argument("--sweep", action="store_true", help="compare every signature with p + q = d")
    fields.add_argument("--export", default=None, help="write the algebra and its fields as JSON")

    magic = commands.add_parser("magic", parents=[common], help="magic square from H3(K)")
    magic.add_argument("--full", action="store_true", help="all four rows and columns")
    magic.add_argument("--no-isomorphism", dest="isomorphism", action="store_false",
                       help="skip the g_-1 isomorphism of the last row")
    return parser


def load_config(args: argparse.Namespace) -> Dict[str, Any]:
    config: Dict[str, Any] = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    for key, value in ((CONFIG_SEED, args.seed), (CONFIG_MODE, args.mode), (CONFIG_THREADS, args.threads),
                       (CONFIG_EMIT, args.emit)):
        if value is not None:
            config[key] = value
    return config


def _format_value(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def format_table(report: Dict[str, Any]) -> str:
    lines: List[str] = [f"kktlab {report[COMMAND]}"]
    results = report[RESULTS]
    width = max((len(key) for key in results), default=0)
    for key, value in results.items():
        lines.append(f"  {key.ljust(width)}  {_format_value(value)}")
    for check in report[CHECK_LIST]:
        verdict = "PASS" if check["passed"] else "FAIL"
        lines.append(f"  [{verdict}] {check['name']} ({check['checked']} checked, {check['mode']})")
        if not check["passed"] and check["witness"] is not None:
            lines.append(f"         witness: {_format_value(check['witness'])}")
    lines.append("PASSED" if report[PASSED] else "FAILED")
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(asctime)s %(name)s %(levelname)s: %(message)s")

    options = {key: value for key, value in vars(args).items()
               if key not in ("command", "emit", "seed", "mode", "threads", "config", "verbose")}
    try:
        config = load_config(args)
        lab = KKTLab(config)
        report = lab.run(args.command, **options)
    except CONSTRUCTION_FAILURES as e:
        print(f"kktlab {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (KKTLabError, OSError, json.JSONDecodeError) as e:
        print(f"kktlab {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE

    if config.get(CONFIG_EMIT, DEFAULT_EMIT) == "table":
        print(format_table(report))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK if report[PASSED] else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

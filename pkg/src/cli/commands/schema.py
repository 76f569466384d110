"""schema: print the JSON schema of the verification report."""
import argparse
import json
from typing import Any, Dict
from src.cli.output import write_text
from src.schemas.reports import VerificationReport


def report_schema() -> Dict[str, Any]:
    """Serialization-mode schema, so aliases and computed fields appear as written."""
    return VerificationReport.model_json_schema(by_alias=True, mode="serialization")


def register(subparsers) -> None:
    parser = subparsers.add_parser("schema", help="Print the verification report JSON schema")
    parser.add_argument("--output", "-o", default=None, help="Schema path; stdout when omitted")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    write_text(json.dumps(report_schema(), indent=2), args.output)
    return 0

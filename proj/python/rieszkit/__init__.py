"""Exact order calculus for operators between Riesz spaces."""

import json

from . import _core
from ._core import (
    Error,
    InvalidIndex,
    Operator,
    ParseError,
    PreconditionError,
    SpaceMismatch,
    SpecFile,
    UnsupportedHypothesis,
    casebook_names,
    fremlin_operator,
    limit_rank_one,
    pair_difference_operator,
    parse_spec,
)

__version__ = _core.__version__


def matrix_operator(rows):
    """Operator R^m -> R^n from a list of rows; entries may be ints or strings like "3/4"."""
    return _core.matrix_operator([[str(v) for v in row] for row in rows])


def check_order_bounded(op):
    return json.loads(_core.check_order_bounded(op))


def check_order_continuous(op, probe=8):
    return json.loads(_core.check_order_continuous(op, probe))


def positive_part(op):
    return json.loads(_core.positive_part(op))


def project_oc(op):
    return json.loads(_core.project_oc(op))


def witness_pervasive(op):
    return json.loads(_core.witness_pervasive(op))


def classify(e, f):
    return json.loads(_core.classify(e, f))


def casebook(name, **options):
    return run("casebook", [name], **options)


def run(command, args=(), spec=None, **options):
    """Runs a CLI command in-process and returns the report as a dict.

    `spec` may be a SpecFile or spec-file text. Options match the CLI flags
    (op, probe, seed, level, depth, bound, E, F).
    """
    if isinstance(spec, str):
        spec = parse_spec(spec)
    return json.loads(_core.dispatch(command, list(args), spec, **options))

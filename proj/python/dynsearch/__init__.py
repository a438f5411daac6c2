"""Dynamic-heuristic A* search over explicit transition systems."""

import json

from ._dynsearch import (
    Error,
    IoError,
    ParseError,
    TransitionSystem,
    parse,
    parse_file,
    reopening_example,
    running_example,
)
from . import _dynsearch

__all__ = [
    "Error",
    "IoError",
    "ParseError",
    "TransitionSystem",
    "check_property",
    "gstar",
    "hstar",
    "parse",
    "parse_file",
    "reopening_example",
    "running_example",
    "search",
]


def gstar(ts):
    """Cheapest cost from the initial state, keyed by state name."""
    return json.loads(_dynsearch._gstar(ts))


def hstar(ts):
    """Cheapest cost to a goal, keyed by state name. Infinite costs are "inf"."""
    return json.loads(_dynsearch._hstar(ts))


def search(ts, heuristic="hlm", reeval=False, reopen=True, seed=0):
    """Run dynA*. `heuristic` takes the CLI heuristic specs plus "reopening"."""
    result = json.loads(_dynsearch._search(ts, heuristic, reeval, reopen, seed))
    result["trace"] = [json.loads(line) for line in result["trace"].splitlines()]
    return result


def check_property(ts, property, heuristic="hlm", depth=0):
    return json.loads(_dynsearch._check_property(ts, heuristic, property, depth))

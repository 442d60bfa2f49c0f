"""Target specifications accepted on the command line.

``named:`` mini-language::

    K<q>          complete graph K_q (proper q-colourings)
    Kloop<k>      complete looped graph on k vertices
    Kb<k>         K_{k,k}
    Turan<t>_<x>  Turan graph T_t(x) used as a target
    Indep         an edge with one looped end (independent sets)
    <m>x<NAME>    m disjoint copies of a connected NAME, kept symbolic

Anything else is read as TargetGraph JSON, either inline or from a file.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .graphs import (
    GraphError,
    TargetGraph,
    balanced_biclique,
    complete_looped,
    complete_simple,
    independent_set_target,
    is_connected,
    turan,
)
from .hom import CopiesTarget

_COPIES = re.compile(r"^(\d+)x(.+)$")


def parse_named(spec: str) -> TargetGraph | CopiesTarget:
    m = _COPIES.match(spec)
    if m:
        base = parse_named(m.group(2))
        if isinstance(base, CopiesTarget):
            raise GraphError("nested copies are not supported")
        if not is_connected(base):
            raise GraphError(f"copies need a connected base, got {m.group(2)}")
        return CopiesTarget(int(m.group(1)), base)
    if spec == "Indep":
        return independent_set_target()
    for pattern, build in (
        (r"^Kloop(\d+)$", lambda k: complete_looped(int(k))),
        (r"^Kb(\d+)$", lambda k: balanced_biclique(int(k))),
        (r"^K(\d+)$", lambda q: complete_simple(int(q))),
        (r"^Turan(\d+)_(\d+)$", lambda t, x: TargetGraph.from_simple(turan(int(t), int(x)))),
    ):
        hit = re.match(pattern, spec)
        if hit:
            return build(*hit.groups())
    raise GraphError(f"unknown named target {spec!r}")


def parse_target(arg: str) -> TargetGraph | CopiesTarget:
    if arg.startswith("named:"):
        return parse_named(arg[len("named:"):])
    text = arg
    if not arg.lstrip().startswith("{"):
        path = Path(arg)
        if not path.exists():
            raise GraphError(f"target {arg!r} is neither named:, JSON, nor a file")
        text = path.read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"bad target JSON: {exc}") from exc
    return TargetGraph.from_json_obj(obj)


def dump_target(h: TargetGraph) -> str:
    """Canonical JSON form: edges with u < v sorted, loops sorted."""
    return json.dumps(h.to_json_obj(), sort_keys=True, separators=(",", ":"))

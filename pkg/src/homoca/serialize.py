"""JSON files for groups, actions, cell spaces, automata and global maps.

Nested objects may be inlined or referenced by a path relative to the
containing file.  Writers always inline, so emitted files are
self-contained; readers accept both.  All indices are 0-based and tables
are row-major; inverses are computed on load rather than stored.
"""

from __future__ import annotations

import json
import os
from typing import Any, Optional, Union

import numpy as np

from .automata import SemiCellularAutomaton, closed_neighborhood
from .cellspace import CellSpace, CoordinateSystem, build_coordinate_system
from .encoding import decode, encode
from .errors import InputError
from .groups import FiniteGroup, LeftAction
from .laws import GlobalMap, config_count

Source = Union[str, os.PathLike, dict]


def _load_json(path: Union[str, os.PathLike]) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")


def _resolve(source: Source, base_dir: Optional[str]) -> tuple[dict, Optional[str]]:
    """Return the dict for a path-or-inline source plus its base directory."""
    if isinstance(source, dict):
        return source, base_dir
    path = os.path.join(base_dir, source) if base_dir and not os.path.isabs(source) else str(source)
    return _load_json(path), os.path.dirname(os.path.abspath(path))


def _require(data: dict, key: str, what: str):
    if key not in data:
        raise InputError(f"{what} is missing the '{key}' field")
    return data[key]


def load_group(source: Source, base_dir: Optional[str] = None) -> FiniteGroup:
    data, _ = _resolve(source, base_dir)
    order = int(_require(data, "order", "group file"))
    mul = _require(data, "mul", "group file")
    identity = int(_require(data, "identity", "group file"))
    return FiniteGroup(order, tuple(tuple(row) for row in mul), identity)


def dump_group(group: FiniteGroup) -> dict:
    return {
        "order": group.order,
        "mul": [list(row) for row in group.mul],
        "identity": group.identity,
    }


def load_action(source: Source, base_dir: Optional[str] = None) -> LeftAction:
    data, base = _resolve(source, base_dir)
    group = load_group(_require(data, "group", "action file"), base)
    points = int(_require(data, "points", "action file"))
    act = _require(data, "act", "action file")
    return LeftAction(group, points, tuple(tuple(row) for row in act))


def dump_action(action: LeftAction) -> dict:
    return {
        "group": dump_group(action.group),
        "points": action.points,
        "act": [list(row) for row in action.act],
    }


def load_space(source: Source, base_dir: Optional[str] = None) -> CellSpace:
    data, base = _resolve(source, base_dir)
    action = load_action(_require(data, "action", "cell-space file"), base)
    origin = int(_require(data, "origin", "cell-space file"))
    if "coords" in data and data["coords"] is not None:
        system = CoordinateSystem(action, origin, tuple(int(g) for g in data["coords"]))
    else:
        system = build_coordinate_system(action, origin)
    return CellSpace(system)


def dump_space(space: CellSpace) -> dict:
    return {
        "action": dump_action(space.action),
        "origin": space.origin,
        "coords": list(space.coords),
    }


def load_automaton(
    source: Source, base_dir: Optional[str] = None, auto_close: bool = False
) -> SemiCellularAutomaton:
    """Neighborhood entries are group-element representatives; each is
    mapped to its coset.  With auto_close the neighborhood is saturated
    under the origin stabilizer and the rule ignores the added names;
    otherwise an unsaturated neighborhood is rejected.
    """
    data, base = _resolve(source, base_dir)
    space = load_space(_require(data, "space", "automaton file"), base)
    states = int(_require(data, "states", "automaton file"))
    reps = _require(data, "neighborhood", "automaton file")
    rule = tuple(int(x) for x in _require(data, "delta", "automaton file"))

    indices = []
    for g in reps:
        g = int(g)
        if not 0 <= g < space.group.order:
            raise InputError(f"neighborhood representative {g} out of range")
        indices.append(space.coset_index(g))
    if len(set(indices)) != len(indices):
        raise InputError("neighborhood representatives name the same coset twice")
    given = tuple(sorted(indices))
    if not auto_close:
        return SemiCellularAutomaton(space, states, given, rule)

    closed = closed_neighborhood(space, given)
    if closed == given:
        return SemiCellularAutomaton(space, states, given, rule)
    if len(rule) != states ** len(given):
        raise InputError(
            f"rule table has {len(rule)} entries, expected {states ** len(given)} before closure"
        )
    # the added names are ignored: the widened rule projects onto the given ones
    positions = [closed.index(j) for j in given]
    widened = []
    for code in range(states ** len(closed)):
        local = decode(code, states, len(closed))
        widened.append(rule[encode(tuple(local[p] for p in positions), states)])
    return SemiCellularAutomaton(space, states, closed, tuple(widened))


def dump_automaton(ca: SemiCellularAutomaton) -> dict:
    return {
        "space": dump_space(ca.space),
        "states": ca.states,
        "neighborhood": [ca.space.coset_reps[j] for j in ca.neighborhood],
        "delta": list(ca.rule),
    }


def load_global_map(source: Source, base_dir: Optional[str] = None) -> GlobalMap:
    data, base = _resolve(source, base_dir)
    space = load_space(_require(data, "space", "global-map file"), base)
    states = int(_require(data, "states", "global-map file"))
    table = _require(data, "table", "global-map file")
    expected = config_count(space, states)
    if len(table) != expected:
        raise InputError(f"global-map table has {len(table)} entries, expected {expected}")
    return GlobalMap.from_table(space, states, [int(x) for x in table])


def dump_global_map(gm: GlobalMap) -> dict:
    return {
        "space": dump_space(gm.space),
        "states": gm.states,
        "table": [int(x) for x in gm.table],
    }


def detect_kind(data: dict) -> str:
    if "mul" in data:
        return "group"
    if "act" in data:
        return "action"
    if "delta" in data:
        return "automaton"
    if "table" in data:
        return "global-map"
    if "action" in data:
        return "space"
    raise InputError("cannot tell what kind of file this is")


def write_json(path: Union[str, os.PathLike], data: dict) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")

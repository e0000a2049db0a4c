"""Global transition functions and the checkable laws tying them to rules.

Global maps are memoized into full lookup tables over packed
configurations whenever states**cells stays within CONFIG_TABLE_BOUND;
beyond that only sampling-based checks remain available and their
verdicts say so.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .automata import (
    MAX_RULE_TABLE,
    SemiCellularAutomaton,
    closed_neighborhood,
    configuration_observing,
    is_cellular,
    shift,
    step,
    subgroup_or_whole,
)
from .cellspace import CellSpace, CoordinateSystem
from .encoding import decode, digit_matrix, encode, weights
from .errors import BoundError, EquivarianceError, InputError
from .groups import Subgroup, _conjugate_coset
from .verdict import Verdict

CONFIG_TABLE_BOUND = 1 << 16
SAMPLE_COUNT = 1024
SAMPLE_SEED = 0


def config_count(space: CellSpace, states: int) -> int:
    return states**space.cells


def global_table(ca: SemiCellularAutomaton) -> np.ndarray:
    """The step of an automaton as a table over packed configurations."""
    space = ca.space
    q = ca.states
    if config_count(space, q) > CONFIG_TABLE_BOUND:
        raise BoundError(f"{q}**{space.cells} configurations exceed the table bound")
    digits = digit_matrix(q, space.cells)
    observed = digits[:, ca.neighbor_cells]  # (configs, cells, arity)
    local_codes = observed.astype(np.int64) @ weights(q, ca.arity)
    next_digits = ca.rule_array[local_codes]
    return next_digits @ weights(q, space.cells)


def shift_code_permutation(space: CellSpace, g: int, states: int) -> np.ndarray:
    """Translation by g as a permutation of packed configurations."""
    ginv = space.group.inv[g]
    cell_perm = np.array([space.action.act[ginv][m] for m in range(space.cells)])
    digits = digit_matrix(states, space.cells)
    return digits[:, cell_perm].astype(np.int64) @ weights(states, space.cells)


class GlobalMap:
    """A function on configurations, as a table or a fallback callable."""

    def __init__(
        self,
        space: CellSpace,
        states: int,
        table: Optional[np.ndarray] = None,
        fn: Optional[Callable[[tuple[int, ...]], tuple[int, ...]]] = None,
    ):
        if table is None and fn is None:
            raise InputError("need a table or a callable")
        if table is not None:
            table = np.asarray(table, dtype=np.int64)
            expected = config_count(space, states)
            if table.shape != (expected,):
                raise InputError(f"table has shape {table.shape}, expected ({expected},)")
            if expected and (table.min() < 0 or table.max() >= expected):
                raise InputError("table entry out of range")
        self.space = space
        self.states = states
        self._table = table
        self._fn = fn

    @classmethod
    def from_automaton(cls, ca: SemiCellularAutomaton) -> "GlobalMap":
        if config_count(ca.space, ca.states) <= CONFIG_TABLE_BOUND:
            return cls(ca.space, ca.states, table=global_table(ca))
        return cls(ca.space, ca.states, fn=lambda c: step(ca, c))

    @classmethod
    def from_table(cls, space: CellSpace, states: int, table) -> "GlobalMap":
        return cls(space, states, table=np.asarray(table, dtype=np.int64))

    @property
    def exhaustive(self) -> bool:
        return self._table is not None

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            raise BoundError("global map is not memoized; instance exceeds the table bound")
        return self._table

    def apply(self, config: Sequence[int]) -> tuple[int, ...]:
        if self._table is not None:
            code = encode(config, self.states)
            return decode(int(self._table[code]), self.states, self.space.cells)
        return self._fn(tuple(config))

    def apply_code(self, code: int) -> int:
        if self._table is not None:
            return int(self._table[code])
        config = decode(code, self.states, self.space.cells)
        return encode(self._fn(config), self.states)


def check_equivariance(
    gm: GlobalMap,
    subgroup: Optional[Subgroup] = None,
    samples: int = SAMPLE_COUNT,
    seed: int = SAMPLE_SEED,
) -> Verdict:
    """Does the map commute with every translation in the scope?

    Exhaustive when the map is memoized; otherwise a seeded sample of
    configurations is tested and the verdict is marked sampled.
    """
    space = gm.space
    sub = subgroup_or_whole(space, subgroup)
    q = gm.states
    if gm.exhaustive:
        table = gm.table
        for h in sub.members:
            perm = shift_code_permutation(space, h, q)
            bad = np.flatnonzero(table[perm] != perm[table])
            if bad.size:
                code = int(bad[0])
                return Verdict.failing(
                    "shift-equivariance",
                    {
                        "element": int(h),
                        "config": list(decode(code, q, space.cells)),
                        "map_then_shift": list(decode(int(perm[table][code]), q, space.cells)),
                        "shift_then_map": list(decode(int(table[perm][code]), q, space.cells)),
                    },
                )
        return Verdict.passing("shift-equivariance")

    rng = random.Random(seed)
    total = config_count(space, q)
    for _ in range(samples):
        config = decode(rng.randrange(total), q, space.cells)
        image = gm.apply(config)
        for h in sub.members:
            left = gm.apply(shift(space, h, config))
            right = shift(space, h, image)
            if left != right:
                return Verdict.failing(
                    "shift-equivariance",
                    {
                        "element": int(h),
                        "config": list(config),
                        "map_then_shift": list(right),
                        "shift_then_map": list(left),
                    },
                    sampled=True,
                )
    return Verdict.passing("shift-equivariance", sampled=True)


def check_invariance_equivalence(
    ca: SemiCellularAutomaton, subgroup: Optional[Subgroup] = None
) -> Verdict:
    """Rotation invariance of the rule and shift equivariance of the step
    hold or fail together; the verdict records both sides."""
    local = is_cellular(ca, subgroup)
    glob = check_equivariance(GlobalMap.from_automaton(ca), subgroup)
    agree = local.ok == glob.ok
    witness = {
        "rule_invariant": local.ok,
        "step_equivariant": glob.ok,
        "rule_side": local.as_dict(),
        "step_side": glob.as_dict(),
    }
    if agree:
        return Verdict.passing("invariance-matches-equivariance", witness, sampled=glob.sampled)
    return Verdict.failing("invariance-matches-equivariance", witness, sampled=glob.sampled)


def check_determination(
    ca: SemiCellularAutomaton, gm: GlobalMap, subgroup: Optional[Subgroup] = None
) -> Verdict:
    """Two portraits of 'gm is the step of ca' must agree:

    side A: the rule is rotation-invariant and gm equals the step table;
    side B: gm is shift-equivariant and matches the rule at the origin.
    """
    space = ca.space
    if gm.space is not space and gm.space.system != space.system:
        raise InputError("global map lives on a different cell space")
    if gm.states != ca.states:
        raise InputError("state counts differ")
    sub = subgroup_or_whole(space, subgroup)
    q = ca.states

    local = is_cellular(ca, sub)
    same_map = bool(np.array_equal(gm.table, global_table(ca)))
    side_a = local.ok and same_map

    equivariant = check_equivariance(gm, sub)
    origin_ok = True
    origin_witness = None
    origin_weight = q ** space.origin
    origin_digits = (gm.table // origin_weight) % q
    step_origin = (global_table(ca) // origin_weight) % q
    bad = np.flatnonzero(origin_digits != step_origin)
    if bad.size:
        origin_ok = False
        code = int(bad[0])
        origin_witness = {
            "config": list(decode(code, q, space.cells)),
            "map_origin_value": int(origin_digits[code]),
            "rule_origin_value": int(step_origin[code]),
        }
    side_b = equivariant.ok and origin_ok

    witness = {
        "rule_invariant_and_equal": side_a,
        "equivariant_and_origin_matching": side_b,
        "rule_invariant": local.ok,
        "tables_equal": same_map,
        "equivariant": equivariant.ok,
        "origin_matching": origin_ok,
    }
    if origin_witness:
        witness["origin_witness"] = origin_witness
    if side_a == side_b:
        return Verdict.passing("determination-at-origin", witness)
    return Verdict.failing("determination-at-origin", witness)


def change_coordinates(
    ca: SemiCellularAutomaton,
    system2: CoordinateSystem,
    h: int,
    subgroup: Optional[Subgroup] = None,
) -> SemiCellularAutomaton:
    """Re-express an automaton in another coordinate system on the same
    action.  h must carry the old origin to the new one; relative names
    are conjugated by h and the rule is re-indexed accordingly.  Requires
    a rotation-invariant rule, which is what makes the result's step equal
    the original's."""
    space = ca.space
    if system2.action != space.action:
        raise InputError("target coordinate system is on a different action")
    if space.action.act[h][space.origin] != system2.origin:
        raise InputError(f"element {h} does not carry the origin to {system2.origin}")
    space2 = CellSpace(system2)
    sub = subgroup_or_whole(space, subgroup)
    if subgroup is not None:
        subgroup_or_whole(space2, subgroup)
    inv_ok = is_cellular(ca, sub)
    if not inv_ok.ok:
        raise InputError(f"rule is not rotation-invariant: {inv_ok.witness}")

    group = space.group
    q = ca.states

    moved = []
    for j in ca.neighborhood:
        conj = _conjugate_coset(group, h, space.cosets[j])
        moved.append(space2.coset_index_of(conj))
    neighborhood2 = tuple(sorted(moved))
    if len(set(neighborhood2)) != len(moved):
        raise AssertionError("conjugated neighborhood collapsed")

    # rule2(local2) = rule(i -> local2 at the new position of the i-th name)
    position = {j2: idx for idx, j2 in enumerate(neighborhood2)}
    p = [position[moved[i]] for i in range(ca.arity)]
    codes = digit_matrix(q, ca.arity)
    w = weights(q, ca.arity)
    gather = codes[:, p].astype(np.int64) @ w if ca.arity else np.zeros(1, dtype=np.int64)
    rule2 = ca.rule_array[gather]
    return SemiCellularAutomaton(space2, q, neighborhood2, tuple(int(x) for x in rule2))


def compose(
    outer: SemiCellularAutomaton,
    inner: SemiCellularAutomaton,
    subgroup: Optional[Subgroup] = None,
) -> SemiCellularAutomaton:
    """One automaton whose step is outer-after-inner.

    Both rules must be rotation-invariant.  The combined neighborhood
    collects every product g * n' with g running over an outer name and n'
    over inner names; the combined rule feeds each outer position the
    inner rule applied to a block of the input."""
    space = outer.space
    if inner.space is not space and inner.space.system != space.system:
        raise InputError("automata live on different cell spaces")
    if inner.states != outer.states:
        raise InputError("state counts differ")
    sub = subgroup_or_whole(space, subgroup)
    for ca in (outer, inner):
        v = is_cellular(ca, sub)
        if not v.ok:
            raise InputError(f"rule is not rotation-invariant: {v.witness}")
    q = outer.states

    combined: set[int] = set()
    for j in outer.neighborhood:
        for g in space.cosets[j].members:
            for j2 in inner.neighborhood:
                combined.add(space.translate_coset(g, j2))
    neighborhood = tuple(sorted(combined))
    if q ** len(neighborhood) > MAX_RULE_TABLE:
        raise BoundError(f"combined rule table would need {q}**{len(neighborhood)} entries")
    pos = {j: i for i, j in enumerate(neighborhood)}

    # block[i][k]: where outer position i finds inner position k inside the
    # combined local configuration: the coordinate of the cell named by the
    # outer coset, multiplied onto the inner coset
    block = np.zeros((outer.arity, inner.arity), dtype=np.int64)
    for i, j in enumerate(outer.neighborhood):
        cell = space.semi_cell(space.origin, j)
        coord = space.coords[cell]
        for k, j2 in enumerate(inner.neighborhood):
            block[i, k] = pos[space.translate_coset(coord, j2)]

    codes = digit_matrix(q, len(neighborhood))
    w_inner = weights(q, inner.arity)
    w_outer = weights(q, outer.arity)
    inner_out = np.zeros((codes.shape[0], outer.arity), dtype=np.int64)
    for i in range(outer.arity):
        inner_codes = codes[:, block[i]].astype(np.int64) @ w_inner
        inner_out[:, i] = inner.rule_array[inner_codes]
    rule = outer.rule_array[inner_out @ w_outer]
    return SemiCellularAutomaton(space, q, neighborhood, tuple(int(x) for x in rule))


def dependency_cells(gm: GlobalMap, target: int) -> tuple[int, ...]:
    """Cells whose single-site change can move the image at `target`."""
    space = gm.space
    q = gm.states
    table = gm.table
    codes = np.arange(config_count(space, q), dtype=np.int64)
    out_digit = (table // q**target) % q
    deps = []
    for i in range(space.cells):
        wi = q**i
        di = (codes // wi) % q
        base = codes - di * wi
        reference = out_digit[base]
        for v in range(1, q):
            if not np.array_equal(out_digit[base + v * wi], reference):
                deps.append(i)
                break
    return tuple(deps)


def extract(gm: GlobalMap, subgroup: Optional[Subgroup] = None) -> SemiCellularAutomaton:
    """Recover an automaton whose step is exactly gm.

    gm must be shift-equivariant (checked; violations raise with a
    witness).  The neighborhood is the stabilizer closure of the labels of
    the cells the origin output actually depends on, and the rule is read
    off by probing gm on configurations that realize each local pattern at
    the origin over a default background.
    """
    space = gm.space
    sub = subgroup_or_whole(space, subgroup)
    table = gm.table  # raises BoundError when not memoized
    eq = check_equivariance(gm, sub)
    if not eq.ok:
        raise EquivarianceError("global map is not shift-equivariant", eq.witness or {})
    q = gm.states

    depends = dependency_cells(gm, space.origin)
    labels = {space.cell_coset(m) for m in depends}
    neighborhood = closed_neighborhood(space, tuple(sorted(labels)))

    probe = SemiCellularAutomaton(space, q, neighborhood, [0] * q ** len(neighborhood))
    rule = []
    origin_weight = q ** space.origin
    for code in range(q ** len(neighborhood)):
        local = decode(code, q, len(neighborhood))
        config = configuration_observing(probe, local, space.origin, default=0)
        rule.append(int(table[encode(config, q)] // origin_weight % q))
    ca = SemiCellularAutomaton(space, q, neighborhood, rule)
    if not np.array_equal(global_table(ca), table):
        raise AssertionError("extracted automaton does not reproduce the map")
    return ca


@dataclass(frozen=True)
class NotInvertible:
    witness: dict
    sampled: bool = False


def invert(
    ca: SemiCellularAutomaton, subgroup: Optional[Subgroup] = None
) -> Union[SemiCellularAutomaton, NotInvertible]:
    """An automaton stepping backwards, or the reason there is none.

    The step of a rotation-invariant rule is invertible exactly when it is
    bijective on configurations, and the inverse is itself the step of an
    automaton, recovered by extraction.  Beyond the table bound only a
    seeded collision search is possible: it can refute invertibility
    (sampled witness) but not certify it.
    """
    space = ca.space
    sub = subgroup_or_whole(space, subgroup)
    inv_ok = is_cellular(ca, sub)
    if not inv_ok.ok:
        raise InputError(f"rule is not rotation-invariant: {inv_ok.witness}")
    q = ca.states
    total = config_count(space, q)
    if total > CONFIG_TABLE_BOUND:
        rng = random.Random(SAMPLE_SEED)
        seen: dict[int, tuple[int, ...]] = {}
        for _ in range(SAMPLE_COUNT):
            config = decode(rng.randrange(total), q, space.cells)
            image = encode(step(ca, config), q)
            if image in seen and seen[image] != config:
                return NotInvertible(
                    {
                        "colliding": [list(seen[image]), list(config)],
                        "image": list(decode(image, q, space.cells)),
                    },
                    sampled=True,
                )
            seen[image] = config
        raise BoundError("cannot certify invertibility beyond the table bound")

    table = global_table(ca)
    counts = np.bincount(table, minlength=total)
    if counts.max() > 1:
        image = int(np.flatnonzero(counts > 1)[0])
        pair = np.flatnonzero(table == image)[:2]
        return NotInvertible(
            {
                "colliding": [
                    list(decode(int(pair[0]), q, space.cells)),
                    list(decode(int(pair[1]), q, space.cells)),
                ],
                "image": list(decode(image, q, space.cells)),
            }
        )
    inverse_table = np.zeros(total, dtype=np.int64)
    inverse_table[table] = np.arange(total, dtype=np.int64)
    inverse = extract(GlobalMap(space, q, table=inverse_table), sub)
    back = global_table(inverse)
    if not (np.array_equal(back[table], np.arange(total)) and np.array_equal(table[back], np.arange(total))):
        raise AssertionError("inverse automaton fails the round trip")
    return inverse

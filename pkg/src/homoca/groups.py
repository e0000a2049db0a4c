"""Finite groups and left actions as explicit lookup tables.

Group elements are integers 0..order-1 and points 0..points-1; the
multiplication and action tables are tuples of tuples so instances hash
and compare by value.  Constructors only validate shape and size, so an
invalid table is still representable: the verify_* checkers examine the
axioms and report violations with witnesses instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InputError
from .verdict import Verdict

MAX_GROUP_ORDER = 5040
MAX_POINTS = 4096


def _as_table(rows: Sequence[Sequence[int]], height: int, width: int, what: str) -> tuple[tuple[int, ...], ...]:
    if len(rows) != height:
        raise InputError(f"{what}: expected {height} rows, got {len(rows)}")
    out = []
    for i, row in enumerate(rows):
        row = tuple(int(x) for x in row)
        if len(row) != width:
            raise InputError(f"{what}: row {i} has length {len(row)}, expected {width}")
        for x in row:
            if not 0 <= x < max(height, width):
                raise InputError(f"{what}: entry {x} in row {i} out of range")
        out.append(row)
    return tuple(out)


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    mul: tuple[tuple[int, ...], ...]
    identity: int

    def __post_init__(self):
        if not 1 <= self.order <= MAX_GROUP_ORDER:
            raise InputError(f"group order {self.order} outside 1..{MAX_GROUP_ORDER}")
        object.__setattr__(self, "mul", _as_table(self.mul, self.order, self.order, "mul table"))
        for row in self.mul:
            for x in row:
                if x >= self.order:
                    raise InputError(f"mul entry {x} out of range for order {self.order}")
        if not 0 <= self.identity < self.order:
            raise InputError(f"identity {self.identity} out of range")

    @cached_property
    def mul_array(self) -> np.ndarray:
        return np.array(self.mul, dtype=np.int64)

    @cached_property
    def inv(self) -> tuple[int, ...]:
        """Two-sided inverses; raises if some element has none."""
        e = self.identity
        out = []
        for a in range(self.order):
            for b in range(self.order):
                if self.mul[a][b] == e and self.mul[b][a] == e:
                    out.append(b)
                    break
            else:
                raise InputError(f"element {a} has no two-sided inverse")
        return tuple(out)

    def conjugate(self, g: int, a: int) -> int:
        """g a g^-1."""
        return self.mul[self.mul[g][a]][self.inv[g]]

    def elements(self) -> range:
        return range(self.order)


@dataclass(frozen=True)
class LeftAction:
    group: FiniteGroup
    points: int
    act: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not 1 <= self.points <= MAX_POINTS:
            raise InputError(f"point count {self.points} outside 1..{MAX_POINTS}")
        rows = []
        for g, row in enumerate(self.act):
            row = tuple(int(x) for x in row)
            if len(row) != self.points:
                raise InputError(f"act row {g} has length {len(row)}, expected {self.points}")
            for x in row:
                if not 0 <= x < self.points:
                    raise InputError(f"act entry {x} in row {g} out of range")
            rows.append(row)
        if len(rows) != self.group.order:
            raise InputError(f"act table has {len(rows)} rows, expected {self.group.order}")
        object.__setattr__(self, "act", tuple(rows))

    @cached_property
    def act_array(self) -> np.ndarray:
        return np.array(self.act, dtype=np.int64)

    def apply(self, g: int, m: int) -> int:
        return self.act[g][m]


@dataclass(frozen=True)
class Subgroup:
    """A subset of a group, kept sorted; closure is validated up front."""

    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(int(x) for x in self.members)))
        object.__setattr__(self, "members", members)
        mul = self.parent.mul
        e = self.parent.identity
        if e not in members:
            raise InputError("subgroup must contain the identity")
        inside = set(members)
        for a in members:
            for b in members:
                if mul[a][b] not in inside:
                    raise InputError(f"subgroup not closed: {a}*{b} = {mul[a][b]} escapes")
        # closure + identity + finiteness already force inverses, but check anyway
        for a in members:
            if not any(mul[a][b] == e for b in members):
                raise InputError(f"subgroup member {a} has no inverse inside")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in set(self.members)

    @classmethod
    def whole(cls, group: FiniteGroup) -> "Subgroup":
        return cls(group, tuple(range(group.order)))


@dataclass(frozen=True)
class Coset:
    """Left coset g*H, identified by its canonical (minimum) member."""

    subgroup: Subgroup
    rep: int

    def __post_init__(self):
        members = self._compute_members()
        if self.rep != members[0]:
            raise InputError(f"coset rep {self.rep} is not the minimum member {members[0]}")

    def _compute_members(self) -> tuple[int, ...]:
        mul = self.subgroup.parent.mul
        return tuple(sorted(mul[self.rep][h] for h in self.subgroup.members))

    @cached_property
    def members(self) -> tuple[int, ...]:
        return self._compute_members()

    @classmethod
    def of(cls, subgroup: Subgroup, g: int) -> "Coset":
        mul = subgroup.parent.mul
        rep = min(mul[g][h] for h in subgroup.members)
        return cls(subgroup, rep)


def verify_group(group: FiniteGroup) -> Verdict:
    """Check neutrality, two-sided inverses and associativity on the table."""
    n = group.order
    mul = group.mul_array
    e = group.identity
    idx = np.arange(n)

    bad = np.flatnonzero((mul[e] != idx) | (mul[:, e] != idx))
    if bad.size:
        a = int(bad[0])
        return Verdict.failing(
            "group-identity",
            {"element": a, "e*a": int(mul[e][a]), "a*e": int(mul[a][e])},
        )

    hits = mul == e
    two_sided = hits & hits.T
    missing = np.flatnonzero(~two_sided.any(axis=1))
    if missing.size:
        return Verdict.failing("group-inverses", {"element": int(missing[0])})

    for a in range(n):
        left = mul[mul[a], :]  # left[b, c] = (a*b)*c
        right = mul[a][mul]  # right[b, c] = a*(b*c)
        if not np.array_equal(left, right):
            b, c = map(int, np.argwhere(left != right)[0])
            return Verdict.failing(
                "group-associativity",
                {"triple": [a, b, c], "(a*b)*c": int(left[b][c]), "a*(b*c)": int(right[b][c])},
            )
    return Verdict.passing("group-axioms")


def verify_action(action: LeftAction) -> Verdict:
    """Check the identity and compatibility axioms of a left action."""
    group = action.group
    act = action.act_array
    mul = group.mul_array
    e = group.identity

    bad = np.flatnonzero(act[e] != np.arange(action.points))
    if bad.size:
        m = int(bad[0])
        return Verdict.failing("action-identity", {"point": m, "e*m": int(act[e][m])})

    for g in range(group.order):
        left = act[mul[g], :]  # left[g2, m] = (g*g2) . m
        right = act[g][act]  # right[g2, m] = g . (g2 . m)
        if not np.array_equal(left, right):
            g2, m = map(int, np.argwhere(left != right)[0])
            return Verdict.failing(
                "action-compatibility",
                {
                    "pair": [g, g2],
                    "point": m,
                    "(g*g2).m": int(left[g2][m]),
                    "g.(g2.m)": int(right[g2][m]),
                },
            )
    return Verdict.passing("action-axioms")


def _check_point(action: LeftAction, m: int) -> None:
    if not 0 <= m < action.points:
        raise InputError(f"point {m} out of range 0..{action.points - 1}")


def orbit(action: LeftAction, m: int) -> tuple[int, ...]:
    _check_point(action, m)
    return tuple(sorted({action.act[g][m] for g in action.group.elements()}))


def is_transitive(action: LeftAction) -> bool:
    return len(orbit(action, 0)) == action.points


def is_free(action: LeftAction) -> bool:
    e = action.group.identity
    return all(
        len(stabilizer(action, m).members) == 1 and stabilizer(action, m).members[0] == e
        for m in range(action.points)
    )


def stabilizer(action: LeftAction, m: int) -> Subgroup:
    _check_point(action, m)
    members = tuple(g for g in action.group.elements() if action.act[g][m] == m)
    return Subgroup(action.group, members)


def transporter(action: LeftAction, m: int, m2: int) -> tuple[int, ...]:
    """All group elements carrying m to m2 (may be empty)."""
    _check_point(action, m)
    _check_point(action, m2)
    return tuple(g for g in action.group.elements() if action.act[g][m] == m2)


def check_transporter_lemma(action: LeftAction, m: int, m2: int, g: int) -> Verdict:
    """For g carrying m to m2: conjugation maps the stabilizers onto each
    other and both translates of the stabilizer equal the transporter."""
    if action.act[g][m] != m2:
        raise InputError(f"element {g} does not carry {m} to {m2}")
    group = action.group
    mul = group.mul
    stab_m = set(stabilizer(action, m).members)
    stab_m2 = set(stabilizer(action, m2).members)
    trans = set(transporter(action, m, m2))

    conj = {group.conjugate(g, a) for a in stab_m}
    if conj != stab_m2:
        return Verdict.failing(
            "transporter-conjugation",
            {"g": g, "conjugated": sorted(conj), "stabilizer": sorted(stab_m2)},
        )
    left = {mul[g][a] for a in stab_m}
    if left != trans:
        return Verdict.failing(
            "transporter-left-translate",
            {"g": g, "translate": sorted(left), "transporter": sorted(trans)},
        )
    right = {mul[a][g] for a in stab_m2}
    if right != trans:
        return Verdict.failing(
            "transporter-right-translate",
            {"g": g, "translate": sorted(right), "transporter": sorted(trans)},
        )
    return Verdict.passing("transporter-lemma")


@dataclass(frozen=True)
class QuotientSet:
    """Left cosets of a subgroup with the left-multiplication action on them."""

    cosets: tuple[Coset, ...]
    action: LeftAction


def coset_representatives(group: FiniteGroup, sub: Subgroup) -> tuple[int, ...]:
    """Canonical (minimum-member) representative of each left coset, sorted."""
    mul = group.mul_array
    members = np.array(sub.members, dtype=np.int64)
    canon = mul[:, members].min(axis=1)
    return tuple(int(r) for r in sorted(set(canon.tolist())))


def quotient_set(group: FiniteGroup, sub: Subgroup) -> QuotientSet:
    if sub.parent is not group and sub.parent != group:
        raise InputError("subgroup belongs to a different group")
    reps = coset_representatives(group, sub)
    index = {r: j for j, r in enumerate(reps)}
    mul = group.mul_array
    members = np.array(sub.members, dtype=np.int64)
    canon = mul[:, members].min(axis=1)  # canon[g] = rep of g's coset
    act_rows = []
    for g in range(group.order):
        act_rows.append(tuple(index[int(canon[group.mul[g][r]])] for r in reps))
    cosets = tuple(Coset(sub, r) for r in reps)
    return QuotientSet(cosets, LeftAction(group, len(reps), tuple(act_rows)))


def point_coset_labels(action: LeftAction, origin: int) -> tuple[Coset, ...]:
    """Label each point with the coset of elements carrying the origin to it.

    The action must be transitive; the labeling is then a bijection onto
    the cosets of the origin stabilizer and intertwines the action with
    left multiplication.
    """
    if not is_transitive(action):
        raise InputError("action is not transitive; some point has no label")
    sub = stabilizer(action, origin)
    out = []
    for m in range(action.points):
        rep = min(transporter(action, origin, m))
        out.append(Coset(sub, rep))
    return tuple(out)


def is_stabilizer_subgroup(action: LeftAction, sub: Subgroup) -> bool:
    return any(stabilizer(action, m).members == sub.members for m in range(action.points))


def conjugate_coset(action: LeftAction, g: int, coset: Coset) -> Coset:
    """Conjugate a stabilizer coset: g maps cosets of Stab(m) to cosets of
    Stab(g.m), bijectively, and the map respects multiplication in g."""
    if not is_stabilizer_subgroup(action, coset.subgroup):
        raise InputError("coset subgroup is not the stabilizer of any point")
    return _conjugate_coset(action.group, g, coset)


def _conjugate_coset(group: FiniteGroup, g: int, coset: Coset) -> Coset:
    members = [group.conjugate(g, x) for x in coset.members]
    sub_members = tuple(group.conjugate(g, h) for h in coset.subgroup.members)
    sub = Subgroup(group, sub_members)
    return Coset(sub, min(members))

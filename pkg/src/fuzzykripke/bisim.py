"""The seven (pre)simulation and (pre)bisimulation kinds between models.

A fuzzy relation phi between the worlds of two models is classified by
which of these inequalities it satisfies, for every variable p and index i:

    vector conditions (the -1 family, and the -3 family)
        fwd   -1: V_p <= V'_p o phi^-1        -3: phi^-1 o V_p <= V'_p
        bwd   -1: V_p <= phi o V'_p           -3: V_p o phi <= V'_p
        and the same two instantiated for phi^-1 in the other direction

    relational conditions (the -2 family)
        fwd      phi^-1 o R_i  <=  R'_i o phi^-1
        fwd_inv  phi  o R'_i   <=  R_i  o phi
        bwd      R_i  o phi    <=  phi  o R'_i
        bwd_inv  R'_i o phi^-1 <=  phi^-1 o R_i

The seven kinds select subsets: fs uses fwd; bs uses bwd; fb adds the
inverse direction to fs (fwd + fwd_inv), bb to bs; fbb mixes fwd with
bwd_inv, bfb mixes bwd with fwd_inv; rb takes all four, which makes both
-2 comparisons equalities.  A "pre" relation satisfies the -2 and -3
conditions; the relation proper additionally satisfies -1 and is nonempty.

The greatest pre-relation is computed by a decreasing fixpoint iteration:
start from the entrywise greatest solution of the -3 conditions (meet of
residua for fs/bs, meet of biimplications for the bisimulation kinds) and
repeatedly meet with the residual updates of the -2 conditions, all taken
against the previous iterate (Jacobi sweeps, so per-entry updates within a
sweep depend only on the previous iterate).  On a linear carrier every
update value stays inside the finite set of input values plus {0, 1} and
iterates strictly decrease until stable, so the loop terminates; a
monotonicity induction shows every solution stays below every iterate,
hence the limit is the greatest solution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .algebra import ONE, format_value
from .fuzzrel import FuzzyMat, FuzzyVec, RESIDUAL_UPDATES
from .model import KripkeModel, check_comparable


class SimType(str, Enum):
    FS = "fs"    # forward simulation
    BS = "bs"    # backward simulation
    FB = "fb"    # forward bisimulation
    BB = "bb"    # backward bisimulation
    FBB = "fbb"  # forward-backward bisimulation
    BFB = "bfb"  # backward-forward bisimulation
    RB = "rb"    # regular bisimulation

    def __str__(self):
        return self.value

    @property
    def is_simulation(self) -> bool:
        return self in (SimType.FS, SimType.BS)


# relational (-2) directions per kind
_THETA2 = {
    SimType.FS: ("fwd",),
    SimType.BS: ("bwd",),
    SimType.FB: ("fwd", "fwd_inv"),
    SimType.BB: ("bwd", "bwd_inv"),
    SimType.FBB: ("fwd", "bwd_inv"),
    SimType.BFB: ("bwd", "fwd_inv"),
    SimType.RB: ("fwd", "fwd_inv", "bwd", "bwd_inv"),
}

# vector condition atoms, shared by the -1 and -3 families
_THETA_VEC = {
    SimType.FS: ("fwd",),
    SimType.BS: ("bwd",),
    SimType.FB: ("fwd", "fwd_inv"),
    SimType.BB: ("bwd", "bwd_inv"),
    SimType.FBB: ("fwd", "bwd_inv"),
    SimType.BFB: ("bwd", "fwd_inv"),
    SimType.RB: ("fwd", "fwd_inv", "bwd", "bwd_inv"),
}

_COND2_TEXT = {
    "fwd": "phi^-1 o R{i} <= R'{i} o phi^-1",
    "fwd_inv": "phi o R'{i} <= R{i} o phi",
    "bwd": "R{i} o phi <= phi o R'{i}",
    "bwd_inv": "R'{i} o phi^-1 <= phi^-1 o R{i}",
}

_COND1_TEXT = {
    "fwd": "V_{p} <= V'_{p} o phi^-1",
    "fwd_inv": "V'_{p} <= V_{p} o phi",
    "bwd": "V_{p} <= phi o V'_{p}",
    "bwd_inv": "V'_{p} <= phi^-1 o V_{p}",
}

_COND3_TEXT = {
    "fwd": "phi^-1 o V_{p} <= V'_{p}",
    "fwd_inv": "phi o V'_{p} <= V_{p}",
    "bwd": "V_{p} o phi <= V'_{p}",
    "bwd_inv": "V'_{p} o phi^-1 <= V_{p}",
}


@dataclass
class ConditionCheck:
    """One atomic inequality verdict with its first violating entry."""

    name: str
    statement: str
    holds: bool
    violation: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "statement": self.statement, "holds": self.holds}
        if self.violation is not None:
            out["violation"] = self.violation
        return out


def _vec_condition(tag: str, m1, m2, phi: FuzzyMat, name: str) -> tuple[FuzzyVec, FuzzyVec]:
    """The (lhs, rhs) vectors of one vector condition atom for variable ``name``."""
    vp = m1.valuation[name]
    vpp = m2.valuation[name]
    if tag == "fwd":
        return vp, vpp.compose_mat(phi.inverse())
    if tag == "fwd_inv":
        return vpp, vp.compose_mat(phi)
    if tag == "bwd":
        return vp, phi.compose_vec(vpp)
    if tag == "bwd_inv":
        return vpp, phi.inverse().compose_vec(vp)
    raise ValueError(tag)


def _vec_condition3(tag: str, m1, m2, phi: FuzzyMat, name: str) -> tuple[FuzzyVec, FuzzyVec]:
    vp = m1.valuation[name]
    vpp = m2.valuation[name]
    if tag == "fwd":
        return phi.inverse().compose_vec(vp), vpp
    if tag == "fwd_inv":
        return phi.compose_vec(vpp), vp
    if tag == "bwd":
        return vp.compose_mat(phi), vpp
    if tag == "bwd_inv":
        return vpp.compose_mat(phi.inverse()), vp
    raise ValueError(tag)


def _vec_violation(lhs: FuzzyVec, rhs: FuzzyVec, worlds) -> Optional[dict]:
    bad = lhs.first_violation(rhs)
    if bad is None:
        return None
    i, a, b = bad
    return {"world": worlds[i], "lhs": format_value(a), "rhs": format_value(b)}


def _mat_violation(lhs: FuzzyMat, rhs: FuzzyMat, rows, cols) -> Optional[dict]:
    bad = lhs.first_violation(rhs)
    if bad is None:
        return None
    (i, j), a, b = bad
    return {"pair": [rows[i], cols[j]], "lhs": format_value(a), "rhs": format_value(b)}


def check_conditions(
    m1: KripkeModel, m2: KripkeModel, phi: FuzzyMat, sim_type: SimType
) -> list[ConditionCheck]:
    """Literal verdicts for every defining inequality of ``sim_type``.

    This is the dual route to the fixpoint construction: each condition is
    evaluated directly from compositions, so it can cross-check matrices
    produced by :func:`greatest_pre` (or any externally supplied relation).
    """
    sim_type = SimType(sim_type)
    check_comparable(m1, m2)
    m1.algebra.check_same(phi.algebra)
    if phi.shape != (len(m1.worlds), len(m2.worlds)):
        raise ValueError(
            f"relation shape {phi.shape} does not match world counts "
            f"{(len(m1.worlds), len(m2.worlds))}"
        )
    checks = []
    variables = sorted(m1.valuation)
    vec_tags = _THETA_VEC[sim_type]

    for tag in vec_tags:
        for p in variables:
            lhs, rhs = _vec_condition(tag, m1, m2, phi, p)
            side1 = m1.worlds if tag in ("fwd", "bwd") else m2.worlds
            checks.append(
                ConditionCheck(
                    name=f"{sim_type.value}-1[{tag}, p={p}]",
                    statement=_COND1_TEXT[tag].format(p=p),
                    holds=lhs.leq(rhs),
                    violation=_vec_violation(lhs, rhs, side1),
                )
            )

    for tag in _THETA2[sim_type]:
        for i in m1.indices:
            r, rp = m1.relations[i], m2.relations[i]
            inv = phi.inverse()
            if tag == "fwd":
                lhs, rhs = inv.compose(r), rp.compose(inv)
                rows, cols = m2.worlds, m1.worlds
            elif tag == "fwd_inv":
                lhs, rhs = phi.compose(rp), r.compose(phi)
                rows, cols = m1.worlds, m2.worlds
            elif tag == "bwd":
                lhs, rhs = r.compose(phi), phi.compose(rp)
                rows, cols = m1.worlds, m2.worlds
            else:
                lhs, rhs = rp.compose(inv), inv.compose(r)
                rows, cols = m2.worlds, m1.worlds
            checks.append(
                ConditionCheck(
                    name=f"{sim_type.value}-2[{tag}, i={i}]",
                    statement=_COND2_TEXT[tag].format(i=i),
                    holds=lhs.leq(rhs),
                    violation=_mat_violation(lhs, rhs, rows, cols),
                )
            )

    for tag in vec_tags:
        for p in variables:
            lhs, rhs = _vec_condition3(tag, m1, m2, phi, p)
            side3 = m2.worlds if tag in ("fwd", "bwd") else m1.worlds
            checks.append(
                ConditionCheck(
                    name=f"{sim_type.value}-3[{tag}, p={p}]",
                    statement=_COND3_TEXT[tag].format(p=p),
                    holds=lhs.leq(rhs),
                    violation=_vec_violation(lhs, rhs, side3),
                )
            )
    return checks


@dataclass
class SimReport:
    """The greatest pre-relation of one kind, with its verdicts."""

    sim_type: SimType
    matrix: FuzzyMat
    row_worlds: tuple[str, ...]
    col_worlds: tuple[str, ...]
    iterations: int
    satisfies_condition1: bool
    nonempty: bool
    exists: bool
    conditions: list[ConditionCheck] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "type": self.sim_type.value,
            "row_worlds": list(self.row_worlds),
            "col_worlds": list(self.col_worlds),
            "matrix": [[format_value(v) for v in row] for row in self.matrix.rows],
            "iterations": self.iterations,
            "satisfies_condition1": self.satisfies_condition1,
            "nonempty": self.nonempty,
            "exists": self.exists,
            "conditions": [c.to_dict() for c in self.conditions],
        }


def _initial_relation(m1: KripkeModel, m2: KripkeModel, sim_type: SimType) -> FuzzyMat:
    """Entrywise greatest solution of the -3 conditions (by adjunction)."""
    alg = m1.algebra
    op = alg.residuum if sim_type.is_simulation else alg.biimplication
    n1, n2 = len(m1.worlds), len(m2.worlds)
    variables = sorted(m1.valuation)
    rows = []
    for w in range(n1):
        row = []
        for wp in range(n2):
            value = ONE
            for p in variables:
                value = alg.meet(value, op(m1.valuation[p][w], m2.valuation[p][wp]))
            row.append(value)
        rows.append(row)
    return FuzzyMat(alg, rows)


def iteration_cap(m1: KripkeModel, m2: KripkeModel) -> int:
    """Default sweep cap: generous, and only reachable on an internal error."""
    values = {0, 1}
    for m in (m1, m2):
        for rel in m.relations.values():
            values |= rel.values_used()
        for vec in m.valuation.values():
            values |= set(vec.values)
    return 10 * len(m1.worlds) * len(m2.worlds) * len(values) + 10


def greatest_pre(
    m1: KripkeModel,
    m2: KripkeModel,
    sim_type: SimType,
    max_iterations: Optional[int] = None,
) -> SimReport:
    """The greatest pre-simulation/bisimulation of the given kind.

    The returned matrix always satisfies the -2 and -3 conditions exactly;
    ``exists`` reports whether it is also nonempty and satisfies -1, i.e.
    whether a relation proper of this kind exists.
    """
    sim_type = SimType(sim_type)
    check_comparable(m1, m2)
    if max_iterations is None:
        max_iterations = iteration_cap(m1, m2)

    phi = _initial_relation(m1, m2, sim_type)
    updates = [
        (RESIDUAL_UPDATES[tag], m1.relations[i], m2.relations[i])
        for tag in _THETA2[sim_type]
        for i in m1.indices
    ]
    iterations = 0
    while True:
        if iterations > max_iterations:
            raise RuntimeError(
                f"fixpoint failed to stabilize within {max_iterations} sweeps; "
                "this indicates an internal error"
            )
        new = phi
        for update, r, rp in updates:
            new = new.meet(update(r, rp, phi))
        iterations += 1
        if new == phi:
            break
        phi = new

    conditions = check_conditions(m1, m2, phi, sim_type)
    cond1 = all(c.holds for c in conditions if "-1[" in c.name)
    nonempty = not phi.is_zero()
    return SimReport(
        sim_type=sim_type,
        matrix=phi,
        row_worlds=m1.worlds,
        col_worlds=m2.worlds,
        iterations=iterations,
        satisfies_condition1=cond1,
        nonempty=nonempty,
        exists=cond1 and nonempty,
        conditions=conditions,
    )


def exists_bisim(
    m1: KripkeModel, m2: KripkeModel, sim_type: SimType
) -> tuple[bool, SimReport]:
    """Whether a relation proper of this kind exists, with the full report."""
    report = greatest_pre(m1, m2, sim_type)
    return report.exists, report

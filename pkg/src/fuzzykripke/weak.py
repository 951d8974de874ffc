"""Weak (pre)simulations and (pre)bisimulations for explicit formula sets.

Given a set Psi of formulae, the weak conditions constrain a relation phi
through formula values rather than through the model relations:

    ws-1:  V_A <= V'_A o phi^-1            (same shape as the fs-1 family)
    ws-2:  phi^-1 o V_A <= V'_A            for every A in Psi
    wb-1:  ws-1 and V'_A <= V_A o phi
    wb-2:  ws-2 and phi o V'_A <= V_A

The greatest weak pre-relations have closed forms, entrywise over pairs:

    presimulation(w, w')   = meet_A  V_A(w) ->  V'_A(w')
    prebisimulation(w, w') = meet_A  V_A(w) <-> V'_A(w')

Weak bisimulations are closed under union and under composition along a
chain of models; both closures are checkable here.  Reversing both models
while dualizing Psi leaves the closed forms unchanged, which
:func:`duality_transfer` verifies for fragment-generated sets.

A prebisimulation matrix also reads off formula-set equivalence of the two
models: they agree exactly when every row and every column contains 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .algebra import ONE, format_value
from .bisim import ConditionCheck, _mat_violation, _vec_violation
from .fuzzrel import FuzzyMat
from .model import KripkeModel, check_comparable
from .syntax import Formula, Fragment, dual, enumerate_formulas, to_text


def _formula_vectors(m1: KripkeModel, m2: KripkeModel, formulas):
    pairs = []
    for f in formulas:
        pairs.append((m1.eval_vec(f), m2.eval_vec(f)))
    return pairs


def _closed_form(m1, m2, vector_pairs, op) -> FuzzyMat:
    alg = m1.algebra
    n1, n2 = len(m1.worlds), len(m2.worlds)
    rows = [[ONE] * n2 for _ in range(n1)]
    for va, vap in vector_pairs:
        for w in range(n1):
            row = rows[w]
            x = va[w]
            for wp in range(n2):
                row[wp] = alg.meet(row[wp], op(x, vap[wp]))
    return FuzzyMat(alg, rows)


def psi_equivalent(prebisim: FuzzyMat) -> bool:
    """Formula-set equivalence read off a weak prebisimulation matrix:
    every row and every column must contain 1."""
    rows_ok = all(any(v == 1 for v in row) for row in prebisim.rows)
    cols_ok = all(
        any(prebisim.rows[i][j] == 1 for i in range(len(prebisim.rows)))
        for j in range(len(prebisim.rows[0]))
    )
    return rows_ok and cols_ok


@dataclass
class WeakReport:
    """Greatest weak pre-relations for one formula set."""

    formula_count: int
    row_worlds: tuple[str, ...]
    col_worlds: tuple[str, ...]
    presimulation: FuzzyMat
    prebisimulation: FuzzyMat
    presim_satisfies_condition1: bool
    prebisim_satisfies_condition1: bool
    presim_nonempty: bool
    prebisim_nonempty: bool
    equivalent: bool
    formulas: list[Formula] = field(default_factory=list, repr=False)

    @property
    def simulation_exists(self) -> bool:
        return self.presim_satisfies_condition1 and self.presim_nonempty

    @property
    def bisimulation_exists(self) -> bool:
        return self.prebisim_satisfies_condition1 and self.prebisim_nonempty

    def to_dict(self) -> dict:
        return {
            "formula_count": self.formula_count,
            "row_worlds": list(self.row_worlds),
            "col_worlds": list(self.col_worlds),
            "presimulation": [
                [format_value(v) for v in row] for row in self.presimulation.rows
            ],
            "prebisimulation": [
                [format_value(v) for v in row] for row in self.prebisimulation.rows
            ],
            "presim_satisfies_condition1": self.presim_satisfies_condition1,
            "prebisim_satisfies_condition1": self.prebisim_satisfies_condition1,
            "simulation_exists": self.simulation_exists,
            "bisimulation_exists": self.bisimulation_exists,
            "equivalent": self.equivalent,
        }


def greatest_weak(
    m1: KripkeModel, m2: KripkeModel, formulas: Iterable[Formula]
) -> WeakReport:
    """Greatest weak presimulation and prebisimulation for ``formulas``."""
    check_comparable(m1, m2)
    formulas = list(formulas)
    if not formulas:
        raise ValueError("a weak relation needs a nonempty formula set")
    alg = m1.algebra
    pairs = _formula_vectors(m1, m2, formulas)
    presim = _closed_form(m1, m2, pairs, alg.residuum)
    prebisim = _closed_form(m1, m2, pairs, alg.biimplication)

    def cond1(phi: FuzzyMat, both_sides: bool) -> bool:
        inv = phi.inverse()
        for va, vap in pairs:
            if not va.leq(vap.compose_mat(inv)):
                return False
            if both_sides and not vap.leq(va.compose_mat(phi)):
                return False
        return True

    return WeakReport(
        formula_count=len(formulas),
        row_worlds=m1.worlds,
        col_worlds=m2.worlds,
        presimulation=presim,
        prebisimulation=prebisim,
        presim_satisfies_condition1=cond1(presim, False),
        prebisim_satisfies_condition1=cond1(prebisim, True),
        presim_nonempty=not presim.is_zero(),
        prebisim_nonempty=not prebisim.is_zero(),
        equivalent=psi_equivalent(prebisim),
        formulas=formulas,
    )


def check_weak(
    m1: KripkeModel,
    m2: KripkeModel,
    phi: FuzzyMat,
    formulas: Iterable[Formula],
    bisimulation: bool = True,
) -> list[ConditionCheck]:
    """Literal weak-condition verdicts for an arbitrary relation.

    With ``bisimulation`` False only the one-sided (ws) conditions are
    checked.  Each verdict carries the first violating entry, labelled with
    the offending formula.
    """
    check_comparable(m1, m2)
    m1.algebra.check_same(phi.algebra)
    if phi.shape != (len(m1.worlds), len(m2.worlds)):
        raise ValueError(
            f"relation shape {phi.shape} does not match world counts "
            f"{(len(m1.worlds), len(m2.worlds))}"
        )
    formulas = list(formulas)
    if not formulas:
        raise ValueError("a weak relation needs a nonempty formula set")
    kind = "wb" if bisimulation else "ws"
    inv = phi.inverse()
    checks = []
    for f in formulas:
        label = to_text(f)
        va = m1.eval_vec(f)
        vap = m2.eval_vec(f)

        lhs, rhs = va, vap.compose_mat(inv)
        checks.append(
            ConditionCheck(
                name=f"{kind}-1[fwd, A={label}]",
                statement="V_A <= V'_A o phi^-1",
                holds=lhs.leq(rhs),
                violation=_vec_violation(lhs, rhs, m1.worlds),
            )
        )
        if bisimulation:
            lhs, rhs = vap, va.compose_mat(phi)
            checks.append(
                ConditionCheck(
                    name=f"{kind}-1[fwd_inv, A={label}]",
                    statement="V'_A <= V_A o phi",
                    holds=lhs.leq(rhs),
                    violation=_vec_violation(lhs, rhs, m2.worlds),
                )
            )

        lhs, rhs = inv.compose_vec(va), vap
        checks.append(
            ConditionCheck(
                name=f"{kind}-2[fwd, A={label}]",
                statement="phi^-1 o V_A <= V'_A",
                holds=lhs.leq(rhs),
                violation=_vec_violation(lhs, rhs, m2.worlds),
            )
        )
        if bisimulation:
            lhs, rhs = phi.compose_vec(vap), va
            checks.append(
                ConditionCheck(
                    name=f"{kind}-2[fwd_inv, A={label}]",
                    statement="phi o V'_A <= V_A",
                    holds=lhs.leq(rhs),
                    violation=_vec_violation(lhs, rhs, m1.worlds),
                )
            )
    return checks


def _require_weak(m1, m2, phi, formulas, bisimulation, who: str) -> None:
    failed = [c for c in check_weak(m1, m2, phi, formulas, bisimulation) if not c.holds]
    if failed:
        raise ValueError(
            f"{who} is not a weak {'bisimulation' if bisimulation else 'simulation'}: "
            f"{failed[0].name} fails"
        )


def check_union_closed(
    m1: KripkeModel,
    m2: KripkeModel,
    formulas: Iterable[Formula],
    phi1: FuzzyMat,
    phi2: FuzzyMat,
    bisimulation: bool = True,
) -> bool:
    """Verify the join of two weak relations is again one (it must be)."""
    formulas = list(formulas)
    _require_weak(m1, m2, phi1, formulas, bisimulation, "phi1")
    _require_weak(m1, m2, phi2, formulas, bisimulation, "phi2")
    joined = phi1.join(phi2)
    return all(c.holds for c in check_weak(m1, m2, joined, formulas, bisimulation))


def check_composition_closed(
    m1: KripkeModel,
    m2: KripkeModel,
    m3: KripkeModel,
    formulas: Iterable[Formula],
    phi12: FuzzyMat,
    phi23: FuzzyMat,
    bisimulation: bool = True,
) -> bool:
    """Verify the composition along m1 -> m2 -> m3 is weak between m1 and m3."""
    formulas = list(formulas)
    _require_weak(m1, m2, phi12, formulas, bisimulation, "phi12")
    _require_weak(m2, m3, phi23, formulas, bisimulation, "phi23")
    composed = phi12.compose(phi23)
    return all(c.holds for c in check_weak(m1, m3, composed, formulas, bisimulation))


@dataclass
class DualityVerdict:
    holds: bool
    forward: FuzzyMat   # closed form on (m1, m2) for the fragment set
    reversed_: FuzzyMat  # closed form on the reversed models for the dual set

    def __bool__(self):
        return self.holds


def duality_transfer(
    m1: KripkeModel,
    m2: KripkeModel,
    fragment: Fragment,
    depth: int,
    budget: int = 200_000,
) -> DualityVerdict:
    """Reversing both models while dualizing the formula set preserves the
    greatest weak prebisimulation; verified by direct evaluation."""
    enum = enumerate_formulas(m1, m2, Fragment(fragment), depth, budget=budget)
    formulas = enum.formulas()
    forward = greatest_weak(m1, m2, formulas).prebisimulation
    dual_formulas = [dual(f) for f in formulas]
    reversed_ = greatest_weak(m1.reverse(), m2.reverse(), dual_formulas).prebisimulation
    return DualityVerdict(forward == reversed_, forward, reversed_)

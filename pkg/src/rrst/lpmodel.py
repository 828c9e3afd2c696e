"""Linear relaxation of one shrinking two-stage selection state.

The model has one variable per surviving first-stage element ("x"), one per
surviving second-stage element ("y"), and one per element still eligible to
count toward the overlap quota ("z").  Eager rows fix the cardinality of
each stage, tie every z below its x and its y, and make the z total meet the
remaining quota; the exponential families (forest or rank inequalities) are
added lazily by `cutting_plane_solve` until the optimum satisfies them all.

When one stage has finished shrinking, the surviving stage is built alone
and the overlap quota becomes a single aggregated lower bound on its
variables; the z values are then reconstructed greedily afterwards, which
reproduces exactly the vertex the two-stage model would have produced.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .config import SolveConfig
from .errors import InfeasibleModel, InternalError, IterationLimit
from .rational import ONE, ZERO, rat
from .simplex import (
    EQ,
    INFEASIBLE,
    LE,
    UNBOUNDED,
    LinearProgram,
    SimplexSession,
    VertexSolution,
    dump_lp,
)


@dataclass
class RelaxationModel:
    lp: LinearProgram
    x_vars: dict[int, tuple]  # element id -> LP variable id
    z_vars: dict[int, tuple]
    y_vars: dict[int, tuple]
    ez: tuple[int, ...]
    quota: int  # required z total still outstanding
    x_side: object | None
    y_side: object | None
    # None = both stages, "x"/"y" = that stage only, "merged" = one block
    # standing for x, z and y at once
    reduced: str | None


def _neg(coeffs: dict) -> dict:
    return {v: -c for v, c in coeffs.items()}


def build_relaxation(x_side, y_side, ez, quota: int, costs) -> RelaxationModel:
    """Build the LP for the current state.

    `x_side` / `y_side` are selection sides (None or inactive when that
    stage is complete); `ez` the overlap-eligible ids; `quota` the overlap
    still required; `costs` maps id -> CostTriple.
    """
    x_active = x_side is not None and x_side.is_active()
    y_active = y_side is not None and y_side.is_active()
    if not x_active and not y_active:
        raise InternalError("relaxation requested but both stages are complete")
    ez = tuple(sorted(ez))
    if quota < 0:
        raise InternalError(f"negative overlap quota {quota}")
    if quota > 0 and not ez:
        raise InfeasibleModel("overlap quota outstanding but no shared elements remain")

    if x_active and y_active:
        x_ids = x_side.element_ids
        y_ids = y_side.element_ids
        if (
            quota > 0
            and quota == x_side.target_size() == y_side.target_size()
            and set(ez) == set(x_ids) == set(y_ids)
            and x_side.same_structure(y_side)
        ):
            # the cardinality rows and the overlap links force the three
            # blocks equal pointwise, so one merged block suffices
            return _build_merged(x_side, y_side, ez, quota, costs)
        return _build_full(x_side, y_side, ez, quota, costs)
    if y_active:
        return _build_one_stage(y_side, ez, quota, costs, stage="y")
    return _build_one_stage(x_side, ez, quota, costs, stage="x")


def _build_full(x_side, y_side, ez, quota, costs) -> RelaxationModel:
    x_ids = x_side.element_ids
    y_ids = y_side.element_ids
    x_set, y_set = set(x_ids), set(y_ids)
    for e in ez:
        if e not in x_set and e not in y_set:
            raise InternalError(f"overlap-eligible element {e} survives in neither stage")

    lp = LinearProgram()
    x_vars = {e: ("x", e) for e in x_ids}
    z_vars = {e: ("z", e) for e in ez}
    y_vars = {e: ("y", e) for e in y_ids}
    for e in x_ids:
        lp.add_variable(x_vars[e])
    for e in ez:
        lp.add_variable(z_vars[e])
    for e in y_ids:
        lp.add_variable(y_vars[e])

    objective = {x_vars[e]: costs[e].C for e in x_ids}
    for e in y_ids:
        objective[y_vars[e]] = costs[e].second
    lp.set_objective(objective)

    lp.add_constraint({x_vars[e]: ONE for e in x_ids}, EQ, rat(x_side.target_size()))
    for e in ez:
        if e in x_set:
            lp.add_constraint({z_vars[e]: ONE, x_vars[e]: -ONE}, LE, ZERO)
    if ez:
        lp.add_constraint({z_vars[e]: ONE for e in ez}, EQ, rat(quota))
    for e in ez:
        if e in y_set:
            lp.add_constraint({z_vars[e]: ONE, y_vars[e]: -ONE}, LE, ZERO)
    lp.add_constraint({y_vars[e]: ONE for e in y_ids}, EQ, rat(y_side.target_size()))

    return RelaxationModel(lp, x_vars, z_vars, y_vars, ez, quota, x_side, y_side, None)


def _build_merged(x_side, y_side, ez, quota, costs) -> RelaxationModel:
    """One variable per element standing for x, z and y at once.

    Valid exactly when every element is overlap-eligible and the overlap
    quota equals both stage targets: summing z <= x over the full index set
    against equal totals forces z = x (and likewise z = y), so a vertex of
    this program is a vertex of the full program and vice versa.
    """
    lp = LinearProgram()
    wvars = {e: ("w", e) for e in ez}
    for e in ez:
        lp.add_variable(wvars[e])
    lp.set_objective({wvars[e]: costs[e].C + costs[e].second for e in ez})
    lp.add_constraint({wvars[e]: ONE for e in ez}, EQ, rat(quota))
    return RelaxationModel(lp, wvars, wvars, wvars, ez, quota, x_side, y_side, "merged")


def _build_one_stage(side, ez, quota, costs, stage: str) -> RelaxationModel:
    ids = side.element_ids
    id_set = set(ids)
    for e in ez:
        if e not in id_set:
            raise InternalError(f"overlap-eligible element {e} missing from surviving stage")

    lp = LinearProgram()
    svars = {e: (stage, e) for e in ids}
    for e in ids:
        lp.add_variable(svars[e])
    if stage == "y":
        lp.set_objective({svars[e]: costs[e].second for e in ids})
    else:
        lp.set_objective({svars[e]: costs[e].C for e in ids})

    lp.add_constraint({svars[e]: ONE for e in ids}, EQ, rat(side.target_size()))
    if quota > 0:
        # sum over ez of the stage variable >= quota, as a <= row
        lp.add_constraint(_neg({svars[e]: ONE for e in ez}), LE, rat(-quota))

    x_vars = svars if stage == "x" else {}
    y_vars = svars if stage == "y" else {}
    x_side = side if stage == "x" else None
    y_side = side if stage == "y" else None
    # z values are reconstructed after solving; reserve their value keys
    z_vars = {e: ("z", e) for e in ez}
    return RelaxationModel(lp, x_vars, z_vars, y_vars, ez, quota, x_side, y_side, stage)


def _reconstruct_z(model: RelaxationModel, values: dict) -> dict:
    """Greedy overlap values for a one-stage model, lowest ids first.

    The stage variables over `ez` sum to at least the quota, so walking ids
    in increasing order and taking min(stage value, what is still owed)
    always lands exactly on the quota.
    """
    svars = model.y_vars if model.reduced == "y" else model.x_vars
    remaining = rat(model.quota)
    zvals = {}
    for e in model.ez:
        v = values[svars[e]]
        take = v if v <= remaining else remaining
        zvals[model.z_vars[e]] = take
        remaining -= take
    if remaining != 0:
        raise InternalError("overlap reconstruction fell short of the quota")
    return zvals


@dataclass
class CutPlaneResult:
    solution: VertexSolution
    rounds: int
    cuts_added: int


def cutting_plane_solve(model: RelaxationModel, config: SolveConfig, dump_tag: str | None = None) -> CutPlaneResult:
    """Optimize the model, lazily adding violated forest/rank rows.

    Each round separates the current vertex on both stages; violated rows
    are appended to the warm tableau and repaired with the dual simplex.
    Returns once no violated row exists.  The resulting vertex always
    carries values for the model's z variables (reconstructed when the
    model is one-staged).
    """
    session = SimplexSession(model.lp)
    rounds = 0
    cuts_added = 0
    while True:
        if session.status == INFEASIBLE:
            raise InfeasibleModel("relaxation is infeasible")
        if session.status == UNBOUNDED:
            raise InternalError("relaxation unbounded despite nonnegative costs")
        solution = session.result().solution
        pending = []
        merged = model.x_vars is model.y_vars
        point_x = point_y = None
        if model.x_side is not None:
            point_x = {e: solution.values[model.x_vars[e]] for e in model.x_vars}
        if model.y_side is not None and not merged:
            point_y = {e: solution.values[model.y_vars[e]] for e in model.y_vars}
        mirrored = (
            point_x is not None
            and point_y is not None
            and point_x == point_y
            and model.x_side.same_structure(model.y_side)
        )
        if point_x is not None:
            for cut in model.x_side.separate(point_x, config.separation, config.cuts_per_round):
                pending.append(({model.x_vars[e]: ONE for e in cut.elements}, cut.rhs))
                if mirrored:
                    # identical structure and point: the same row is violated
                    # on the other stage, no need to sweep it again
                    pending.append(({model.y_vars[e]: ONE for e in cut.elements}, cut.rhs))
        if point_y is not None and not mirrored:
            for cut in model.y_side.separate(point_y, config.separation, config.cuts_per_round):
                pending.append(({model.y_vars[e]: ONE for e in cut.elements}, cut.rhs))
        if not pending:
            break
        rounds += 1
        if rounds > config.round_limit:
            raise IterationLimit(f"cutting-plane rounds exceeded {config.round_limit}")
        for coeffs, rhs in pending:
            lhs = sum((solution.values[v] for v in coeffs), ZERO)
            if lhs <= rhs:
                raise InternalError("separation produced a row the vertex already satisfies")
        session.add_cuts(pending)
        cuts_added += len(pending)

    if model.reduced in ("x", "y") and model.ez:
        zvals = _reconstruct_z(model, solution.values)
        merged = dict(solution.values)
        merged.update(zvals)
        solution = VertexSolution(merged, solution.basis, solution.objective_value)

    if config.lp_dump_dir is not None:
        os.makedirs(config.lp_dump_dir, exist_ok=True)
        name = f"{dump_tag or 'model'}.lp.txt"
        with open(os.path.join(config.lp_dump_dir, name), "w", encoding="utf-8") as fh:
            fh.write(dump_lp(model.lp))

    return CutPlaneResult(solution, rounds, cuts_added)

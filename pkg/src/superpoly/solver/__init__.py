from superpoly.solver.evaluate import evaluate_layout, layout_union
from superpoly.solver.exact import solve_brute, solve_exact, steiner_cost
from superpoly.solver.heuristics import (
    solve_greedy,
    solve_line_single_color,
    subshape_filter,
)
from superpoly.solver.instance import (
    Instance,
    Layout,
    emit_instance,
    emit_layout,
    load_instance,
    parse_instance,
    parse_layout,
    save_instance,
)
from superpoly.solver.models import (
    SearchStats,
    SolveResult,
    SolverConfig,
    SolverMode,
    default_window,
)

__all__ = [
    "Instance",
    "Layout",
    "SearchStats",
    "SolveResult",
    "SolverConfig",
    "SolverMode",
    "default_window",
    "emit_instance",
    "emit_layout",
    "evaluate_layout",
    "layout_union",
    "load_instance",
    "parse_instance",
    "parse_layout",
    "save_instance",
    "solve_brute",
    "solve_exact",
    "solve_greedy",
    "solve_line_single_color",
    "steiner_cost",
]

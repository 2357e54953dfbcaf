"""Value-filtered STRIPS planning.

An agent's value thresholds and per-proposition assessments decide which
propositions it can accept; planning is then restricted to operators whose
effects stay inside that set.
"""

from .core import (INDETERMINATE, AgentProfile, Goal, Operator, PlanningProblem, Scale, State,
                   Weight, World, make_state)
from .dsl import Document, parse, parse_file, render
from .ethics import (Cleaning, admissible_operators, classify_cleaning, goal_valid,
                     operator_admissible)
from .planner import Mode, Plan, SearchConfig, find_plans, validate_plan
from .vfr import (compare_agents, cooperation_check, explain_filter, passes_value,
                  prop_base_clean, prop_base_clean_complement)

__all__ = [
    "INDETERMINATE", "AgentProfile", "Goal", "Operator", "PlanningProblem", "Scale", "State",
    "Weight", "World", "make_state", "Document", "parse", "parse_file", "render", "Cleaning",
    "admissible_operators", "classify_cleaning", "goal_valid", "operator_admissible", "Mode",
    "Plan", "SearchConfig", "find_plans", "validate_plan", "compare_agents", "cooperation_check",
    "explain_filter", "passes_value", "prop_base_clean", "prop_base_clean_complement",
]

"""Coset leaders and dimensions of LCD BCH codes of length (q^m + 1)/lambda."""

from .cosets import (Coset, CosetContext, LeaderRecord, LeaderTable, coset_of,
                     is_leader_bruteforce, is_leader_fast, lambda_lift,
                     leaders_in_interval, top_leaders)
from .dims import (BchSpec, CodeParams, defining_set, dimension_closed_form,
                   dimension_exact, distance_lower_bound, range_table)
from .errors import BudgetExceeded, DeskScaleExceeded, Uncovered
from .leaders import DeltaSet, classify, conjecture_delta34, delta_lambda, delta_set

__version__ = "0.1.0"

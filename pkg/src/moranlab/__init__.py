"""Moran processes on graphs: simulation, exact solvers, walk recurrences, audits."""

from .engine import (Estimate, MutantState, Outcome, ProcessParams, Terminal,
                     Variant, estimate_fixation, run, step_active, transition_probs)
from .errors import (CapacityError, ConditioningError, DomainError, MoranLabError,
                     ParameterError, SpecificationError, StateError, StructureError)
from .exact import (WalkClosedFormQuery, classical_moran_fixation, exact_fixation,
                    exact_fixation_all, expected_duration, gambler_phi,
                    neutral_bd_fixation, neutral_db_fixation, oracle_duration)
from .graph import (Graph, ThresholdParams, VertexClasses, bfs_distances, classify,
                    complete_bipartite_graph, complete_graph, cycle_graph,
                    derive_thresholds, from_edges, generate_gnp, load_edge_list,
                    path_graph, save_edge_list, star_graph, UNREACHABLE)
from .stats import TailBoundQuery, binomial_ci, chernoff
from .audit import AuditConfig, PropertyReport, audit, verify_witness
from .walks import (RecurrenceSolution, RegimeWalkSpec, bdf3, bdf4, constant_bias_spec,
                    dbf2, dbf3_coupled, dbf4, dbf5, q_vector, simulate_spec,
                    solve_recurrence, AT_J, AT_J_MINUS_1)

__version__ = "0.1.0"

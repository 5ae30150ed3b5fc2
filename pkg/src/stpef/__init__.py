"""Extended formulations of spanning tree polytopes, with exact verification."""

from .exactq import LPProblem, LPSolution, Row, SimplexSolver, lp_solve
from .formulations import (
    bounded_genus_stp,
    forest_ef,
    kapex_stp,
    martin_stp,
    nesubp_deletion_ef,
    nesubp_planar_ef,
    stp_from_nesubp,
    subp_ef,
    williams_stp,
)
from .graph import Multigraph, components, enumerate_spanning_trees, kruskal_mst, new_multigraph
from .planar import PlanarizerStrategy, is_planar, planarizing_set
from .polyhedra import ExtForm
from .surface import RotationSystem, dual_graph, euler_genus, trace_faces
from .verify import VerificationReport, verify_nesubp, verify_stp_exact, verify_stp_sampled

__version__ = "0.1.0"

__all__ = [
    "ExtForm", "LPProblem", "LPSolution", "Multigraph", "PlanarizerStrategy", "RotationSystem", "Row",
    "SimplexSolver", "VerificationReport", "bounded_genus_stp", "components", "dual_graph",
    "enumerate_spanning_trees", "euler_genus", "forest_ef", "is_planar", "kapex_stp", "kruskal_mst",
    "lp_solve", "martin_stp", "nesubp_deletion_ef", "nesubp_planar_ef", "new_multigraph",
    "planarizing_set", "stp_from_nesubp", "subp_ef", "trace_faces", "verify_nesubp", "verify_stp_exact",
    "verify_stp_sampled", "williams_stp",
]

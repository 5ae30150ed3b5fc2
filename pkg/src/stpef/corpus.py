"""Named test graphs shared by the oracles, the CLI and the acceptance suite."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .graph import (
    Multigraph,
    add_apex,
    complete_bipartite,
    complete_graph,
    cube_graph,
    cycle_graph,
    new_multigraph,
    path_graph,
    petersen_graph,
    planar_grid,
    torus_grid,
    wheel_graph,
)
from .surface import RotationSystem, planar_grid_rotation, rotation_from_neighbor_order, torus_grid_rotation

# cyclic neighbor orders giving K5 a five-face embedding on the torus
K5_TORUS_ORDER = ((1, 2, 3, 4), (0, 2, 3, 4), (0, 1, 4, 3), (0, 2, 1, 4), (0, 3, 1, 2))


@dataclass(frozen=True)
class CorpusGraph:
    name: str
    graph: Multigraph
    planar: bool
    rotation: Optional[RotationSystem] = None
    genus: Optional[int] = None
    apex: Optional[tuple[int, ...]] = None


def triangle_with_pendant() -> Multigraph:
    return new_multigraph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


def bridged_triangles() -> Multigraph:
    """Two triangles joined by a single bridge."""
    return new_multigraph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])


def k5_torus_rotation() -> RotationSystem:
    return rotation_from_neighbor_order(complete_graph(5), K5_TORUS_ORDER)


def _builders() -> list[Callable[[], CorpusGraph]]:
    def wheel_apex() -> CorpusGraph:
        g = add_apex(wheel_graph(5))
        return CorpusGraph("W6+apex", g, False, apex=(g.n - 1,))

    def grid3() -> CorpusGraph:
        g = planar_grid(3)
        return CorpusGraph("grid3x3", g, True, planar_grid_rotation(g, 3), 0)

    return [
        lambda: CorpusGraph("K2", complete_graph(2), True, genus=0),
        lambda: CorpusGraph("P3", path_graph(3), True, genus=0),
        lambda: CorpusGraph("C3", cycle_graph(3), True, genus=0),
        lambda: CorpusGraph("K4", complete_graph(4), True, genus=0),
        lambda: CorpusGraph("paw", triangle_with_pendant(), True, genus=0),
        lambda: CorpusGraph("bridged-triangles", bridged_triangles(), True, genus=0),
        lambda: CorpusGraph("C5", cycle_graph(5), True, genus=0),
        lambda: CorpusGraph("W6", wheel_graph(5), True, genus=0),
        lambda: CorpusGraph("cube", cube_graph(), True, genus=0),
        lambda: CorpusGraph("K5", complete_graph(5), False, k5_torus_rotation(), 1, (4,)),
        lambda: CorpusGraph("K3,3", complete_bipartite(3, 3), False, apex=(0,)),
        lambda: CorpusGraph("K6", complete_graph(6), False),
        wheel_apex,
        grid3,
        lambda: CorpusGraph("C3xC3", torus_grid(3), False, torus_grid_rotation(3), 1),
        lambda: CorpusGraph("petersen", petersen_graph(), False),
        lambda: CorpusGraph("C4xC4", torus_grid(4), False, torus_grid_rotation(4), 1),
    ]


def corpus() -> list[CorpusGraph]:
    """All corpus graphs in a fixed order."""
    return [build() for build in _builders()]


def corpus_graph(name: str) -> CorpusGraph:
    for entry in corpus():
        if entry.name == name:
            return entry
    raise KeyError(f"no corpus graph named {name!r}")

"""C1 virtual element solver for the clamped Kirchhoff-Love plate on polygonal meshes."""

from ._core import (
    C1VemError,
    ConvergenceTable,
    ErrorReport,
    PolygonalMesh,
    ShapeRegularityReport,
    __version__,
    build_uniform_triangle_mesh,
    build_voronoi_mesh,
    check_shape_regularity,
    convergence_study,
    local_projector,
    local_stiffness,
    manufactured_value,
    read_mesh,
    solve_plate,
    write_mesh,
)

__all__ = [
    "C1VemError",
    "ConvergenceTable",
    "ErrorReport",
    "PolygonalMesh",
    "ShapeRegularityReport",
    "__version__",
    "build_uniform_triangle_mesh",
    "build_voronoi_mesh",
    "check_shape_regularity",
    "convergence_study",
    "local_projector",
    "local_stiffness",
    "manufactured_value",
    "read_mesh",
    "solve_plate",
    "write_mesh",
]

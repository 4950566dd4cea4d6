"""Table, graph and JSON renderings of a model."""

from .dot import export_dot
from .jsonio import SCHEMA_VERSION, export_json, import_json
from .tables import HazardLossMatrix, hazard_loss_matrix, render_hazard_table, render_uca_table

RENDER_TARGETS = ("markdown", "csv", "json", "dot")

__all__ = [
    "HazardLossMatrix", "RENDER_TARGETS", "SCHEMA_VERSION", "export_dot", "export_json",
    "hazard_loss_matrix", "import_json", "render_hazard_table", "render_uca_table",
]

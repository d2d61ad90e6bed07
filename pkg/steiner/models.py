import math
from pydantic import BaseModel, Field
from typing import List, Optional, Tuple

from core.errors import Degenerate
from schemas.common import Matrix, Vector, as_list
from steiner.dihedral import concircularity_check
from steiner.types import DihedralSolution, SteinerTree


class TetrahedronRequest(BaseModel):
    """Weighted tetrahedron with a Steiner-edge weight"""
    vertices: Matrix = Field(..., description="Four vertices in R^3")
    weights: Vector = Field(..., description="Terminal weights b1..b4")
    bst: float = Field(..., gt=0, description="Weight of the edge joining the two Steiner nodes")

    class Config:
        json_schema_extra = {
            "example": {
                "vertices": [[2, 0, 0], [6.86, 1.37, 0], [0, 0, 5], [0, 6, 5]],
                "weights": [0.85, 0.88, 0.83, 1.08],
                "bst": 1.0
            }
        }


class TopologyRequest(BaseModel):
    """Terminals and a fixed tree topology"""
    points: Matrix = Field(..., description="Terminal coordinates")
    weights: Vector = Field(..., description="One weight per terminal")
    bst: float = Field(..., gt=0, description="Weight of Steiner-Steiner edges")
    n_steiner: int = Field(..., ge=0, description="Number of mobile nodes, numbered after the terminals")
    edges: List[Tuple[int, int]] = Field(..., description="0-based node pairs")
    intermediate: bool = Field(False, description="Allow one Steiner node of degree above three")


class DihedralDocument(BaseModel):
    """Simpson line angles (radians, with degree copies) and lengths of the two-node tree"""
    phi: float = Field(..., description="Angle between the two split edges")
    delta12: float
    delta34: float
    alpha: float
    phi_deg: float
    H: float = Field(..., description="Distance between the edge lines")
    delta12_deg: float = Field(..., description="Rotation of the weighted third vertex about A1A2")
    delta34_deg: float = Field(..., description="Rotation of the weighted third vertex about A3A4")
    plane_angle12_deg: float
    plane_angle34_deg: float
    alpha_deg: float = Field(..., description="Inclination of the Simpson line")
    M12: Vector = Field(..., description="Foot of the common perpendicular on A1A2")
    M34: Vector
    T12: Vector = Field(..., description="Simpson line point on A1A2")
    T34: Vector
    iterations: int
    residual: float
    concircularity: Optional[float] = Field(None, description="Relative deviation of the five planar points from one circle")
    diagnostics: List[str] = Field(default_factory=list)


class SteinerTreeResponse(BaseModel):
    """Minimal weighted tree for a topology or the best of all candidates"""
    positions: Matrix = Field(..., description="Terminals first, then Steiner nodes")
    edges: List[Tuple[int, int]]
    weighted_length: float
    balance_residuals: Vector = Field(..., description="Force balance at each Steiner node")
    flags: List[str] = Field(default_factory=list, description="gauss, collapsed, fermat or regime flags")
    method: str = Field(..., description="simpson, descent, fermat or star")
    pairing: Optional[List[List[int]]] = Field(None, description="1-based terminal pairs joined at each node")
    dihedral: Optional[DihedralDocument] = None
    candidates: List[float] = Field(default_factory=list, description="Lengths of every candidate compared")


def dihedral_document(solution: DihedralSolution) -> DihedralDocument:
    sc = solution.scaffold
    try:
        concircularity = concircularity_check(solution)
    except Degenerate:
        concircularity = None
    return DihedralDocument(
        phi=solution.phi,
        delta12=solution.delta12,
        delta34=solution.delta34,
        alpha=solution.alpha,
        phi_deg=math.degrees(solution.phi),
        H=solution.H,
        delta12_deg=math.degrees(solution.delta12),
        delta34_deg=math.degrees(solution.delta34),
        plane_angle12_deg=math.degrees(solution.plane_angle12),
        plane_angle34_deg=math.degrees(solution.plane_angle34),
        alpha_deg=math.degrees(solution.alpha),
        M12=as_list(sc.M12),
        M34=as_list(sc.M34),
        T12=as_list(solution.T12),
        T34=as_list(solution.T34),
        iterations=solution.iterations,
        residual=solution.residual,
        concircularity=concircularity,
        diagnostics=list(solution.diagnostics)
    )


def tree_document(tree: SteinerTree) -> SteinerTreeResponse:
    pairing = None if tree.pairing is None else [[i + 1 for i in pair] for pair in tree.pairing]
    return SteinerTreeResponse(
        positions=as_list(tree.positions),
        edges=[tuple(e) for e in tree.topology.edges],
        weighted_length=tree.weighted_length,
        balance_residuals=as_list(tree.balance_residuals),
        flags=list(tree.flags),
        method=tree.method,
        pairing=pairing,
        dihedral=None if tree.dihedral is None else dihedral_document(tree.dihedral),
        candidates=[c.weighted_length for c in tree.candidates]
    )

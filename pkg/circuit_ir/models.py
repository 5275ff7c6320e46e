#!filepath: circuit_ir/models.py
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field


class NodeModel(BaseModel):
    """
    Pydantic model for one node of a circuit file.
    """
    model_config = ConfigDict(extra="forbid")

    id: int = Field(..., description="Node id, unique within the circuit")
    op: Literal["scalar", "param", "input", "add", "sub", "mul", "div"]
    value: Optional[Union[str, int]] = Field(None, description="Scalar label as 'p/q' or 'p/q+r/s i'")
    index: Optional[int] = Field(None, description="1-based parameter or input index")
    args: Optional[List[int]] = Field(None, description="Two argument ids for internal nodes")


class CircuitModel(BaseModel):
    """
    Pydantic model for a circuit file.
    """
    model_config = ConfigDict(extra="forbid")

    params: int = Field(..., ge=0, description="Number of basic parameters r")
    inputs: int = Field(..., ge=0, description="Number of inputs n")
    nodes: List[NodeModel]
    outputs: List[int]


class TermModel(BaseModel):
    exp: List[int]
    coef: Union[str, int]


class PolyModel(BaseModel):
    """
    Pydantic model for {"vars": [...], "terms": [{"exp": [...], "coef": "p/q"}]}.
    """
    vars: List[str]
    terms: List[TermModel] = Field(default_factory=list)


class DomainModel(BaseModel):
    """
    Pydantic model for a parameter domain file.

    kind "affine" needs only params; "localized" takes generators and an
    optional inequation over U1..Ur; "image" takes source_dim and r map
    polynomials; "point" takes the coordinates of a single rational point.
    """
    model_config = ConfigDict(extra="forbid")

    kind: Literal["affine", "localized", "image", "point"]
    params: int = Field(..., ge=0)
    generators: List[PolyModel] = Field(default_factory=list)
    inequation: Optional[PolyModel] = None
    source_dim: Optional[int] = Field(None, ge=0)
    map: List[PolyModel] = Field(default_factory=list)
    point: List[Union[str, int]] = Field(default_factory=list)

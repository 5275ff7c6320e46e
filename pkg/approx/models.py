#!filepath: approx/models.py
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from circuit_ir.models import DomainModel


class GermEntryModel(BaseModel):
    """
    Pydantic model for one parameter germ u_i(eps) = sum_k coeffs[k] eps^(order + k).
    """
    model_config = ConfigDict(extra="forbid")

    order: int = Field(0, description="Exponent of the first listed coefficient")
    coeffs: List[Union[str, int]] = Field(default_factory=list, description="Exact coefficients as 'p/q'")


class GermModel(BaseModel):
    """
    Pydantic model for a germ file: {"entries": [...], "domain": d.json or an inline domain}.
    """
    model_config = ConfigDict(extra="forbid")

    entries: List[GermEntryModel]
    domain: Optional[Union[str, DomainModel]] = Field(None, description="Domain file path (relative to the "
                                                                        "germ file) or inline domain")
    precision: Optional[int] = Field(None, ge=1, description="Retained terms per series")

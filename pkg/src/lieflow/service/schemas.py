"""Request/response models for the HTTP surface.

The field wire format matches the on-disk file format: component i is a
list of monomial coefficient entries {"m": [...], "re": .., "im": ..}.
"""

from __future__ import annotations

import math

from pydantic import BaseModel, Field, field_validator, model_validator

from ..multiindex import MultiIndex
from ..vector_field import VectorField


class ComplexValue(BaseModel):
    re: float
    im: float = 0.0

    @classmethod
    def of(cls, z: complex) -> "ComplexValue":
        return cls(re=z.real, im=z.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class MonomialTerm(BaseModel):
    m: list[int]
    re: float
    im: float = 0.0

    @field_validator("m")
    @classmethod
    def _nonnegative(cls, v: list[int]) -> list[int]:
        if not v or any(e < 0 for e in v):
            raise ValueError("monomial index must be non-empty and non-negative")
        return v


class FieldSpec(BaseModel):
    p: int = Field(ge=1, le=8)
    components: list[list[MonomialTerm]]

    @model_validator(mode="after")
    def _dims(self) -> "FieldSpec":
        if len(self.components) != self.p:
            raise ValueError(f"expected {self.p} components, got {len(self.components)}")
        for comp in self.components:
            for term in comp:
                if len(term.m) != self.p:
                    raise ValueError("monomial index dimension mismatch")
        return self

    def to_vector_field(self) -> VectorField:
        comps = []
        for comp in self.components:
            terms: dict[MultiIndex, complex] = {}
            for term in comp:
                key = MultiIndex(tuple(term.m))
                terms[key] = terms.get(key, 0j) + complex(term.re, term.im)
            comps.append(terms)
        return VectorField.from_coeffs(self.p, comps)

    @classmethod
    def of(cls, A: VectorField) -> "FieldSpec":
        return cls.model_validate(A.to_json_dict())


class FlowRequestModel(BaseModel):
    field: FieldSpec
    x0: list[ComplexValue]
    t: ComplexValue
    tol: float = Field(default=1e-9, gt=0)
    order_cap: int = Field(default=10000, ge=1)

    @model_validator(mode="after")
    def _dims(self) -> "FlowRequestModel":
        if len(self.x0) != self.field.p:
            raise ValueError("x0 dimension must equal the field dimension")
        return self


class FlowResponseModel(BaseModel):
    y: list[ComplexValue]
    radius: float | None
    order: int
    tail: float

    @field_validator("radius", mode="before")
    @classmethod
    def _finite(cls, v):
        if v is not None and math.isinf(v):
            return None
        return v


class RadiusRequestModel(BaseModel):
    field: FieldSpec
    x0: list[ComplexValue]

    @model_validator(mode="after")
    def _dims(self) -> "RadiusRequestModel":
        if len(self.x0) != self.field.p:
            raise ValueError("x0 dimension must equal the field dimension")
        return self


class RadiusResponseModel(BaseModel):
    m: float
    radius: float | None

    @field_validator("radius", mode="before")
    @classmethod
    def _finite(cls, v):
        if v is not None and math.isinf(v):
            return None
        return v


class PathsumRequestModel(BaseModel):
    fields: list[FieldSpec] = Field(min_length=0)
    alpha: list[int]
    beta: list[int]
    cap: int | None = None

    @model_validator(mode="after")
    def _dims(self) -> "PathsumRequestModel":
        p = len(self.alpha)
        if p < 1 or len(self.beta) != p:
            raise ValueError("alpha and beta must share a positive dimension")
        if any(v < 0 for v in self.alpha + self.beta):
            raise ValueError("alpha and beta entries must be non-negative")
        for f in self.fields:
            if f.p != p:
                raise ValueError("field dimension must match alpha/beta")
        return self


class PathsumResponseModel(BaseModel):
    direct: ComplexValue
    pathsum: ComplexValue
    bound: float


class DualityCheckRequestModel(BaseModel):
    trials: int = Field(default=500, ge=1, le=100000)
    seed: int = 42


class RelationsCheckRequestModel(BaseModel):
    p: int = Field(default=2, ge=1, le=3)
    maxdeg: int = Field(default=4, ge=0, le=6)


class PropertiesCheckRequestModel(BaseModel):
    seed: int = 42

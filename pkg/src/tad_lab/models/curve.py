from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator

__all__ = ["CurvePoint", "ParallelismCurve"]


class CurvePoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    tpf: float = Field(ge=1.0)
    accuracy: float = Field(ge=0.0, le=100.0)


class ParallelismCurve(BaseModel):
    """(TPF, accuracy %) pairs sorted by strictly increasing TPF."""

    points: List[CurvePoint]

    @model_validator(mode="after")
    def _strictly_increasing(self):
        for prev, cur in zip(self.points, self.points[1:]):
            if not cur.tpf > prev.tpf:
                raise ValueError(f"TPF must increase strictly: {prev.tpf} then {cur.tpf}")
        return self

    @classmethod
    def from_pairs(cls, pairs) -> "ParallelismCurve":
        return cls(points=[CurvePoint(tpf=r, accuracy=y) for r, y in pairs])

    def pairs(self) -> List[tuple]:
        return [(p.tpf, p.accuracy) for p in self.points]

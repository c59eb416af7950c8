"""Pydantic request/response models: the normative wire formats.

Complex numbers travel as two-element ``[re, im]`` arrays.  Expressions
travel as strings in the funcexpr grammar.
"""

import cmath
import math
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, Field

from . import funcexpr, operators
from .flatbound import ScanGrid
from .halfplane import HalfPlaneAutomorphism
from .l2poly import MonomialSum
from .hardy import KernelSum

ComplexPair = List[float]


def _c(pair) -> complex:
    return complex(pair[0], pair[1])


def _pair(z: complex) -> ComplexPair:
    return [z.real, z.imag]


class MonomialTerm(BaseModel):
    coeff: ComplexPair = Field(min_length=2, max_length=2)
    exp: ComplexPair = Field(min_length=2, max_length=2)


class MonomialSumModel(BaseModel):
    terms: List[MonomialTerm]

    def to_core(self) -> MonomialSum:
        return MonomialSum.of([(_c(t.coeff), _c(t.exp)) for t in self.terms])

    @classmethod
    def from_core(cls, f: MonomialSum) -> "MonomialSumModel":
        return cls(terms=[MonomialTerm(coeff=_pair(a), exp=_pair(e))
                          for a, e in f.terms])


class KernelTerm(BaseModel):
    coeff: ComplexPair = Field(min_length=2, max_length=2)
    point: ComplexPair = Field(min_length=2, max_length=2)


class KernelSumModel(BaseModel):
    terms: List[KernelTerm]

    def to_core(self) -> KernelSum:
        return KernelSum.of([(_c(t.coeff), _c(t.point)) for t in self.terms])

    @classmethod
    def from_core(cls, F: KernelSum) -> "KernelSumModel":
        return cls(terms=[KernelTerm(coeff=_pair(a), point=_pair(p))
                          for a, p in F.terms])


# ------------------------------------------------------- operator specs

class FlatBetaModel(BaseModel):
    kind: Literal["flat"] = "flat"
    tau: ComplexPair


class AutoBetaModel(BaseModel):
    kind: Literal["auto"] = "auto"
    theta: float
    a: ComplexPair


class ExprBetaModel(BaseModel):
    kind: Literal["expr"] = "expr"
    text: str


BetaModel = Union[FlatBetaModel, AutoBetaModel, ExprBetaModel]


class ExprWeightModel(BaseModel):
    kind: Literal["expr"] = "expr"
    text: str


class TableWeightModel(BaseModel):
    kind: Literal["table"] = "table"
    values: List[ComplexPair]


WeightModel = Union[ExprWeightModel, TableWeightModel]


class SpecModel(BaseModel):
    """Either a named builtin or an explicit (beta, g) pair."""

    builtin: Optional[str] = None
    beta: Optional[BetaModel] = Field(default=None, discriminator="kind")
    g: Optional[WeightModel] = Field(default=None, discriminator="kind")

    def to_core(self) -> operators.MonomialOperatorSpec:
        if self.builtin is not None:
            return operators.builtin(self.builtin)
        if self.beta is None or self.g is None:
            raise ValueError("spec needs either 'builtin' or both 'beta' and 'g'")
        if isinstance(self.beta, FlatBetaModel):
            beta = operators.FlatShift(_c(self.beta.tau))
        elif isinstance(self.beta, AutoBetaModel):
            beta = operators.AutomorphismMap(
                HalfPlaneAutomorphism(self.beta.theta, _c(self.beta.a)))
        else:
            beta = operators.ExprMap(funcexpr.parse(self.beta.text))
        if isinstance(self.g, ExprWeightModel):
            g = operators.ExprWeight(funcexpr.parse(self.g.text))
        else:
            g = operators.TableWeight(tuple(_c(v) for v in self.g.values))
        return operators.MonomialOperatorSpec(beta, g, provenance="wire")


def unitary_spec_model(theta: float, a: complex) -> SpecModel:
    """Serialize a unitary spec: beta as the automorphism parameters, g as
    a rational expression with complex literals (beta is a Moebius map, so
    the Bourdon-Narayan weight is rational in s)."""
    A = HalfPlaneAutomorphism(theta, a)
    # beta = lambda^{-1} o b o lambda as a matrix product
    e = cmath.exp(1j * A.theta)
    mb = [[e, -e * A.a], [-A.a.conjugate(), 1 + 0j]]
    ml = [[1 + 0j, 0j], [1 + 0j, 1 + 0j]]          # lambda(s) = s/(s+1)
    mli = [[1 + 0j, 0j], [-1 + 0j, 1 + 0j]]        # lambda^{-1}(z) = z/(1-z)

    def matmul(X, Y):
        return [[X[0][0] * Y[0][0] + X[0][1] * Y[1][0],
                 X[0][0] * Y[0][1] + X[0][1] * Y[1][1]],
                [X[1][0] * Y[0][0] + X[1][1] * Y[1][0],
                 X[1][0] * Y[0][1] + X[1][1] * Y[1][1]]]

    p, q = matmul(matmul(mli, mb), ml)[0]
    r, w = matmul(matmul(mli, mb), ml)[1]
    b0 = (q / w) if w != 0 else A(0j)
    k = cmath.exp(1j * A.theta) / math.sqrt(1 + 2 * b0.real)
    # g(s) = k ((1+conj(b0)) (r s + w) + p s + q) / ((r+p) s + (w+q))
    num_s = k * ((1 + b0.conjugate()) * r + p)
    num_1 = k * ((1 + b0.conjugate()) * w + q)
    den_s = r + p
    den_1 = w + q

    def lit(z: complex) -> str:
        return f"({z.real!r},{z.imag!r})"

    text = (f"({lit(num_s)}*s+{lit(num_1)})/({lit(den_s)}*s+{lit(den_1)})")
    return SpecModel(beta=AutoBetaModel(theta=A.theta, a=_pair(A.a)),
                     g=ExprWeightModel(text=text))


# ----------------------------------------------------- request/response

class PickCheckRequest(BaseModel):
    p: List[ComplexPair]
    sizes: List[int]
    tol: Optional[float] = None


class PsdVerdictModel(BaseModel):
    size: int
    status: Literal["psd", "notpsd"]
    min_eig: float
    boundary: bool = False
    witness: Optional[List[ComplexPair]] = None


class PickCheckResponse(BaseModel):
    verdicts: List[PsdVerdictModel]
    all_psd: bool


class NpInterpRequest(BaseModel):
    nodes: List[ComplexPair]
    targets: List[ComplexPair]
    n_grid: int = 400
    seed: int = 0
    tol: Optional[float] = None


class NpInterpResponse(BaseModel):
    status: Literal["ok", "infeasible"]
    node_residual: Optional[float] = None
    grid_max_abs_disk_value: Optional[float] = None
    disk_nodes: Optional[List[ComplexPair]] = None
    params: Optional[List[ComplexPair]] = None
    constant_from: Optional[int] = None
    verdict: Optional[PsdVerdictModel] = None


class ApplyRequest(BaseModel):
    spec: SpecModel
    f: MonomialSumModel


class NormRequest(BaseModel):
    spec: SpecModel
    Ns: List[int]
    digits: Optional[int] = None


class NormRow(BaseModel):
    N: int
    estimate: float


class NormResponse(BaseModel):
    rows: List[NormRow]


class ScanModel(BaseModel):
    sigma_min: float = 1e-3
    sigma_max: float = 1e3
    n_sigma: int = 13
    t_max: float = 50.0
    n_t: int = 21
    jobs: int = 1

    def to_core(self) -> ScanGrid:
        return ScanGrid(self.sigma_min, self.sigma_max, self.n_sigma,
                        self.t_max, self.n_t, self.jobs)


class FlatCheckRequest(BaseModel):
    g: str
    tau: ComplexPair
    scan: ScanModel = ScanModel()
    include_samples: bool = False


class FlatCheckResponse(BaseModel):
    status: Literal["bounded", "unbounded", "inconclusive"]
    sup: float
    grid: dict
    witness: Optional[List[float]] = None
    samples: Optional[List[List[float]]] = None


class UnitaryRequest(BaseModel):
    theta: float
    a: ComplexPair
    action: Literal["build", "check"] = "build"
    n_samples: int = 1000
    seed: int = 0


class UnitaryResponse(BaseModel):
    spec: Optional[SpecModel] = None
    residual: Optional[float] = None


class PoissonSweepRequest(BaseModel):
    g: str
    scan: ScanModel = ScanModel()


class PoissonSweepResponse(BaseModel):
    rows: List[List[float]]         # (sigma, t, value)

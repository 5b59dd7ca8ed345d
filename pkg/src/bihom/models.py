"""Bundles tying tensors and maps into named structures, plus check reports."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import List, Mapping, Optional, Sequence, Tuple

from .linalg import MatrixS, StructureTensor, Vector, maps_commute
from .scalar import Scalar

OP_NAMES = ("bracket", "triangle", "dot", "prec", "succ")
MAP_NAMES = ("alpha", "beta", "R")

REQUIRED = {
    "bihom-lie": (("bracket",), ("alpha", "beta")),
    "bihom-post-lie": (("bracket", "triangle"), ("alpha", "beta")),
    "bihom-lr": (("dot",), ("alpha", "beta")),
    "bihom-tridendriform": (("prec", "succ", "dot"), ("alpha", "beta")),
    "bihom-product": (("dot",), ("alpha", "beta")),
}
KINDS = tuple(REQUIRED)


class ShapeError(ValueError):
    """Bundle violates a shape invariant; ``issues`` lists every problem found."""

    def __init__(self, issues: Sequence[str]):
        self.issues = list(issues)
        super().__init__("; ".join(self.issues))


@dataclass(frozen=True)
class AlgebraBundle:
    name: str
    dim: int
    basis: Tuple[str, ...]
    parameters: Tuple[str, ...]
    ops: Mapping[str, StructureTensor]
    maps: Mapping[str, MatrixS]
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "parameters", tuple(self.parameters))
        object.__setattr__(self, "ops", dict(self.ops))
        object.__setattr__(self, "maps", dict(self.maps))

    @property
    def bracket(self) -> StructureTensor:
        return self.ops["bracket"]

    @property
    def triangle(self) -> StructureTensor:
        return self.ops["triangle"]

    @property
    def alpha(self) -> MatrixS:
        return self.maps["alpha"]

    @property
    def beta(self) -> MatrixS:
        return self.maps["beta"]

    def evolve(self, **changes) -> "AlgebraBundle":
        return replace(self, **changes)

    def with_ops(self, **ops: StructureTensor) -> "AlgebraBundle":
        merged = dict(self.ops)
        merged.update(ops)
        return replace(self, ops=merged)

    def with_maps(self, **maps: MatrixS) -> "AlgebraBundle":
        merged = dict(self.maps)
        merged.update(maps)
        return replace(self, maps=merged)

    def __eq__(self, other):
        if not isinstance(other, AlgebraBundle):
            return NotImplemented
        return (self.dim, self.basis, self.kind, self.ops, self.maps) == (
            other.dim, other.basis, other.kind, other.ops, other.maps)

    __hash__ = None


@dataclass(frozen=True)
class RepresentationBundle:
    algebra: AlgebraBundle
    vdim: int
    rho: Tuple[MatrixS, ...]
    phi: MatrixS
    psi: MatrixS
    mu: Optional[Tuple[MatrixS, ...]] = None
    nu: Optional[Tuple[MatrixS, ...]] = None
    vbracket: Optional[StructureTensor] = None
    T: Optional[MatrixS] = None
    weight: Optional[Scalar] = None
    name: str = ""
    vbasis: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        if self.mu is not None:
            object.__setattr__(self, "mu", tuple(self.mu))
        if self.nu is not None:
            object.__setattr__(self, "nu", tuple(self.nu))
        if not self.vbasis:
            object.__setattr__(self, "vbasis", tuple(f"v{k + 1}" for k in range(self.vdim)))
        else:
            object.__setattr__(self, "vbasis", tuple(self.vbasis))
        if not self.name:
            object.__setattr__(self, "name", f"rep({self.algebra.name})")

    def evolve(self, **changes) -> "RepresentationBundle":
        return replace(self, **changes)

    def module_algebra(self) -> AlgebraBundle:
        """(V, vbracket, phi, psi) as a bihom-lie bundle."""
        if self.vbracket is None:
            raise ShapeError(["representation has no vbracket"])
        return AlgebraBundle(
            name=f"{self.name}:module", dim=self.vdim, basis=self.vbasis,
            parameters=self.algebra.parameters, ops={"bracket": self.vbracket},
            maps={"alpha": self.phi, "beta": self.psi}, kind="bihom-lie",
        )

    __hash__ = None


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    indices: Tuple[int, ...]
    labels: Tuple[str, ...]
    residual: Vector


@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    witnesses: List[Witness] = field(default_factory=list)
    failures: int = 0  # total failing tuples, may exceed len(witnesses)
    note: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class ViolationReport:
    structure: str
    entries: List[AxiomResult] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    complete: bool = True  # False when cut short by fail-fast

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def __bool__(self) -> bool:
        return self.ok

    def entry(self, axiom: str) -> AxiomResult:
        for e in self.entries:
            if e.axiom == axiom:
                return e
        raise KeyError(axiom)

    def failed(self) -> List[str]:
        return [e.axiom for e in self.entries if not e.passed]

    def axioms(self) -> List[str]:
        return [e.axiom for e in self.entries]

    def summary(self) -> str:
        bad = self.failed()
        if not bad:
            return f"{self.structure}: all {len(self.entries)} axioms pass"
        return f"{self.structure}: {len(bad)} of {len(self.entries)} axioms fail ({', '.join(bad)})"


# -- validation --------------------------------------------------------------


def _algebra_issues(b: AlgebraBundle) -> List[str]:
    issues = []
    if b.kind not in REQUIRED:
        issues.append(f"unknown kind {b.kind!r}")
    if b.dim <= 0:
        issues.append("dimension must be positive")
    if len(b.basis) != b.dim:
        issues.append(f"basis has {len(b.basis)} names for dimension {b.dim}")
    if len(set(b.basis)) != len(b.basis):
        issues.append("basis names are not distinct")
    for name, t in b.ops.items():
        if name not in OP_NAMES:
            issues.append(f"unknown op {name!r}")
        if t.dim != b.dim:
            issues.append(f"op {name!r} has dimension {t.dim}, bundle has {b.dim}")
    for name, m in b.maps.items():
        if name not in MAP_NAMES:
            issues.append(f"unknown map {name!r}")
        if m.shape != (b.dim, b.dim):
            issues.append(f"map {name!r} has shape {m.rows}x{m.cols}, expected {b.dim}x{b.dim}")
    if b.kind in REQUIRED:
        ops, maps = REQUIRED[b.kind]
        for o in ops:
            if o not in b.ops:
                issues.append(f"missing op {o!r} for kind {b.kind}")
        for m in maps:
            if m not in b.maps:
                issues.append(f"missing map {m!r} for kind {b.kind}")
    return issues


def _family_issues(label: str, family, dim: int, vdim: int) -> List[str]:
    issues = []
    if family is None:
        return issues
    if len(family) != dim:
        issues.append(f"{label} has {len(family)} matrices for algebra dimension {dim}")
    for k, m in enumerate(family):
        if m.shape != (vdim, vdim):
            issues.append(f"{label}[{k}] has shape {m.rows}x{m.cols}, expected {vdim}x{vdim}")
    return issues


def _rep_issues(r: RepresentationBundle) -> List[str]:
    issues = [f"algebra: {i}" for i in _algebra_issues(r.algebra)]
    n, v = r.algebra.dim, r.vdim
    if v <= 0:
        issues.append("module dimension must be positive")
    if len(r.vbasis) != v:
        issues.append(f"module basis has {len(r.vbasis)} names for dimension {v}")
    issues += _family_issues("rho", r.rho, n, v)
    issues += _family_issues("mu", r.mu, n, v)
    issues += _family_issues("nu", r.nu, n, v)
    shapes_ok = True
    for label, m in (("phi", r.phi), ("psi", r.psi)):
        if m.shape != (v, v):
            issues.append(f"{label} has shape {m.rows}x{m.cols}, expected {v}x{v}")
            shapes_ok = False
    if shapes_ok and not maps_commute(r.phi, r.psi):
        issues.append("phi psi do not commute")
    if r.vbracket is not None and r.vbracket.dim != v:
        issues.append(f"vbracket has dimension {r.vbracket.dim}, module has {v}")
    if r.T is not None and r.T.shape != (n, v):
        issues.append(f"T has shape {r.T.rows}x{r.T.cols}, expected {n}x{v}")
    return issues


def validate_bundle(b) -> None:
    """Raise ShapeError listing every violated shape invariant."""
    if isinstance(b, AlgebraBundle):
        issues = _algebra_issues(b)
    elif isinstance(b, RepresentationBundle):
        issues = _rep_issues(b)
    else:
        raise TypeError(f"not a bundle: {type(b).__name__}")
    if issues:
        raise ShapeError(issues)

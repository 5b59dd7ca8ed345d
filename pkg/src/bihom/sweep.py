"""Random splitting-derived instances and the constructor closure sweep."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from . import construct as C
from . import verify as V
from .catalog import abelian, heisenberg3, nonabelian2, sl2_classical
from .linalg import MatrixS
from .models import AlgebraBundle

SweepSplit = Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class SweepConfig:
    instances: int = 24
    seed: int = 20241017
    max_numerator: int = 5
    weights: Tuple[int, ...] = (-4, -2, -1, 1, 2, 3)
    double_bracket_max_dim: int = 3


@dataclass
class Instance:
    base: str
    split: SweepSplit
    weight: Fraction
    alpha: Tuple[Fraction, ...]
    beta: Tuple[Fraction, ...]
    lie: AlgebraBundle  # twisted algebra carrying R


@dataclass
class SweepResult:
    instance: Instance
    checks: Dict[str, bool] = field(default_factory=dict)
    flip_verdict: bool | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> List[str]:
        return [k for k, v in self.checks.items() if not v]


def _nonzero(rng: random.Random, cfg: SweepConfig) -> Fraction:
    while True:
        f = Fraction(rng.randint(-cfg.max_numerator, cfg.max_numerator), rng.randint(1, cfg.max_numerator))
        if f:
            return f


def _diagonal_morphism(name: str, n: int, rng, cfg) -> Tuple[Fraction, ...]:
    """A random invertible diagonal automorphism of the named classical algebra."""
    s, t = _nonzero(rng, cfg), _nonzero(rng, cfg)
    if name == "sl2":
        return (s, 1 / s, Fraction(1))
    if name == "heisenberg-3":
        return (s, t, s * t)
    if name == "nonabelian-2":
        return (Fraction(1), s)
    return tuple(_nonzero(rng, cfg) for _ in range(n))


def _bases():
    return {"sl2": sl2_classical(), "heisenberg-3": heisenberg3(), "nonabelian-2": nonabelian2(),
            **{f"abelian-{n}": abelian(n) for n in range(1, 5)}}


def admissible_splits(lie: AlgebraBundle) -> List[SweepSplit]:
    """Basis partitions whose two spans are subalgebras (diagonal maps keep them invariant)."""
    n = lie.dim
    out = []
    for mask in range(1 << n):
        i2 = tuple(k for k in range(n) if mask >> k & 1)
        i1 = tuple(k for k in range(n) if not mask >> k & 1)
        try:
            C.splitting_rota_baxter(lie, (i1, i2), 1)
        except C.PreconditionError:
            continue
        out.append((i1, i2))
    return out


def random_instances(cfg: SweepConfig = SweepConfig()) -> List[Instance]:
    rng = random.Random(cfg.seed)
    bases = _bases()
    names = sorted(bases)
    out = []
    for k in range(cfg.instances):
        # cycle through the bases so each appears
        name = names[k % len(names)]
        lie = bases[name]
        a = _diagonal_morphism(name, lie.dim, rng, cfg)
        b = _diagonal_morphism(name, lie.dim, rng, cfg)
        tw = C.twist_lie(lie, MatrixS.diag(a), MatrixS.diag(b))
        split = rng.choice(admissible_splits(tw))
        w = Fraction(rng.choice(cfg.weights))
        R = C.splitting_rota_baxter(tw, split, w)
        out.append(Instance(name, split, w, a, b, tw.with_maps(R=R).evolve(name=f"{name}#{k}")))
    return out


def closure_checks(inst: Instance, cfg: SweepConfig = SweepConfig()) -> SweepResult:
    res = SweepResult(inst)
    ch = res.checks
    lie, w = inst.lie, inst.weight
    ch["rota-baxter"] = V.check_rota_baxter(lie, w).ok
    post = C.rota_baxter_induced(lie, w)
    ch["rota-baxter-induced"] = V.check_bihom_post_lie(post).ok
    sub = C.sub_adjacent(post)
    ch["sub-adjacent"] = V.check_bihom_lie(sub).ok
    ch["admissible-product"] = V.check_admissible(C.admissible_product(post)).ok
    black = C.black_transform(post)
    ch["black-transform"] = V.check_bihom_post_lie(black).ok
    ch["black-involution"] = C.black_transform(black) == post
    ch["black-sub-adjacent"] = C.sub_adjacent(black).bracket == sub.bracket
    if post.dim <= cfg.double_bracket_max_dim:
        ch["double-bracket"] = V.check_bihom_lie(C.double_bracket(post)).ok
    adj = C.adjoint_post_representation(post)
    ch["adjoint-post-rep"] = V.check_post_lie_representation(adj).ok
    ch["pi-representation"] = V.check_lie_representation(C.pi_representation(adj, verify=False)).ok
    ch["semidirect-post-lie"] = V.check_bihom_post_lie(C.semidirect_post_lie(post, adj)).ok
    module = V.adjoint_module(lie, lie.maps["R"], w)
    ch["o-operator-induced"] = V.check_bihom_post_lie(C.o_operator_induced(module)).ok
    ch["morphism-law"] = _morphism_law(module)
    if not inst.split[0]:
        # R = -w id is invertible
        ch["compatible-from-invertible-o"] = V.check_bihom_post_lie(C.compatible_from_invertible_o(module)).ok
    _twist_checks(inst, ch)
    res.flip_verdict = V.check_bihom_post_lie(C.flip_post_lie(lie)).ok
    return res


def _twist_checks(inst: Instance, ch: Dict[str, bool]):
    """Twist the classical data of the instance and check the twisted outputs."""
    classical = _bases()[inst.base]
    R = inst.lie.maps["R"]
    post = C.rota_baxter_induced(classical.with_maps(R=R), inst.weight)
    a, b = MatrixS.diag(inst.alpha), MatrixS.diag(inst.beta)
    ch["twist-post-lie"] = V.check_bihom_post_lie(C.twist_post_lie(post, a, b)).ok
    rep = C.twist_lie_representation(C.adjoint_representation(classical), a, b, a, b)
    ch["twist-lie-representation"] = V.check_lie_representation(rep).ok
    prep = C.twist_post_lie_representation(C.adjoint_post_representation(post), a, b, a, b)
    ch["twist-post-lie-representation"] = V.check_post_lie_representation(prep).ok


def _morphism_law(module) -> bool:
    """T of the sub-adjacent bracket of the induced structure equals [T u, T v]."""
    from .linalg import bilinear_eval

    induced = C.o_operator_induced(module)
    sub = C.sub_adjacent(induced)
    T = module.T
    Tc = T.columns()
    br = module.algebra.bracket
    v = module.vdim
    return all(T.apply(sub.bracket.c[i][j]) == bilinear_eval(br, Tc[i], Tc[j]) for i in range(v) for j in range(v))


def run_sweep(cfg: SweepConfig = SweepConfig()) -> List[SweepResult]:
    return [closure_checks(inst, cfg) for inst in random_instances(cfg)]

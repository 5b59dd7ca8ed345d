"""Built-in instances.

Composite examples are derived from primitive ones through the constructors,
so published tables are assertions in the tests rather than stored data.
"""

from __future__ import annotations

from typing import Callable, Dict, Sequence, Tuple

from .construct import rota_baxter_induced, splitting_rota_baxter, twist_lie
from .linalg import MatrixS, StructureTensor
from .models import AlgebraBundle
from .scalar import Scalar

SL2_PARAMS = ("lambda", "gamma")


def _lie(name: str, basis: Sequence[str], table, params: Sequence[str] = ()) -> AlgebraBundle:
    """Classical Lie algebra from a table {(i, j): vector} given for i < j."""
    n = len(basis)
    full = {}
    for (i, j), v in table.items():
        full[(i, j)] = [Scalar.of(x, params) for x in v]
        full[(j, i)] = [-Scalar.of(x, params) for x in v]
    ident = MatrixS.identity(n)
    return AlgebraBundle(name=name, dim=n, basis=tuple(basis), parameters=tuple(params),
                         ops={"bracket": StructureTensor.from_table(n, full)},
                         maps={"alpha": ident, "beta": ident}, kind="bihom-lie")


def sl2_classical(params: Sequence[str] = ()) -> AlgebraBundle:
    """sl(2) on (X, Y, H): [H,X] = 2X, [H,Y] = -2Y, [X,Y] = H."""
    X, Y, H = 0, 1, 2
    return _lie("sl2", ("X", "Y", "H"), {
        (X, H): [-2, 0, 0],
        (Y, H): [0, 2, 0],
        (X, Y): [0, 0, 1],
    }, params)


def heisenberg3() -> AlgebraBundle:
    return _lie("heisenberg-3", ("x", "y", "z"), {(0, 1): [0, 0, 1]})


def nonabelian2() -> AlgebraBundle:
    return _lie("nonabelian-2", ("e1", "e2"), {(0, 1): [0, 1]})


def abelian(n: int) -> AlgebraBundle:
    return _lie(f"abelian-{n}", tuple(f"e{k + 1}" for k in range(n)), {})


def emit_sl2_family() -> AlgebraBundle:
    """sl(2) twisted by alpha = diag(l^2, l^-2, 1), beta = diag(g^2, g^-2, 1), with R = diag(0, 4, 2)."""
    lam = Scalar.param("lambda", SL2_PARAMS)
    gam = Scalar.param("gamma", SL2_PARAMS)
    one = Scalar.of(1, SL2_PARAMS)
    a = MatrixS.diag([lam ** 2, lam ** -2, one])
    b = MatrixS.diag([gam ** 2, gam ** -2, one])
    out = twist_lie(sl2_classical(SL2_PARAMS), a, b)
    R = MatrixS.diag([Scalar.of(k, SL2_PARAMS) for k in (0, 4, 2)])
    return out.evolve(name="sl2-bihom").with_maps(R=R)


def emit_sl2_post_lie() -> AlgebraBundle:
    return rota_baxter_induced(emit_sl2_family(), -4).evolve(name="sl2-post-lie")


def emit_tridend_2dim() -> AlgebraBundle:
    """e2 prec e2 = e2 succ e2 = a e1, e2 . e2 = -a e1; other products vanish."""
    params = ("a",)
    a = Scalar.param("a", params)
    ops = {
        "prec": StructureTensor.from_table(2, {(1, 1): [a, 0]}),
        "succ": StructureTensor.from_table(2, {(1, 1): [a, 0]}),
        "dot": StructureTensor.from_table(2, {(1, 1): [-a, 0]}),
    }
    maps = {
        "alpha": MatrixS.from_columns([[1, 0], [1, 1]]),
        "beta": MatrixS.from_columns([[1, 0], [2, 1]]),
    }
    return AlgebraBundle(name="tridend-2dim", dim=2, basis=("e1", "e2"), parameters=params,
                         ops=ops, maps=maps, kind="bihom-tridendriform")


def emit_splitting_rb(base: AlgebraBundle | None = None,
                      split: Tuple[Sequence[int], Sequence[int]] = ((0, 2), (1,)),
                      weight=1) -> AlgebraBundle:
    """``base`` with R = -weight * projection onto the second part of ``split``.

    The default splits sl2-bihom into span{X, H} and span{Y}.
    """
    base = base if base is not None else emit_sl2_family()
    R = splitting_rota_baxter(base, split, weight)
    return base.with_maps(R=R).evolve(name="splitting-rb")


CATALOG: Dict[str, Callable[[], AlgebraBundle]] = {
    "sl2-bihom": emit_sl2_family,
    "sl2-post-lie": emit_sl2_post_lie,
    "tridend-2dim": emit_tridend_2dim,
    "splitting-rb": emit_splitting_rb,
    "sl2": sl2_classical,
    "heisenberg-3": heisenberg3,
    "nonabelian-2": nonabelian2,
    "abelian-1": lambda: abelian(1),
    "abelian-2": lambda: abelian(2),
    "abelian-3": lambda: abelian(3),
    "abelian-4": lambda: abelian(4),
}


def emit(name: str) -> AlgebraBundle:
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError(f"unknown catalog name {name!r}; known: {', '.join(CATALOG)}") from None

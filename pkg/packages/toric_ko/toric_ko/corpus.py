"""Example problems: projective spaces, polygons, the cube, products.

Bundled names resolve to generator functions; `config/toric_ko/examples/`
holds the same problems rendered as `.toric` files.
"""
from __future__ import annotations

from itertools import combinations
import logging
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .charfun import block_diagonal
from .config import settings
from .problem import ProblemSpec, parse_spec

logger = logging.getLogger("ToricKO.Corpus")

_NONZERO_F2_SQUARED = ((1, 0), (0, 1), (1, 1))


def interval() -> ProblemSpec:
    return ProblemSpec(
        name="interval_cp1",
        n=1,
        m=2,
        facets=((1,), (2,)),
        lam=((1, -1),),
        description="interval, M = CP^1",
    )


def simplex(n: int, *, mode: str = "manifold") -> ProblemSpec:
    """Boundary of the n-simplex with the standard fan, M = CP^n."""
    if n < 1:
        raise ValueError("simplex dimension must be at least 1")
    m = n + 1
    facets = tuple(tuple(v + 1 for v in face) for face in combinations(range(m), n))
    lam = tuple(tuple(1 if col == row else (-1 if col == n else 0) for col in range(m)) for row in range(n))
    return ProblemSpec(
        name=f"simplex_cp{n}",
        n=n,
        m=m,
        facets=facets,
        lam=lam,
        mode=mode,
        description=f"{n}-simplex, M = CP^{n}",
    )


def _square_facets() -> tuple[tuple[int, ...], ...]:
    return ((1, 2), (2, 3), (3, 4), (1, 4))


def square_cp2cp2() -> ProblemSpec:
    return ProblemSpec(
        name="square_cp2cp2",
        n=2,
        m=4,
        facets=_square_facets(),
        lam=((0, 1, -1, 1), (1, 0, 1, -2)),
        description="square, M = CP^2 # CP^2",
    )


def square_product() -> ProblemSpec:
    return ProblemSpec(
        name="square_product",
        n=2,
        m=4,
        facets=_square_facets(),
        lam=((1, 0, 1, 0), (0, 1, 0, 1)),
        description="square, M = CP^1 x CP^1",
    )


def cube() -> ProblemSpec:
    """3-cube with λ given mod 2; antipodal vertex pairs (1,6), (2,4), (3,5) of the octahedron."""
    facets = tuple(sorted(tuple(sorted(choice)) for choice in _octahedron_facets()))
    return ProblemSpec(
        name="cube",
        n=3,
        m=6,
        facets=facets,
        lam=((1, 0, 0, 0, 0, 1), (1, 0, 1, 0, 1, 0), (1, 1, 0, 1, 0, 0)),
        lambda_mod2=True,
        description="3-cube, lambda mod 2 (bottom 100, top 111, sides 001, front/back 010)",
    )


def _octahedron_facets() -> list[tuple[int, int, int]]:
    return [(a, b, c) for a in (1, 6) for b in (2, 4) for c in (3, 5)]


def polygon(columns: Sequence[Sequence[int]], *, mod2: bool = False, name: str | None = None) -> ProblemSpec:
    """m-gon with λ(F_i) = columns[i]; facets of K are the cyclic edges."""
    m = len(columns)
    if m < 3:
        raise ValueError("a polygon needs at least 3 edges")
    facets = tuple((i + 1, i + 2) for i in range(m - 1)) + ((1, m),)
    lam = tuple(tuple(int(col[row]) for col in columns) for row in range(2))
    return ProblemSpec(
        name=name or f"polygon_{m}",
        n=2,
        m=m,
        facets=facets,
        lam=lam,
        lambda_mod2=mod2,
        description=f"{m}-gon",
    )


def random_polygon(m: int, rng: np.random.Generator) -> ProblemSpec:
    """m-gon with a random proper 3-colouring of its edges by the nonzero vectors of F2^2."""
    colours = [int(rng.integers(3))]
    for i in range(1, m):
        banned = {colours[-1]}
        if i == m - 1:
            banned.add(colours[0])
        allowed = [c for c in range(3) if c not in banned]
        colours.append(allowed[int(rng.integers(len(allowed)))])
    columns = [_NONZERO_F2_SQUARED[c] for c in colours]
    return polygon(columns, mod2=True, name=f"random_polygon_{m}")


def disk_singular() -> ProblemSpec:
    """Two triangles glued along an edge: pure but not a sphere, for singular mode."""
    return ProblemSpec(
        name="disk_singular",
        n=3,
        m=4,
        facets=((1, 2, 3), (2, 3, 4)),
        lam=((1, 0, 0, 1), (0, 1, 0, 0), (0, 0, 1, 0)),
        mode="singular",
        description="two 2-simplices sharing an edge (not a sphere)",
    )


def product(a: ProblemSpec, b: ProblemSpec) -> ProblemSpec:
    """Product polytope: join of the complexes, block-diagonal λ."""
    shifted = tuple(tuple(v + a.m for v in facet) for facet in b.facets)
    facets = tuple(fa + fb for fa in a.facets for fb in shifted)
    mod2 = a.lambda_mod2 or b.lambda_mod2
    if mod2:
        a, b = a.as_mod2(), b.as_mod2()
    lam = block_diagonal(a.lam, b.lam)
    singular = "singular" in (a.mode, b.mode)
    return ProblemSpec(
        name=f"{a.name}_x_{b.name}",
        n=a.n + b.n,
        m=a.m + b.m,
        facets=facets,
        lam=lam,
        lambda_mod2=mod2,
        mode="singular" if singular else "manifold",
        description=f"product of {a.name} and {b.name}",
    )


BUNDLED: dict[str, Callable[[], ProblemSpec]] = {
    "interval_cp1": interval,
    "simplex_cp2": lambda: simplex(2),
    "simplex_cp3": lambda: simplex(3),
    "simplex_cp4": lambda: simplex(4),
    "square_cp2cp2": square_cp2cp2,
    "square_product": square_product,
    "cube": cube,
    "disk_singular": disk_singular,
}


def names() -> list[str]:
    return sorted(BUNDLED)


def get(name: str) -> ProblemSpec:
    """A bundled example by name; `simplex_cpN` works for any N >= 1."""
    if name in BUNDLED:
        return BUNDLED[name]()
    if name.startswith("simplex_cp") and name[len("simplex_cp"):].isdigit():
        return simplex(int(name[len("simplex_cp"):]))
    raise KeyError(f"unknown example {name!r}; known: {', '.join(names())}")


def example_path(name: str, directory: Path | None = None) -> Path:
    return (directory or settings.EXAMPLES_DIR) / f"{name}.toric"


def load_bundled(name: str, directory: Path | None = None) -> ProblemSpec:
    """Reads the `.toric` file shipped for a bundled example."""
    path = example_path(name, directory)
    logger.debug("loading %s", path)
    return parse_spec(path.read_text(encoding="utf-8"))

"""The `.toric` problem format.

Line oriented, `#` starts a comment:

    name = cube
    n = 3
    m = 6
    mode = manifold          # or singular
    coefficients = mod2      # or integral (default)
    facet: 1 2 3
    lambda: 1 0 0 0 0 1      # one row per line, n rows of m entries
    max_degree = 16          # optional
    trust_sphere = true      # optional
    format = text            # optional

Vertices are 1-based.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
import logging
from typing import Any, Optional

from .charfun import CharMatrixF2, CharMatrixZ, reduce_mod2, validate_integral
from .combinatorics import SimplicialComplex, validate_complex
from .errors import SpecSyntaxError

logger = logging.getLogger("ToricKO.Problem")

MODES = ("manifold", "singular")
COEFFICIENTS = ("integral", "mod2")
FORMATS = ("text", "json", "svg")
_SCALAR_KEYS = ("name", "n", "m", "mode", "coefficients", "max_degree", "trust_sphere", "format")
_TRUE = {"true", "yes", "1", "on"}
_FALSE = {"false", "no", "0", "off"}


@dataclass(frozen=True, slots=True)
class ProblemSpec:
    name: str
    n: int
    m: int
    facets: tuple[tuple[int, ...], ...]
    lam: tuple[tuple[int, ...], ...]
    lambda_mod2: bool = False
    mode: str = "manifold"
    max_degree: Optional[int] = None
    trust_sphere: bool = False
    output_format: Optional[str] = None
    description: str = field(default="", compare=False)

    def to_dict(self) -> dict[str, Any]:
        payload = asdict(self)
        payload["facets"] = [list(f) for f in self.facets]
        payload["lam"] = [list(r) for r in self.lam]
        return payload

    def complex(self) -> SimplicialComplex:
        return validate_complex([list(f) for f in self.facets], self.m, self.n)

    def char_matrix(self, K: SimplicialComplex | None = None) -> tuple[CharMatrixZ | None, CharMatrixF2]:
        """Validated λ: the integral matrix (if given) and its reduction mod 2."""
        K = K or self.complex()
        if self.lambda_mod2:
            return None, reduce_mod2([list(r) for r in self.lam], K)
        lam_z = validate_integral(K, CharMatrixZ.from_rows(self.lam))
        return lam_z, reduce_mod2(lam_z, K)

    def as_mod2(self) -> "ProblemSpec":
        """The same problem with λ replaced by its reduction mod 2."""
        rows = tuple(tuple(x % 2 for x in row) for row in self.lam)
        return ProblemSpec(
            name=self.name,
            n=self.n,
            m=self.m,
            facets=self.facets,
            lam=rows,
            lambda_mod2=True,
            mode=self.mode,
            max_degree=self.max_degree,
            trust_sphere=self.trust_sphere,
            output_format=self.output_format,
            description=self.description,
        )


def _ints(text: str, line: int, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError as exc:
        raise SpecSyntaxError(line, f"{what} entries must be integers: {text.strip()!r}") from exc


def _int(text: str, line: int, key: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise SpecSyntaxError(line, f"{key} must be an integer, got {text!r}") from exc


def _choice(text: str, line: int, key: str, allowed: tuple[str, ...]) -> str:
    value = text.lower()
    if value not in allowed:
        raise SpecSyntaxError(line, f"{key} must be one of {', '.join(allowed)}, got {text!r}")
    return value


def parse_spec(text: str, *, validate: bool = True) -> ProblemSpec:
    """Parses a `.toric` document; with `validate` the complex and λ are checked too."""
    scalars: dict[str, tuple[str, int]] = {}
    facets: list[tuple[int, ...]] = []
    rows: list[tuple[int, ...]] = []
    comments: list[str] = []
    last_line = 0

    for number, raw in enumerate(text.splitlines(), start=1):
        last_line = number
        body, _, comment = raw.partition("#")
        body = body.strip()
        if not body:
            if comment.strip() and not facets and not rows and not scalars:
                comments.append(comment.strip())
            continue
        if body.startswith("facet:"):
            facets.append(_ints(body.split(":", 1)[1], number, "facet"))
            continue
        if body.startswith("lambda:"):
            rows.append(_ints(body.split(":", 1)[1], number, "lambda"))
            continue
        if "=" not in body:
            raise SpecSyntaxError(number, f"expected 'key = value', 'facet:' or 'lambda:', got {body!r}")
        key, _, value = (part.strip() for part in body.partition("="))
        key = key.lower()
        if key not in _SCALAR_KEYS:
            raise SpecSyntaxError(number, f"unknown key {key!r}")
        if key in scalars:
            raise SpecSyntaxError(number, f"key {key!r} given twice")
        scalars[key] = (value, number)

    if not scalars and not facets and not rows:
        raise SpecSyntaxError(1, "empty problem file")
    for required in ("n", "m"):
        if required not in scalars:
            raise SpecSyntaxError(max(last_line, 1), f"missing required key {required!r}")

    def get(key: str) -> tuple[str, int] | None:
        return scalars.get(key)

    n = _int(*scalars["n"], "n")
    m = _int(*scalars["m"], "m")
    mode = _choice(*get("mode"), "mode", MODES) if get("mode") else "manifold"
    coefficients = _choice(*get("coefficients"), "coefficients", COEFFICIENTS) if get("coefficients") else "integral"
    max_degree = _int(*get("max_degree"), "max_degree") if get("max_degree") else None
    output_format = _choice(*get("format"), "format", FORMATS) if get("format") else None
    trust_sphere = False
    if get("trust_sphere"):
        value, line = scalars["trust_sphere"]
        if value.lower() in _TRUE:
            trust_sphere = True
        elif value.lower() not in _FALSE:
            raise SpecSyntaxError(line, f"trust_sphere must be true or false, got {value!r}")

    spec = ProblemSpec(
        name=scalars["name"][0] if "name" in scalars else "unnamed",
        n=n,
        m=m,
        facets=tuple(facets),
        lam=tuple(rows),
        lambda_mod2=coefficients == "mod2",
        mode=mode,
        max_degree=max_degree,
        trust_sphere=trust_sphere,
        output_format=output_format,
        description=" ".join(comments),
    )
    if validate:
        K = spec.complex()
        spec.char_matrix(K)
    logger.debug("parsed spec %s: n=%d m=%d, %d facets", spec.name, n, m, len(facets))
    return spec


def render_spec(spec: ProblemSpec) -> str:
    lines = []
    if spec.description:
        lines.append(f"# {spec.description}")
    lines += [
        f"name = {spec.name}",
        f"n = {spec.n}",
        f"m = {spec.m}",
        f"mode = {spec.mode}",
        f"coefficients = {'mod2' if spec.lambda_mod2 else 'integral'}",
    ]
    if spec.max_degree is not None:
        lines.append(f"max_degree = {spec.max_degree}")
    if spec.trust_sphere:
        lines.append("trust_sphere = true")
    if spec.output_format:
        lines.append(f"format = {spec.output_format}")
    lines += ["facet: " + " ".join(str(v) for v in facet) for facet in spec.facets]
    lines += ["lambda: " + " ".join(str(x) for x in row) for row in spec.lam]
    return "\n".join(lines) + "\n"

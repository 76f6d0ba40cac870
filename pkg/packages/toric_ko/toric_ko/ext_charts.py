"""Bigraded Ext_{A(1)} charts for S⁰ and M, and the superposed E₂ page of X.

Ext(S⁰) = F2[a0, a1, w, b] / (a0·a1, a1^3, a1·w, w^2 + a0^2·b), bidegrees
(stem, filtration): a0 (0,1), a1 (1,1), w (4,3), b (8,4).

Ext(M) is the Ext(S⁰)-module on x (0,0), y (2,1), z (4,2), u (6,3) with
a1 killing every generator and wx = a0z, wy = a0u, wz = a0bx, wu = a0by.

Both are computed by monomial rewriting: every rule replaces a monomial by
a single monomial or by zero and strictly lowers the w exponent, so
reduction terminates; the rule set is confluent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import logging
from typing import Iterable, Sequence

from .a1_decomp import A1Decomposition

logger = logging.getLogger("ToricKO.ExtCharts")

# exponents of (a0, a1, w, b) followed by a generator index (0 for the S⁰ unit)
Monomial = tuple[int, int, int, int, int]
Cell = tuple[int, int]

RING_DEGREES: tuple[Cell, ...] = ((0, 1), (1, 1), (4, 3), (8, 4))
RING_SYMBOLS = ("a0", "a1", "w", "b")

S0_GENERATORS: tuple[tuple[str, Cell], ...] = (("1", (0, 0)),)
M_GENERATORS: tuple[tuple[str, Cell], ...] = (("x", (0, 0)), ("y", (2, 1)), ("z", (4, 2)), ("u", (6, 3)))

X, Y, Z, U = range(4)


@dataclass(frozen=True, slots=True)
class Rule:
    name: str
    lhs: tuple[int, int, int, int]
    generator: int | None  # None: ring relation, applies to every generator
    rhs: tuple[int, int, int, int] | None  # None: the monomial is zero
    rhs_generator: int | None = None

    def matches(self, mono: Monomial) -> bool:
        if self.generator is not None and mono[4] != self.generator:
            return False
        return all(e >= need for e, need in zip(mono[:4], self.lhs))

    def apply(self, mono: Monomial) -> Monomial | None:
        if self.rhs is None:
            return None
        ring = tuple(e - need + add for e, need, add in zip(mono[:4], self.lhs, self.rhs))
        gen = mono[4] if self.rhs_generator is None else self.rhs_generator
        return ring + (gen,)  # type: ignore[return-value]


S0_RULES: tuple[Rule, ...] = (
    Rule("a0a1", (1, 1, 0, 0), None, None),
    Rule("a1^3", (0, 3, 0, 0), None, None),
    Rule("a1w", (0, 1, 1, 0), None, None),
    Rule("w^2", (0, 0, 2, 0), None, (2, 0, 0, 1)),
)

M_RULES: tuple[Rule, ...] = S0_RULES + (
    Rule("a1x", (0, 1, 0, 0), X, None),
    Rule("a1y", (0, 1, 0, 0), Y, None),
    Rule("a1z", (0, 1, 0, 0), Z, None),
    Rule("a1u", (0, 1, 0, 0), U, None),
    Rule("wx", (0, 0, 1, 0), X, (1, 0, 0, 0), Z),
    Rule("wy", (0, 0, 1, 0), Y, (1, 0, 0, 0), U),
    Rule("wz", (0, 0, 1, 0), Z, (1, 0, 0, 1), X),
    Rule("wu", (0, 0, 1, 0), U, (1, 0, 0, 1), Y),
)


def reduce(mono: Monomial, rules: Sequence[Rule], order: Sequence[int] | None = None) -> Monomial | None:
    """Normal form of a monomial, or None when it is zero. `order` ranks the rules tried first."""
    ranked = [rules[i] for i in order] if order is not None else list(rules)
    current: Monomial | None = mono
    while current is not None:
        rule = next((r for r in ranked if r.matches(current)), None)
        if rule is None:
            break
        current = rule.apply(current)
    return current


def bidegree(mono: Monomial, generators: Sequence[tuple[str, Cell]]) -> Cell:
    stem, filt = generators[mono[4]][1]
    for e, (ds, df) in zip(mono[:4], RING_DEGREES):
        stem += e * ds
        filt += e * df
    return stem, filt


def monomial_name(mono: Monomial, generators: Sequence[tuple[str, Cell]]) -> str:
    parts = []
    for e, symbol in zip(mono[:4], RING_SYMBOLS):
        if e == 1:
            parts.append(symbol)
        elif e > 1:
            parts.append(f"{symbol}^{e}")
    gen = generators[mono[4]][0]
    if gen != "1" or not parts:
        parts.append(gen)
    return "·".join(parts)


@dataclass(frozen=True, slots=True)
class ChartElement:
    stem: int
    filtration: int
    in_tower: bool
    summand: str = ""


@dataclass(frozen=True, slots=True)
class Differential:
    source: Cell
    target: Cell | None
    r: int | None
    note: str

    def to_dict(self) -> dict[str, object]:
        return {
            "source": list(self.source),
            "target": list(self.target) if self.target else None,
            "r": self.r,
            "note": self.note,
        }


@dataclass(frozen=True, eq=False)
class BigradedChart:
    label: str
    max_stem: int
    max_filt: int
    elements: dict[str, ChartElement]
    towers: frozenset[Cell]  # (stem, base filtration)
    a0_lines: tuple[tuple[str, str], ...] = ()
    a1_lines: tuple[tuple[str, str], ...] = ()
    collapsed: bool = True
    differentials: tuple[Differential, ...] = field(default_factory=tuple)

    @property
    def status(self) -> str:
        return "E2 = E_inf" if self.collapsed else "E2 only; differentials unresolved"

    @property
    def cells(self) -> dict[Cell, list[str]]:
        out: dict[Cell, list[str]] = {}
        for name, el in self.elements.items():
            out.setdefault((el.stem, el.filtration), []).append(name)
        return {cell: sorted(names) for cell, names in sorted(out.items())}

    def cell_counts(self) -> dict[Cell, int]:
        return {cell: len(names) for cell, names in self.cells.items()}

    def count(self, stem: int, filtration: int) -> int:
        return self.cell_counts().get((stem, filtration), 0)

    def tower_set(self) -> frozenset[Cell]:
        return self.towers

    def shifted(self, shift: int, summand: str = "") -> "BigradedChart":
        """Moves every element `shift` stems right (a suspension Σ^shift)."""

        def rename(name: str) -> str:
            return f"{summand}:{name}" if summand else name

        elements = {
            rename(name): ChartElement(el.stem + shift, el.filtration, el.in_tower, summand or el.summand)
            for name, el in self.elements.items()
        }
        return BigradedChart(
            label=summand or self.label,
            max_stem=self.max_stem + shift,
            max_filt=self.max_filt,
            elements=elements,
            towers=frozenset((stem + shift, s) for stem, s in self.towers),
            a0_lines=tuple((rename(a), rename(b)) for a, b in self.a0_lines),
            a1_lines=tuple((rename(a), rename(b)) for a, b in self.a1_lines),
        )

    def to_dict(self) -> dict[str, object]:
        return {
            "label": self.label,
            "max_stem": self.max_stem,
            "max_filt": self.max_filt,
            "status": self.status,
            "cells": [
                {"stem": stem, "s": s, "count": len(names), "names": names}
                for (stem, s), names in self.cells.items()
            ],
            "towers": [list(t) for t in sorted(self.towers)],
            "differentials": [d.to_dict() for d in self.differentials],
        }


def _check_bounds(max_stem: int, max_filt: int) -> None:
    if max_stem < 0 or max_filt < 0:
        raise ValueError(f"chart bounds must be non-negative, got stem {max_stem}, filtration {max_filt}")


def _generate(
    label: str,
    rules: Sequence[Rule],
    generators: Sequence[tuple[str, Cell]],
    max_stem: int,
    max_filt: int,
) -> BigradedChart:
    _check_bounds(max_stem, max_filt)
    normal: set[Monomial] = set()
    tried = 0
    for mono in iter_monomials(generators, max_stem, max_filt):
        tried += 1
        nf = reduce(mono, rules)
        if nf is not None:
            normal.add(nf)
    logger.debug("%s: %d monomials reduced to %d normal forms", label, tried, len(normal))

    def times(mono: Monomial, index: int, power: int = 1) -> Monomial | None:
        bumped = list(mono)
        bumped[index] += power
        return reduce(tuple(bumped), rules)  # type: ignore[arg-type]

    elements: dict[str, ChartElement] = {}
    towers: set[Cell] = set()
    names: dict[Monomial, str] = {}
    for mono in sorted(normal, key=lambda m: (bidegree(m, generators), m)):
        stem, filt = bidegree(mono, generators)
        in_tower = times(mono, 0, max_filt + 1) is not None
        name = monomial_name(mono, generators)
        names[mono] = name
        elements[name] = ChartElement(stem, filt, in_tower)
        if in_tower and mono[0] == 0:
            towers.add((stem, filt))

    a0_lines, a1_lines = [], []
    for mono, name in names.items():
        for index, bucket in ((0, a0_lines), (1, a1_lines)):
            target = times(mono, index)
            if target is not None and target in names:
                bucket.append((name, names[target]))
    return BigradedChart(
        label=label,
        max_stem=max_stem,
        max_filt=max_filt,
        elements=elements,
        towers=frozenset(towers),
        a0_lines=tuple(sorted(a0_lines)),
        a1_lines=tuple(sorted(a1_lines)),
    )


def ext_s0(max_stem: int, max_filt: int) -> BigradedChart:
    return _generate("S0", S0_RULES, S0_GENERATORS, max_stem, max_filt)


def ext_m(max_stem: int, max_filt: int) -> BigradedChart:
    return _generate("M", M_RULES, M_GENERATORS, max_stem, max_filt)


def unresolved_differentials(dec: A1Decomposition) -> tuple[Differential, ...]:
    """One marker per S⁰ summand base class; nothing is computed about d_r."""
    out = []
    for j, count in enumerate(dec.m_mult):
        for _ in range(count):
            out.append(Differential((2 * j, 0), None, None, "possible d_r from this S0 summand not ruled out"))
    return tuple(out)


def assemble_e2(
    dec: A1Decomposition,
    max_stem: int,
    max_filt: int,
    *,
    collapsed: bool = True,
) -> BigradedChart:
    """Superposes m_j shifted Ext(S⁰) charts and n_j shifted Ext(M) charts."""
    _check_bounds(max_stem, max_filt)
    pieces: list[BigradedChart] = []
    for j in range(len(dec.m_mult)):
        shift = 2 * j
        if shift > max_stem:
            break
        for kind, count, builder in (("S0", dec.m_mult[j], ext_s0), ("M", dec.n_mult[j], ext_m)):
            if not count:
                continue
            base = builder(max_stem - shift, max_filt)
            for copy in range(count):
                pieces.append(base.shifted(shift, f"Σ^{shift}{kind}#{copy + 1}"))

    elements: dict[str, ChartElement] = {}
    towers: set[Cell] = set()
    a0_lines: list[tuple[str, str]] = []
    a1_lines: list[tuple[str, str]] = []
    for piece in pieces:
        elements.update(piece.elements)
        towers.update(piece.towers)
        a0_lines.extend(piece.a0_lines)
        a1_lines.extend(piece.a1_lines)
    return BigradedChart(
        label="E2(X)",
        max_stem=max_stem,
        max_filt=max_filt,
        elements=elements,
        towers=frozenset(towers),
        a0_lines=tuple(a0_lines),
        a1_lines=tuple(a1_lines),
        collapsed=collapsed,
        differentials=() if collapsed else unresolved_differentials(dec),
    )


def tower_count(chart: BigradedChart, stem: int) -> int:
    """Number of a0-towers in a stem, counted with multiplicity across summands."""
    bases = {(el.summand, el.stem) for el in chart.elements.values() if el.in_tower and el.stem == stem}
    return len(bases)


def read_groups(chart: BigradedChart, max_stem: int) -> dict[int, tuple[int, int]]:
    """(Z-rank, Z/2-rank) per stem: a0-towers give Z, every other class gives Z/2."""
    groups = {}
    for stem in range(min(max_stem, chart.max_stem) + 1):
        torsion = sum(1 for el in chart.elements.values() if el.stem == stem and not el.in_tower)
        groups[stem] = (tower_count(chart, stem), torsion)
    return groups


def iter_monomials(generators: Sequence[tuple[str, Cell]], max_stem: int, max_filt: int) -> Iterable[Monomial]:
    """All monomials (reduced or not) inside the given range."""
    for g in range(len(generators)):
        for l in range(max_filt // 4 + 1):
            for k in range(max_filt // 3 + 1):
                for j in range(max_filt + 1):
                    for i in range(max_filt + 1):
                        mono: Monomial = (i, j, k, l, g)
                        stem, filt = bidegree(mono, generators)
                        if stem <= max_stem and filt <= max_filt:
                            yield mono

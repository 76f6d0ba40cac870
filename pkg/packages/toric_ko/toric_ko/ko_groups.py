"""ko_*, KO_* and KO^* read off the collapsed Adams spectral sequence.

Extensions follow the chart: a0-towers assemble to Z (2-locally Z_(2)),
a1-multiples are elements of order two. Odd primes contribute no torsion,
so every group is Z^α ⊕ (Z/2)^β.

    ko_*S⁰ by d mod 8 (d >= 0): 0 -> Z, 1 -> Z/2, 2 -> Z/2, 4 -> Z, else 0
    ko_*M:                      Z in every even d >= 0
    KO_*: the same patterns over all integers (b inverted)
    KO^m X = α_{m-4} Z ⊕ β_{m-5} Z/2
"""
from __future__ import annotations

from dataclasses import dataclass, field
import logging
from typing import Iterable, Sequence, Union

from .a1_decomp import A1Decomposition
from .errors import CollapseNotEstablishedError, UnsupportedTorsionError

logger = logging.getLogger("ToricKO.KOGroups")

_S0_PATTERN = {0: (1, 0), 1: (0, 1), 2: (0, 1), 4: (1, 0)}

NO_ODD_TORSION = "no odd torsion: groups are Z^a ⊕ (Z/2)^b"


@dataclass(frozen=True, slots=True)
class GroupRank:
    free: int = 0
    two: int = 0
    summands: tuple[str, ...] = ()
    other_torsion: tuple[int, ...] = ()  # orders of cyclic summands other than Z/2

    def is_zero(self) -> bool:
        return not (self.free or self.two or self.other_torsion)

    def as_tuple(self) -> tuple[int, int]:
        return self.free, self.two

    def __str__(self) -> str:
        parts = []
        if self.free:
            parts.append("Z" if self.free == 1 else f"Z^{self.free}")
        if self.two:
            parts.append("Z/2" if self.two == 1 else f"(Z/2)^{self.two}")
        parts.extend(f"Z/{order}" for order in self.other_torsion)
        return " ⊕ ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class GradedAbelianGroup:
    label: str
    ranks: dict[int, GroupRank]
    summands: tuple[tuple[str, int, int], ...] = ()  # (kind, shift, count) provenance
    periodic: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.ranks)

    def at(self, degree: int) -> GroupRank:
        if degree in self.ranks:
            return self.ranks[degree]
        if self.periodic:
            for d in self.ranks:
                if (d - degree) % 8 == 0:
                    return self.ranks[d]
            if self.summands:
                return _periodic_sum(self.summands, degree)
        return GroupRank()

    def to_rows(self) -> list[dict[str, object]]:
        return [
            {
                "degree": d,
                "free_rank": self.ranks[d].free,
                "two_rank": self.ranks[d].two,
                "group": str(self.ranks[d]),
                "summands": list(self.ranks[d].summands),
            }
            for d in self.degrees
        ]

    def to_dict(self) -> dict[str, object]:
        return {"label": self.label, "rows": self.to_rows(), "notes": list(self.notes)}


def ko_of_s0(degree: int) -> tuple[int, int]:
    if degree < 0:
        return (0, 0)
    return _S0_PATTERN.get(degree % 8, (0, 0))


def ko_of_m(degree: int) -> tuple[int, int]:
    if degree < 0 or degree % 2:
        return (0, 0)
    return (1, 0)


def KO_of_s0(degree: int) -> tuple[int, int]:
    return _S0_PATTERN.get(degree % 8, (0, 0))


def KO_of_m(degree: int) -> tuple[int, int]:
    return (0, 0) if degree % 2 else (1, 0)


_CONNECTIVE = {"S0": ko_of_s0, "M": ko_of_m}
_PERIODIC = {"S0": KO_of_s0, "M": KO_of_m}


def _sum(summands: Sequence[tuple[str, int, int]], degree: int, patterns: dict) -> GroupRank:
    free = two = 0
    contributors = []
    for kind, shift, count in summands:
        a, b = patterns[kind](degree - shift)
        if a or b:
            free += count * a
            two += count * b
            contributors.append(f"{count}Σ^{shift}{kind}" if count > 1 else f"Σ^{shift}{kind}")
    return GroupRank(free, two, tuple(contributors))


def _periodic_sum(summands: Sequence[tuple[str, int, int]], degree: int) -> GroupRank:
    return _sum(summands, degree, _PERIODIC)


def ko_homology(
    dec: A1Decomposition,
    max_degree: int,
    *,
    reduced: bool = False,
    collapse_established: bool = True,
    bounds: object = None,
) -> GradedAbelianGroup:
    """ko_d X for 0 <= d <= max_degree as a sum of shifted ko_*S⁰ and ko_*M."""
    if not collapse_established:
        raise CollapseNotEstablishedError(
            "Adams differentials are not ruled out for singular inputs of dimension 12 or more", bounds=bounds
        )
    source = dec.reduced() if reduced else dec
    summands = tuple(source.summands())
    notes = [NO_ODD_TORSION]
    if max_degree < 0:
        notes.append("connective ko vanishes in negative degrees")
    ranks = {d: _sum(summands, d, _CONNECTIVE) for d in range(max_degree + 1)}
    label = "ko_* reduced" if reduced else "ko_*"
    logger.debug("%s computed up to degree %d", label, max_degree)
    return GradedAbelianGroup(label=label, ranks=ranks, summands=summands, notes=tuple(notes))


def ko_to_KO(
    source: Union[A1Decomposition, GradedAbelianGroup],
    degree_range: Iterable[int],
) -> GradedAbelianGroup:
    """Inverts the Bott class: the periodic superposition over the given degrees."""
    summands = tuple(source.summands()) if isinstance(source, A1Decomposition) else source.summands
    if not summands and isinstance(source, GradedAbelianGroup) and source.ranks:
        raise ValueError("ko_to_KO needs a group with summand provenance")
    ranks = {d: _periodic_sum(summands, d) for d in degree_range}
    return GradedAbelianGroup(label="KO_*", ranks=ranks, summands=summands, periodic=True, notes=(NO_ODD_TORSION,))


def KO_cohomology(KO_h: GradedAbelianGroup, degree_range: Iterable[int] | None = None) -> GradedAbelianGroup:
    """KO^m = α_{m-4}·Z ⊕ β_{m-5}·Z/2 from KO-homology ranks."""
    for d, rank in KO_h.ranks.items():
        if rank.other_torsion:
            raise UnsupportedTorsionError(f"KO_{d} has torsion {list(rank.other_torsion)}; only Z and Z/2 are handled")
    degrees = list(degree_range) if degree_range is not None else KO_h.degrees
    ranks = {}
    for m in degrees:
        alpha = KO_h.at(m - 4).free
        beta = KO_h.at(m - 5).two
        ranks[m] = GroupRank(alpha, beta, (f"α_{m - 4}", f"β_{m - 5}"))
    return GradedAbelianGroup(
        label="KO^*",
        ranks=ranks,
        summands=KO_h.summands,
        periodic=KO_h.periodic,
        notes=("KO_*S0-module structure not computed",),
    )

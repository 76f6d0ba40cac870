"""Text, JSON and SVG output.

ASCII charts put the stem t-s across and the filtration s up the page.
A cell shows 'o' for one class or the count when there are several; '|'
joins a class to its a0-multiple, '/' to its a1-multiple, and ':' above
the top row marks a tower that continues.
"""
from __future__ import annotations

import io
import json
from typing import Any, Optional

import matplotlib

matplotlib.use("Agg")

from matplotlib.figure import Figure  # noqa: E402
from rich.console import Console  # noqa: E402
from rich.panel import Panel  # noqa: E402
from rich.table import Table  # noqa: E402

from .config import settings  # noqa: E402
from .ext_charts import BigradedChart  # noqa: E402
from .ko_groups import NO_ODD_TORSION, GradedAbelianGroup  # noqa: E402
from .pipeline import Report  # noqa: E402

CELL_WIDTH = 4


def _cell_symbol(count: int) -> str:
    if count == 1:
        return "o"
    return str(count) if count < 10 else "+"


def render_chart_ascii(chart: BigradedChart, max_stem: Optional[int] = None, max_filt: Optional[int] = None) -> str:
    stems = chart.max_stem if max_stem is None else min(max_stem, chart.max_stem)
    filts = chart.max_filt if max_filt is None else min(max_filt, chart.max_filt)
    counts = chart.cell_counts()
    place = {name: (el.stem, el.filtration) for name, el in chart.elements.items()}
    a0 = {place[a] for a, _ in chart.a0_lines}
    a1 = {place[a] for a, b in chart.a1_lines if place[b][0] <= stems}
    width = CELL_WIDTH * (stems + 1)

    def blank() -> list[str]:
        return [" "] * width

    lines = [f"{chart.label}  [{chart.status}]", "  s"]
    ellipsis = blank()
    for el in chart.elements.values():
        if el.in_tower and el.filtration == filts and el.stem <= stems:
            ellipsis[CELL_WIDTH * el.stem] = ":"
    lines.append("    " + "".join(ellipsis))
    for s in range(filts, -1, -1):
        if s < filts:
            connector = blank()
            for stem in range(stems + 1):
                if (stem, s) in a0:
                    connector[CELL_WIDTH * stem] = "|"
                if (stem, s) in a1 and stem < stems:
                    connector[CELL_WIDTH * stem + CELL_WIDTH // 2] = "/"
            lines.append("    " + "".join(connector))
        row = blank()
        for stem in range(stems + 1):
            count = counts.get((stem, s), 0)
            if count:
                row[CELL_WIDTH * stem] = _cell_symbol(count)
        lines.append(f"{s:>3} " + "".join(row))
    lines.append("    " + "+" + "-" * (CELL_WIDTH - 1) + ("+" + "-" * (CELL_WIDTH - 1)) * stems + " t-s")
    lines.append("    " + "".join(f"{stem:<{CELL_WIDTH}}" for stem in range(stems + 1)))
    if chart.differentials:
        lines.append(f"unresolved differentials from: {', '.join(str(d.source) for d in chart.differentials)}")
    return "\n".join(line.rstrip() for line in lines) + "\n"


def render_chart_svg(chart: BigradedChart, *, hash_salt: Optional[str] = None) -> str:
    """Deterministic SVG: fixed hash salt, no date metadata."""
    stems, filts = chart.max_stem, chart.max_filt
    fig = Figure(figsize=(max(4.0, 0.5 * (stems + 2)), max(3.0, 0.5 * (filts + 2))))
    ax = fig.subplots()
    position: dict[str, tuple[float, float]] = {}
    for (stem, s), names in chart.cells.items():
        k = len(names)
        for i, name in enumerate(names):
            position[name] = (stem + (i - (k - 1) / 2) * 0.12, s)
    for lines, style in ((chart.a0_lines, "-"), (chart.a1_lines, "-")):
        for a, b in lines:
            if a in position and b in position:
                (x0, y0), (x1, y1) = position[a], position[b]
                ax.plot([x0, x1], [y0, y1], style, color="black", linewidth=0.8)
    if position:
        xs, ys = zip(*(position[name] for name in sorted(position)))
        ax.scatter(xs, ys, s=14, color="black", zorder=3)
    for name, el in sorted(chart.elements.items()):
        if el.in_tower and el.filtration == filts:
            x, y = position[name]
            ax.annotate("", xy=(x, y + 0.6), xytext=(x, y), arrowprops={"arrowstyle": "->", "linewidth": 0.8})
    for d in chart.differentials:
        ax.plot([d.source[0]], [d.source[1]], marker="o", markersize=8, fillstyle="none", color="red")
    ax.set_xlim(-0.5, stems + 0.5)
    ax.set_ylim(-0.5, filts + 1)
    ax.set_xticks(range(stems + 1))
    ax.set_yticks(range(filts + 1))
    ax.set_xlabel("t - s")
    ax.set_ylabel("s")
    ax.set_title(f"{chart.label} [{chart.status}]")
    ax.grid(True, linewidth=0.3)
    buffer = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": hash_salt or settings.SVG_HASH_SALT, "svg.fonttype": "none"}):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def render_chart(chart: BigradedChart, fmt: str = "ascii", **kwargs: Any) -> str:
    if fmt == "svg":
        return render_chart_svg(chart, hash_salt=kwargs.get("hash_salt"))
    return render_chart_ascii(chart, kwargs.get("max_stem"), kwargs.get("max_filt"))


# ─── reports ───────────────────────────────────────────────────────────


def _console(width: Optional[int] = None) -> Console:
    return Console(record=True, width=width or settings.REPORT_WIDTH, color_system=None, file=io.StringIO(), highlight=False)


def _matrix_text(rows: list[list[int]]) -> str:
    if not rows or not rows[0]:
        return "(empty)"
    return "\n".join(" ".join(str(x) for x in row) for row in rows)


def group_table(group: GradedAbelianGroup, title: str) -> Table:
    table = Table(title=title, header_style="bold")
    table.add_column("degree", justify="right")
    table.add_column("Z-rank", justify="right")
    table.add_column("Z/2-rank", justify="right")
    table.add_column("group")
    table.add_column("from")
    for row in group.to_rows():
        table.add_row(str(row["degree"]), str(row["free_rank"]), str(row["two_rank"]), row["group"], ", ".join(row["summands"]))
    return table


def print_overview(console: Console, report: Report) -> None:
    spec = report.spec
    source = "integral λ (checked unimodular)" if report.lam_z is not None else "λ given mod 2"
    console.print(Panel(f"{spec.name}: n={spec.n}, m={spec.m}, mode={spec.mode}\ninput: {source}", title="toric-ko"))
    table = Table(title="Face counts", header_style="bold")
    table.add_column("i", justify="right")
    table.add_column("f_(i-1)", justify="right")
    table.add_column("h_i", justify="right")
    table.add_column("H_2i(M; Z)")
    betti = report.betti()
    for i, hi in enumerate(report.h.h):
        fi = str(report.f.f[i - 1]) if i >= 1 else "1"
        rank = betti[str(2 * i)]
        table.add_row(str(i), fi, str(hi), "Z" if rank == 1 else (f"Z^{rank}" if rank else "0"))
    console.print(table)


def print_cohomology(console: Console, report: Report) -> None:
    results = report.results_dict()["ring"]
    A = report.algebra
    table = Table(title="H*(M; Z/2)", header_style="bold")
    table.add_column("degree", justify="right")
    table.add_column("dim", justify="right")
    table.add_column("basis")
    for d in A.degrees:
        table.add_row(str(d), str(A.dim(d)), ", ".join(A.basis_names(d)))
    console.print(table)
    console.print("Stanley-Reisner ideal I: " + ", ".join(results["stanley_reisner"] or ["0"]))
    console.print("J: " + "; ".join(results["linear_relations"]))
    console.print("solved: " + "; ".join(results["solved_relations"]))
    for d, relations in results["generator_relations"].items():
        if relations:
            console.print(f"H^{d}: " + "; ".join(relations))
    if A.presentation_assumed:
        console.print("presentation assumed (singular mode)")


def print_decomposition(console: Console, report: Report) -> None:
    op = report.sq2
    A = report.algebra
    for d in A.degrees[:-1]:
        console.print(Panel(_matrix_text(op.mats[d].tolist()), title=f"Sq2: H^{d} -> H^{d + 2}", expand=False))
    homology = ", ".join(f"H_{2 * k}={v}" for k, v in enumerate(report.homology.dims))
    console.print(f"Sq2-homology: {homology}")
    console.print(Panel("\n".join(report.decomposition.summary_lines()) or "0", title="A(1) summands", expand=False))
    console.print(f"H* = {report.decomposition.formula()}")


def print_groups(console: Console, report: Report) -> None:
    if not report.collapse_established:
        console.print(Panel(report.chart.status, title="collapse not established", expand=False))
        return
    console.print(group_table(report.ko, "ko_*(M)"))
    console.print(group_table(report.ko_reduced, "reduced ko_*(M)"))
    console.print(group_table(report.KO, "KO_*(M)"))
    console.print(group_table(report.KO_co, "KO^*(M) = α_{m-4} Z ⊕ β_{m-5} Z/2"))
    console.print(NO_ODD_TORSION)


def print_spin(console: Console, report: Report) -> None:
    if report.spin is None:
        console.print("spin: not tested")
        return
    console.print(f"spin: {'yes' if report.spin.spin else 'no'} (Wu class v2 = {report.spin.wu_name})")


def render_report_text(report: Report, *, width: Optional[int] = None, sections: Optional[list[str]] = None) -> str:
    console = _console(width)
    wanted = sections or ["overview", "cohomology", "decomposition", "chart", "groups", "spin", "warnings"]
    for section in wanted:
        if section == "overview":
            print_overview(console, report)
        elif section == "cohomology":
            print_cohomology(console, report)
        elif section == "decomposition":
            print_decomposition(console, report)
        elif section == "chart":
            console.print(render_chart_ascii(report.chart), markup=False, soft_wrap=True)
        elif section == "groups":
            print_groups(console, report)
        elif section == "spin":
            print_spin(console, report)
        elif section == "warnings":
            for warning in report.warnings:
                console.print(f"warning: {warning}", markup=False)
    return console.export_text()


def render_report_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

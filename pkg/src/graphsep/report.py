"""Full analysis of a single graph, renderable as text or JSON."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import EdgeClass, Graph, classify_edge, density_matrix
from .matrix import (
    eigenvalues_sym,
    exact_str,
    float12,
    partial_transpose,
    purity,
)
from .separability import (
    DegreeCriterionResult,
    LOW_PPT_DIMS,
    PPTResult,
    Status,
    Verdict,
    all_separable_certificate,
    block_lss_certificate,
    degree_criterion,
    pe_matching_certificate,
    ppt_test,
    revalidate,
    verdict,
    verdict_to_json_dict,
)

CERTIFICATE_ORDER = (
    "all-edges-separable",
    "block-line-sum-symmetric",
    "pe-matching",
    "low-dim-ppt",
)


@dataclass(frozen=True)
class AnalysisReport:
    graph: Graph
    edge_classes: dict
    purity: Fraction
    ppt: PPTResult
    degree: DegreeCriterionResult
    certificates: tuple[str, ...]
    verdict: Verdict
    spectrum: dict | None


def analyze(g: Graph, include_spectrum: bool = False) -> AnalysisReport:
    """Run every check on one graph and cross-validate the verdict."""
    counts = {cls.value: 0 for cls in EdgeClass}
    for e in g.edges:
        counts[classify_edge(e).value] += 1
    ppt = ppt_test(g)
    degree = degree_criterion(g)
    granted = []
    if all_separable_certificate(g) is not None:
        granted.append("all-edges-separable")
    if block_lss_certificate(g) is not None:
        granted.append("block-line-sum-symmetric")
    if g.dims.p == 2 and pe_matching_certificate(g) is not None:
        granted.append("pe-matching")
    if tuple(g.dims) in LOW_PPT_DIMS and ppt.holds:
        granted.append("low-dim-ppt")
    v = verdict(g)
    if not revalidate(g, v):
        raise RuntimeError("verdict evidence failed revalidation")
    spectrum = None
    if include_spectrum:
        sigma = density_matrix(g)
        spectrum = {
            "density": eigenvalues_sym(sigma),
            "partial_transpose": eigenvalues_sym(partial_transpose(sigma, g.dims)),
        }
    return AnalysisReport(
        graph=g,
        edge_classes=counts,
        purity=purity(density_matrix(g)),
        ppt=ppt,
        degree=degree,
        certificates=tuple(k for k in CERTIFICATE_ORDER if k in granted),
        verdict=v,
        spectrum=spectrum,
    )


def report_json_dict(r: AnalysisReport) -> dict:
    g = r.graph
    out = verdict_to_json_dict(r.verdict)
    out.update(
        {
            "dims": [g.dims.p, g.dims.q],
            "vertices": g.n,
            "edges": len(g.sorted_edges),
            "loops": len(g.loops),
            "degree_sum": g.degree_sum,
            "edge_classes": r.edge_classes,
            "purity": exact_str(r.purity),
            "ppt": {
                "holds": r.ppt.holds,
                "min_eigenvalue_estimate": float12(r.ppt.min_eigenvalue_estimate),
            },
            "degree_criterion": {
                "holds": r.degree.holds,
                "violating_row": r.degree.violating_row,
                "row_sum": (
                    exact_str(r.degree.row_sum)
                    if r.degree.row_sum is not None
                    else None
                ),
            },
            "certificates": list(r.certificates),
        }
    )
    if r.spectrum is not None:
        out["spectrum"] = {
            key: [float12(x) for x in vals] for key, vals in r.spectrum.items()
        }
    return out


def _witness_line(v: Verdict) -> str | None:
    w = v.witness
    if w is None:
        return None
    if w.kind == "degree-criterion":
        return f"witness: degree change at row {w.row}, sum {exact_str(w.row_sum)}"
    if w.kind == "negative-eigenvalue":
        return f"witness: negative eigenvalue, about {w.min_eigenvalue_estimate:.6g}"
    return (
        f"witness: quadratic form value {exact_str(w.value)}"
        f" (density scale {exact_str(Fraction(w.value, w.degree_sum))})"
    )


def render_text(r: AnalysisReport) -> str:
    g = r.graph
    v = r.verdict
    if v.status == Status.SEPARABLE:
        lines = [f"verdict: separable ({v.certificate.kind})"]
    elif v.status == Status.ENTANGLED:
        lines = ["verdict: entangled"]
        wline = _witness_line(v)
        if wline:
            lines.append(wline)
    else:
        lines = ["verdict: unknown"]
    lines.append(f"dims: {g.dims.p}x{g.dims.q} ({g.n} vertices)")
    lines.append(f"edges: {len(g.sorted_edges)} (loops: {len(g.loops)})")
    classes = " ".join(
        f"{name}={count}" for name, count in sorted(r.edge_classes.items()) if count
    )
    lines.append(f"edge classes: {classes or 'none'}")
    lines.append(f"degree sum: {g.degree_sum}")
    lines.append(f"purity: {exact_str(r.purity)}")
    lines.append(
        "partial transpose positive: "
        + ("yes" if r.ppt.holds else "no")
        + f" (min eigenvalue about {r.ppt.min_eigenvalue_estimate:.6g})"
    )
    if r.degree.holds:
        lines.append("degrees preserved: yes")
    else:
        lines.append(
            "degrees preserved: no"
            f" (row {r.degree.violating_row} sum {exact_str(r.degree.row_sum)})"
        )
    lines.append(
        "certificates: " + (", ".join(r.certificates) if r.certificates else "none")
    )
    if r.spectrum is not None:
        for key, label in (
            ("density", "density spectrum"),
            ("partial_transpose", "partial transpose spectrum"),
        ):
            vals = ", ".join(f"{x:.6g}" for x in r.spectrum[key])
            lines.append(f"{label}: {vals}")
    return "\n".join(lines) + "\n"

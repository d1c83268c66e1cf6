"""Serialising isotopy graphs: JSON, Graphviz DOT and a static SVG plot."""
from __future__ import annotations

from xml.sax.saxutils import escape

import gmpy2

from ..arith.rational import Q, qstr

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"]


def _key(k) -> str:
    return f"{k[0]}:{k[1]}"


def component_map(h):
    """{vertex key: component index} for the connected components of h."""
    return {k: n for n, keys in enumerate(h.components()) for k in keys}


def _edge_comp(comp, a, b):
    # crossings of a projected space curve belong to no single component
    c = comp.get(a)
    return comp.get(b) if c is None else c


def _box(v, width):
    p = v.point
    p.refine(width)
    return p.x_interval(), p.y_interval()


def _outward(lo, hi, bits=32):
    """The interval widened to dyadic ends with the given number of fraction bits."""
    s = 1 << bits
    return Q(gmpy2.floor(lo * s), s), Q(gmpy2.ceil(hi * s), s)


def _to_display(x, y, shear):
    # the graph lives in sheared coordinates u = x1 - s x2
    return x + shear * y, y


def graph_json(h, comp=None, shear=Q(0), width=Q(1, 1 << 20)):
    """Plain-data view of the graph: vertices with isolating boxes, edges, tails."""
    comp = component_map(h) if comp is None else comp
    rep = h.representatives()
    verts, edges, tails = [], [], []
    for k in h.keys():
        if rep[k] != k:
            continue
        v = h.vertex(k)
        (xl, xh), (yl, yh) = _box(v, width)
        xl, xh = _outward(xl, xh)
        yl, yh = _outward(yl, yh)
        verts.append({
            "id": _key(k),
            "x": [qstr(xl), qstr(xh)],
            "y": [qstr(yl), qstr(yh)],
            "column": v.column.kind,
            "classes": sorted(t for t in ("K", "P", "q", "app") if k in h.classes[t]),
            "component": comp.get(k),
        })
    for i, part in enumerate(h.parts):
        g = part.graph
        for a, b in g.edges:
            ka, kb = rep[(i, a)], rep[(i, b)]
            edges.append({"from": _key(ka), "to": _key(kb), "component": _edge_comp(comp, ka, kb)})
        for vid, side in sorted(g.tails):
            ka = rep[(i, vid)]
            tails.append({"at": _key(ka), "side": side, "component": comp.get(ka)})
    out = {"vertices": verts, "edges": edges, "tails": tails}
    if shear:
        out["shear"] = qstr(shear)
    return out


def graph_dot(h, comp=None, shear=Q(0), name="curve") -> str:
    comp = component_map(h) if comp is None else comp
    rep = h.representatives()
    lines = [f"graph {name} {{", "  node [shape=box, fontsize=10];"]
    for k in h.keys():
        if rep[k] != k:
            continue
        v = h.vertex(k)
        (xl, xh), (yl, yh) = _box(v, Q(1, 1 << 20))
        x, y = _to_display(float(xl + xh) / 2, float(yl + yh) / 2, float(shear))
        tags = ",".join(t for t in ("K", "P", "q", "app") if k in h.classes[t])
        color = PALETTE[comp.get(k, 0) % len(PALETTE)] if comp.get(k) is not None else "black"
        label = f"{_key(k)}\\n({x:.4g}, {y:.4g})" + (f"\\n{tags}" if tags else "")
        lines.append(f'  "{_key(k)}" [label="{label}", color="{color}"];')
    for i, part in enumerate(h.parts):
        for a, b in part.graph.edges:
            ka, kb = rep[(i, a)], rep[(i, b)]
            c = _edge_comp(comp, ka, kb)
            color = PALETTE[c % len(PALETTE)] if c is not None else "black"
            lines.append(f'  "{_key(ka)}" -- "{_key(kb)}" [color="{color}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_svg(h, comp=None, shear=Q(0), size=640, margin=40) -> str:
    """Straight-line embedding of h with each vertex drawn as a small box."""
    comp = component_map(h) if comp is None else comp
    rep = h.representatives()
    pos = {}
    for k in h.keys():
        if rep[k] == k:
            (xl, xh), (yl, yh) = _box(h.vertex(k), Q(1, 1 << 20))
            x, y = _to_display(float(xl + xh) / 2, float(yl + yh) / 2, float(shear))
            pos[k] = (x, y)
    if pos:
        xs = [p[0] for p in pos.values()]
        ys = [p[1] for p in pos.values()]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    else:
        x0 = y0 = -1.0
        x1 = y1 = 1.0
    span = max(x1 - x0, y1 - y0, 1e-9)
    scale = (size - 2 * margin) / span

    def sx(x):
        return margin + (x - x0) * scale

    def sy(y):
        return size - margin - (y - y0) * scale

    def colour(k, other=None):
        c = comp.get(k) if other is None else _edge_comp(comp, k, other)
        return PALETTE[c % len(PALETTE)] if c is not None else "#000000"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>']
    for i, part in enumerate(h.parts):
        g = part.graph
        for a, b in g.edges:
            ka, kb = rep[(i, a)], rep[(i, b)]
            (xa, ya), (xb, yb) = pos[ka], pos[kb]
            out.append(f'<line x1="{sx(xa):.2f}" y1="{sy(ya):.2f}" x2="{sx(xb):.2f}" y2="{sy(yb):.2f}" '
                       f'stroke="{colour(ka, kb)}" stroke-width="1.5"/>')
        for vid, side in sorted(g.tails):
            ka = rep[(i, vid)]
            xa, ya = pos[ka]
            dx = -margin * 0.8 if side == "left" else margin * 0.8
            out.append(f'<line x1="{sx(xa):.2f}" y1="{sy(ya):.2f}" x2="{sx(xa) + dx:.2f}" y2="{sy(ya):.2f}" '
                       f'stroke="{colour(ka)}" stroke-width="1.5" stroke-dasharray="4 3"/>')
    for k, (x, y) in pos.items():
        tags = [t for t in ("K", "P", "q", "app") if k in h.classes[t]]
        fill = "#000000" if tags else "white"
        out.append(f'<rect x="{sx(x) - 3:.2f}" y="{sy(y) - 3:.2f}" width="6" height="6" '
                   f'fill="{fill}" stroke="{colour(k)}"><title>{escape(_key(k))} {" ".join(tags)}</title></rect>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

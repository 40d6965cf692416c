"""Graphviz DOT export for games and scenarios."""

from __future__ import annotations

import json

from ._maps import format_action
from .game import SpacetimeGame
from .scenario import Scenario

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def _q(s) -> str:
    return json.dumps(str(s), ensure_ascii=False)


def _game_dot(g: SpacetimeGame) -> str:
    lines = ["digraph game {", "  rankdir=TB;", '  node [fontname="Helvetica"];']
    non_singletons = [i for i in g.info_set_order if len(g.info_sets[i]) > 1]
    color = {i: _PALETTE[k % len(_PALETTE)] for k, i in enumerate(non_singletons)}
    for k, i in enumerate(g.info_set_order):
        members = sorted(g.info_sets[i])
        shape = "box" if g.info_owner(i) == g.observer else "ellipse"
        if len(members) > 1:
            lines.append(f"  subgraph cluster_{k} {{")
            lines.append(f"    label={_q(i)}; style=dashed; color={_q(color[i])};")
            indent = "    "
        else:
            indent = "  "
        for n in members:
            attrs = [f"label={_q(f'{n}' if n == i else f'{n} ({i})')}", f"shape={shape}"]
            if g.owner[n] == g.observer:
                attrs.append("style=filled")
                attrs.append('fillcolor="#eeeeee"')
            if i in color:
                attrs.append(f"color={_q(color[i])}")
            lines.append(f"{indent}{_q(n)} [{', '.join(attrs)}];")
        if len(members) > 1:
            lines.append("  }")
    for s, d in sorted(g.edges):
        lines.append(f"  {_q(s)} -> {_q(d)} [label={_q(format_action(g.edge_label[(s, d)]))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _scenario_dot(s: Scenario) -> str:
    lines = ["digraph scenario {", "  rankdir=LR;", '  node [fontname="Helvetica"];']
    for k, t in enumerate(s.enabling_sets):
        lines.append(f"  {_q(f't{k}')} [label={_q(s.format_events(t))}, shape=box, style=filled, fillcolor=\"#eeeeee\"];")
    for x in s.measurements:
        lines.append(f"  {_q(x)} [label={_q(x)}, shape=ellipse];")
    index = {t: k for k, t in enumerate(s.enabling_sets)}
    for t, x in sorted(s.enabling, key=lambda p: (index[p[0]], s.order[p[1]])):
        lines.append(f"  {_q(f't{index[t]}')} -> {_q(x)};")
    for k, f in enumerate(s.cover.sorted(s.order)):
        members = sorted(f, key=s.order.get)
        lines.append(f"  # context {k}: {{{','.join(members)}}}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(obj) -> str:
    """Deterministic DOT text.

    Games: observer nodes are filled boxes, nature nodes ellipses, and each
    multi-node information set is a dashed, colored cluster.  Scenarios: a
    bipartite diagram from enabling event sets to the measurements they enable.
    """
    if isinstance(obj, SpacetimeGame):
        return _game_dot(obj)
    if isinstance(obj, Scenario):
        return _scenario_dot(obj)
    raise TypeError(f"cannot export {type(obj).__name__} to DOT")


__all__ = ["export_dot"]

"""File formats: edge-list text, scores CSV, eigenbasis JSON.

Edge list: one edge per line, whitespace-separated ``i j [w]``; ``#``
starts a comment; blank lines ignored; node tokens are arbitrary labels.
Scores CSV: header ``node_label,score,rank``; scores round-trip losslessly
at 17 significant digits.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import EmptyInputError, ParseError
from .graph import Graph, from_edge_list
from .spectral import EigenBasis


def parse_edge_list(text: str) -> Graph:
    rows = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) not in (2, 3):
            raise ParseError(f"expected 'i j [w]', got {raw!r}", line_no=line_no)
        if len(toks) == 3:
            try:
                w = float(toks[2])
            except ValueError:
                raise ParseError(f"bad weight {toks[2]!r}", line_no=line_no)
            rows.append((toks[0], toks[1], w))
        else:
            rows.append((toks[0], toks[1]))
    if not rows:
        raise EmptyInputError("edge list contains no edges")
    return from_edge_list(rows)


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph, header: dict | None = None) -> str:
    lines = []
    if header:
        lines.append("# " + json.dumps(header, sort_keys=True))
    unweighted = np.all(g.weight == 1.0)
    for a, b, w in zip(g.edge_i, g.edge_j, g.weight):
        if unweighted:
            lines.append(f"{g.labels[a]} {g.labels[b]}")
        else:
            lines.append(f"{g.labels[a]} {g.labels[b]} {float(w)!r}")
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path, header: dict | None = None):
    with open(path, "w") as fh:
        fh.write(format_edge_list(g, header=header))


def format_scores(labels, scores, ranks) -> str:
    lines = ["node_label,score,rank"]
    for lab, s, r in zip(labels, scores, ranks):
        lines.append(f"{lab},{float(s)!r},{int(r)}")
    return "\n".join(lines) + "\n"


def write_scores(path, labels, scores, ranks):
    with open(path, "w") as fh:
        fh.write(format_scores(labels, scores, ranks))


def parse_scores(text: str):
    """Returns (labels, scores, ranks) from a scores CSV."""
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines:
        raise EmptyInputError("scores file is empty")
    if lines[0].strip() != "node_label,score,rank":
        raise ParseError(f"bad header {lines[0]!r}", line_no=1)
    labels, scores, ranks = [], [], []
    for line_no, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 3:
            raise ParseError(f"expected 3 fields, got {len(parts)}", line_no=line_no)
        try:
            scores.append(float(parts[1]))
            ranks.append(int(parts[2]))
        except ValueError as exc:
            raise ParseError(str(exc), line_no=line_no)
        labels.append(parts[0])
    if not labels:
        raise EmptyInputError("scores file has a header but no rows")
    return labels, np.array(scores), np.array(ranks, dtype=np.int64)


def read_scores(path):
    with open(path) as fh:
        return parse_scores(fh.read())


def read_basis(path) -> EigenBasis:
    with open(path) as fh:
        return EigenBasis.from_json(fh.read())


def write_basis(basis: EigenBasis, path):
    with open(path, "w") as fh:
        fh.write(basis.to_json())

# hypercore/khg_format.py

"""
.khg text codec.

    c optional comment
    p khg <k> <n> <m>
    e v_1 ... v_k        (m lines, 0 <= v_1 < ... < v_k < n, lex sorted)

Output is LF-terminated ASCII and byte-identical for equal hypergraphs.
"""

import os
from typing import Iterable, Optional

from hypercore.errors import KhgFormatError
from hypercore.hypergraph import Hypergraph


def write_khg(H: Hypergraph, comments: Optional[Iterable[str]] = None) -> str:
    """Canonical .khg text for H, optional comment lines first"""
    lines = [f"c {c}" for c in (comments or [])]
    lines.append(f"p khg {H.k} {H.n} {len(H.edges)}")
    lines.extend("e " + " ".join(str(v) for v in e) for e in H.edges)
    return "\n".join(lines) + "\n"


def parse_khg(text: str) -> Hypergraph:
    """Parse .khg text; any deviation raises KhgFormatError with its 1-based line"""
    header = None
    edges = []
    previous = None

    lines = text.split("\n")
    for line_no, line in enumerate(lines, start=1):
        if line.endswith("\r"):
            raise KhgFormatError("CR line ending", line_no)
        if not line:
            if line_no == len(lines):
                break
            raise KhgFormatError("empty line", line_no)
        if line == "c" or line.startswith("c "):
            continue
        fields = line.split(" ")
        if header is None:
            if len(fields) != 5 or fields[0] != "p" or fields[1] != "khg":
                raise KhgFormatError(f"expected 'p khg <k> <n> <m>', got {line!r}", line_no)
            try:
                k, n, m = (int(x) for x in fields[2:])
            except ValueError:
                raise KhgFormatError(f"non-integer header field in {line!r}", line_no)
            if k < 2 or n < 0 or m < 0:
                raise KhgFormatError(f"header values out of range in {line!r}", line_no)
            header = (k, n, m)
            continue

        k, n, m = header
        if fields[0] != "e":
            raise KhgFormatError(f"expected an edge line, got {line!r}", line_no)
        try:
            edge = tuple(int(x) for x in fields[1:])
        except ValueError:
            raise KhgFormatError(f"non-integer vertex in {line!r}", line_no)
        if len(edge) != k:
            raise KhgFormatError(f"edge has {len(edge)} vertices, header says k={k}", line_no)
        if any(v < 0 or v >= n for v in edge):
            raise KhgFormatError(f"vertex out of range 0..{n - 1}", line_no)
        if any(a >= b for a, b in zip(edge, edge[1:])):
            raise KhgFormatError("edge vertices must be strictly increasing", line_no)
        if previous is not None:
            if edge == previous:
                raise KhgFormatError(f"duplicate edge {edge}", line_no)
            if edge < previous:
                raise KhgFormatError("edges must be lexicographically sorted", line_no)
        previous = edge
        edges.append(edge)

    if header is None:
        raise KhgFormatError("missing 'p khg' header")
    k, n, m = header
    if len(edges) != m:
        raise KhgFormatError(f"header announces {m} edges, found {len(edges)}")
    return Hypergraph(k=k, n=n, edges=tuple(edges))


def load_khg(path: str) -> Hypergraph:
    """Read a .khg file without newline translation"""
    with open(path, "r", newline="") as f:
        return parse_khg(f.read())


def save_khg(H: Hypergraph, path: str, comments: Optional[Iterable[str]] = None) -> str:
    """Write H to path (parent directories created) and return the path"""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(write_khg(H, comments))
    return path

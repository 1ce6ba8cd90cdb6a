"""graph6, DOT and multigraph-JSON encodings.

graph6 follows the nauty convention: size field N(n), then the upper
triangle of the adjacency matrix column by column (x(0,1), x(0,2), x(1,2),
x(0,3), ...), packed six bits per printable byte.
"""

from __future__ import annotations

import json
from typing import List, Union

from .graphcore import GraphError, MultiGraph

HEADER = b">>graph6<<"


class FormatError(GraphError):
    pass


def _encode_n(n: int) -> bytes:
    if n < 0 or n > 68719476735:
        raise FormatError(f"vertex count {n} not representable in graph6")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def _decode_n(data: bytes) -> tuple:
    if not data:
        raise FormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated 8-byte size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise FormatError("truncated 4-byte size field")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def write_graph6(G: MultiGraph) -> bytes:
    if not G.is_simple():
        raise FormatError(
            "graph6 cannot carry edge multiplicities; use write_multigraph_json for multigraphs"
        )
    n = G.n
    bits: List[int] = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if G.mult(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = bytearray()
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        body.append(val + 63)
    return _encode_n(n) + bytes(body)


def parse_graph6(text: Union[bytes, str]) -> MultiGraph:
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(HEADER):
        data = data[len(HEADER) :]
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise FormatError(f"byte {b} at offset {pos} outside [63, 126]")
    n, off = _decode_n(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[off:]
    if len(body) != need:
        raise FormatError(f"n={n} needs {need} data bytes, found {len(body)}")
    bits: List[int] = []
    for b in body:
        val = b - 63
        bits.extend((val >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits")
    mult = {}
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                mult[(i, j)] = 1
            k += 1
    return MultiGraph(n, mult)


def write_dot(G: MultiGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(G.n):
        lbl = G.label(v)
        lines.append(f'  {v} [label="{lbl}"];' if lbl else f"  {v};")
    for u, v, k in G.edges():
        lines.extend([f"  {u} -- {v};"] * k)
    lines.append("}")
    return "\n".join(lines) + "\n"


def multigraph_to_dict(G: MultiGraph) -> dict:
    return {
        "n": G.n,
        "edges": [[u, v, k] for u, v, k in G.edges()],
        "labels": {str(v): t for v, t in sorted(G.labels.items())},
    }


def write_multigraph_json(G: MultiGraph) -> str:
    return json.dumps(multigraph_to_dict(G), sort_keys=True)


def multigraph_from_dict(obj: dict) -> MultiGraph:
    try:
        n = int(obj["n"])
        mult = {}
        for u, v, k in obj["edges"]:
            key = (min(u, v), max(u, v))
            if key in mult:
                raise FormatError(f"duplicate edge entry {key}")
            mult[key] = int(k)
        labels = {int(v): t for v, t in obj.get("labels", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed multigraph JSON: {exc}") from exc
    return MultiGraph(n, mult, labels)


def parse_multigraph_json(text: str) -> MultiGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return multigraph_from_dict(obj)


def load_graph(text: Union[bytes, str]) -> MultiGraph:
    """Sniff JSON vs graph6."""
    raw = text.decode("ascii") if isinstance(text, bytes) else text
    raw = raw.strip()
    if raw.startswith("{"):
        return parse_multigraph_json(raw)
    return parse_graph6(raw)

"""graph6 / digraph6 encoding and decoding.

Both formats pack an adjacency bitstream six bits per printable byte (value
plus 63), most significant bit first, zero padded. graph6 walks the upper
triangle column by column; digraph6 walks the full matrix row by row, bit
``(i, j)`` set iff arc ``i -> j``. The digraph6 header ``&`` is optional on
input. Decoded digraphs must be oriented.
"""

from __future__ import annotations

from typing import Iterable

from .graph_core import AnyGraph, Digraph, Graph, GraphError

GRAPH6 = "graph6"
DIGRAPH6 = "digraph6"
KINDS = (GRAPH6, DIGRAPH6)

# Fixed once; the fixture round-trip tests fail hard if this stops matching.
DIGRAPH6_BIT_ORDER = "row-major"

_SMALL_MAX = 62
_MEDIUM_MAX = 258047


class DecodeError(ValueError):
    """Malformed graph6/digraph6 text. ``position`` is a byte or bit offset."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


def encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative order")
    if n <= _SMALL_MAX:
        return chr(n + 63)
    if n <= _MEDIUM_MAX:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError(f"order {n} beyond the supported 258047-vertex tier")


def _decode_n(data: bytes, pos: int) -> tuple[int, int]:
    if pos >= len(data):
        raise DecodeError("missing order byte", pos)
    if data[pos] != 126:
        return data[pos] - 63, pos + 1
    if pos + 1 < len(data) and data[pos + 1] == 126:
        raise DecodeError("orders beyond 258047 are not supported", pos)
    if pos + 4 > len(data):
        raise DecodeError("truncated extended order field", pos)
    n = 0
    for b in data[pos + 1:pos + 4]:
        n = (n << 6) | (b - 63)
    return n, pos + 4


def _pack(bits: Iterable[int]) -> str:
    out = []
    acc = 0
    count = 0
    for b in bits:
        acc = (acc << 1) | b
        count += 1
        if count == 6:
            out.append(chr(acc + 63))
            acc = count = 0
    if count:
        out.append(chr((acc << (6 - count)) + 63))
    return "".join(out)


def _unpack(data: bytes, start: int, nbits: int) -> list[int]:
    nbytes = (nbits + 5) // 6
    body = data[start:]
    if len(body) != nbytes:
        raise DecodeError(f"expected {nbytes} data bytes after the order field, found {len(body)}",
                          start + min(len(body), nbytes))
    bits = []
    for b in body:
        v = b - 63
        bits.extend((v >> (5 - i)) & 1 for i in range(6))
    for i in range(nbits, len(bits)):
        if bits[i]:
            raise DecodeError(f"nonzero padding bit at bit position {i}", i)
    return bits[:nbits]


def _strip(text: str) -> str:
    s = text.strip()
    for header in (">>graph6<<", ">>digraph6<<"):
        if s.startswith(header):
            s = s[len(header):]
    return s


def decode(text: str, kind: str | None = None) -> AnyGraph:
    """Decode graph6 or digraph6 text.

    ``kind`` may be omitted when the text carries the ``&`` digraph6 header;
    headerless digraph6 needs ``kind="digraph6"``.
    """
    s = _strip(text)
    if not s:
        raise DecodeError("empty input", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126 and not (i == 0 and ch == "&"):
            raise DecodeError(f"byte {ch!r} at position {i} outside 63..126", i)
    if kind is None:
        kind = DIGRAPH6 if s[0] == "&" else GRAPH6
    if kind not in KINDS:
        raise ValueError(f"unknown format {kind!r}")
    data = s.encode("ascii")
    pos = 0
    if kind == DIGRAPH6 and data[:1] == b"&":
        pos = 1
    elif data[:1] == b"&":
        raise DecodeError("digraph6 header in graph6 input", 0)
    n, pos = _decode_n(data, pos)
    if kind == GRAPH6:
        bits = _unpack(data, pos, n * (n - 1) // 2)
        adj = [0] * n
        k = 0
        for j in range(1, n):
            for i in range(j):
                if bits[k]:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                k += 1
        return Graph(n, adj)
    bits = _unpack(data, pos, n * n)
    out = [0] * n
    for i in range(n):
        for j in range(n):
            if bits[i * n + j]:
                if i == j:
                    raise DecodeError(f"loop bit set at bit position {i * n + j}", i * n + j)
                if bits[j * n + i]:
                    p = max(i * n + j, j * n + i)
                    raise DecodeError(f"antiparallel pair ({i}, {j}) at bit position {p}", p)
                out[i] |= 1 << j
    try:
        return Digraph(n, out)
    except GraphError as exc:  # pragma: no cover - guarded above
        raise DecodeError(str(exc)) from exc


def encode(g: AnyGraph, kind: str | None = None, header: bool = True) -> str:
    """Canonical graph6/digraph6 text for ``g``.

    ``header`` only affects digraph6: ``False`` drops the ``&`` prefix.
    """
    if kind is None:
        kind = DIGRAPH6 if g.directed else GRAPH6
    if kind == GRAPH6:
        if g.directed:
            raise ValueError("graph6 encodes undirected graphs only")
        n = g.n
        bits = (g.adj[i] >> j & 1 for j in range(1, n) for i in range(j))
        return encode_n(n) + _pack(bits)
    if kind != DIGRAPH6:
        raise ValueError(f"unknown format {kind!r}")
    if not g.directed:
        raise ValueError("digraph6 encodes oriented digraphs only")
    n = g.n
    bits = (g.out_adj[i] >> j & 1 for i in range(n) for j in range(n))
    return ("&" if header else "") + encode_n(n) + _pack(bits)

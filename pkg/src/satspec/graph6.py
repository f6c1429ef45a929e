"""graph6 encoding and decoding.

The edge bits are the upper triangle in column order (0,1), (0,2), (1,2),
(0,3), ... packed big-endian six to a byte, each byte offset by 63. The same
bit string read as a binary integer is the "code" used for canonical forms:
pair slot ``k`` sits at bit ``N - 1 - k`` with ``N = n(n-1)/2``, so integer
order on codes is lexicographic order on bit strings.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .graph_core import Graph

HEADER = ">>graph6<<"
MAX_N = (1 << 36) - 1


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


def _encode_n(n: int) -> str:
    if n < 0 or n > MAX_N:
        raise ValueError(f"graph6 cannot encode order {n}")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def edge_bitstring(g: Graph) -> str:
    cols = []
    for j in range(1, g.n):
        cols.append(format(g.rows[j] & ((1 << j) - 1), f"0{j}b")[::-1])
    return "".join(cols)


def code_of(g: Graph) -> int:
    s = edge_bitstring(g)
    return int(s, 2) if s else 0


def graph_from_code(n: int, code: int) -> Graph:
    total = pair_count(n)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if code >> (total - 1 - k) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def encode(g: Graph) -> str:
    bitstr = edge_bitstring(g)
    bitstr += "0" * (-len(bitstr) % 6)
    body = "".join(chr(int(bitstr[i:i + 6], 2) + 63) for i in range(0, len(bitstr), 6))
    return _encode_n(g.n) + body


def decode(text: str) -> Graph:
    s = text.strip("\r\n")
    base = 0
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base = len(HEADER)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside 63..126", base + i)
    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    elif len(s) >= 2 and s[1] == "~":
        if len(s) < 8:
            raise Graph6Error("truncated 36-bit order", base + len(s))
        n, pos = 0, 8
        for ch in s[2:8]:
            n = (n << 6) | (ord(ch) - 63)
    else:
        if len(s) < 4:
            raise Graph6Error("truncated 18-bit order", base + len(s))
        n, pos = 0, 4
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
    total = pair_count(n)
    need = (total + 5) // 6
    body = s[pos:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} edge bytes for n={n}, found {len(body)}",
                          base + pos + min(len(body), need))
    value = 0
    for ch in body:
        value = (value << 6) | (ord(ch) - 63)
    pad = need * 6 - total
    if value & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", base + pos + need - 1)
    return graph_from_code(n, value >> pad)


def read_graph6(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield decode(line)

"""The .wgr text format: weighted graphs with exact decimal weights.

    c optional comment
    p wvc <n> <m>
    v <id> <weight>      (n lines, ids 1..n)
    e <u> <v>            (m lines, u < v)

Ids are 1-based in the file and 0-based in memory.
"""

from __future__ import annotations

import re
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import GraphError, WgrParseError
from .graph import Graph

MAX_FRACTION_DIGITS = 9
_WEIGHT = re.compile(r"^\d+(\.\d{1,%d})?$" % MAX_FRACTION_DIGITS)


def parse_weight(tok: str) -> Fraction:
    if not _WEIGHT.match(tok):
        raise WgrParseError(f"bad weight {tok!r}")
    return Fraction(tok)


def format_weight(x: Fraction) -> str:
    """Exact decimal string; raises ValueError if x has no finite decimal expansion."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        raise ValueError(f"{x} has no finite decimal expansion")
    s = format(Decimal(x.numerator) / Decimal(x.denominator), "f")
    return s.rstrip("0").rstrip(".") if "." in s else s


def loads(text: str) -> tuple[Graph, dict[int, Fraction]]:
    header = None
    weights: dict[int, Fraction] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        try:
            if tok[0] == "p":
                if header is not None or len(tok) != 4 or tok[1] != "wvc":
                    raise WgrParseError("malformed header")
                header = (int(tok[2]), int(tok[3]))
                if header[0] < 0 or header[1] < 0:
                    raise WgrParseError("negative counts in header")
            elif header is None:
                raise WgrParseError("body line before header")
            elif tok[0] == "v" and len(tok) == 3:
                vid = int(tok[1])
                if not 1 <= vid <= header[0]:
                    raise WgrParseError(f"vertex id {vid} out of range")
                if vid - 1 in weights:
                    raise WgrParseError(f"weight for vertex {vid} given twice")
                weights[vid - 1] = parse_weight(tok[2])
            elif tok[0] == "e" and len(tok) == 3:
                a, b = int(tok[1]), int(tok[2])
                if not a < b:
                    raise WgrParseError(f"edge {a} {b} must have u < v")
                edges.append((a - 1, b - 1))
            else:
                raise WgrParseError(f"unrecognized line {raw!r}")
        except (ValueError, IndexError) as exc:
            if isinstance(exc, WgrParseError):
                raise WgrParseError(f"line {lineno}: {exc}") from None
            raise WgrParseError(f"line {lineno}: {exc}") from exc
    if header is None:
        raise WgrParseError("missing header")
    n, m = header
    if len(weights) != n:
        raise WgrParseError(f"header says {n} vertices, found {len(weights)} weight lines")
    if len(edges) != m:
        raise WgrParseError(f"header says {m} edges, found {len(edges)}")
    try:
        g = Graph.from_edges(n, edges)
    except GraphError as exc:
        raise WgrParseError(str(exc)) from exc
    return g, weights


def load(path) -> tuple[Graph, dict[int, Fraction]]:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(g: Graph, w: Mapping[int, Fraction], comments: Iterable[str] = ()) -> str:
    if g.alive != set(range(g.n_total)):
        raise ValueError("only graphs without deleted vertices can be written")
    lines = [f"c {c}" for c in comments]
    edges = g.edges()
    lines.append(f"p wvc {g.n_total} {len(edges)}")
    lines += [f"v {v + 1} {format_weight(w[v])}" for v in range(g.n_total)]
    lines += [f"e {a + 1} {b + 1}" for a, b in edges]
    return "\n".join(lines) + "\n"


def dump(path, g: Graph, w: Mapping[int, Fraction], comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(g, w, comments))

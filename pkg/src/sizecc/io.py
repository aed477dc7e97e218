"""Read and write the ``CORRCLUST 1`` text format.

::

    CORRCLUST 1
    N <n> K <K> TAU <real | INF>
    MU <mu_0> ... <mu_{n-1}>
    E <u> <v> <wplus> <wminus>      # one line per unordered pair

``#`` starts a comment.  Blank lines are ignored.
"""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .instance import WeightedInstance


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


def _number(tok: str, lineno: int) -> float:
    try:
        value = float(tok)
    except ValueError:
        raise ParseError(f"not a number: {tok!r}", lineno) from None
    if math.isnan(value):
        raise ParseError("NaN is not allowed", lineno)
    return value


def _integer(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"not an integer: {tok!r}", lineno) from None


def parse_instance(text: str) -> WeightedInstance:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise ParseError("empty input")

    lineno, toks = lines[0]
    if toks != ["CORRCLUST", "1"]:
        raise ParseError("expected header 'CORRCLUST 1'", lineno)
    if len(lines) < 3:
        raise ParseError("missing N/K/TAU or MU line", lines[-1][0])

    lineno, toks = lines[1]
    if len(toks) != 6 or toks[0] != "N" or toks[2] != "K" or toks[4] != "TAU":
        raise ParseError("expected 'N <n> K <K> TAU <tau|INF>'", lineno)
    n = _integer(toks[1], lineno)
    K = _integer(toks[3], lineno)
    if n < 0 or K < 0:
        raise ParseError("N and K must be nonnegative", lineno)
    tau = math.inf if toks[5].upper() == "INF" else _number(toks[5], lineno)

    lineno, toks = lines[2]
    if toks[0] != "MU" or len(toks) != n + 1:
        raise ParseError(f"expected 'MU' followed by {n} values", lineno)
    mu = np.array([_number(t, lineno) for t in toks[1:]])

    wp = np.zeros((n, n))
    wm = np.zeros((n, n))
    seen: set[tuple[int, int]] = set()
    for lineno, toks in lines[3:]:
        if toks[0] != "E" or len(toks) != 5:
            raise ParseError("expected 'E <u> <v> <wplus> <wminus>'", lineno)
        u, v = _integer(toks[1], lineno), _integer(toks[2], lineno)
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"bad vertex pair ({u}, {v})", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"pair {key} listed twice", lineno)
        seen.add(key)
        a, b = _number(toks[3], lineno), _number(toks[4], lineno)
        wp[u, v] = wp[v, u] = a
        wm[u, v] = wm[v, u] = b

    if len(seen) != n * (n - 1) // 2:
        missing = next((u, v) for u in range(n) for v in range(u + 1, n)
                       if (u, v) not in seen)
        raise ParseError(f"missing pair {missing}", lines[-1][0])
    return WeightedInstance(wp, wm, mu, K, tau)


def read_instance(path) -> WeightedInstance:
    return parse_instance(Path(path).read_text())


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "INF" if x > 0 else "-INF"
    return repr(float(x))


def format_instance(instance: WeightedInstance) -> str:
    out = ["CORRCLUST 1",
           f"N {instance.n} K {instance.K} TAU {_fmt(instance.tau)}",
           "MU " + " ".join(_fmt(m) for m in instance.mu)]
    for u, v in instance.pairs():
        out.append(f"E {u} {v} {_fmt(instance.wplus[u, v])} {_fmt(instance.wminus[u, v])}")
    return "\n".join(out) + "\n"


def write_instance(instance: WeightedInstance, path) -> None:
    Path(path).write_text(format_instance(instance))

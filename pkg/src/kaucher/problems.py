"""Problem text format and the benchmark systems shipped as fixtures.

Format (``#`` starts a comment; tokens are whitespace separated)::

    n 2
    matrix
    [2,4] [-2,1]
    [-1,2] [2,4]
    rhs
    [-2,2] [-2,2]

Interval tokens are ``[lo,hi]`` with optional spaces after the comma; numbers
may use scientific notation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import ProblemSyntaxError, ShapeError
from .interval import KInterval
from .linalg import IntervalMatrix, IntervalVector, mat_dual, vec_dual

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
# a bracketed group stays one token so "[1 2]" is reported whole
_TOKEN = re.compile(r"\[[^\]\[]*\]|\S+")
_INTERVAL = re.compile(rf"\[({_NUM}),[ \t]*({_NUM})\]")


@dataclass(frozen=True)
class Problem:
    A: IntervalMatrix
    b: IntervalVector
    dualize_matrix: bool = False
    dualize_rhs: bool = False

    def __post_init__(self):
        n = len(self.b)
        if self.A.shape != (n, n):
            raise ShapeError(f"matrix shape {self.A.shape} does not match rhs length {n}")

    @property
    def n(self) -> int:
        return len(self.b)

    def system(self):
        """``(A, b)`` with the requested dualisations applied."""
        A = mat_dual(self.A) if self.dualize_matrix else self.A
        b = vec_dual(self.b) if self.dualize_rhs else self.b
        return A, b


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for m in _TOKEN.finditer(line):
            yield m.group(0), lineno, m.start() + 1


def _interval(tok, line, col) -> KInterval:
    m = _INTERVAL.fullmatch(tok)
    if m is None:
        raise ProblemSyntaxError(f"malformed interval {tok!r}", line, col)
    return KInterval(float(m.group(1)), float(m.group(2)))


def parse_problem(text: str) -> Problem:
    toks = list(_tokens(text))
    pos = 0

    def take(what):
        nonlocal pos
        if pos >= len(toks):
            last = toks[-1] if toks else ("", 1, 1)
            raise ProblemSyntaxError(f"unexpected end of input, expected {what}", last[1], None)
        tok = toks[pos]
        pos += 1
        return tok

    def keyword(word):
        tok, line, col = take(f"'{word}'")
        if tok != word:
            raise ProblemSyntaxError(f"expected '{word}', found {tok!r}", line, col)

    keyword("n")
    tok, line, col = take("dimension")
    if not tok.isdigit() or int(tok) < 1:
        raise ProblemSyntaxError(f"dimension must be a positive integer, found {tok!r}", line, col)
    n = int(tok)
    keyword("matrix")
    lo = np.empty((n, n))
    hi = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            tok, line, col = take(f"matrix entry ({i + 1},{j + 1})")
            if tok in ("rhs", "matrix", "n"):
                raise ProblemSyntaxError(
                    f"dimension mismatch: matrix has fewer than {n * n} entries", line, col)
            a = _interval(tok, line, col)
            lo[i, j], hi[i, j] = a.lo, a.hi
    keyword("rhs")
    blo = np.empty(n)
    bhi = np.empty(n)
    for i in range(n):
        tok, line, col = take(f"rhs entry {i + 1}")
        if tok in ("rhs", "matrix", "n"):
            raise ProblemSyntaxError(f"duplicate section {tok!r}", line, col)
        a = _interval(tok, line, col)
        blo[i], bhi[i] = a.lo, a.hi
    if pos < len(toks):
        tok, line, col = toks[pos]
        if tok in ("rhs", "matrix", "n"):
            raise ProblemSyntaxError(f"duplicate section {tok!r}", line, col)
        raise ProblemSyntaxError(f"dimension mismatch: unexpected extra token {tok!r}", line, col)
    return Problem(IntervalMatrix(lo, hi), IntervalVector(blo, bhi))


def parse_vector(text: str, n: int | None = None) -> IntervalVector:
    """Whitespace-separated interval tokens (comments allowed)."""
    items = [_interval(tok, line, col) for tok, line, col in _tokens(text)]
    if not items:
        raise ProblemSyntaxError("no intervals found", 1, None)
    if n is not None and len(items) != n:
        raise ShapeError(f"expected {n} intervals, found {len(items)}")
    return IntervalVector.from_intervals(items)


def _fmt(lo, hi) -> str:
    return f"[{float(lo)!r},{float(hi)!r}]"


def format_vector(x: IntervalVector) -> str:
    return "\n".join(_fmt(l, h) for l, h in zip(x.lo, x.hi)) + "\n"


def format_problem(p: Problem, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"n {p.n}")
    out.append("matrix")
    for i in range(p.n):
        out.append(" ".join(_fmt(p.A.lo[i, j], p.A.hi[i, j]) for j in range(p.n)))
    out.append("rhs")
    out.extend(_fmt(l, h) for l, h in zip(p.b.lo, p.b.hi))
    return "\n".join(out) + "\n"


# -- benchmark systems --------------------------------------------------------

def point_2x2() -> Problem:
    """Point matrix with interval right-hand side; solution ([4,-6], [-2,8])."""
    A = IntervalMatrix([[1.0, 2.0], [-3.0, 4.0]])
    b = IntervalVector([0.0, 10.0], [10.0, 20.0])
    return Problem(A, b)


def barth_nuding() -> Problem:
    A = IntervalMatrix([[2.0, -2.0], [-1.0, 2.0]], [[4.0, 1.0], [2.0, 4.0]])
    b = IntervalVector([-2.0, -2.0], [2.0, 2.0])
    return Problem(A, b)


def tridiagonal(n: int = 40) -> Problem:
    """Second-difference matrix and rhs (1, ..., n), both widened by 10%."""
    lo = np.zeros((n, n))
    hi = np.zeros((n, n))
    d = np.arange(n)
    lo[d, d], hi[d, d] = 1.8, 2.2
    lo[d[1:], d[:-1]] = lo[d[:-1], d[1:]] = -1.1
    hi[d[1:], d[:-1]] = hi[d[:-1], d[1:]] = -0.9
    k = np.arange(1, n + 1, dtype=float)
    return Problem(IntervalMatrix(lo, hi), IntervalVector(0.9 * k, 1.1 * k))


def neumaier(n: int = 40, diag: float = 40.0) -> Problem:
    """Point ``diag`` on the diagonal, ``[0, 2]`` elsewhere; rhs ``[10, 20]``."""
    lo = np.zeros((n, n))
    hi = np.full((n, n), 2.0)
    np.fill_diagonal(lo, diag)
    np.fill_diagonal(hi, diag)
    return Problem(IntervalMatrix(lo, hi), IntervalVector(np.full(n, 10.0), np.full(n, 20.0)))


_SYSTEM7_LO = [
    [4, -9, 0, 2, 5, -23, 15],
    [0, 6, -1, -1, -5, 1, -3],
    [0, -20, 12, -6, 0, -18, 0],
    [-4, -1, -3, 3, 5, 1, 1],
    [0, 0, 0, -1, 8, -6, 10],
    [-7, 1, 7, -3, 0, 3, -2],
    [-1, -3, 0, 1, -5, 2, 6],
]
_SYSTEM7_HI = [
    [6, 0, 12, 3, 9, -9, 23],
    [1, 10, 1, 3, 1, 15, -1],
    [3, -9, 77, 30, 3, 1, 1],
    [1, 1, 1, 5, 9, 2, 4],
    [3, 6, 20, 5, 14, 1, 17],
    [-2, 2, 14, 1, 2, 5, 1],
    [5, 2, 8, 11, 10, 7, 82],
]
_SYSTEM7_RHS = [(-10, 95), (35, 14), (-6, 2), (30, 7), (4, 95), (-6, 46), (-2, 65)]


def system_7x7(a77: tuple[float, float] | None = None) -> Problem:
    """7x7 system on which ARMSplit diverges; ``a77`` narrows entry (7,7)."""
    lo = np.array(_SYSTEM7_LO, dtype=float)
    hi = np.array(_SYSTEM7_HI, dtype=float)
    if a77 is not None:
        lo[6, 6], hi[6, 6] = a77
    b = np.array(_SYSTEM7_RHS, dtype=float)
    return Problem(IntervalMatrix(lo, hi), IntervalVector(b[:, 0], b[:, 1]))


FIXTURES = {
    "point2x2": point_2x2,
    "barth_nuding": barth_nuding,
    "tridiagonal40": tridiagonal,
    "neumaier40": neumaier,
    "system7x7": system_7x7,
}


def load_fixture(name: str) -> Problem:
    """Read one of the shipped ``data/<name>.txt`` problem files."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(sorted(FIXTURES))}")
    text = resources.files("kaucher").joinpath("data", f"{name}.txt").read_text(encoding="utf-8")
    return parse_problem(text)

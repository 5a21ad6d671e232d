"""Condition numbers, sparsity counts, and the chopped-arithmetic demo.

Three conditioning indicators are reported per flexibility matrix: PL, the
base-10 log of the extreme eigenvalue ratio; PN, the determinant of the
row-normalized matrix; and PDET, the determinant after symmetric diagonal
scaling.  PN and PDET underflow quickly for large matrices, so their
base-10 log-determinants are carried alongside the clamped values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_SYMMETRY_TOL = 1e-12


def _check_symmetric(G: np.ndarray) -> np.ndarray:
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {G.shape}")
    scale = float(np.max(np.abs(G))) or 1.0
    if float(np.max(np.abs(G - G.T))) > _SYMMETRY_TOL * scale:
        raise ValueError("matrix is not symmetric")
    return G


def eig_extremes(G: np.ndarray) -> tuple[float, float]:
    """Extreme eigenvalues (min, max) of a symmetric positive definite matrix."""
    G = _check_symmetric(G)
    eigvals = np.linalg.eigvalsh(G)
    lam_min, lam_max = float(eigvals[0]), float(eigvals[-1])
    if lam_min <= 0:
        raise ValueError("not positive definite")
    return lam_min, lam_max


def pl(G: np.ndarray) -> float:
    """log10 of the extreme eigenvalue ratio."""
    lam_min, lam_max = eig_extremes(G)
    return math.log10(lam_max / lam_min)


def good_digits(pl_value: float, p: int = 16) -> float:
    """Digits trustworthy in a solution on a machine carrying p digits: g = p - PL."""
    return p - pl_value


def pn(G: np.ndarray) -> float:
    """Determinant of the row-normalized matrix (0 when it underflows)."""
    return row_normalized_determinant(G)[0]


def row_normalized_determinant(G: np.ndarray) -> tuple[float, float]:
    """(determinant, log10 |determinant|) of the row-normalized matrix."""
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {G.shape}")
    norms = np.linalg.norm(G, axis=1)
    if np.any(norms == 0):
        raise ValueError("matrix has a zero row")
    sign, logdet = np.linalg.slogdet(G / norms[:, None])
    if sign == 0:
        return 0.0, -math.inf
    log10det = logdet / math.log(10.0)
    return float(sign * math.exp(logdet)) if logdet > -745 else 0.0, float(log10det)


def pdet(G: np.ndarray) -> float:
    """Determinant after symmetric diagonal scaling (0 when it underflows)."""
    return scaled_determinant(G)[0]


def scaled_determinant(G: np.ndarray) -> tuple[float, float]:
    """(determinant, log10 |determinant|) of D^-1/2 G D^-1/2 with D = diag(G)."""
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {G.shape}")
    d = np.diag(G)
    if np.any(d <= 0):
        raise ValueError("matrix has a non-positive diagonal entry")
    s = 1.0 / np.sqrt(d)
    sign, logdet = np.linalg.slogdet(G * np.outer(s, s))
    if sign == 0:
        return 0.0, -math.inf
    log10det = logdet / math.log(10.0)
    return float(sign * math.exp(logdet)) if logdet > -745 else 0.0, float(log10det)


def nnz(M: np.ndarray, block_size: int = 1) -> int:
    """Count nonzero entries, or nonzero block_size x block_size blocks."""
    M = np.asarray(M)
    if block_size == 1:
        return int(np.count_nonzero(M))
    rows, cols = M.shape
    if rows % block_size or cols % block_size:
        raise ValueError(f"shape {M.shape} is not divisible into {block_size}-blocks")
    count = 0
    for i in range(0, rows, block_size):
        for j in range(0, cols, block_size):
            if np.any(M[i : i + block_size, j : j + block_size] != 0):
                count += 1
    return count


@dataclass(frozen=True)
class ConditionReport:
    """PL/PN/PDET, X(D), and the good-digit estimate for one basis run."""

    pl: float
    pn: float
    pn_log10: float
    pdet: float
    pdet_log10: float
    xd: int
    good_digits: float
    precision: int = 16


def condition_report(G: np.ndarray, D: np.ndarray, precision: int = 16) -> ConditionReport:
    pl_value = pl(G)
    pn_value, pn_log = row_normalized_determinant(G)
    pdet_value, pdet_log = scaled_determinant(G)
    return ConditionReport(
        pl=pl_value,
        pn=pn_value,
        pn_log10=pn_log,
        pdet=pdet_value,
        pdet_log10=pdet_log,
        xd=nnz(D),
        good_digits=good_digits(pl_value, precision),
        precision=precision,
    )


# --- chopped decimal arithmetic -------------------------------------------


def chop(value: float, digits: int) -> float:
    """Round to *digits* significant decimal digits, half away from zero."""
    if digits < 1:
        raise ValueError(f"digit budget must be >= 1, got {digits}")
    if value == 0 or not math.isfinite(value):
        return value
    exponent = math.floor(math.log10(abs(value)))
    scale = 10.0 ** (digits - 1 - exponent)
    return math.copysign(math.floor(abs(value) * scale + 0.5), value) / scale


@dataclass(frozen=True)
class ChoppedNumber:
    """A float re-rounded to a significant-digit budget after every operation."""

    value: float
    digits: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", chop(self.value, self.digits))

    def _wrap(self, value: float) -> "ChoppedNumber":
        return ChoppedNumber(value, self.digits)

    def _other(self, other) -> float:
        return other.value if isinstance(other, ChoppedNumber) else float(other)

    def __add__(self, other):
        return self._wrap(self.value + self._other(other))

    def __sub__(self, other):
        return self._wrap(self.value - self._other(other))

    def __mul__(self, other):
        return self._wrap(self.value * self._other(other))

    def __truediv__(self, other):
        return self._wrap(self.value / self._other(other))

    def __float__(self) -> float:
        return self.value


class ChoppedPivotBreakdown(ZeroDivisionError):
    """A pivot chopped to exactly zero during elimination."""


NO_PIVOTING = "none"
ROW_REORDER = "row-reorder"

#: The ill-conditioned 3x3 demo system, first circulated variant.
DEMO_VARIANT_A = (
    [[-0.002, 4.0, 4.0], [-2.0, 2.906, -5.38], [3.0, -4.301, -3.112]],
    [7.998, -4.481, -4.143],
)
#: Second variant (already row-reordered; several entries differ).
DEMO_VARIANT_B = (
    [[3.0, -4.301, -3.112], [-0.0002, 4.0, 4.0], [-2.0, 2.406, -5.386]],
    [-4.413, 7.998, -4.481],
)


def ill_conditioned_demo() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Consistent (A, b, x) for the demo: b is built so x = (-1, 1, 1) exactly.

    The two circulated variants contradict each other (and neither right-hand
    side is consistent with the stated solution), so the shipped system takes
    the destabilizing small leading pivot together with the first variant's
    remaining entries and derives b from the exact solution.  Eliminating
    without pivoting at a 4-digit budget then loses the solution completely,
    while row reordering recovers it.
    """
    A = np.array(DEMO_VARIANT_A[0])
    A[0, 0] = DEMO_VARIANT_B[0][1][0]
    x = np.array([-1.0, 1.0, 1.0])
    return A, A @ x, x


def chopped_gauss_solve(
    A: np.ndarray,
    b: np.ndarray,
    digits: int | None = None,
    pivoting: str = NO_PIVOTING,
) -> np.ndarray:
    """Gaussian elimination with every intermediate chopped to *digits*.

    digits=None disables chopping (full-precision elimination).  Row
    reordering pre-sorts the rows so the largest leading coefficients land
    on the diagonal before elimination starts.
    """
    M = [list(map(float, row)) for row in np.asarray(A, dtype=float)]
    rhs = [float(v) for v in np.asarray(b, dtype=float)]
    n = len(M)
    if any(len(row) != n for row in M) or len(rhs) != n:
        raise ValueError("system must be square with a matching right-hand side")

    if digits is None:
        rnd = lambda x: x
    else:
        rnd = lambda x: chop(x, digits)
    M = [[rnd(v) for v in row] for row in M]
    rhs = [rnd(v) for v in rhs]

    if pivoting == ROW_REORDER:
        order: list[int] = []
        remaining = list(range(n))
        for col in range(n):
            best = max(remaining, key=lambda r: (abs(M[r][col]), -r))
            order.append(best)
            remaining.remove(best)
        M = [M[r] for r in order]
        rhs = [rhs[r] for r in order]
    elif pivoting != NO_PIVOTING:
        raise ValueError(f"unknown pivoting mode '{pivoting}'")

    for k in range(n - 1):
        if M[k][k] == 0:
            raise ChoppedPivotBreakdown("chopped pivot breakdown")
        for i in range(k + 1, n):
            factor = rnd(M[i][k] / M[k][k])
            for j in range(k, n):
                M[i][j] = rnd(M[i][j] - rnd(factor * M[k][j]))
            rhs[i] = rnd(rhs[i] - rnd(factor * rhs[k]))

    x = [0.0] * n
    for i in range(n - 1, -1, -1):
        if M[i][i] == 0:
            raise ChoppedPivotBreakdown("chopped pivot breakdown")
        acc = rhs[i]
        for j in range(i + 1, n):
            acc = rnd(acc - rnd(M[i][j] * x[j]))
        x[i] = rnd(acc / M[i][i])
    return np.array(x)


# --- plain-text matrix exchange -------------------------------------------


def write_matrix(path, M: np.ndarray) -> None:
    """Dense text format: 'rows cols' header, then row-major values."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    with open(path, "w") as fh:
        fh.write(f"{M.shape[0]} {M.shape[1]}\n")
        for row in M:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def read_matrix(path) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"{path}: bad matrix header")
        rows, cols = int(header[0]), int(header[1])
        values = fh.read().split()
    if len(values) != rows * cols:
        raise ValueError(f"{path}: expected {rows * cols} values, got {len(values)}")
    return np.array([float(v) for v in values]).reshape(rows, cols)

"""Exact integer matrices and polynomials.

Rank and determinant use fraction-free Bareiss elimination over Python
ints.  Characteristic polynomials are computed modulo several word-size
primes via power-sum traces and Newton's identities, then recombined by
CRT; the prime product is always checked against a Hadamard-style bound
on the coefficients, so results are exact, never heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, isqrt
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

# Largest primes below 2^28.  With entries reduced mod p, an int64
# accumulation of n <= 64 products (p-1)^2 stays below 2^63.
PRIMES = (
    268435399, 268435367, 268435361, 268435337, 268435331, 268435313,
    268435291, 268435273, 268435243, 268435183, 268435171, 268435157,
)

ANNIHILATOR_MAX_ORDER = 12


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial; coeffs[i] is the coefficient of x^i."""

    coeffs: Tuple[int, ...]

    @classmethod
    def of(cls, coeffs: Iterable[int]) -> "IntPolynomial":
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        return cls(tuple(int(c) for c in cs))

    @classmethod
    def x_minus(cls, r: int) -> "IntPolynomial":
        return cls((-r, 1))

    @property
    def degree(self) -> int:
        if self.coeffs == (0,):
            return -1
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial.of(out)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPolynomial.of(out)

    def __pow__(self, k: int) -> "IntPolynomial":
        if k < 0:
            raise ValueError("negative polynomial power")
        out = IntPolynomial.of([1])
        for _ in range(k):
            out = out * self
        return out

    def scale_roots(self, m: int) -> "IntPolynomial":
        """p(x) -> m^deg * p(x/m): multiplies every root by m."""
        d = len(self.coeffs) - 1
        return IntPolynomial.of([c * m ** (d - i) for i, c in enumerate(self.coeffs)])

    def shift_by_x_power(self, k: int) -> "IntPolynomial":
        return IntPolynomial.of([0] * k + list(self.coeffs))

    def __str__(self) -> str:
        if self.degree < 1:
            return str(self.coeffs[0])
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                term = xs if mag == 1 else f"{mag}{xs}"
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else ("-" + s[2:])


def divide_by_linear(p: IntPolynomial, r: int) -> Optional[IntPolynomial]:
    """Exact quotient p / (x - r), or None if r is not a root."""
    cs = p.coeffs
    out = [0] * (len(cs) - 1)
    acc = 0
    for i in range(len(cs) - 1, 0, -1):
        acc = acc * r + cs[i]
        out[i - 1] = acc
    if acc * r + cs[0] != 0:
        return None
    return IntPolynomial.of(out)


def integer_root_split(
    p: IntPolynomial, lo: int, hi: int
) -> Tuple[dict, IntPolynomial]:
    """Factor out all roots in [lo, hi] of a monic integer polynomial.

    Returns ({root: multiplicity}, remainder) with
    p == remainder * prod (x - r)^mult and remainder having no integer
    roots in the range.
    """
    if not p.is_monic():
        raise ValueError("integer_root_split requires a monic polynomial")
    roots: dict = {}
    rest = p
    for r in range(lo, hi + 1):
        while True:
            q = divide_by_linear(rest, r)
            if q is None:
                break
            roots[r] = roots.get(r, 0) + 1
            rest = q
    return roots, rest


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class IntMatrix:
    """Dense matrix of Python ints (arbitrary precision)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[int]]) -> None:
        self.rows = [list(map(int, r)) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: Optional[int] = None) -> "IntMatrix":
        m = n if m is None else m
        return cls([[0] * m for _ in range(n)])

    @classmethod
    def ones(cls, n: int, m: Optional[int] = None) -> "IntMatrix":
        m = n if m is None else m
        return cls([[1] * m for _ in range(n)])

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        return self.rows[ij[0]][ij[1]]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        return all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )

    def is_zero(self) -> bool:
        return all(c == 0 for r in self.rows for c in r)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.rows)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def scaled(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        out = []
        for ra in self.rows:
            for rb in other.rows:
                out.append([a * b for a in ra for b in rb])
        return IntMatrix(out)

    def to_numpy_float(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.float64)

    def rank(self) -> int:
        return _bareiss_echelon(self.rows)[0]

    def det(self) -> int:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        rank, pivot, sign = _bareiss_echelon(self.rows)
        if rank < self.nrows:
            return 0
        return sign * pivot

    def char_poly(self) -> IntPolynomial:
        """Characteristic polynomial det(xI - A), exact."""
        if not self.is_square():
            raise ValueError("characteristic polynomial of a non-square matrix")
        return _char_poly_general(self)

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows!r})"


def _bareiss_echelon(rows: Sequence[Sequence[int]]) -> Tuple[int, int, int]:
    """Fraction-free row echelon.  Returns (rank, last pivot, sign).

    The sign tracks row swaps so det = sign * last pivot for full-rank
    square input; divisions are exact by construction.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    prev = 1
    sign = 1
    for col in range(nc):
        if rank == nr:
            break
        piv = next((r for r in range(rank, nr) if m[r][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            m[piv], m[rank] = m[rank], m[piv]
            sign = -sign
        pval = m[rank][col]
        for r in range(rank + 1, nr):
            factor = m[r][col]
            row = m[r]
            prow = m[rank]
            for c in range(col, nc):
                row[c] = (pval * row[c] - factor * prow[c]) // prev
        prev = pval
        rank += 1
    return rank, prev, sign


# ---------------------------------------------------------------------------
# modular characteristic polynomial machinery
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _inverse_table(p: int, n: int) -> tuple:
    return tuple(pow(m, p - 2, p) for m in range(1, n + 1))


def charpoly_coeff_bound(n: int, row_norm_sq: Sequence[int]) -> int:
    """Bound on |coefficients| of det(xI - A) from row 2-norms.

    The x^(n-j) coefficient is (up to sign) the sum of the C(n,j)
    principal j-minors, each bounded via Hadamard by the product of the
    j largest row norms.
    """
    norms = sorted((int(s) for s in row_norm_sq), reverse=True)
    best = 1
    prefix = 1
    for j in range(1, n + 1):
        prefix *= norms[j - 1]
        cand = comb(n, j) * (isqrt(prefix) + 1)
        if cand > best:
            best = cand
        if prefix == 0:
            break
    return best


def primes_for_bound(bound: int) -> tuple:
    """Shortest prefix of PRIMES whose product exceeds 2*bound."""
    need = 2 * bound + 1
    acc = 1
    for i, p in enumerate(PRIMES):
        acc *= p
        if acc >= need:
            return PRIMES[: i + 1]
    raise ValueError("coefficient bound exceeds available CRT capacity")


def newton_charpoly_mod(traces: Sequence[int], n: int, p: int) -> list:
    """char poly residues mod p from power-sum traces tr(A^1..A^n).

    Returns coefficients [c_0 .. c_n] of det(xI - A) mod p, c_n = 1.
    Newton's identities: m*e_m = sum_{i=1..m} (-1)^(i-1) e_(m-i) p_i.
    """
    inv = _inverse_table(p, n if n else 1)
    e = [1] + [0] * n
    for m in range(1, n + 1):
        acc = 0
        sgn = 1
        for i in range(1, m + 1):
            acc += sgn * e[m - i] * traces[i - 1]
            acc %= p
            sgn = -sgn
        e[m] = acc * inv[m - 1] % p
    coeffs = [0] * (n + 1)
    for m in range(n + 1):
        c = e[m] if m % 2 == 0 else (-e[m]) % p
        coeffs[n - m] = c
    return coeffs


@lru_cache(maxsize=None)
def crt_context(primes: tuple) -> tuple:
    """(M, weights) with weights[i] = (M/p_i) * inv(M/p_i mod p_i, p_i).

    x = sum(r_i * weights[i]) mod M is then the CRT solution; cached per
    prime tuple so tight loops skip the modular inversions.
    """
    M = 1
    for p in primes:
        M *= p
    weights = tuple(
        (M // p) * pow((M // p) % p, p - 2, p) for p in primes
    )
    return M, weights


def crt_symmetric(residues: Sequence[int], primes: Sequence[int]) -> int:
    """Combine residues into the unique representative in (-M/2, M/2]."""
    M, weights = crt_context(tuple(primes))
    x = 0
    for r, w in zip(residues, weights):
        x += r * w
    x %= M
    if 2 * x > M:
        x -= M
    return x


def _char_poly_general(a: IntMatrix) -> IntPolynomial:
    n = a.nrows
    if n == 0:
        return IntPolynomial.of([1])
    norms = [sum(c * c for c in row) for row in a.rows]
    bound = charpoly_coeff_bound(n, norms)
    primes = primes_for_bound(bound)
    residue_sets = []
    for p in primes:
        m = np.array([[c % p for c in row] for row in a.rows], dtype=np.int64)
        power = m
        traces = [int(np.trace(m)) % p]
        for _ in range(n - 1):
            power = power @ m % p
            traces.append(int(np.trace(power)) % p)
        residue_sets.append(newton_charpoly_mod(traces, n, p))
    coeffs = [
        crt_symmetric([rs[i] for rs in residue_sets], primes) for i in range(n + 1)
    ]
    assert coeffs[n] == 1
    return IntPolynomial.of(coeffs)


def annihilator_product_oracle(a: IntMatrix, k: int) -> bool:
    """True iff prod_{i=-k..k} (A - iI) is the zero matrix.

    For a symmetric A this certifies that the spectrum consists of
    integers in [-k, k].  Exact big-int product; restricted to small
    matrices because entries grow like (n*k)^(2k+1).
    """
    if not a.is_square():
        raise ValueError("annihilator oracle needs a square matrix")
    if a.nrows > ANNIHILATOR_MAX_ORDER:
        raise ValueError(
            f"annihilator oracle restricted to order <= {ANNIHILATOR_MAX_ORDER}"
        )
    n = a.nrows
    prod = IntMatrix.identity(n)
    for i in range(-k, k + 1):
        shift = IntMatrix(
            [
                [a.rows[r][c] - (i if r == c else 0) for c in range(n)]
                for r in range(n)
            ]
        )
        prod = prod @ shift
        if prod.is_zero():
            return True
    return prod.is_zero()

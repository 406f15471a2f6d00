"""Braid words, the reduced Burau representation and Alexander polynomials.

Conventions: letter ``+i`` is the Artin generator sigma_i, ``-i`` its
inverse, and words are read left to right. The reduced Burau image of
sigma_i is the identity of size n-1 with the block::

    [[1,  t, 0],
     [0, -t, 0],
     [0,  1, 1]]

placed on rows/columns i-1, i, i+1 (1-based), truncated at the matrix edge.
For two strands this gives sigma_1 -> (-t).

For the closure of a braid on n strands,
``det(rho(b) - I) = Delta(t) * (1 + t + ... + t^(n-1))`` up to a unit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .laurent import (
    ONE,
    ZERO,
    LaurentPoly,
    UnitClass,
    cyclotomic_column,
    divide_exact,
    normalize,
    poly_det,
)

__all__ = [
    "BraidWord",
    "BraidParseError",
    "SeifertMatrix",
    "PolyMatrix",
    "parse_braid",
    "closure_components",
    "burau_generator",
    "burau_reduced",
    "alexander_from_braid",
    "alexander_from_seifert",
]

PolyMatrix = list[list[LaurentPoly]]
SeifertMatrix = Sequence[Sequence[int]]

_T = LaurentPoly.monomial(1)
_TINV = LaurentPoly.monomial(-1)


class BraidParseError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidParseError(f"strand count must be >= 1, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        for g in self.letters:
            if g == 0 or abs(g) > self.strands - 1:
                raise BraidParseError(
                    f"letter {g} out of range for {self.strands} strands"
                )

    def __str__(self) -> str:
        return f"{self.strands}: " + ",".join(str(g) for g in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-g for g in reversed(self.letters)))

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.strands != self.strands:
            raise ValueError("cannot concatenate braids on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def stabilize(self, sign: int = 1) -> BraidWord:
        """Markov stabilization: add a strand and append sigma_n^(+-1)."""
        n = self.strands
        return BraidWord(n + 1, self.letters + ((n if sign > 0 else -n),))


_HEADED = re.compile(r"^\s*(\d+)\s*:(.*)$", re.S)


def parse_braid(text: str) -> BraidWord:
    """Parse ``"3: 1,-2,1,-2"`` or a bare ``"1 -2 1 -2"`` list.

    Without the ``n:`` prefix the strand count is ``max|letter| + 1``.
    """
    m = _HEADED.match(text)
    body = m.group(2) if m else text
    tokens = [tok for tok in re.split(r"[,\s]+", body.strip()) if tok]
    letters = []
    for tok in tokens:
        try:
            letters.append(int(tok))
        except ValueError:
            raise BraidParseError(f"malformed braid letter {tok!r} in {text!r}") from None
    if m:
        return BraidWord(int(m.group(1)), tuple(letters))
    if not letters:
        raise BraidParseError(f"cannot infer strand count from {text!r}")
    if 0 in letters:
        raise BraidParseError(f"letter 0 is not a generator in {text!r}")
    return BraidWord(max(abs(g) for g in letters) + 1, tuple(letters))


def closure_components(b: BraidWord) -> int:
    """Number of components of the closure (cycles of the induced permutation)."""
    perm = list(range(b.strands))
    for g in b.letters:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen = [False] * b.strands
    cycles = 0
    for start in range(b.strands):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return cycles


def _identity(size: int) -> PolyMatrix:
    return [[ONE if i == j else ZERO for j in range(size)] for i in range(size)]


def burau_generator(n: int, letter: int) -> PolyMatrix:
    """Reduced Burau matrix of a single letter on ``n`` strands."""
    if n < 2:
        raise ValueError("the reduced Burau representation needs at least 2 strands")
    i = abs(letter)
    if not 1 <= i <= n - 1:
        raise ValueError(f"letter {letter} out of range for {n} strands")
    if letter > 0:
        block = [[ONE, _T, ZERO], [ZERO, -_T, ZERO], [ZERO, ONE, ONE]]
    else:
        block = [[ONE, ONE, ZERO], [ZERO, -_TINV, ZERO], [ZERO, _TINV, ONE]]
    size = n - 1
    m = _identity(size)
    p = i - 1
    for a in range(3):
        r = p - 1 + a
        if not 0 <= r < size:
            continue
        for c in range(3):
            s = p - 1 + c
            if 0 <= s < size:
                m[r][s] = block[a][c]
    return m


def matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = ZERO
            for k in range(n):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def burau_reduced(b: BraidWord) -> PolyMatrix:
    if b.strands < 2:
        raise ValueError("the reduced Burau representation needs at least 2 strands")
    m = _identity(b.strands - 1)
    for g in b.letters:
        m = matmul(m, burau_generator(b.strands, g))
    return m


def alexander_from_braid(b: BraidWord) -> UnitClass:
    """Normalized Alexander polynomial of the braid closure."""
    rho = burau_reduced(b)
    size = len(rho)
    shifted = [[rho[i][j] - (ONE if i == j else ZERO) for j in range(size)] for i in range(size)]
    d = poly_det(shifted)
    if not d:
        return normalize(ZERO)
    return normalize(divide_exact(d.lowered(), cyclotomic_column(b.strands)))


def alexander_from_seifert(s: SeifertMatrix) -> UnitClass:
    """``det(t*S - S^T)`` up to units. The empty matrix gives 1."""
    m = len(s)
    if any(len(row) != m for row in s):
        raise ValueError("Seifert matrix must be square")
    rows = [
        [LaurentPoly({1: s[i][j]}) - s[j][i] for j in range(m)]
        for i in range(m)
    ]
    return normalize(poly_det(rows))

"""
Exact sparse polynomial arithmetic over unbounded integers.

BiPoly holds a Tutte polynomial T(x,y) = sum t_ij x^i y^j as a map (i, j) -> t_ij,
UniPoly holds a polynomial in z. Zero coefficients are never stored, so two values
are equal exactly when their term maps are equal.
"""

import math
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

Term = Tuple[int, int]


class RankExceedingTermError(ValueError):
    """A coefficient t_ij with i > r was found where every such term must vanish."""

    def __init__(self, i: int, j: int, coefficient: int, r: int):
        self.i, self.j, self.coefficient, self.r = i, j, coefficient, r
        super().__init__(f"rank-exceeding term: t[{i}][{j}] = {coefficient} but r = {r}")


def binomial(n: int, k: int) -> int:
    """
    Generalized binomial coefficient n(n-1)...(n-k+1)/k!.

    Valid for any integer n, including negative n; zero when k < 0.

    Examples:
    - binomial(5, 2) -> 10
    - binomial(-2, 3) -> -4
    - binomial(3, -1) -> 0
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    # upper negation: binom(n, k) = (-1)^k binom(k - n - 1, k)
    return (-1) ** k * math.comb(k - n - 1, k)


class BiPoly:
    """Sparse bivariate polynomial in x, y with exact integer coefficients."""

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Optional[Mapping[Term, int]] = None):
        cleaned: Dict[Term, int] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term ({i}, {j})")
            if c:
                cleaned[(int(i), int(j))] = int(c)
        self._terms = cleaned
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> 'BiPoly':
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> 'BiPoly':
        return cls({(i, j): c})

    @property
    def terms(self) -> Mapping[Term, int]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[Tuple[Term, int]]:
        """Terms in ascending (i, j) order."""
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, i: int, j: int) -> int:
        return self._terms.get((i, j), 0)

    def evaluate(self, x0: int, y0: int) -> int:
        return sum(c * x0 ** i * y0 ** j for (i, j), c in self._terms.items())

    def __add__(self, other: Union['BiPoly', int]) -> 'BiPoly':
        if isinstance(other, int):
            other = BiPoly.constant(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        result = dict(self._terms)
        for key, c in other._terms.items():
            result[key] = result.get(key, 0) + c
        return BiPoly(result)

    __radd__ = __add__

    def __neg__(self) -> 'BiPoly':
        return BiPoly({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: Union['BiPoly', int]) -> 'BiPoly':
        if isinstance(other, int):
            other = BiPoly.constant(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> 'BiPoly':
        return BiPoly.constant(other) - self

    def __mul__(self, other: Union['BiPoly', int]) -> 'BiPoly':
        if isinstance(other, int):
            return BiPoly({key: c * other for key, c in self._terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        result: Dict[Term, int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                result[key] = result.get(key, 0) + c1 * c2
        return BiPoly(result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'BiPoly':
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"BiPoly({dict(self.items())})"


ZERO = BiPoly()
ONE = BiPoly.constant(1)
X = BiPoly.monomial(1, 0)
Y = BiPoly.monomial(0, 1)


class UniPoly:
    """Sparse univariate polynomial in z with exact integer coefficients."""

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[int, int]] = None):
        cleaned: Dict[int, int] = {}
        for k, c in (terms or {}).items():
            if k < 0:
                raise ValueError(f"negative degree {k}")
            if c:
                cleaned[int(k)] = int(c)
        self._terms = cleaned

    @classmethod
    def monomial(cls, c: int, k: int) -> 'UniPoly':
        return cls({k: c})

    @property
    def terms(self) -> Mapping[int, int]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, k: int) -> int:
        return self._terms.get(k, 0)

    def degree(self) -> int:
        return max(self._terms, default=-1)

    def evaluate(self, z0: int) -> int:
        return sum(c * z0 ** k for k, c in self._terms.items())

    def __add__(self, other: 'UniPoly') -> 'UniPoly':
        if not isinstance(other, UniPoly):
            return NotImplemented
        result = dict(self._terms)
        for k, c in other._terms.items():
            result[k] = result.get(k, 0) + c
        return UniPoly(result)

    def __mul__(self, other: 'UniPoly') -> 'UniPoly':
        if not isinstance(other, UniPoly):
            return NotImplemented
        result: Dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                result[k1 + k2] = result.get(k1 + k2, 0) + c1 * c2
        return UniPoly(result)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"UniPoly({dict(self.items())})"


# --- Module-level operations ---

def bipoly_add(p: BiPoly, q: BiPoly) -> BiPoly:
    return p + q


def bipoly_mul(p: BiPoly, q: BiPoly) -> BiPoly:
    return p * q


def coefficient(p: BiPoly, i: int, j: int) -> int:
    """Return t_ij, zero when the term is absent."""
    return p.coefficient(i, j)


def evaluate(p: BiPoly, x0: int, y0: int) -> int:
    return p.evaluate(x0, y0)


def total_degree(p: BiPoly) -> int:
    return max((i + j for i, j in p.terms), default=-1)


def x_degree(p: BiPoly) -> int:
    return max((i for i, _ in p.terms), default=-1)


def y_degree(p: BiPoly) -> int:
    return max((j for _, j in p.terms), default=-1)


@lru_cache(maxsize=None)
def x_minus_one_power(a: int) -> BiPoly:
    """(x - 1)^a expanded by the binomial theorem."""
    return BiPoly({(i, 0): binomial(a, i) * (-1) ** (a - i) for i in range(a + 1)})


@lru_cache(maxsize=None)
def y_minus_one_power(b: int) -> BiPoly:
    """(y - 1)^b expanded by the binomial theorem."""
    return BiPoly({(0, j): binomial(b, j) * (-1) ** (b - j) for j in range(b + 1)})


def geometric_y(k: int) -> BiPoly:
    """1 + y + ... + y^(k-1); zero for k = 0."""
    return BiPoly({(0, j): 1 for j in range(k)})


def geometric_x(k: int) -> BiPoly:
    """1 + x + ... + x^(k-1); zero for k = 0."""
    return BiPoly({(i, 0): 1 for i in range(k)})


def unipoly_add(p: UniPoly, q: UniPoly) -> UniPoly:
    return p + q


def unipoly_mul(p: UniPoly, q: UniPoly) -> UniPoly:
    return p * q


def unipoly_eval(p: UniPoly, z0: int) -> int:
    return p.evaluate(z0)


def unipoly_monomial(c: int, k: int) -> UniPoly:
    return UniPoly.monomial(c, k)


def expand_hyperbola(t: BiPoly, r: int) -> UniPoly:
    """
    Expand sum t_ij z^(i+j) (z-1)^(r-i) into a polynomial in z.

    This is T(z/(z-1), z) with the denominator (z-1)^r cleared.

    Raises:
        RankExceedingTermError: some t_ij != 0 has i > r
    """
    result: Dict[int, int] = {}
    for (i, j), c in t.items():
        if i > r:
            raise RankExceedingTermError(i, j, c, r)
        a = r - i
        for l in range(a + 1):
            k = i + j + l
            result[k] = result.get(k, 0) + c * binomial(a, l) * (-1) ** (a - l)
    return UniPoly(result)


def hyperbola_term(t: BiPoly, r: int, z0: int) -> int:
    """Termwise evaluation of sum t_ij z0^(i+j) (z0-1)^(r-i) at an integer point."""
    total = 0
    for (i, j), c in t.items():
        if i > r:
            raise RankExceedingTermError(i, j, c, r)
        total += c * z0 ** (i + j) * (z0 - 1) ** (r - i)
    return total

"""Truncated bivariate power series with exact integer coefficients.

Pyramid-side series live in the variables ``(q0, q1)`` and are truncated by
total degree.  The super-rigid side uses ``(z, q)`` with an independent bound
on each variable.  Both are handled by :class:`TruncatedSeries`; the
:class:`Truncation` it carries decides which exponent pairs are kept.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple

PYRAMID_VARS = ("q0", "q1")
ZQ_VARS = ("z", "q")


class SeriesError(ValueError):
    """Raised on misuse of series arithmetic (mismatched truncation etc.)."""


@dataclass(frozen=True, order=True)
class Monomial:
    """``q0**e0 * q1**e1``.  Exponents may be negative (edge weights need it)."""

    e0: int = 0
    e1: int = 0

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self.e0 + other.e0, self.e1 + other.e1)

    def __truediv__(self, other: Monomial) -> Monomial:
        return Monomial(self.e0 - other.e0, self.e1 - other.e1)

    def __pow__(self, k: int) -> Monomial:
        return Monomial(self.e0 * k, self.e1 * k)

    @property
    def degree(self) -> int:
        return self.e0 + self.e1

    @property
    def key(self) -> tuple[int, int]:
        return (self.e0, self.e1)

    def is_polynomial(self) -> bool:
        return self.e0 >= 0 and self.e1 >= 0

    def format(self, names: tuple[str, str] = PYRAMID_VARS) -> str:
        parts = []
        for name, e in zip(names, (self.e0, self.e1)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def __str__(self) -> str:
        return self.format()


ONE = Monomial(0, 0)
Q0 = Monomial(1, 0)
Q1 = Monomial(0, 1)
Q = Q0 * Q1
# in (z, q) series the first slot is z, the second q
Z_ = Monomial(1, 0)
Q_ = Monomial(0, 1)


@dataclass(frozen=True)
class Truncation:
    """Either a total-degree bound or one bound per variable."""

    total: int | None = None
    bounds: tuple[int, int] | None = None

    def __post_init__(self):
        if (self.total is None) == (self.bounds is None):
            raise SeriesError("exactly one of total / bounds must be given")
        if self.total is not None and self.total < 0:
            raise SeriesError("truncation degree must be non-negative")
        if self.bounds is not None and min(self.bounds) < 0:
            raise SeriesError("truncation bounds must be non-negative")

    @classmethod
    def total_degree(cls, d: int) -> Truncation:
        return cls(total=d)

    @classmethod
    def per_variable(cls, d0: int, d1: int) -> Truncation:
        return cls(bounds=(d0, d1))

    def admits(self, e0: int, e1: int) -> bool:
        if e0 < 0 or e1 < 0:
            return False
        if self.total is not None:
            return e0 + e1 <= self.total
        return e0 <= self.bounds[0] and e1 <= self.bounds[1]

    @property
    def max_total(self) -> int:
        """Largest total degree an admitted monomial can have."""
        if self.total is not None:
            return self.total
        return self.bounds[0] + self.bounds[1]

    def grid(self) -> list[tuple[int, int]]:
        """All admitted exponent pairs, by total degree then lexicographically."""
        if self.total is not None:
            pts = [(a, d - a) for d in range(self.total + 1) for a in range(d + 1)]
        else:
            pts = [(a, b) for a in range(self.bounds[0] + 1) for b in range(self.bounds[1] + 1)]
        return sorted(pts, key=lambda t: (t[0] + t[1], t))


class TruncatedSeries:
    """Immutable truncated power series in two variables.

    Stored terms never exceed the truncation and never have zero coefficients.
    """

    __slots__ = ("_terms", "trunc", "vars")

    def __init__(
        self,
        terms: Mapping[tuple[int, int], int] | None = None,
        trunc: Truncation | int = 0,
        vars: tuple[str, str] = PYRAMID_VARS,
    ):
        if isinstance(trunc, int):
            trunc = Truncation.total_degree(trunc)
        self.trunc = trunc
        self.vars = tuple(vars)
        clean: dict[tuple[int, int], int] = {}
        for (e0, e1), c in (terms or {}).items():
            if e0 < 0 or e1 < 0:
                raise SeriesError(f"negative exponent ({e0}, {e1}) in a series term")
            if c and trunc.admits(e0, e1):
                clean[(e0, e1)] = int(c)
        self._terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def one(cls, trunc: Truncation | int, vars=PYRAMID_VARS) -> TruncatedSeries:
        return cls({(0, 0): 1}, trunc, vars)

    @classmethod
    def zero(cls, trunc: Truncation | int, vars=PYRAMID_VARS) -> TruncatedSeries:
        return cls({}, trunc, vars)

    @classmethod
    def from_monomials(cls, monos: Iterable[Monomial], trunc, vars=PYRAMID_VARS) -> TruncatedSeries:
        """Sum of the given monomials (with multiplicity)."""
        acc: dict[tuple[int, int], int] = {}
        for m in monos:
            if not m.is_polynomial():
                raise SeriesError(f"monomial {m} has a negative exponent")
            acc[m.key] = acc.get(m.key, 0) + 1
        return cls(acc, trunc, vars)

    # -- access -------------------------------------------------------------
    def coeff(self, e0: int, e1: int = 0) -> int:
        return self._terms.get((e0, e1), 0)

    def __getitem__(self, key: tuple[int, int] | Monomial) -> int:
        if isinstance(key, Monomial):
            key = key.key
        return self._terms.get(key, 0)

    def terms(self) -> list[tuple[tuple[int, int], int]]:
        """Terms sorted lexicographically by exponent pair."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: TruncatedSeries) -> None:
        if not isinstance(other, TruncatedSeries):
            raise SeriesError(f"cannot combine a series with {type(other).__name__}")
        if self.trunc != other.trunc or self.vars != other.vars:
            raise SeriesError(
                f"mismatched series: {self.vars}/{self.trunc} vs {other.vars}/{other.trunc}"
            )

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return TruncatedSeries(acc, self.trunc, self.vars)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries({k: -c for k, c in self._terms.items()}, self.trunc, self.vars)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        admits = self.trunc.admits
        acc: dict[tuple[int, int], int] = {}
        for (a0, a1), ca in self._terms.items():
            for (b0, b1), cb in other._terms.items():
                k = (a0 + b0, a1 + b1)
                if admits(*k):
                    acc[k] = acc.get(k, 0) + ca * cb
        return TruncatedSeries(acc, self.trunc, self.vars)

    def scale(self, m: Monomial, c: int = 1) -> TruncatedSeries:
        """``c * m * self``; ``m`` may carry negative exponents if the result does not."""
        return TruncatedSeries(
            {(k[0] + m.e0, k[1] + m.e1): c * v for k, v in self._terms.items()},
            self.trunc,
            self.vars,
        )

    def retruncate(self, trunc: Truncation | int) -> TruncatedSeries:
        """Drop terms outside ``trunc``.  Only sound when narrowing."""
        return TruncatedSeries(self._terms, trunc, self.vars)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.vars == other.vars and self._terms == other._terms

    def __hash__(self):
        return hash((self.trunc, self.vars, tuple(self.terms())))

    def first_difference(self, other: TruncatedSeries) -> tuple[tuple[int, int], int, int] | None:
        """Lexicographically least exponent pair where the coefficients differ."""
        self._check(other)
        for k in sorted(set(self._terms) | set(other._terms)):
            a, b = self.coeff(*k), other.coeff(*k)
            if a != b:
                return k, a, b
        return None

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.format()}, {self.trunc})"

    def format(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for (e0, e1), c in sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = Monomial(e0, e1).format(self.vars)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        head = ("-" if out[0][0] == "-" else "") + out[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in out[1:]])

    __str__ = format


def series_div_unit(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Return ``c`` with ``b * c == a`` up to the truncation; ``b(0)`` must be +-1."""
    a._check(b)
    b0 = b.coeff(0, 0)
    if b0 not in (1, -1):
        raise SeriesError(f"divisor constant term is {b0}, not a unit")
    rest = [(k, c) for k, c in b._terms.items() if k != (0, 0)]
    c: dict[tuple[int, int], int] = {}
    for t in a.trunc.grid():
        s = a.coeff(*t)
        for (s0, s1), bc in rest:
            if s0 <= t[0] and s1 <= t[1]:
                s -= bc * c.get((t[0] - s0, t[1] - s1), 0)
        if s:
            c[t] = s * b0
    return TruncatedSeries(c, a.trunc, a.vars)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


class Factor(NamedTuple):
    """The factor ``(1 + sign*mono) ** exponent``."""

    mono: Monomial
    exponent: int
    sign: int = 1


def product_expand(
    factors: Iterable[Factor | tuple],
    trunc: Truncation | int,
    vars: tuple[str, str] = PYRAMID_VARS,
) -> TruncatedSeries:
    """Expand a (possibly infinite) product of binomial factors, truncated.

    Factors must arrive in non-decreasing total degree of their monomial; the
    stream is abandoned once that degree exceeds anything the truncation can
    hold.
    """
    if isinstance(trunc, int):
        trunc = Truncation.total_degree(trunc)
    grid = trunc.grid()
    coef: dict[tuple[int, int], int] = {(0, 0): 1}
    last = 0
    for f in factors:
        f = Factor(*f)
        m, e, s = f.mono, f.exponent, f.sign
        if m.degree <= 0:
            raise SeriesError(f"factor monomial {m} has total degree {m.degree} <= 0")
        if not m.is_polynomial():
            raise SeriesError(f"factor monomial {m} has a negative exponent")
        if m.degree < last:
            raise SeriesError("factors must be supplied in non-decreasing degree")
        last = m.degree
        if m.degree > trunc.max_total:
            break
        if e == 0 or not trunc.admits(m.e0, m.e1):
            continue
        if e > 0:
            for _ in range(e):
                for t in sorted(coef, key=lambda k: -(k[0] + k[1])):
                    u = (t[0] + m.e0, t[1] + m.e1)
                    if trunc.admits(*u):
                        coef[u] = coef.get(u, 0) + s * coef[t]
        else:
            for _ in range(-e):
                for t in grid:
                    p = (t[0] - m.e0, t[1] - m.e1)
                    if p[0] >= 0 and p[1] >= 0 and coef.get(p):
                        coef[t] = coef.get(t, 0) - s * coef[p]
    return TruncatedSeries(coef, trunc, vars)


def macmahon(
    qm: Monomial,
    trunc: Truncation | int,
    x: Monomial = ONE,
    x_sign: int = 1,
    inverse: bool = False,
    vars: tuple[str, str] = PYRAMID_VARS,
) -> TruncatedSeries:
    """``M(x, qm) = prod_{k>=1} (1 - x*qm^k)^(-k)``, or its inverse.

    ``x`` is ``x_sign * x`` as a signed monomial, so ``M(-q1^-1, q0*q1)`` is
    ``macmahon(Q, D, x=Monomial(0, -1), x_sign=-1)``.
    """
    if qm.degree < 1:
        raise SeriesError(f"MacMahon base {qm} must have positive total degree")
    if (x * qm).degree < 1:
        raise SeriesError(f"x*q = {x * qm} must have positive total degree")
    if isinstance(trunc, int):
        trunc = Truncation.total_degree(trunc)

    def stream():
        k = 1
        while True:
            yield Factor(x * qm ** k, k if inverse else -k, -x_sign)
            k += 1

    return product_expand(stream(), trunc, vars)


def formula_Z(n: int, degree: int) -> TruncatedSeries:
    """Closed-form generating function of length-``n`` pyramid partitions."""
    if n < 1:
        raise SeriesError(f"length must be >= 1, got {n}")
    m = macmahon(Q, degree)
    factors = []
    for k in range(1, degree + 1):
        factors.append(Factor(Monomial(k, k - 1), k + n - 1))
        if k - n + 1 > 0:
            factors.append(Factor(Monomial(k, k + 1), k - n + 1))
    factors.sort(key=lambda f: f.mono.degree)
    return m * m * product_expand(factors, degree)


def formula_Zx(z_degree: int, q_degree: int) -> TruncatedSeries:
    """``Z_X(z, q) = M(1, q)^2 M(-z, q)^-1`` with per-variable truncation."""
    trunc = Truncation.per_variable(z_degree, q_degree)
    m = macmahon(Q_, trunc, vars=ZQ_VARS)
    legs = macmahon(Q_, trunc, x=Z_, x_sign=-1, inverse=True, vars=ZQ_VARS)
    return m * m * legs


def substitute_zq(s: TruncatedSeries, degree: int) -> TruncatedSeries:
    """Map a ``(z, q)`` series through ``z -> q1, q -> q0*q1``; truncate by total degree.

    The caller must supply ``s`` with bounds covering every term that can land
    at total degree ``<= degree`` (``z <= degree``, ``q <= degree // 2``).
    """
    if s.vars != ZQ_VARS:
        raise SeriesError(f"expected a (z, q) series, got vars {s.vars}")
    b = s.trunc.bounds
    if b is None or b[0] < degree or b[1] < degree // 2:
        raise SeriesError(f"bounds {s.trunc} too small to substitute at degree {degree}")
    out = {}
    for (a, b_), c in s:
        k = (b_, a + b_)
        out[k] = out.get(k, 0) + c
    return TruncatedSeries(out, degree, PYRAMID_VARS)


def formula_Zinf(degree: int) -> TruncatedSeries:
    """``Z(inf; q0, q1) = Z_X(q1, q0*q1)`` truncated by total degree."""
    return substitute_zq(formula_Zx(degree, degree // 2), degree)


def pyramid_leg_factor(degree: int) -> TruncatedSeries:
    """``M(-q1^-1, q0*q1)^-1 = prod_k (1 + q0^k q1^(k-1))^k``."""
    return macmahon(Q, degree, x=Monomial(0, -1), x_sign=-1, inverse=True)


def shuffle_product(n: int, k: int, degree: int) -> TruncatedSeries:
    """``prod_{i=1..k} (1 + q0^i q1^(i-1))^(i+n-1)``, the factor peeled off by k shuffles."""
    return product_expand((Factor(Monomial(i, i - 1), i + n - 1) for i in range(1, k + 1)), degree)

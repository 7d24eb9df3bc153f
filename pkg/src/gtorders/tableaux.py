"""Tableaux, characters, and modules over the realized ring.

A tableau is a full triangular array of exact rationals: a point of the
variable grid.  Its row-sorted form is the canonical representative of
its orbit under the row-permutation group and serves as a character (an
algebra map from the invariant subring).

Two kinds of modules are implemented.

Generic orbit modules
    Basis T(l) indexed by lattice translates of a generic tableau.  A
    skew-ring term a*z acts by T(l) -> a(l') T(l') where l' is l shifted
    one lattice step against the shift orientation; this is the unique
    evaluation convention that makes the action associative, and under
    the calibrated profile it reproduces the classical picture where a
    raising term moves the tableau up with its displayed coefficient
    read at the source.

Finite pattern modules
    Basis indexed by integral arrays with the interlacing property
    (:class:`GTPattern`).  The realized raising coefficients vanish on
    every step that would leave the pattern set, but the realized
    lowering coefficients do not (for n = 2 the displayed lowering
    coefficient is identically 1), so the ring-gauge action cannot stay
    inside the pattern set.  :func:`act_finite` therefore uses a
    rescaled basis: a diagonal gauge moves one linear factor across each
    raising/lowering pair so that *both* directions carry their boundary
    factors,

        A'(m,i) = A+(m,i) * (l[m,i] - l[m-1,i-1] + 1) / (l[m+1,i+1] - l[m,i])
        B'(m,i) = A-(m,i) * (l[m+1,i+1] - l[m,i] + 1) / (l[m,i] - l[m-1,i-1])

    (factors dropped where the index leaves the triangle).  The rescaling
    is a coboundary, so all bracket relations and central characters are
    untouched; the tests check this directly on matrix models.  Pattern
    entries are classical, and the realized coefficients are evaluated at
    the column-shifted point l[i,j] = entry(i,j) - j.

Exits with a nonzero coefficient raise :class:`BoundaryLeak`; silent
clamping is never performed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .ratfun import (
    DenominatorVanishes,
    Perm,
    Polynomial,
    RatFun,
    Shift,
    Var,
    group_elements,
)
from .realization import ConventionProfile, Realization
from .skewring import SkewElement


class NotDominant(ValueError):
    """Top row of a pattern family must be weakly decreasing."""


class BoundaryLeak(RuntimeError):
    """A pattern-module step left the pattern set with a nonzero coefficient."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Tableau:
    """Immutable triangular array; row i holds i exact rational entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(_frac(x) for x in row) for row in rows)
        for i, row in enumerate(rows, start=1):
            if len(row) != i:
                raise ValueError(f"row {i} must have {i} entries, got {len(row)}")
        self.rows = rows

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i - 1][j - 1]

    def point(self) -> dict[Var, Fraction]:
        return {
            (i, j): self.rows[i - 1][j - 1]
            for i in range(1, self.n + 1)
            for j in range(1, i + 1)
        }

    def shifted(self, z: Shift, step: int = 1) -> "Tableau":
        """Entry-wise translate by step * z (rows below the top only)."""
        z.validate(self.n)
        ent = {v: e for v, e in z}
        return Tableau(
            tuple(
                tuple(
                    self.rows[i - 1][j - 1] + step * ent.get((i, j), 0)
                    for j in range(1, i + 1)
                )
                for i in range(1, self.n + 1)
            )
        )

    def permuted(self, g: Perm) -> "Tableau":
        """The point moved by g: entry (i,j) of the result is entry (i, g_i(j))."""
        return Tableau(
            tuple(
                tuple(self.rows[i - 1][g.apply(i, j) - 1] for j in range(1, i + 1))
                for i in range(1, self.n + 1)
            )
        )

    def top_row(self) -> tuple[Fraction, ...]:
        return self.rows[-1]

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def __eq__(self, other):
        return isinstance(other, Tableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __lt__(self, other):
        return self.rows < other.rows

    def __str__(self):
        return "; ".join(
            ",".join(_frac_str(x) for x in row) for row in reversed(self.rows)
        )

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rows": [[_frac_str(x) for x in row] for row in reversed(self.rows)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Tableau":
        n = data["n"]
        rows = [list(map(Fraction, row)) for row in data["rows"]]
        if len(rows) != n:
            raise ValueError("row count does not match n")
        return cls(tuple(reversed(rows)))


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Character:
    """Canonical representative of a tableau orbit: rows sorted descending."""

    __slots__ = ("canonical",)

    def __init__(self, tab: Tableau):
        self.canonical = Tableau(
            tuple(tuple(sorted(row, reverse=True)) for row in tab.rows)
        )

    @property
    def n(self) -> int:
        return self.canonical.n

    def orbit(self) -> set[Tableau]:
        return {self.canonical.permuted(g) for g in group_elements(self.n)}

    def __eq__(self, other):
        return isinstance(other, Character) and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __lt__(self, other):
        return self.canonical < other.canonical

    def __str__(self):
        return str(self.canonical)

    __repr__ = __str__

    def to_json(self) -> dict:
        return self.canonical.to_json()


class GTPattern:
    """Integral tableau with the interlacing (betweenness) property."""

    __slots__ = ("tableau",)

    def __init__(self, tab: Tableau):
        if not tab.is_integral():
            raise ValueError("pattern entries must be integers")
        if not is_pattern(tab):
            raise ValueError("betweenness violated")
        self.tableau = tab

    def __eq__(self, other):
        return isinstance(other, GTPattern) and self.tableau == other.tableau

    def __hash__(self):
        return hash(self.tableau)

    def __str__(self):
        return str(self.tableau)


def is_pattern(tab: Tableau) -> bool:
    """Classical interlacing on the tableau's own entries."""
    if not tab.is_integral():
        return False
    for i in range(1, tab.n):
        for j in range(1, i + 1):
            if not tab.entry(i + 1, j) >= tab.entry(i, j) >= tab.entry(i + 1, j + 1):
                return False
    return True


def is_generic(tab: Tableau) -> bool:
    """No integral differences within rows below the top, nor across
    adjacent rows: denominators never vanish on the lattice orbit and no
    raising/lowering numerator vanishes."""
    n = tab.n
    for m in range(1, n):
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                if (tab.entry(m, i) - tab.entry(m, j)).denominator == 1:
                    return False
            for j in range(1, m + 2):
                if (tab.entry(m + 1, j) - tab.entry(m, i)).denominator == 1:
                    return False
    return True


# ---------------------------------------------------------------------------
# module vectors and the generic action


class ModuleVector:
    """Finite linear combination of tableaux with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Tableau, Fraction] | Iterable[tuple[Tableau, Fraction]] = ()):
        clean: dict[Tableau, Fraction] = {}
        for t, c in dict(terms).items():
            c = _frac(c)
            if c:
                clean[t] = c
        self.terms = clean

    @classmethod
    def basis(cls, tab: Tableau) -> "ModuleVector":
        return cls({tab: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> frozenset[Tableau]:
        return frozenset(self.terms)

    def coefficient(self, tab: Tableau) -> Fraction:
        return self.terms.get(tab, Fraction(0))

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        terms = dict(self.terms)
        for t, c in other.terms.items():
            s = terms.get(t, Fraction(0)) + c
            if s:
                terms[t] = s
            else:
                terms.pop(t, None)
        out = ModuleVector.__new__(ModuleVector)
        out.terms = terms
        return out

    def __neg__(self):
        out = ModuleVector.__new__(ModuleVector)
        out.terms = {t: -c for t, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar) -> "ModuleVector":
        scalar = _frac(scalar)
        return ModuleVector({t: scalar * c for t, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.terms == other.terms

    __hash__ = None

    def __iter__(self) -> Iterator[tuple[Tableau, Fraction]]:
        return iter(self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({_frac_str(c)})*T[{t}]" for t, c in sorted(self.terms.items()))

    __repr__ = __str__

    def to_json(self) -> list[dict]:
        return [
            {"tableau": t.to_json(), "coeff": _frac_str(c)}
            for t, c in sorted(self.terms.items())
        ]


def act(op: SkewElement, v: ModuleVector, direction: int) -> ModuleVector:
    """Act by a skew-ring element on a generic-orbit vector.

    A term a*z sends T(l) to a(l') T(l') with l' = l - direction*z; the
    coefficient is evaluated at the arrival tableau, which is the unique
    choice compatible with the ring product (act(x, act(y, v)) ==
    act(x*y, v)).  Raises DenominatorVanishes off the generic locus.
    """
    out = ModuleVector()
    for tab, c in v:
        for z, a in op:
            target = tab.shifted(z, -direction)
            value = a.evaluate(target.point())
            if value:
                out = out + ModuleVector({target: c * value})
    return out


def act_generator(r: Realization, kind: str, idx: tuple[int, ...], v: ModuleVector) -> ModuleVector:
    return act(r.generator_image(kind, *idx), v, r.profile.shift_direction)


# ---------------------------------------------------------------------------
# finite pattern modules


def pattern_point(tab: Tableau) -> dict[Var, Fraction]:
    """Column-shifted evaluation point for a classical pattern:
    l[i,j] = entry(i,j) - j."""
    return {
        (i, j): tab.entry(i, j) - j
        for i in range(1, tab.n + 1)
        for j in range(1, i + 1)
    }


def _gauge_raising(r: Realization, m: int, i: int) -> RatFun:
    n = r.n
    a = r.profile.raising_sign * r.coefficient_a(m, i, +1)
    num = Polynomial.constant(1)
    if i >= 2 and m >= 2:
        num = Polynomial.variable(m, i) - Polynomial.variable(m - 1, i - 1) + Polynomial.constant(1)
    den = Polynomial.variable(m + 1, i + 1) - Polynomial.variable(m, i)
    return a * RatFun(num, [(den, 1)])


def _gauge_lowering(r: Realization, m: int, i: int) -> RatFun:
    a = r.profile.lowering_sign * r.coefficient_a(m, i, -1)
    num = Polynomial.variable(m + 1, i + 1) - Polynomial.variable(m, i) + Polynomial.constant(1)
    if i >= 2 and m >= 2:
        den = Polynomial.variable(m, i) - Polynomial.variable(m - 1, i - 1)
        return a * RatFun(num, [(den, 1)])
    return a * RatFun(num)


def act_finite(r: Realization, kind: str, idx: tuple[int, ...], v: ModuleVector) -> ModuleVector:
    """Act by a simple generator on a vector in a finite pattern module.

    Every key of v must be a valid pattern; a step that leaves the
    pattern set must carry a vanishing coefficient, otherwise
    BoundaryLeak is raised.
    """
    out = ModuleVector()
    for tab, c in v:
        if not is_pattern(tab):
            raise ValueError(f"not a pattern: {tab}")
        point = pattern_point(tab)
        if kind == "diagonal":
            (m,) = idx
            value = r.diagonal_image(m).coefficient(Shift.zero()).evaluate(point)
            out = out + ModuleVector({tab: c * value})
            continue
        if kind == "raising":
            (m,) = idx
            step = +1
            coeffs = [(i, _gauge_raising(r, m, i)) for i in range(1, m + 1)]
        elif kind == "lowering":
            (m,) = idx
            step = -1
            coeffs = [(i, _gauge_lowering(r, m, i)) for i in range(1, m + 1)]
        else:
            raise ValueError(f"act_finite supports simple generators only, not {kind!r}")
        for i, fun in coeffs:
            value = fun.evaluate(point)
            if not value:
                continue
            target = tab.shifted(Shift.delta(m, i), step)
            if not is_pattern(target):
                raise BoundaryLeak(
                    f"{kind}({m}) step at column {i} exits the pattern set "
                    f"from {tab} with coefficient {value}"
                )
            out = out + ModuleVector({target: c * value})
    return out


def generator_matrix(r: Realization, kind: str, idx: tuple[int, ...],
                     patterns: Sequence[Tableau]) -> list[list[Fraction]]:
    """Matrix of a simple generator on the listed pattern basis."""
    index = {p: a for a, p in enumerate(patterns)}
    size = len(patterns)
    mat = [[Fraction(0)] * size for _ in range(size)]
    for col, p in enumerate(patterns):
        w = act_finite(r, kind, idx, ModuleVector.basis(p))
        for t, c in w:
            mat[index[t]][col] += c
    return mat


# ---------------------------------------------------------------------------
# pattern enumeration and the dimension cross-check


def _interlacing_rows(upper: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All weakly decreasing integer rows interlacing below ``upper``."""
    k = len(upper)
    ranges = [range(upper[j + 1], upper[j] + 1) for j in range(k - 1)]
    for row in itertools.product(*ranges):
        if all(row[j] >= row[j + 1] for j in range(len(row) - 1)):
            yield row


@lru_cache(maxsize=None)
def _count_below(row: tuple[int, ...]) -> int:
    if len(row) == 1:
        return 1
    return sum(_count_below(r) for r in _interlacing_rows(row))


def gt_patterns(top: Sequence[int], mode: str = "count"):
    """Enumerate (or count) integral patterns with the given top row."""
    top = tuple(int(x) for x in top)
    if any(top[i] < top[i + 1] for i in range(len(top) - 1)):
        raise NotDominant(f"top row must be weakly decreasing: {top}")
    if mode == "count":
        return _count_below(top)
    if mode != "list":
        raise ValueError("mode must be 'count' or 'list'")

    def build(row: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
        if len(row) == 1:
            yield [row]
            return
        for below in _interlacing_rows(row):
            for rest in build(below):
                yield rest + [row]

    return [Tableau(rows) for rows in build(top)]


def weyl_dimension(top: Sequence[int]) -> int:
    """Product formula prod_{i<j} (top_i - top_j + j - i)/(j - i).

    Independent cross-check for the pattern count.
    """
    top = tuple(int(x) for x in top)
    if any(top[i] < top[i + 1] for i in range(len(top) - 1)):
        raise NotDominant(f"top row must be weakly decreasing: {top}")
    dim = Fraction(1)
    n = len(top)
    for i in range(n):
        for j in range(i + 1, n):
            dim *= Fraction(top[i] - top[j] + j - i, j - i)
    assert dim.denominator == 1
    return int(dim)


# ---------------------------------------------------------------------------
# reachability


@dataclass(frozen=True)
class ReachabilityReport:
    start: Tableau
    radius: int
    mode: str  # "generic" | "pattern"
    reached: frozenset[Tableau]

    def offsets(self) -> set[tuple]:
        """Reached lattice offsets as sorted entry tuples (debug aid)."""
        base = self.start.point()
        out = set()
        for t in self.reached:
            p = t.point()
            out.add(tuple(sorted((v, p[v] - base[v]) for v in p if p[v] != base[v])))
        return out

    def to_json(self) -> dict:
        return {
            "start": self.start.to_json(),
            "radius": self.radius,
            "mode": self.mode,
            "reached": [t.to_json() for t in sorted(self.reached)],
        }


def reachability(r: Realization, start: Tableau, radius: int) -> ReachabilityReport:
    """Breadth-first closure of single raising/lowering steps with nonzero
    coefficients, within sup-norm ``radius`` of the start.

    Generic starts walk the lattice with the realized action; integral
    pattern starts use the boundary-vanishing pattern action (and so
    certify no BoundaryLeak along the way).
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    n = r.n
    pattern_mode = is_pattern(start)
    if not pattern_mode and not is_generic(start):
        raise ValueError("start must be generic or a valid integral pattern")

    def within(t: Tableau) -> bool:
        p, q = t.point(), start.point()
        return all(abs(p[v] - q[v]) <= radius for v in p)

    seen = {start}
    frontier = [start]
    while frontier:
        new: list[Tableau] = []
        for tab in frontier:
            vec = ModuleVector.basis(tab)
            for m in range(1, n):
                for kind in ("raising", "lowering"):
                    if pattern_mode:
                        stepped = act_finite(r, kind, (m,), vec)
                    else:
                        stepped = act(r.generator_image(kind, m), vec,
                                      r.profile.shift_direction)
                    for t, _c in stepped:
                        if t not in seen and within(t):
                            seen.add(t)
                            new.append(t)
        frontier = new
    return ReachabilityReport(start, radius, "pattern" if pattern_mode else "generic",
                              frozenset(seen))

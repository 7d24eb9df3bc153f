"""Exact arithmetic over the triangular variable grid l[i,j].

Everything downstream works in the rational function field generated by
variables l[i,j] with 1 <= j <= i <= n, laid out like a Gelfand-Tsetlin
array (row i has i entries).  Two commuting kinds of substitutions act on
this field:

* integer shifts of single variables in rows 1..n-1 (the lattice of
  translations, see :class:`Shift`), and
* permutations of the columns within each row (the product of symmetric
  groups S_1 x ... x S_n, see :class:`Perm`).

Polynomials are sparse dictionaries from monomials to ``Fraction``
coefficients.  Rational functions keep their denominator as a *factored*
bag of primitive polynomials; the factors appearing in this problem are
linear forms ``l[i,j] - l[i,k] + c``, which makes cancellation cheap
(substitution-based exact division) and lets evaluation errors report the
offending factor.  Rational functions are never forced into lowest terms;
equality is semantic, by cross-multiplication.

Monomial order: graded lexicographic, with variables ordered by
``(row, col)`` ascending.  Denominator factors are normalized primitive
with positive leading coefficient under this order.

All values are immutable after construction and all operations are pure,
so values can be shared freely between threads and evaluations mapped in
parallel.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Var = tuple[int, int]  # (row, col) with 1 <= col <= row
Monomial = tuple[tuple[Var, int], ...]  # sorted by var, exponents > 0

Scalar = Union[int, Fraction]

_ONE_MONO: Monomial = ()


class DenominatorVanishes(ArithmeticError):
    """A rational function was evaluated at a zero of its denominator."""

    def __init__(self, factor: "Polynomial"):
        self.factor = factor
        super().__init__(f"denominator factor vanishes: {factor}")


def var_id(row: int, col: int) -> Var:
    if not 1 <= col <= row:
        raise ValueError(f"variable l[{row},{col}] outside the triangular grid")
    return (row, col)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps: dict[Var, int] = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    """Whether monomial a divides b."""
    bd = dict(b)
    return all(bd.get(v, 0) >= e for v, e in a)


def _mono_quotient(b: Monomial, a: Monomial) -> Monomial:
    bd = dict(b)
    for v, e in a:
        bd[v] -= e
    return tuple(sorted((v, e) for v, e in bd.items() if e))


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls({_ONE_MONO: Fraction(c)})

    @classmethod
    def variable(cls, row: int, col: int) -> "Polynomial":
        return cls({((var_id(row, col), 1),): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Mapping[Var, Scalar], const: Scalar = 0) -> "Polynomial":
        terms: dict[Monomial, Scalar] = {((v, 1),): c for v, c in coeffs.items()}
        terms[_ONE_MONO] = const
        return cls(terms)

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=0)

    def variables(self) -> set[Var]:
        return {v for m in self.terms for v, _ in m}

    def constant_value(self) -> Fraction | None:
        """The value of a constant polynomial, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and _ONE_MONO in self.terms:
            return self.terms[_ONE_MONO]
        return None

    def key(self):
        return tuple(sorted(self.terms.items()))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        out = Polynomial.__new__(Polynomial)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial.__new__(Polynomial)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = terms.get(m, Fraction(0)) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        out = Polynomial.__new__(Polynomial)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Polynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    # -- substitutions ----------------------------------------------------

    def evaluate(self, point: Mapping[Var, Scalar]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                if v not in point:
                    raise KeyError(f"no value for variable l[{v[0]},{v[1]}]")
                val *= Fraction(point[v]) ** e
            total += val
        return total

    def shift_var(self, v: Var, c: Scalar) -> "Polynomial":
        """Substitute l[v] -> l[v] + c."""
        c = Fraction(c)
        if not c:
            return self
        out = Polynomial.zero()
        for m, coeff in self.terms.items():
            md = dict(m)
            e = md.pop(v, 0)
            rest = tuple(sorted(md.items()))
            if e == 0:
                out += Polynomial({m: coeff})
                continue
            # (x+c)^e expanded term by term
            for k in range(e + 1):
                mono = _mono_mul(rest, ((v, k),) if k else _ONE_MONO)
                out += Polynomial({mono: coeff * math.comb(e, k) * c ** (e - k)})
        return out

    def renamed(self, mapping: Mapping[Var, Var]) -> "Polynomial":
        terms: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            mono = tuple(sorted((mapping.get(v, v), e) for v, e in m))
            assert mono not in terms, "variable renaming must be injective"
            terms[mono] = c
        out = Polynomial.__new__(Polynomial)
        out.terms = terms
        return out

    # -- monomial order helpers -------------------------------------------

    def _dense_order(self, extra_vars: Iterable[Var] = ()) -> list[Var]:
        vs = self.variables()
        vs.update(extra_vars)
        return sorted(vs)

    def leading(self, order: list[Var] | None = None) -> tuple[Monomial, Fraction]:
        """Leading term under graded lex (variables ascending by (row, col))."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if order is None:
            order = self._dense_order()
        index = {v: i for i, v in enumerate(order)}

        def keyfun(m: Monomial):
            dense = [0] * len(order)
            for v, e in m:
                dense[index[v]] = e
            return (_mono_degree(m), tuple(dense))

        m = max(self.terms, key=keyfun)
        return m, self.terms[m]

    def primitive(self) -> tuple[Fraction, "Polynomial"]:
        """Write self = content * primitive, primitive with integer coprime
        coefficients and positive leading coefficient."""
        if not self.terms:
            return Fraction(0), Polynomial.zero()
        num_gcd = math.gcd(*(abs(c.numerator) for c in self.terms.values()))
        den_lcm = math.lcm(*(c.denominator for c in self.terms.values()))
        content = Fraction(num_gcd, den_lcm)
        _, lead = self.leading()
        if lead < 0:
            content = -content
        prim = Polynomial({m: c / content for m, c in self.terms.items()})
        return content, prim

    def __str__(self):
        return poly_text(self)

    def __repr__(self):
        return f"Polynomial({poly_text(self)})"


def exact_divide(num: Polynomial, den: Polynomial) -> Polynomial | None:
    """Exact multivariate division; None when den does not divide num.

    Standard single-divisor reduction under graded lex: repeatedly cancel
    the leading term of the running remainder.  Any failure to divide a
    leading monomial means the division is not exact.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return Polynomial.zero()
    order = sorted(num.variables() | den.variables())
    dm, dc = den.leading(order)
    quot: dict[Monomial, Fraction] = {}
    rem = num
    while not rem.is_zero():
        rm, rc = rem.leading(order)
        if not _mono_divides(dm, rm):
            return None
        q = _mono_quotient(rm, dm)
        qc = rc / dc
        quot[q] = quot.get(q, Fraction(0)) + qc
        rem = rem - Polynomial({q: qc}) * den
    return Polynomial(quot)


# ---------------------------------------------------------------------------
# rational functions with factored denominators


class RatFun:
    """Rational function: Polynomial numerator over a bag of factors.

    ``den`` is a canonical tuple of (primitive polynomial, multiplicity)
    pairs.  Construction cancels the numeric content and any factor that
    exactly divides the numerator, but makes no attempt at a full GCD:
    exactness never depends on reduction, only equality does (and that is
    decided by cross-multiplication).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Iterable[tuple[Polynomial, int]] = ()):
        bag: dict = {}
        polyof: dict = {}
        scale = Fraction(1)
        for f, e in den:
            if e == 0:
                continue
            if e < 0:
                raise ValueError("denominator multiplicities must be positive")
            const = f.constant_value()
            if const is not None:
                if const == 0:
                    raise ZeroDivisionError("zero polynomial in denominator")
                scale *= const ** e
                continue
            content, prim = f.primitive()
            scale *= content ** e
            k = prim.key()
            bag[k] = bag.get(k, 0) + e
            polyof[k] = prim
        if scale != 1:
            num = Polynomial({m: c / scale for m, c in num.terms.items()})
        # cancel factors dividing the numerator (linear factors are
        # irreducible, so greedy cancellation is complete for them)
        if bag and not num.is_zero():
            for k in list(bag):
                while bag.get(k, 0) > 0:
                    q = exact_divide(num, polyof[k])
                    if q is None:
                        break
                    num = q
                    bag[k] -= 1
                if bag.get(k, 0) == 0:
                    bag.pop(k, None)
        if num.is_zero():
            bag = {}
        self.num = num
        self.den = tuple(sorted(((polyof[k], e) for k, e in bag.items()),
                                key=lambda fe: fe[0].key()))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_poly(cls, p: Polynomial) -> "RatFun":
        return cls(p)

    @classmethod
    def constant(cls, c: Scalar) -> "RatFun":
        return cls(Polynomial.constant(c))

    @classmethod
    def variable(cls, row: int, col: int) -> "RatFun":
        return cls(Polynomial.variable(row, col))

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def as_polynomial(self) -> Polynomial:
        if self.den:
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def den_poly(self) -> Polynomial:
        p = Polynomial.constant(1)
        for f, e in self.den:
            p = p * f ** e
        return p

    def variables(self) -> set[Var]:
        vs = self.num.variables()
        for f, _ in self.den:
            vs |= f.variables()
        return vs

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "RatFun | None":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Polynomial):
            return RatFun(other)
        if isinstance(other, (int, Fraction)):
            return RatFun.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        mine = dict((f.key(), (f, e)) for f, e in self.den)
        theirs = dict((f.key(), (f, e)) for f, e in other.den)
        common: list[tuple[Polynomial, int]] = []
        my_extra = Polynomial.constant(1)
        their_extra = Polynomial.constant(1)
        for k in set(mine) | set(theirs):
            f = (mine.get(k) or theirs.get(k))[0]
            e1 = mine.get(k, (f, 0))[1]
            e2 = theirs.get(k, (f, 0))[1]
            e = max(e1, e2)
            common.append((f, e))
            if e > e1:
                my_extra = my_extra * f ** (e - e1)
            if e > e2:
                their_extra = their_extra * f ** (e - e2)
        num = self.num * my_extra + other.num * their_extra
        return RatFun(num, common)

    __radd__ = __add__

    def __neg__(self):
        out = RatFun.__new__(RatFun)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.num, list(self.den) + list(other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        num = self.num * other.den_poly()
        return RatFun(num, list(self.den) + [(other.num, 1)])

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, e: int):
        if e < 0:
            return RatFun.constant(1) / self ** (-e)
        out = RatFun.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        # cross-multiplication; common factors drop out first for cheapness
        mine = dict((f.key(), e) for f, e in self.den)
        theirs = dict((f.key(), e) for f, e in other.den)
        my_side = self.num
        their_side = other.num
        for f, e in other.den:
            shared = min(e, mine.get(f.key(), 0))
            if e - shared:
                my_side = my_side * f ** (e - shared)
        for f, e in self.den:
            shared = min(e, theirs.get(f.key(), 0))
            if e - shared:
                their_side = their_side * f ** (e - shared)
        return my_side == their_side

    __hash__ = None  # semantic equality is not hash-compatible

    # -- evaluation and substitution --------------------------------------------

    def evaluate(self, point: Mapping[Var, Scalar]) -> Fraction:
        den_val = Fraction(1)
        for f, e in self.den:
            v = f.evaluate(point)
            if v == 0:
                raise DenominatorVanishes(f)
            den_val *= v ** e
        return self.num.evaluate(point) / den_val

    def map_polys(self, fn) -> "RatFun":
        out = RatFun.__new__(RatFun)
        out.num = fn(self.num)
        den = []
        scale = Fraction(1)
        for f, e in self.den:
            g = fn(f)
            content, prim = g.primitive()
            scale *= content ** e
            den.append((prim, e))
        if scale != 1:
            out.num = Polynomial({m: c / scale for m, c in out.num.terms.items()})
        out.den = tuple(sorted(den, key=lambda fe: fe[0].key()))
        return out

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"RatFun({to_text(self)})"


# ---------------------------------------------------------------------------
# lattice shifts


class Shift:
    """Integer translation vector over rows 1..n-1; absent entries are 0.

    Immutable and hashable; the canonical key is the sorted tuple of
    nonzero entries.  Addition is entrywise, conjugation by a row
    permutation moves the entry at (i, j) to (i, sigma_i(j)).
    """

    __slots__ = ("_items",)

    def __init__(self, entries: Mapping[Var, int] | Iterable[tuple[Var, int]] = ()):
        items = dict(entries)
        self._items = tuple(sorted((v, int(e)) for v, e in items.items() if e))

    @classmethod
    def zero(cls) -> "Shift":
        return cls()

    @classmethod
    def delta(cls, row: int, col: int) -> "Shift":
        return cls({var_id(row, col): 1})

    @property
    def entries(self) -> dict[Var, int]:
        return dict(self._items)

    def get(self, v: Var) -> int:
        return dict(self._items).get(v, 0)

    def is_zero(self) -> bool:
        return not self._items

    def inf_norm(self) -> int:
        return max((abs(e) for _, e in self._items), default=0)

    def max_row(self) -> int:
        return max((v[0] for v, _ in self._items), default=0)

    def validate(self, n: int) -> "Shift":
        for (row, _), _e in self._items:
            if row >= n:
                raise ValueError(f"shift touches row {row}, but rows above {n - 1} are frozen")
        return self

    def __add__(self, other: "Shift") -> "Shift":
        e = dict(self._items)
        for v, k in other._items:
            e[v] = e.get(v, 0) + k
        return Shift(e)

    def __neg__(self) -> "Shift":
        return Shift({v: -e for v, e in self._items})

    def __sub__(self, other: "Shift") -> "Shift":
        return self + (-other)

    def scaled(self, k: int) -> "Shift":
        return Shift({v: k * e for v, e in self._items})

    def conjugated(self, g: "Perm") -> "Shift":
        """The shift g . self . g^{-1}: entry at (i,j) moves to (i, g_i(j))."""
        return Shift({(i, g.apply(i, j)): e for (i, j), e in self._items})

    def __eq__(self, other):
        return isinstance(other, Shift) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __iter__(self) -> Iterator[tuple[Var, int]]:
        return iter(self._items)

    def __str__(self):
        if not self._items:
            return "e"
        return "*".join(
            f"d[{i},{j}]" + (f"^{e}" if e != 1 else "")
            for (i, j), e in self._items
        )

    __repr__ = __str__


# ---------------------------------------------------------------------------
# row permutations


class Perm:
    """An element of S_1 x S_2 x ... x S_n acting on columns within rows.

    ``rows[i-1]`` is the image tuple of row i: column j maps to
    ``rows[i-1][j-1]`` (1-based).  On functions the action substitutes
    l[i,j] -> l[i, sigma_i(j)].
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(r) for r in rows)
        for i, r in enumerate(rows, start=1):
            if sorted(r) != list(range(1, i + 1)):
                raise ValueError(f"row {i} of a permutation tuple must permute 1..{i}")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, i + 1)) for i in range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, row: int, a: int, b: int) -> "Perm":
        rows = [list(range(1, i + 1)) for i in range(1, n + 1)]
        rows[row - 1][a - 1], rows[row - 1][b - 1] = b, a
        return cls(rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def apply(self, row: int, col: int) -> int:
        return self.rows[row - 1][col - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition self o other (apply other first)."""
        assert self.n == other.n
        return Perm(
            tuple(self.rows[i][other.rows[i][j] - 1] for j in range(i + 1))
            for i in range(self.n)
        )

    def inverse(self) -> "Perm":
        rows = []
        for r in self.rows:
            inv = [0] * len(r)
            for j, img in enumerate(r, start=1):
                inv[img - 1] = j
            rows.append(tuple(inv))
        return Perm(rows)

    def is_identity(self) -> bool:
        return all(r == tuple(range(1, i + 1)) for i, r in enumerate(self.rows, 1))

    def var_mapping(self) -> dict[Var, Var]:
        return {
            (i, j): (i, self.apply(i, j))
            for i in range(1, self.n + 1)
            for j in range(1, i + 1)
        }

    def __eq__(self, other):
        return isinstance(other, Perm) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        return "|".join("".join(map(str, r)) for r in self.rows)

    __repr__ = __str__


def group_elements(n: int) -> list[Perm]:
    """All of S_1 x ... x S_n (size prod i!; 288 for n = 4)."""
    rowperms = [list(itertools.permutations(range(1, i + 1))) for i in range(1, n + 1)]
    return [Perm(rows) for rows in itertools.product(*rowperms)]


def group_order(n: int) -> int:
    return math.prod(math.factorial(i) for i in range(1, n + 1))


def adjacent_transpositions(n: int) -> list[Perm]:
    """Generators of the row-permutation group: adjacent swaps per row."""
    gens = []
    for i in range(2, n + 1):
        for j in range(1, i):
            gens.append(Perm.transposition(n, i, j, j + 1))
    return gens


# ---------------------------------------------------------------------------
# the two actions on rational functions


def apply_shift(f: RatFun | Polynomial, z: Shift, direction: int) -> RatFun | Polynomial:
    """Substitute l[i,j] -> l[i,j] + direction * z[i,j] throughout.

    ``direction`` is the module-wide shift orientation (+1 or -1); the
    calibration step of the realization fixes which one is in force.
    """
    if direction not in (+1, -1):
        raise ValueError("shift direction must be +1 or -1")

    def on_poly(p: Polynomial) -> Polynomial:
        for v, e in z:
            p = p.shift_var(v, direction * e)
        return p

    if isinstance(f, Polynomial):
        return on_poly(f)
    return f.map_polys(on_poly)


def apply_permutation(f: RatFun | Polynomial, g: Perm) -> RatFun | Polynomial:
    """Substitute l[i,j] -> l[i, g_i(j)] throughout."""
    mapping = g.var_mapping()
    if isinstance(f, Polynomial):
        return f.renamed(mapping)
    return f.map_polys(lambda p: p.renamed(mapping))


def is_g_invariant(f: RatFun | Polynomial, n: int) -> bool:
    """Invariance under every row permutation (adjacent swaps suffice)."""
    if isinstance(f, Polynomial):
        f = RatFun(f)
    return all(apply_permutation(f, t) == f for t in adjacent_transpositions(n))


# ---------------------------------------------------------------------------
# textual form: explicit-parenthesis infix with l[i,j] variables


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_text(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for m, c in sorted(p.terms.items()):
        factors = []
        if c != 1 or not m:
            factors.append(f"({_frac_text(c)})")
        for (i, j), e in m:
            factors.append(f"l[{i},{j}]" + (f"^{e}" if e > 1 else ""))
        parts.append("*".join(factors))
    return " + ".join(parts)


def to_text(f: RatFun) -> str:
    num = f"({poly_text(f.num)})"
    if not f.den:
        return num
    den = "*".join(
        f"({poly_text(p)})" + (f"^{e}" if e > 1 else "") for p, e in f.den
    )
    return f"{num}/({den})"


class _Parser:
    """Recursive-descent parser for the textual form above.

    Grammar: expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
    unary := '-' unary | atom ('^' int)?; atom := int | l[i,j] | '(' expr ')'.
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ValueError(f"parse error at position {self.pos}: {msg}")

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def expr(self) -> RatFun:
        out = self.term()
        while self.peek() in "+-":
            op = self.peek()
            self.pos += 1
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> RatFun:
        out = self.unary()
        while self.peek() in "*/":
            op = self.peek()
            self.pos += 1
            rhs = self.unary()
            out = out * rhs if op == "*" else out / rhs
        return out

    def unary(self) -> RatFun:
        if self.peek() == "-":
            self.pos += 1
            return -self.unary()
        out = self.atom()
        if self.peek() == "^":
            self.pos += 1
            neg = False
            if self.peek() == "-":
                neg = True
                self.pos += 1
            e = self.integer()
            out = out ** (-e if neg else e)
        return out

    def atom(self) -> RatFun:
        ch = self.peek()
        if ch == "(":
            self.take("(")
            out = self.expr()
            self.take(")")
            return out
        if ch == "l":
            self.pos += 1
            self.take("[")
            i = self.integer()
            self.take(",")
            j = self.integer()
            self.take("]")
            return RatFun.variable(i, j)
        if ch.isdigit():
            return RatFun.constant(self.integer())
        self.error("expected '(', 'l[i,j]' or an integer")


def parse(text: str) -> RatFun:
    p = _Parser(text)
    out = p.expr()
    if p.peek():
        p.error("trailing input")
    return out

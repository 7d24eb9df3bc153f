"""The skew group ring of lattice shifts over the rational function field.

Elements are finite sums ``sum_z  a_z * z`` where z runs over integer
shift vectors (:class:`gtorders.ratfun.Shift`) and a_z is a rational
function.  Multiplication twists coefficients past shifts:

    (a * w) . (b * z)  =  (a * b^w) * (w + z),

where ``b^w`` applies the shift automorphism to b (see
:func:`gtorders.ratfun.apply_shift`; the orientation is the calibrated
``direction`` argument threaded through every product).

The row-permutation group G acts on everything: on coefficients by
renaming variables, on shifts by conjugation.  The G-invariant elements
are spanned by symmetrized terms [a phi] = sum over cosets of a^g phi^g;
:func:`symmetrize_term` builds them and checks the stabilizer condition
that makes the sum well defined.

The separator calculus (:func:`separator_apply`) multiplies the
coefficient at shift m by the product of (f - f^{m - s}) over a finite
shift set S; it detects support membership one G-orbit at a time.

Everything here is pure and immutable; term maps may be processed in
parallel.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from .ratfun import (
    Perm,
    Polynomial,
    RatFun,
    Shift,
    apply_permutation,
    apply_shift,
    group_elements,
    to_text,
)


class StabilizerViolation(ValueError):
    """Coefficient not invariant under the stabilizer of its shift."""


class SkewElement:
    """Finitely supported map from shifts to rational functions.

    Semantically zero coefficients are dropped eagerly, so ``supp`` is
    exactly the key set.  Addition and scalar multiplication need no
    twist and live here as operators; products need the shift direction
    and live in :func:`skew_multiply`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Shift, RatFun] | Iterable[tuple[Shift, RatFun]] = ()):
        clean: dict[Shift, RatFun] = {}
        for z, a in dict(terms).items():
            if not isinstance(a, RatFun):
                a = RatFun.constant(a) if not isinstance(a, Polynomial) else RatFun(a)
            if not a.is_zero():
                clean[z] = a
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "SkewElement":
        return cls()

    @classmethod
    def one(cls) -> "SkewElement":
        return cls({Shift.zero(): RatFun.constant(1)})

    @classmethod
    def term(cls, a, z: Shift) -> "SkewElement":
        return cls({z: a})

    # -- structure ------------------------------------------------------------

    def support(self) -> frozenset[Shift]:
        return frozenset(self.terms)

    def coefficient(self, z: Shift) -> RatFun:
        return self.terms.get(z, RatFun.constant(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SkewElement") -> "SkewElement":
        terms = dict(self.terms)
        for z, a in other.terms.items():
            if z in terms:
                s = terms[z] + a
                if s.is_zero():
                    del terms[z]
                else:
                    terms[z] = s
            else:
                terms[z] = a
        out = SkewElement.__new__(SkewElement)
        out.terms = terms
        return out

    def __neg__(self) -> "SkewElement":
        out = SkewElement.__new__(SkewElement)
        out.terms = {z: -a for z, a in self.terms.items()}
        return out

    def __sub__(self, other: "SkewElement") -> "SkewElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "SkewElement":
        """Left multiplication by a coefficient (gamma * x); no twist."""
        if isinstance(scalar, (int, Fraction, Polynomial)):
            scalar = RatFun.constant(scalar) if not isinstance(scalar, Polynomial) else RatFun(scalar)
        if not isinstance(scalar, RatFun):
            return NotImplemented
        return SkewElement({z: scalar * a for z, a in self.terms.items()})

    def right_scalar(self, scalar: RatFun, direction: int) -> "SkewElement":
        """Right multiplication x * (scalar e); the scalar gets twisted."""
        return SkewElement(
            {z: a * apply_shift(scalar, z, direction) for z, a in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, SkewElement):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[z] == other.terms[z] for z in self.terms)

    __hash__ = None

    def __iter__(self) -> Iterator[tuple[Shift, RatFun]]:
        return iter(self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"[{a}]*{z}" for z, a in sorted(self.terms.items(), key=lambda t: str(t[0])))

    __repr__ = __str__

    def to_json(self) -> list[dict]:
        out = []
        for z, a in sorted(self.terms.items(), key=lambda t: str(t[0])):
            out.append({
                "shift": {f"{i},{j}": e for (i, j), e in z},
                "coeff": to_text(a),
            })
        return out


def skew_multiply(x: SkewElement, y: SkewElement, direction: int) -> SkewElement:
    """(a w)(b z) = (a b^w)(w + z), extended bilinearly."""
    acc: dict[Shift, RatFun] = {}
    for w, a in x.terms.items():
        for z, b in y.terms.items():
            key = w + z
            c = a * apply_shift(b, w, direction)
            if key in acc:
                acc[key] = acc[key] + c
            else:
                acc[key] = c
    return SkewElement(acc)


def commutator(x: SkewElement, y: SkewElement, direction: int) -> SkewElement:
    return skew_multiply(x, y, direction) - skew_multiply(y, x, direction)


def g_act(x: SkewElement, g: Perm) -> SkewElement:
    """Coefficient-wise permutation, key-wise conjugation of shifts."""
    return SkewElement(
        {z.conjugated(g): apply_permutation(a, g) for z, a in x.terms.items()}
    )


def is_invariant(x: SkewElement, n: int) -> bool:
    from .ratfun import adjacent_transpositions

    return all(g_act(x, t) == x for t in adjacent_transpositions(n))


# ---------------------------------------------------------------------------
# G-orbits of shifts and symmetrized terms


def shift_orbit(z: Shift, n: int) -> frozenset[Shift]:
    return frozenset(z.conjugated(g) for g in group_elements(n))


def shift_stabilizer_group(z: Shift, n: int) -> list[Perm]:
    return [g for g in group_elements(n) if z.conjugated(g) == z]


def orbit_count(shifts: Iterable[Shift], n: int) -> int:
    remaining = set(shifts)
    count = 0
    while remaining:
        z = next(iter(remaining))
        remaining -= shift_orbit(z, n)
        count += 1
    return count


class GOrbitOfShifts:
    """A finite G-invariant set of shifts; closure checked on construction."""

    __slots__ = ("shifts", "n")

    def __init__(self, shifts: Iterable[Shift], n: int):
        shifts = frozenset(shifts)
        for z in shifts:
            z.validate(n)
            if not shift_orbit(z, n) <= shifts:
                raise ValueError(f"set is not closed under conjugation at {z}")
        self.shifts = shifts
        self.n = n

    @classmethod
    def closure(cls, shifts: Iterable[Shift], n: int) -> "GOrbitOfShifts":
        closed: set[Shift] = set()
        for z in shifts:
            closed |= shift_orbit(z, n)
        return cls(closed, n)

    def __contains__(self, z: Shift) -> bool:
        return z in self.shifts

    def __iter__(self):
        return iter(self.shifts)

    def __len__(self):
        return len(self.shifts)


def invariant_support_dimension(s: GOrbitOfShifts) -> int:
    """Dimension of the invariant elements supported inside s: one per orbit."""
    return orbit_count(s.shifts, s.n)


def symmetrize_term(a: RatFun, phi: Shift, n: int) -> SkewElement:
    """The G-invariant element [a phi] = sum over G/H_phi of a^g phi^g.

    H_phi is the conjugation stabilizer of phi; the sum is independent of
    the choice of coset representatives exactly when a is H_phi-invariant,
    which is checked and enforced.
    """
    phi.validate(n)
    stab = []
    seen: dict[Shift, Perm] = {}
    for g in group_elements(n):
        img = phi.conjugated(g)
        if img == phi:
            stab.append(g)
        if img not in seen:
            seen[img] = g
    for h in stab:
        if apply_permutation(a, h) != a:
            raise StabilizerViolation(
                f"coefficient is not invariant under the stabilizer element {h}"
            )
    acc = SkewElement.zero()
    for img, g in seen.items():
        acc = acc + SkewElement.term(apply_permutation(a, g), img)
    return acc


def restrict_support(x: SkewElement, s: GOrbitOfShifts | Iterable[Shift]) -> SkewElement:
    allowed = s.shifts if isinstance(s, GOrbitOfShifts) else frozenset(s)
    return SkewElement({z: a for z, a in x.terms.items() if z in allowed})


# ---------------------------------------------------------------------------
# separators


def separator_apply(
    f: RatFun,
    s: Iterable[Shift],
    x: SkewElement,
    direction: int,
    n: int | None = None,
    check_invariant: bool = True,
) -> SkewElement:
    """Apply the separator of the shift set s built from the invariant f.

    The coefficient of x at shift m is multiplied by the product over
    s in S of (f - f^{m - s}); the factor for s = m vanishes identically,
    so any element supported inside S is annihilated, and for
    T = supp(x) - S the result of the T-separator is supported in S.
    """
    s = list(s)
    if check_invariant and n is not None:
        from .ratfun import is_g_invariant

        if not is_g_invariant(f, n):
            raise ValueError("separator inputs must be G-invariant")
    out: dict[Shift, RatFun] = {}
    for m, a in x.terms.items():
        factor = RatFun.constant(1)
        for z in s:
            factor = factor * (f - apply_shift(f, m - z, direction))
            if factor.is_zero():
                break
        if not factor.is_zero():
            out[m] = factor * a
    return SkewElement(out)

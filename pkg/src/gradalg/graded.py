"""Elements and maps shared by the graded algebra types.

An algebra object supplies: field, ambient, dim, basis_keys(),
degree_of_key(key), multiply_basis(k1, k2) -> (coef, key) | None, and
one().  Twisted group algebras key their basis by group element id,
matrix algebras by (row, col, group element) triples; everything in this
module is generic over the key type.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CycloNumber
from .errors import (
    AlgebraMismatch,
    FieldMismatch,
    NotHomogeneous,
    ZeroElement,
)


def _coerce(field, value):
    if isinstance(value, CycloNumber):
        if value.field.modulus != field.modulus:
            raise FieldMismatch(
                f"coefficient lives in Q(zeta_{value.field.modulus}), "
                f"algebra field is Q(zeta_{field.modulus})")
        return value
    if isinstance(value, (int, Fraction)):
        return field.from_fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


class GradedElement:
    """A finite F-linear combination of homogeneous basis elements."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        field = algebra.field
        clean = {}
        for key, value in terms.items():
            c = _coerce(field, value)
            if not c.is_zero():
                clean[key] = c
        self.terms = clean

    # -- queries ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coefficient(self, key):
        return self.terms.get(key, self.algebra.field.zero())

    def support_keys(self):
        return tuple(sorted(self.terms))

    def degrees(self):
        """The set of degrees appearing in this element."""
        deg = self.algebra.degree_of_key
        return frozenset(deg(k) for k in self.terms)

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        degs = self.degrees()
        if not degs:
            raise ZeroElement("the zero element has no degree")
        if len(degs) > 1:
            raise NotHomogeneous(f"element mixes degrees {sorted(degs)}")
        return next(iter(degs))

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, GradedElement):
            raise TypeError("expected a graded element")
        if self.algebra != other.algebra:
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, self.algebra.field.zero()) + c
        return GradedElement(self.algebra, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        zero = self.algebra.field.zero()
        for key, c in other.terms.items():
            out[key] = out.get(key, zero) - c
        return GradedElement(self.algebra, out)

    def __neg__(self):
        return GradedElement(self.algebra, {k: -c for k, c in self.terms.items()})

    def scaled(self, value):
        c = _coerce(self.algebra.field, value)
        return GradedElement(self.algebra, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self.scaled(other)
        self._check(other)
        A = self.algebra
        zero = A.field.zero()
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                hit = A.multiply_basis(k1, k2)
                if hit is None:
                    continue
                coef, key = hit
                out[key] = out.get(key, zero) + c1 * c2 * coef
        return GradedElement(A, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self.scaled(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return "<0>"
        parts = [f"{c!r}*[{k}]" for k, c in sorted(self.terms.items())]
        return "<" + " + ".join(parts) + ">"


class GradedMap:
    """A linear map between graded algebras, given by basis images."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = dict(images)
        for key in source.basis_keys():
            if key not in self.images:
                raise AlgebraMismatch(f"no image assigned for basis key {key}")

    @classmethod
    def monomial(cls, source, target, assign):
        """Map sending each basis element to a scalar multiple of one target
        basis element; assign maps key -> (coef, target key)."""
        images = {
            key: GradedElement(target, {tkey: coef})
            for key, (coef, tkey) in assign.items()
        }
        return cls(source, target, images)

    def image(self, key):
        return self.images[key]

    def apply(self, elt):
        if elt.algebra != self.source:
            raise AlgebraMismatch("element does not belong to the source algebra")
        out = self.target.zero()
        for key, c in elt.terms.items():
            out = out + self.images[key].scaled(c)
        return out

    def then(self, nxt):
        """Composition: first self, then nxt."""
        if self.target != nxt.source:
            raise AlgebraMismatch("maps do not compose: target != next source")
        return GradedMap(
            self.source, nxt.target,
            {key: nxt.apply(img) for key, img in self.images.items()})

    def is_monomial(self):
        return all(len(img.terms) == 1 for img in self.images.values())

    def monomial_assign(self):
        out = {}
        for key, img in self.images.items():
            if len(img.terms) != 1:
                raise ValueError("map is not monomial")
            (tkey, coef), = img.terms.items()
            out[key] = (coef, tkey)
        return out

    def invert(self):
        """Inverse of a monomial bijection on basis keys."""
        assign = self.monomial_assign()
        back = {}
        for key, (coef, tkey) in assign.items():
            if tkey in back:
                raise ValueError("map is not injective on basis keys")
            back[tkey] = (coef.inv(), key)
        if len(back) != self.target.dim:
            raise ValueError("map is not onto the target basis")
        return GradedMap.monomial(self.target, self.source, back)

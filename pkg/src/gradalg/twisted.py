"""Twisted group algebras over cyclotomic coefficient fields.

The algebra F^sigma[H] has basis {eta_x : x in H} and multiplication
eta_x eta_y = sigma(x, y) eta_{xy}.  H sits inside an ambient group G and
the basis element eta_x is homogeneous of degree x, so the algebra is
G-graded with support H.  Cocycle values are roots of unity realized
inside an explicit cyclotomic field.
"""

from __future__ import annotations

from . import fieldlin
from .cocycles import is_cocycle, trivial_cocycle
from .cyclo import cyclo_field
from .errors import (
    DomainMismatch,
    FieldMismatch,
    NotACocycle,
    ZeroElement,
)
from .graded import GradedElement
from .groups import same_subgroup


class TwistedGroupAlgebra:
    """F^sigma[H], graded by the ambient group of H."""

    def __init__(self, subgroup, sigma=None, field=None):
        if sigma is None:
            sigma = trivial_cocycle(subgroup)
        if sigma.domain != subgroup:
            raise DomainMismatch("cocycle is not defined on the given subgroup")
        if not is_cocycle(sigma):
            raise NotACocycle("multiplication table would not be associative")
        if field is None:
            field = cyclo_field(sigma.modulus)
        if field.modulus % sigma.modulus != 0:
            raise FieldMismatch(
                f"field Q(zeta_{field.modulus}) cannot realize cocycle values "
                f"of order dividing {sigma.modulus}")
        self.subgroup = subgroup
        self.sigma = sigma
        self.field = field
        self._member_set = frozenset(subgroup.members)

    @property
    def ambient(self):
        return self.subgroup.parent

    @property
    def dim(self):
        return self.subgroup.order

    def basis_keys(self):
        return self.subgroup.members

    def degree_of_key(self, key):
        return key

    def support(self):
        return self._member_set

    def sigma_value(self, x, y):
        return self.sigma.value(self.field, x, y)

    def multiply_basis(self, x, y):
        return self.sigma_value(x, y), self.ambient.mul(x, y)

    # -- element constructors ---------------------------------------------

    def zero(self):
        return GradedElement(self, {})

    def one(self):
        e = 0
        return GradedElement(self, {e: self.sigma_value(e, e).inv()})

    def eta(self, x):
        """The basis element of degree x."""
        if x not in self._member_set:
            raise DomainMismatch(f"element {x} is not in the support subgroup")
        return GradedElement(self, {x: self.field.one()})

    basis_element = eta

    def element(self, mapping):
        for key in mapping:
            if key not in self._member_set:
                raise DomainMismatch(f"element {key} is not in the support subgroup")
        return GradedElement(self, mapping)

    def component_basis(self, g):
        """Basis of the degree-g component (empty outside the support)."""
        if g in self._member_set:
            return (self.eta(g),)
        return ()

    # -- structure ----------------------------------------------------------

    def homogeneous_inverse(self, elt):
        """Inverse of a nonzero homogeneous element.

        Every homogeneous component is one-dimensional and spanned by an
        invertible element, so this never fails on valid input.
        """
        if elt.algebra != self:
            raise DomainMismatch("element belongs to a different algebra")
        if elt.is_zero():
            raise ZeroElement("zero is not invertible")
        x = elt.degree()
        c = elt.terms[x]
        xinv = self.ambient.inv(x)
        scale = (c * self.sigma_value(x, xinv) * self.sigma_value(0, 0)).inv()
        return GradedElement(self, {xinv: scale})

    def with_field(self, field):
        """The same algebra with coefficients in a larger cyclotomic field."""
        if field.modulus == self.field.modulus:
            return self
        return TwistedGroupAlgebra(self.subgroup, self.sigma, field)

    def __eq__(self, other):
        if not isinstance(other, TwistedGroupAlgebra):
            return NotImplemented
        if self is other:
            return True
        return (same_subgroup(self.subgroup, other.subgroup)
                and self.sigma.modulus == other.sigma.modulus
                and bool((self.sigma.mat == other.sigma.mat).all())
                and self.field.modulus == other.field.modulus)

    __hash__ = None

    def __repr__(self):
        twist = "" if not any(any(row) for row in self.sigma.mat) else "^sigma"
        return (f"F{twist}[{self.ambient.name}:{self.subgroup.members}]"
                f"@Q(zeta_{self.field.modulus})")


def is_division_graded(algebra):
    """Whether every nonzero homogeneous element is invertible.

    Works for any finite-dimensional graded algebra exposing the basis
    interface.  Checks that the support is a subgroup and that every basis
    element has a two-sided inverse; a single failure settles the answer.
    """
    G = algebra.ambient
    support = algebra.support()
    if 0 not in support:
        return False
    for a in support:
        if G.inv(a) not in support:
            return False
        for b in support:
            if G.mul(a, b) not in support:
                return False

    field = algebra.field
    keys = list(algebra.basis_keys())
    index = {key: i for i, key in enumerate(keys)}
    n = len(keys)
    one_vec = [field.zero()] * n
    for key, c in algebra.one().terms.items():
        one_vec[index[key]] = c
    for key in keys:
        # rows of (key . x) in basis coordinates, columns over x
        rows = [[field.zero()] * n for _ in range(n)]
        for col, other in enumerate(keys):
            hit = algebra.multiply_basis(key, other)
            if hit is not None:
                coef, out = hit
                rows[index[out]][col] = coef
        x = fieldlin.solve_linear(rows, one_vec, field)
        if x is None:
            return False
        inv = GradedElement(algebra, {keys[i]: x[i] for i in range(n)})
        if inv * algebra.basis_element(key) != algebra.one():
            return False
    return True

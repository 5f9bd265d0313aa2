"""Graded matrix algebras M_k(F^sigma[H]) with an elementary grading.

The basis is {E_ij eta_zeta} with 1-based matrix indices; a degree tuple
theta of length k over the ambient group G makes E_ij eta_zeta homogeneous
of degree theta_i^-1 zeta theta_j.  Two tuples give isomorphic graded
algebras exactly when one is reachable from the other by permuting slots,
multiplying slots by subgroup elements, and a global normalizer shift;
that orbit test and the explicit regrading isomorphism live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .cocycles import conjugate_class
from .errors import (
    DomainMismatch,
    IndexOutOfRange,
    InvalidWitness,
    LengthMismatch,
    ValidationError,
)
from .graded import GradedElement, GradedMap
from .groups import normalizer
from .twisted import TwistedGroupAlgebra


class MatBasisElt(NamedTuple):
    i: int
    j: int
    zeta: int


class GradedMatrixAlgebra:
    """M_k(B) for a twisted group algebra B, graded by a degree tuple."""

    def __init__(self, base, theta):
        theta = tuple(int(t) for t in theta)
        if len(theta) < 1:
            raise ValidationError("degree tuple must have at least one entry")
        n = base.ambient.order
        for t in theta:
            if not (0 <= t < n):
                raise ValidationError(f"degree tuple entry {t} is not a group element")
        self.base = base
        self.theta = theta
        self.k = len(theta)
        self._degrees = None

    @property
    def subgroup(self):
        return self.base.subgroup

    @property
    def sigma(self):
        return self.base.sigma

    @property
    def field(self):
        return self.base.field

    @property
    def ambient(self):
        return self.base.ambient

    @property
    def dim(self):
        return self.k * self.k * self.subgroup.order

    def basis_keys(self):
        members = self.subgroup.members
        k = self.k
        return tuple(
            MatBasisElt(i, j, z)
            for i in range(1, k + 1) for j in range(1, k + 1) for z in members)

    @property
    def degrees(self):
        """Stored degree table, built once: key -> theta_i^-1 zeta theta_j."""
        if self._degrees is None:
            G = self.ambient
            th = self.theta
            self._degrees = {
                key: G.mul(G.mul(G.inv(th[key.i - 1]), key.zeta), th[key.j - 1])
                for key in self.basis_keys()
            }
        return self._degrees

    def degree_of_key(self, key):
        return self.degrees[key]

    def degree_of(self, i, j, zeta):
        if not (1 <= i <= self.k and 1 <= j <= self.k):
            raise IndexOutOfRange(f"matrix position ({i}, {j}) outside 1..{self.k}")
        if zeta not in self.base.support():
            raise DomainMismatch(f"element {zeta} is not in the support subgroup")
        return self.degrees[MatBasisElt(i, j, zeta)]

    def support(self):
        return frozenset(self.degrees.values())

    @property
    def theta_in_normalizer(self):
        """Whether every degree tuple entry normalizes the support subgroup."""
        N = set(normalizer(self.ambient, self.subgroup).members)
        return all(t in N for t in self.theta)

    def multiply_basis(self, key1, key2):
        if key1.j != key2.i:
            return None
        coef, prod = self.base.multiply_basis(key1.zeta, key2.zeta)
        return coef, MatBasisElt(key1.i, key2.j, prod)

    # -- element constructors ---------------------------------------------

    def zero(self):
        return GradedElement(self, {})

    def one(self):
        c = self.base.sigma_value(0, 0).inv()
        return GradedElement(
            self, {MatBasisElt(p, p, 0): c for p in range(1, self.k + 1)})

    def basis_element(self, key):
        key = MatBasisElt(*key)
        self.degree_of(key.i, key.j, key.zeta)
        return GradedElement(self, {key: self.field.one()})

    def element(self, mapping):
        for key in mapping:
            key = MatBasisElt(*key)
            self.degree_of(key.i, key.j, key.zeta)
        return GradedElement(self, {MatBasisElt(*k): v for k, v in mapping.items()})

    def component_basis(self, g):
        return tuple(
            self.basis_element(key) for key in self.basis_keys()
            if self.degrees[key] == g)

    # -- checks -------------------------------------------------------------

    def verify_grading(self):
        """Exhaustively check deg(ab) = deg(a) deg(b) against the stored table."""
        G = self.ambient
        keys = self.basis_keys()
        table = self.degrees
        missing = object()
        for key in keys:
            if table.get(key, missing) is missing:
                return False
        for k1 in keys:
            for k2 in keys:
                hit = self.multiply_basis(k1, k2)
                if hit is None:
                    continue
                _, out = hit
                if table.get(out, missing) != G.mul(table[k1], table[k2]):
                    return False
        return True

    def with_field(self, field):
        if field.modulus == self.field.modulus:
            return self
        return GradedMatrixAlgebra(self.base.with_field(field), self.theta)

    def __eq__(self, other):
        if not isinstance(other, GradedMatrixAlgebra):
            return NotImplemented
        return self.base == other.base and self.theta == other.theta

    __hash__ = None

    def __repr__(self):
        return f"M{self.k}({self.base!r}; theta={self.theta})"


@dataclass(frozen=True)
class LambdaWitness:
    """A regrading move: slot permutation alpha (1-based images), subgroup
    shifts xis, and a normalizer element delta.  Sends the degree tuple
    theta to tau with tau_j = delta xi_j theta_{alpha(j)}."""

    delta: int
    alpha: tuple
    xis: tuple

    def validate(self, algebra):
        k = algebra.k
        G = algebra.ambient
        if len(self.alpha) != k or sorted(self.alpha) != list(range(1, k + 1)):
            raise InvalidWitness("alpha is not a permutation of 1..k")
        if len(self.xis) != k:
            raise InvalidWitness("xis length does not match the matrix size")
        if any(x not in algebra.base.support() for x in self.xis):
            raise InvalidWitness("shift entries must lie in the support subgroup")
        N = normalizer(G, algebra.subgroup)
        if self.delta not in set(N.members):
            raise InvalidWitness("delta does not normalize the support subgroup")

    def target_tuple(self, algebra):
        G = algebra.ambient
        th = algebra.theta
        return tuple(
            G.mul(self.delta, G.mul(self.xis[j], th[self.alpha[j] - 1]))
            for j in range(algebra.k))


def _coset_reps(G, big_members, sub_members):
    """Smallest representative of each coset d*S inside the bigger subgroup."""
    seen = set()
    reps = []
    for d in big_members:
        if d in seen:
            continue
        reps.append(d)
        for h in sub_members:
            seen.add(G.mul(d, h))
    return reps


def _lexmin_matching(adj, n_targets):
    """Lexicographically smallest injective matching covering every source.

    adj[j] lists candidate targets in ascending order.  Greedy choice with a
    feasibility check (augmenting paths on the remaining sources) is exact.
    """
    k = len(adj)

    def rest_feasible(used, start):
        match_of = {}

        def try_assign(j, seen):
            for i in adj[j]:
                if i in used or i in seen:
                    continue
                seen.add(i)
                if i not in match_of or try_assign(match_of[i], seen):
                    match_of[i] = j
                    return True
            return False

        return all(try_assign(j, set()) for j in range(start, k))

    used = set()
    out = []
    for j in range(k):
        pick = None
        for i in adj[j]:
            if i in used:
                continue
            used.add(i)
            if rest_feasible(used, j + 1):
                pick = i
                break
            used.remove(i)
        if pick is None:
            return None
        out.append(pick)
    return out


def lambda_membership(target, algebra):
    """Decide whether the degree tuple target is a regrading of algebra's.

    Scans coset representatives delta of the support subgroup inside its
    normalizer; for each, slots match when target_j theta_i^-1 lands in
    delta H.  Returns the first witness in (delta, matching) order, or None.
    """
    G = algebra.ambient
    H = algebra.subgroup
    k = algebra.k
    target = tuple(int(t) for t in target)
    if len(target) != k:
        raise LengthMismatch(f"target tuple has {len(target)} entries, need {k}")
    for t in target:
        if not (0 <= t < G.order):
            raise ValidationError(f"target entry {t} is not a group element")
    members = set(H.members)
    N = normalizer(G, H)
    theta = algebra.theta
    for delta in _coset_reps(G, N.members, H.members):
        dinv = G.inv(delta)
        shifts = [
            [G.mul(dinv, G.mul(target[j], G.inv(theta[i]))) for i in range(k)]
            for j in range(k)
        ]
        adj = [[i for i in range(k) if shifts[j][i] in members] for j in range(k)]
        matching = _lexmin_matching(adj, k)
        if matching is None:
            continue
        witness = LambdaWitness(
            delta=delta,
            alpha=tuple(i + 1 for i in matching),
            xis=tuple(shifts[j][matching[j]] for j in range(k)))
        assert witness.target_tuple(algebra) == target
        return witness
    return None


def regrade_iso(algebra, witness):
    """The graded isomorphism attached to a regrading witness.

    Returns (target, phi) where target carries the degree tuple
    witness.target_tuple(algebra) and the cocycle conjugated by delta, and
    phi sends E_ij eta_zeta to a scalar multiple of one target basis
    element.  The scalar realizes the slot shifts as conjugation by an
    invertible homogeneous diagonal, so phi is a graded isomorphism.
    """
    witness.validate(algebra)
    G = algebra.ambient
    sigma = algebra.sigma
    field = algebra.field
    sv = algebra.base.sigma_value
    delta = witness.delta
    rho = conjugate_class(sigma, delta)
    target = GradedMatrixAlgebra(
        TwistedGroupAlgebra(algebra.subgroup, rho, field),
        witness.target_tuple(algebra))
    inv_alpha = {witness.alpha[j]: j + 1 for j in range(algebra.k)}
    norm = (sv(0, 0)).inv()
    assign = {}
    for key in algebra.basis_keys():
        a = inv_alpha[key.i]
        b = inv_alpha[key.j]
        xa = witness.xis[a - 1]
        xb = witness.xis[b - 1]
        xb_inv = G.inv(xb)
        left = G.mul(xa, key.zeta)
        coef = sv(xa, key.zeta) * sv(left, xb_inv) * (sv(xb, xb_inv)).inv() * norm
        assign[key] = (coef, MatBasisElt(a, b, G.conj(G.mul(left, xb_inv), delta)))
    return target, GradedMap.monomial(algebra, target, assign)

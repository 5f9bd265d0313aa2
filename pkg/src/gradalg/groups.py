"""Finite groups as validated multiplication tables, plus subgroup machinery.

Elements are identifiers 0..n-1 and 0 is always the neutral element; every
downstream module relies on that normalization. Groups are built from small
spec strings ("C4", "C2xC2", "D4", "Q8", "S3", products of those) or from an
explicit table, and are validated on construction.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import gcd

from .config import DEFAULT_ORDER_CAP
from .errors import NotASubgroup, OrderCapExceeded, SpecMalformed, TableInvalid


class FiniteGroup:
    """Immutable finite group given by its multiplication table."""

    def __init__(self, mul, name="G", labels=None, order_cap=DEFAULT_ORDER_CAP, _validated=False):
        mul = tuple(tuple(row) for row in mul)
        n = len(mul)
        if order_cap is not None and n > order_cap:
            raise OrderCapExceeded(f"group order {n} exceeds cap {order_cap}")
        self.order = n
        self.mul_table = mul
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise TableInvalid("labels length does not match order")
        if not _validated:
            self._validate()
        self.inv_table = self._build_inverses()
        self._cache = {}

    def _validate(self):
        n = self.order
        if n == 0:
            raise TableInvalid("empty table")
        for i, row in enumerate(self.mul_table):
            if len(row) != n:
                raise TableInvalid(f"row {i} has length {len(row)}, expected {n}")
            for v in row:
                if not (0 <= v < n):
                    raise TableInvalid(f"entry {v} out of range in row {i}")
        for x in range(n):
            if self.mul_table[0][x] != x or self.mul_table[x][0] != x:
                raise TableInvalid("element 0 is not neutral")
        for x in range(n):
            if 0 not in self.mul_table[x]:
                raise TableInvalid(f"element {x} has no right inverse")
        mul = self.mul_table
        for a in range(n):
            for b in range(n):
                ab = mul[a][b]
                row_ab = mul[ab]
                row_b = mul[b]
                row_a = mul[a]
                for c in range(n):
                    if row_ab[c] != row_a[row_b[c]]:
                        raise TableInvalid(f"associativity fails at ({a},{b},{c})")

    def _build_inverses(self):
        inv = [0] * self.order
        for x in range(self.order):
            inv[x] = self.mul_table[x].index(0)
        return tuple(inv)

    def mul(self, a, b):
        return self.mul_table[a][b]

    def inv(self, a):
        return self.inv_table[a]

    def conj(self, a, by):
        """Conjugate of a: by * a * by^-1."""
        return self.mul(self.mul(by, a), self.inv(by))

    def elements(self):
        return range(self.order)

    @property
    def is_abelian(self):
        if "abelian" not in self._cache:
            mul = self.mul_table
            self._cache["abelian"] = all(
                mul[a][b] == mul[b][a] for a in range(self.order) for b in range(a)
            )
        return self._cache["abelian"]

    def element_order(self, x):
        k, y = 1, x
        while y != 0:
            y = self.mul(y, x)
            k += 1
        return k

    @property
    def exponent(self):
        if "exponent" not in self._cache:
            e = 1
            for x in range(self.order):
                o = self.element_order(x)
                e = e * o // gcd(e, o)
            self._cache["exponent"] = e
        return self._cache["exponent"]

    @property
    def center(self):
        """Sorted tuple of central element identifiers."""
        if "center" not in self._cache:
            mul = self.mul_table
            self._cache["center"] = tuple(
                z for z in range(self.order)
                if all(mul[z][g] == mul[g][z] for g in range(self.order))
            )
        return self._cache["center"]

    def full_subgroup(self):
        return Subgroup(self, range(self.order))

    def trivial_subgroup(self):
        return Subgroup(self, (0,))

    def label_of(self, x):
        return self.labels[x]

    def element_by_label(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no element labelled {label!r} in {self.name}") from None

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


class Subgroup:
    """A subgroup of a parent group, stored as a sorted member tuple."""

    def __init__(self, parent: FiniteGroup, members, _validated=False):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        if not _validated:
            self._validate()
        self._pos = {m: i for i, m in enumerate(self.members)}
        self._cache = {}

    def _validate(self):
        if not self.members or self.members[0] != 0:
            raise NotASubgroup("subgroup must contain the neutral element 0")
        mem = set(self.members)
        for a in self.members:
            if not (0 <= a < self.parent.order):
                raise NotASubgroup(f"member {a} outside parent")
            if self.parent.inv(a) not in mem:
                raise NotASubgroup(f"member {a} has inverse outside the set")
            for b in self.members:
                if self.parent.mul(a, b) not in mem:
                    raise NotASubgroup(f"set not closed: {a}*{b} escapes")
        if self.parent.order % len(self.members):
            raise NotASubgroup("member count does not divide parent order")

    @property
    def order(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self._pos

    def __le__(self, other: "Subgroup"):
        if self.parent is not other.parent:
            return False
        return set(self.members) <= set(other.members)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.members == other.members
        )

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def position(self, x):
        """Index of ambient element x inside the sorted member list."""
        return self._pos[x]

    @property
    def exponent(self):
        if "exponent" not in self._cache:
            e = 1
            for x in self.members:
                o = self.parent.element_order(x)
                e = e * o // gcd(e, o)
            self._cache["exponent"] = e
        return self._cache["exponent"]

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group on identifiers 0..|H|-1 (member positions)."""
        if "as_group" not in self._cache:
            mem = self.members
            pos = self._pos
            table = [[pos[self.parent.mul(a, b)] for b in mem] for a in mem]
            labels = [self.parent.label_of(m) for m in mem]
            g = FiniteGroup(table, name=f"{self.parent.name}|{list(mem)}",
                            labels=labels, order_cap=None, _validated=True)
            self._cache["as_group"] = g
        return self._cache["as_group"]

    def is_central(self):
        if "central" not in self._cache:
            G = self.parent
            self._cache["central"] = all(
                G.mul(h, g) == G.mul(g, h) for h in self.members for g in range(G.order)
            )
        return self._cache["central"]

    def is_normal(self):
        if "normal" not in self._cache:
            G = self.parent
            mem = set(self.members)
            self._cache["normal"] = all(
                G.conj(h, g) in mem for h in self.members for g in range(G.order)
            )
        return self._cache["normal"]

    def __repr__(self):
        return f"Subgroup({self.parent.name}, {list(self.members)})"


@dataclass(frozen=True)
class RelationReport:
    subgroup: Subgroup
    is_normal: bool
    is_central: bool
    index: int
    transversal: tuple


# ---------------------------------------------------------------------------
# constructors

def _check_cap(n, order_cap):
    if order_cap is not None and n > order_cap:
        raise OrderCapExceeded(f"group order {n} exceeds cap {order_cap}")


def cyclic(n, order_cap=DEFAULT_ORDER_CAP):
    if n < 1:
        raise SpecMalformed("cyclic group needs order >= 1")
    _check_cap(n, order_cap)
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, name=f"C{n}", order_cap=order_cap, _validated=True)


def dihedral(n, order_cap=DEFAULT_ORDER_CAP):
    """Dihedral group of order 2n: rotations r^i (ids 0..n-1), reflections r^i s (ids n..2n-1)."""
    if n < 1:
        raise SpecMalformed("dihedral group needs n >= 1")
    _check_cap(2 * n, order_cap)

    def mul(x, y):
        a, e = x % n, x // n
        b, f = y % n, y // n
        if e == 0:
            return (a + b) % n + n * f
        return (a - b) % n + n * (1 - f)

    table = [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]
    labels = [f"r{i}" for i in range(n)] + [f"r{i}s" for i in range(n)]
    return FiniteGroup(table, name=f"D{n}", labels=labels, order_cap=order_cap)


_Q8_LABELS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
# basis products: (sign, basis) for e,i,j,k
_Q8_BASIS = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (2, 0): (1, 2), (3, 0): (1, 3),
    (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
    (1, 2): (1, 3), (2, 1): (-1, 3),
    (2, 3): (1, 1), (3, 2): (-1, 1),
    (3, 1): (1, 2), (1, 3): (-1, 2),
}


def quaternion8(order_cap=DEFAULT_ORDER_CAP):
    _check_cap(8, order_cap)

    def mul(x, y):
        bx, sx = x // 2, x % 2
        by, sy = y // 2, y % 2
        sign, basis = _Q8_BASIS[(bx, by)]
        neg = (sx + sy + (1 if sign < 0 else 0)) % 2
        return 2 * basis + neg

    table = [[mul(x, y) for y in range(8)] for x in range(8)]
    return FiniteGroup(table, name="Q8", labels=_Q8_LABELS, order_cap=order_cap)


def _cycle_label(perm):
    n = len(perm)
    seen = [False] * n
    parts = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        parts.append("(" + "".join(str(p + 1) for p in cyc) + ")")
    return "".join(parts) if parts else "e"


def symmetric(n, order_cap=DEFAULT_ORDER_CAP):
    """Sym(n) on points 1..n; elements are permutations in lexicographic order."""
    if not (1 <= n <= 5):
        raise SpecMalformed("symmetric group supported for 1 <= n <= 5")
    perms = sorted(itertools.permutations(range(n)))
    _check_cap(len(perms), order_cap)
    index = {p: i for i, p in enumerate(perms)}
    # mul(p, q) = p after q
    table = [
        [index[tuple(p[q[i]] for i in range(n))] for q in perms]
        for p in perms
    ]
    labels = [_cycle_label(p) for p in perms]
    return FiniteGroup(table, name=f"S{n}", labels=labels, order_cap=order_cap)


def product(*groups, order_cap=DEFAULT_ORDER_CAP):
    if not groups:
        raise SpecMalformed("empty product")
    if len(groups) == 1:
        return groups[0]
    n = 1
    for g in groups:
        n *= g.order
    _check_cap(n, order_cap)
    sizes = [g.order for g in groups]

    def decode(x):
        comps = []
        for size in reversed(sizes):
            comps.append(x % size)
            x //= size
        return tuple(reversed(comps))

    def encode(comps):
        x = 0
        for size, c in zip(sizes, comps):
            x = x * size + c
        return x

    def mul(x, y):
        cx, cy = decode(x), decode(y)
        return encode(tuple(g.mul(a, b) for g, a, b in zip(groups, cx, cy)))

    table = [[mul(x, y) for y in range(n)] for x in range(n)]
    labels = [
        "(" + ",".join(g.label_of(c) for g, c in zip(groups, decode(x))) + ")"
        for x in range(n)
    ]
    name = "x".join(g.name for g in groups)
    return FiniteGroup(table, name=name, labels=labels, order_cap=order_cap)


def from_table(mul, name="G", labels=None, order_cap=DEFAULT_ORDER_CAP):
    return FiniteGroup(mul, name=name, labels=labels, order_cap=order_cap)


_SPEC_ATOM = re.compile(r"^([CDS])(\d+)$|^(Q8)$")


def parse_spec(text, order_cap=DEFAULT_ORDER_CAP):
    """Build a group from a spec string: C<n>, D<n>, Q8, S<n>, joined by 'x' for products."""
    text = text.strip()
    if not text:
        raise SpecMalformed("empty group spec")
    factors = []
    for atom in text.split("x"):
        m = _SPEC_ATOM.match(atom.strip())
        if not m:
            raise SpecMalformed(f"unknown group spec atom {atom!r}")
        if m.group(3):
            factors.append(quaternion8(order_cap=None))
            continue
        fam, n = m.group(1), int(m.group(2))
        if fam == "C":
            factors.append(cyclic(n, order_cap=None))
        elif fam == "D":
            factors.append(dihedral(n, order_cap=None))
        else:
            factors.append(symmetric(n, order_cap=None))
    out = product(*factors, order_cap=order_cap) if len(factors) > 1 else factors[0]
    if order_cap is not None and out.order > order_cap:
        raise OrderCapExceeded(f"group order {out.order} exceeds cap {order_cap}")
    return out


# ---------------------------------------------------------------------------
# subgroup machinery

def closure(G: FiniteGroup, seed):
    """Smallest subgroup member set containing the seed."""
    mem = {0}
    frontier = list(set(seed) | {0})
    mem.update(frontier)
    while frontier:
        x = frontier.pop()
        for y in list(mem):
            for z in (G.mul(x, y), G.mul(y, x)):
                if z not in mem:
                    mem.add(z)
                    frontier.append(z)
        ix = G.inv(x)
        if ix not in mem:
            mem.add(ix)
            frontier.append(ix)
    return frozenset(mem)


def enumerate_subgroups(G: FiniteGroup):
    """All subgroups of G, sorted by size then lexicographic member list."""
    if "subgroups" in G._cache:
        return G._cache["subgroups"]
    found = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        base = frontier.pop()
        for x in range(1, G.order):
            if x in base:
                continue
            ext = closure(G, base | {x})
            if ext not in found:
                found.add(ext)
                frontier.append(ext)
    subs = [Subgroup(G, sorted(s), _validated=True) for s in found]
    subs.sort(key=lambda H: (H.order, H.members))
    G._cache["subgroups"] = subs
    return subs


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    if H.parent is not G:
        raise NotASubgroup("subgroup belongs to a different group")
    mem = set(H.members)
    norm = [d for d in range(G.order) if {G.conj(h, d) for h in H.members} == mem]
    return Subgroup(G, norm, _validated=True)


def left_transversal(G: FiniteGroup, H: Subgroup):
    """Left-coset representatives (cosets xH), smallest identifier per coset, in id order."""
    seen = [False] * G.order
    reps = []
    for x in range(G.order):
        if seen[x]:
            continue
        reps.append(x)
        for h in H.members:
            seen[G.mul(x, h)] = True
    return tuple(reps)


def subgroup_relations(G: FiniteGroup, H: Subgroup) -> RelationReport:
    if H.parent is not G:
        raise NotASubgroup("subgroup belongs to a different group")
    return RelationReport(
        subgroup=H,
        is_normal=H.is_normal(),
        is_central=H.is_central(),
        index=G.order // H.order,
        transversal=left_transversal(G, H),
    )


def all_subgroups_normal(G: FiniteGroup) -> bool:
    return all(H.is_normal() for H in enumerate_subgroups(G))


def conjugate_subgroup(H: Subgroup, d) -> Subgroup:
    """The subgroup d H d^-1 of the same parent."""
    G = H.parent
    return Subgroup(G, sorted(G.conj(h, d) for h in H.members), _validated=True)


def is_central_in(H: Subgroup, N: Subgroup) -> bool:
    """Whether every element of H commutes with every element of N (H, N same parent)."""
    G = H.parent
    return all(G.mul(h, x) == G.mul(x, h) for h in H.members for x in N.members)


def same_group(a: FiniteGroup, b: FiniteGroup) -> bool:
    """Structural equality: identical multiplication tables on the same id set.

    Groups loaded from separate files compare equal here even though they are
    distinct objects; labels and names are presentation only and ignored.
    """
    return a is b or (a.order == b.order and a.mul_table == b.mul_table)


def same_subgroup(h1: Subgroup, h2: Subgroup) -> bool:
    return same_group(h1.parent, h2.parent) and h1.members == h2.members

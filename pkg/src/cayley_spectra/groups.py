"""Finite groups as explicit multiplication tables over 0-based element indices."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

ASSOC_FULL_CHECK_LIMIT = 64
ASSOC_SAMPLE_FACTOR = 10


def _bits_of(mask: int) -> Iterator[int]:
    """Yield set bit positions of a nonnegative int, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Elements are the indices 0..order-1.  ``table[a][b]`` is the index of
    the product a*b.  Construction validates the group axioms: Latin
    square, two-sided identity, inverses, and associativity (checked on
    all triples up to order 64, on a random sample above that).
    """

    __slots__ = (
        "order",
        "table",
        "identity",
        "inverses",
        "names",
        "label",
        "_name_index",
        "_np_table",
        "_xyinv",
        "_orders",
        "_is_abelian",
        "_cell_cache",
    )

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        names: Optional[Sequence[str]] = None,
        label: Optional[str] = None,
        validate: bool = True,
    ) -> None:
        self.order = len(table)
        if self.order == 0:
            raise ValueError("group must have at least one element")
        self.table = tuple(tuple(row) for row in table)
        if names is None:
            names = [str(i) for i in range(self.order)]
        if len(names) != self.order:
            raise ValueError(f"expected {self.order} names, got {len(names)}")
        self.names = tuple(str(s) for s in names)
        self.label = label if label is not None else f"G{self.order}"
        self._name_index = {s: i for i, s in enumerate(self.names)}
        if len(self._name_index) != self.order:
            raise ValueError("element names must be distinct")
        self._np_table = None
        self._xyinv = None
        self._orders = None
        self._is_abelian = None
        self._cell_cache = None
        self.identity = self._find_identity()
        self.inverses = self._find_inverses()
        if validate:
            self._validate()

    # -- construction-time checks ------------------------------------

    def _find_identity(self) -> int:
        n = self.order
        full = list(range(n))
        for e in range(n):
            if list(self.table[e]) == full and all(self.table[x][e] == x for x in range(n)):
                return e
        raise ValueError("table has no two-sided identity")

    def _find_inverses(self) -> tuple:
        n, e = self.order, self.identity
        inv = [-1] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == e and self.table[b][a] == e:
                    inv[a] = b
                    break
            if inv[a] < 0:
                raise ValueError(f"element {a} has no two-sided inverse")
        return tuple(inv)

    def _validate(self) -> None:
        n = self.order
        ref = frozenset(range(n))
        for a in range(n):
            if frozenset(self.table[a]) != ref:
                raise ValueError(f"row {a} is not a permutation of the elements")
        for b in range(n):
            col = frozenset(self.table[a][b] for a in range(n))
            if col != ref:
                raise ValueError(f"column {b} is not a permutation of the elements")
        t = self.table
        if n <= ASSOC_FULL_CHECK_LIMIT:
            for a in range(n):
                ta = t[a]
                for b in range(n):
                    tab = t[ta[b]]
                    tb = t[b]
                    for c in range(n):
                        if tab[c] != ta[tb[c]]:
                            raise ValueError(f"associativity fails at ({a},{b},{c})")
        else:
            rng = random.Random(0xA55)
            for _ in range(ASSOC_SAMPLE_FACTOR * n * n):
                a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    raise ValueError(f"associativity fails at ({a},{b},{c})")

    # -- element arithmetic --------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, a: int, x: int) -> int:
        """a * x * a^-1."""
        return self.table[self.table[a][x]][self.inverses[a]]

    def element_order(self, a: int) -> int:
        if self._orders is None:
            self._orders = self._compute_orders()
        return self._orders[a]

    def _compute_orders(self) -> tuple:
        out = []
        for a in range(self.order):
            x, k = a, 1
            while x != self.identity:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    def order_profile(self) -> dict:
        """Map element order -> count, over all elements."""
        prof: dict = {}
        for a in range(self.order):
            o = self.element_order(a)
            prof[o] = prof.get(o, 0) + 1
        return prof

    def exponent(self) -> int:
        from math import lcm

        return lcm(*(self.element_order(a) for a in range(self.order)))

    @property
    def is_abelian(self) -> bool:
        if self._is_abelian is None:
            t = self.table
            n = self.order
            self._is_abelian = all(
                t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n)
            )
        return self._is_abelian

    def name_of(self, a: int) -> str:
        return self.names[a]

    def index_of(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise ValueError(f"no element named {name!r} in {self.label}") from None

    def elements(self) -> range:
        return range(self.order)

    # -- cached numpy views (used by the spectra engine) ---------------

    def np_table(self) -> np.ndarray:
        if self._np_table is None:
            self._np_table = np.array(self.table, dtype=np.int64)
        return self._np_table

    def xy_inv_table(self) -> np.ndarray:
        """Matrix M with M[x,y] = x * y^-1, used to build adjacency matrices."""
        if self._xyinv is None:
            t = self.np_table()
            self._xyinv = t[:, list(self.inverses)]
        return self._xyinv

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"


@dataclass(frozen=True)
class ElementSubset:
    """A subset of a group's elements, stored as a bitmask over indices."""

    group: FiniteGroup
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.group.order:
            raise ValueError(f"bitmask 0x{self.bits:x} out of range for order {self.group.order}")

    @classmethod
    def of(cls, group: FiniteGroup, elems: Iterable[int]) -> "ElementSubset":
        bits = 0
        for x in elems:
            if not 0 <= x < group.order:
                raise ValueError(f"element index {x} out of range")
            bits |= 1 << x
        return cls(group, bits)

    @classmethod
    def from_names(cls, group: FiniteGroup, names: Iterable[str]) -> "ElementSubset":
        return cls.of(group, (group.index_of(s) for s in names))

    def members(self) -> list:
        return list(_bits_of(self.bits))

    def member_names(self) -> list:
        return [self.group.names[i] for i in _bits_of(self.bits)]

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return _bits_of(self.bits)


def closure(group: FiniteGroup, subset: ElementSubset | int) -> ElementSubset:
    """Smallest subgroup containing the given elements.

    Closes the set {identity} | S | S^-1 under products; for a finite
    group that fixed point is a subgroup.
    """
    bits = subset if isinstance(subset, int) else subset.bits
    t = group.table
    members = [group.identity]
    mask = 1 << group.identity
    for a in _bits_of(bits):
        for x in (a, group.inverses[a]):
            if not mask >> x & 1:
                mask |= 1 << x
                members.append(x)
    i = 0
    while i < len(members):
        a = members[i]
        i += 1
        for b in members[:i]:
            for p in (t[a][b], t[b][a]):
                if not mask >> p & 1:
                    mask |= 1 << p
                    members.append(p)
    return ElementSubset(group, mask)


def is_subgroup(group: FiniteGroup, subset: ElementSubset | int) -> bool:
    """True iff the subset is nonempty, product-closed and inverse-closed
    and contains the identity."""
    bits = subset if isinstance(subset, int) else subset.bits
    if not bits >> group.identity & 1:
        return False
    members = list(_bits_of(bits))
    t = group.table
    for a in members:
        if not bits >> group.inverses[a] & 1:
            return False
        ta = t[a]
        for b in members:
            if not bits >> ta[b] & 1:
                return False
    return True


def is_normal(group: FiniteGroup, subset: ElementSubset | int) -> bool:
    bits = subset if isinstance(subset, int) else subset.bits
    if not is_subgroup(group, bits):
        return False
    for a in group.elements():
        for x in _bits_of(bits):
            if not bits >> group.conj(a, x) & 1:
                return False
    return True


def quotient(group: FiniteGroup, nsub: ElementSubset | int) -> tuple:
    """Quotient by a normal subgroup.

    Returns (quotient group, projection) where projection[x] is the coset
    index of element x.  Cosets are indexed in order of their least
    element, so the identity coset is index 0.  Raises ValueError if the
    subset is not a normal subgroup.
    """
    bits = nsub if isinstance(nsub, int) else nsub.bits
    if not is_normal(group, bits):
        raise ValueError("quotient requires a normal subgroup")
    n = group.order
    t = group.table
    nmembers = list(_bits_of(bits))
    proj = [-1] * n
    reps = []
    for x in range(n):
        if proj[x] < 0:
            idx = len(reps)
            reps.append(x)
            for h in nmembers:
                proj[t[h][x]] = idx
    q = len(reps)
    qtable = [[proj[t[reps[i]][reps[j]]] for j in range(q)] for i in range(q)]
    qnames = [f"[{group.names[r]}]" for r in reps]
    qgroup = FiniteGroup(qtable, qnames, label=f"{group.label}/N{len(nmembers)}")
    return qgroup, tuple(proj)


def derived_subgroup(group: FiniteGroup) -> ElementSubset:
    """Subgroup generated by all commutators [a,b] = a b a^-1 b^-1."""
    t = group.table
    inv = group.inverses
    comms = 0
    for a in group.elements():
        for b in group.elements():
            c = t[t[t[a][b]][inv[a]]][inv[b]]
            comms |= 1 << c
    return closure(group, comms)


def is_perfect(group: FiniteGroup) -> bool:
    return len(derived_subgroup(group)) == group.order


def center(group: FiniteGroup) -> ElementSubset:
    t = group.table
    bits = 0
    for a in group.elements():
        if all(t[a][b] == t[b][a] for b in group.elements()):
            bits |= 1 << a
    return ElementSubset(group, bits)


def conjugate_subset(group: FiniteGroup, a: int, subset: ElementSubset) -> ElementSubset:
    """The set a S a^-1."""
    bits = 0
    for x in subset:
        bits |= 1 << group.conj(a, x)
    return ElementSubset(group, bits)


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Direct product with index convention (a, b) -> a * |g2| + b."""
    n1, n2 = g1.order, g2.order
    n = n1 * n2
    t1, t2 = g1.table, g2.table
    table = [[0] * n for _ in range(n)]
    for a1 in range(n1):
        for a2 in range(n2):
            row = table[a1 * n2 + a2]
            ra1, ra2 = t1[a1], t2[a2]
            for b1 in range(n1):
                rb = ra1[b1] * n2
                for b2 in range(n2):
                    row[b1 * n2 + b2] = rb + ra2[b2]
    names = [f"{s1}.{s2}" for s1 in g1.names for s2 in g2.names]
    return FiniteGroup(table, names, label=f"{g1.label}x{g2.label}")


def extend_action_by_homomorphism(
    h: FiniteGroup, gen_images: Mapping[int, Sequence[int]]
) -> dict:
    """Extend permutation images of some h-elements to all of h.

    Requires the given elements to generate h; images are extended by
    phi(a*b) = phi(a) o phi(b) and checked for consistency on collisions.
    """
    known: dict = {h.identity: tuple(range(len(next(iter(gen_images.values())))))}
    for g, perm in gen_images.items():
        perm = tuple(perm)
        if g in known and known[g] != perm:
            raise ValueError(f"conflicting image for element {g}")
        known[g] = perm
    frontier = list(known)
    while frontier:
        nxt = []
        for a in frontier:
            pa = known[a]
            for b in list(known):
                pb = known[b]
                for prod, perm in (
                    (h.mul(a, b), tuple(pa[pb[i]] for i in range(len(pa)))),
                    (h.mul(b, a), tuple(pb[pa[i]] for i in range(len(pa)))),
                ):
                    if prod in known:
                        if known[prod] != perm:
                            raise ValueError("images do not extend to a homomorphism")
                    else:
                        known[prod] = perm
                        nxt.append(prod)
        frontier = nxt
    if len(known) != h.order:
        raise ValueError("given elements do not generate the acting group")
    return known


def semidirect_product(
    n: FiniteGroup, h: FiniteGroup, action: Mapping[int, Sequence[int]]
) -> FiniteGroup:
    """Semidirect product N x| H.

    ``action`` maps h-elements to permutations of n's elements; images may
    be given for generators only and are extended by homomorphism.  Each
    permutation must be an automorphism of n.  Index convention:
    (a, s) -> a * |H| + s.
    """
    full_action = extend_action_by_homomorphism(h, action)
    nn, nh = n.order, h.order
    for s, perm in full_action.items():
        if sorted(perm) != list(range(nn)):
            raise ValueError(f"action of h-element {s} is not a permutation of N")
        if perm[n.identity] != n.identity:
            raise ValueError(f"action of h-element {s} does not fix the identity")
        for a in range(nn):
            for b in range(nn):
                if perm[n.mul(a, b)] != n.mul(perm[a], perm[b]):
                    raise ValueError(f"action of h-element {s} is not an automorphism")
    size = nn * nh
    table = [[0] * size for _ in range(size)]
    for a in range(nn):
        for s in range(nh):
            row = table[a * nh + s]
            phi = full_action[s]
            for b in range(nn):
                left = n.mul(a, phi[b]) * nh
                hs = h.table[s]
                for t_ in range(nh):
                    row[b * nh + t_] = left + hs[t_]
    names = [f"{sa}.{ss}" for sa in n.names for ss in h.names]
    return FiniteGroup(table, names, label=f"{n.label}:{h.label}")


def subgroup_group(group: FiniteGroup, subset: ElementSubset | int) -> tuple:
    """Reindex a subgroup as its own FiniteGroup.

    Returns (subgroup as group, embedding) where embedding[i] is the index
    in the parent of the i-th subgroup element.  Names are inherited.
    """
    bits = subset if isinstance(subset, int) else subset.bits
    if not is_subgroup(group, bits):
        raise ValueError("subset is not a subgroup")
    embed = list(_bits_of(bits))
    back = {x: i for i, x in enumerate(embed)}
    table = [[back[group.table[a][b]] for b in embed] for a in embed]
    names = [group.names[x] for x in embed]
    sub = FiniteGroup(table, names, label=f"{group.label}<{len(embed)}>")
    return sub, tuple(embed)


def subgroups_up_to_two_generators(group: FiniteGroup) -> list:
    """All subgroups generated by at most two elements, as bitmasks.

    For groups whose subgroups are all 2-generated (e.g. S4) this is the
    complete subgroup family; callers can verify closure under adding a
    third generator with `closure`.
    """
    masks = {closure(group, 0).bits}
    singles = {}
    for a in group.elements():
        m = closure(group, 1 << a).bits
        singles[a] = m
        masks.add(m)
    for a in group.elements():
        for b in range(a + 1, group.order):
            if singles[b] >> a & 1 or singles[a] >> b & 1:
                continue
            masks.add(closure(group, (1 << a) | (1 << b)).bits)
    return sorted(masks)

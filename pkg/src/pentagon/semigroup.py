"""Finite semigroups as Cayley tables on {0, ..., n-1}."""
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _permutations
from itertools import product

import numpy as np

from . import kernels
from .errors import (
    NotAGroup,
    NotAssociative,
    NotNormal,
    OrderTooLarge,
    OutOfRangeEntry,
)

MAX_CANONICAL_ORDER = 7
MAX_PARTITION_ORDER = 7


def frozen_array(values, ndim=None):
    arr = np.array(values, dtype=np.int64)
    if ndim is not None and arr.ndim != ndim:
        raise OutOfRangeEntry(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


class CayleyTable:
    """An associative multiplication table; ``table[x, y]`` is ``x * y``.

    Build through :func:`validate_table` unless the table is known to be
    associative.
    """

    __slots__ = ("table",)

    def __init__(self, table):
        self.table = frozen_array(table, ndim=2)

    @property
    def order(self):
        return self.table.shape[0]

    def mul(self, x, y):
        return int(self.table[x, y])

    def product(self, *xs):
        acc = xs[0]
        for x in xs[1:]:
            acc = self.table[acc, x]
        return int(acc)

    def __eq__(self, other):
        return isinstance(other, CayleyTable) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.order, self.table.tobytes()))

    def __repr__(self):
        return f"CayleyTable({self.table.tolist()})"

    def tolist(self):
        return self.table.tolist()


def validate_table(order, raw_table):
    """Check shape, range and associativity; return a :class:`CayleyTable`."""
    arr = np.asarray(raw_table)
    if arr.shape != (order, order):
        raise OutOfRangeEntry(f"table must be {order}x{order}, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise OutOfRangeEntry("table entries must be integers")
    bad = np.argwhere((arr < 0) | (arr >= order))
    if len(bad):
        x, y = bad[0]
        raise OutOfRangeEntry(f"table[{x}][{y}] = {arr[x, y]} outside 0..{order - 1}")
    x, y, z = kernels.first_nonassociative(arr)
    if x >= 0:
        raise NotAssociative(x, y, z)
    return CayleyTable(arr)


# ---------------------------------------------------------------- relabeling

@lru_cache(maxsize=None)
def permutations(n):
    """All permutations of range(n) in lexicographic order, with their inverses."""
    if n > MAX_CANONICAL_ORDER:
        raise OrderTooLarge(f"relabeling scans are limited to order {MAX_CANONICAL_ORDER}")
    perms = np.array(list(_permutations(range(n))), dtype=np.int64).reshape(-1, n)
    invs = np.argsort(perms, axis=1).astype(np.int64)
    perms.setflags(write=False)
    invs.setflags(write=False)
    return perms, invs


def relabel_layer(layer, perm):
    """Transport a binary operation along ``perm``: new[p[i], p[j]] = p[old[i, j]]."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.argsort(perm)
    return perm[np.asarray(layer)[np.ix_(inv, inv)]]


def relabel(S, perm):
    return CayleyTable(relabel_layer(S.table, perm))


def canonical_form(S):
    """Lexicographically least relabeling of ``S`` and the permutation producing it.

    Two tables are isomorphic iff their canonical tables are equal.
    """
    n = S.order
    perms, invs = permutations(n)
    best, k, _ = kernels.canonical_layers(S.table[None], perms, invs)
    return CayleyTable(best.reshape(n, n)), perms[k].copy()


def canonical_key(S):
    return canonical_form(S)[0].table.tobytes()


def isomorphism(S, T):
    """A permutation psi with psi(xy) = psi(x)psi(y), or None."""
    if S.order != T.order:
        return None
    cs, p = canonical_form(S)
    ct, q = canonical_form(T)
    if cs != ct:
        return None
    return np.argsort(q)[p]


def automorphisms(S):
    perms, _ = permutations(S.order)
    t = S.table
    return [p.copy() for p in perms if np.array_equal(p[t], t[np.ix_(p, p)])]


def anti(S):
    """The opposite semigroup, x *op y = y * x."""
    return CayleyTable(S.table.T)


# -------------------------------------------------------------- maps on X

def is_homomorphism(S, T, f):
    f = np.asarray(f)
    return bool(np.array_equal(f[S.table], T.table[np.ix_(f, f)]))


def endomorphisms(S, idempotent_only=False):
    """All semigroup endomorphisms of ``S`` (brute force over n^n maps)."""
    n = S.order
    if n > 7:
        raise OrderTooLarge("endomorphism scan limited to order 7")
    maps = np.array(list(product(range(n), repeat=n)), dtype=np.int64).reshape(-1, n)
    lhs = maps[:, S.table]
    rhs = S.table[maps[:, :, None], maps[:, None, :]]
    ok = (lhs == rhs).reshape(len(maps), -1).all(axis=1)
    if idempotent_only:
        ok &= (np.take_along_axis(maps, maps, axis=1) == maps).all(axis=1)
    return [m.copy() for m in maps[ok]]


def direct_product(S, T):
    """S x T with (a, u)(b, v) = (ab, uv); the pair (a, u) is element a * |T| + u."""
    n, m = S.order, T.order
    a, u = np.divmod(np.arange(n * m), m)
    table = S.table[a[:, None], a[None, :]] * m + T.table[u[:, None], u[None, :]]
    return CayleyTable(table)


def subsemigroup(S, elements):
    """Restriction of ``S`` to a closed subset, relabeled in sorted order."""
    elements = sorted(elements)
    index = {x: i for i, x in enumerate(elements)}
    sub = S.table[np.ix_(elements, elements)]
    try:
        return CayleyTable([[index[int(v)] for v in row] for row in sub]), elements
    except KeyError:
        raise OutOfRangeEntry(f"{elements} is not closed under the product") from None


# ------------------------------------------------------------------ analysis

@dataclass(frozen=True)
class LeftGroupWitness:
    """S = L x G with L left zero and G a group.

    ``left`` lists the idempotents (the left-zero factor), ``group`` the
    elements of e0 S for the least idempotent e0, and ``coords[x]`` gives
    the positions of x's components in those lists.
    """

    left: tuple
    group: tuple
    coords: np.ndarray

    def group_table(self, S):
        return subsemigroup(S, self.group)[0]


@dataclass(frozen=True)
class SemigroupFacts:
    idempotents: tuple
    identity: int | None
    is_monoid: bool
    is_group: bool
    is_commutative: bool
    is_cancellative: bool
    is_inverse: bool
    is_clifford: bool
    is_left_zero: bool
    is_left_group: bool
    inverses: tuple | None
    left_group: LeftGroupWitness | None


def _left_group(S, idem):
    t = S.table
    n = S.order
    if not idem:
        return None
    E = np.array(idem)
    if not np.all(t[np.ix_(E, E)] == E[:, None]):
        return None
    if not np.all(t[:, E] == np.arange(n)[:, None]):
        return None
    e0 = idem[0]
    group = tuple(sorted({int(v) for v in t[e0]}))
    gset = set(group)
    for g in group:
        if t[e0, g] != g or not any(t[g, h] == e0 for h in group):
            return None
    coords = np.empty((n, 2), dtype=np.int64)
    seen = set()
    for x in range(n):
        owners = [i for i, e in enumerate(idem) if t[e, x] == x]
        if len(owners) != 1 or int(t[e0, x]) not in gset:
            return None
        pair = (owners[0], group.index(int(t[e0, x])))
        coords[x] = pair
        seen.add(pair)
    if len(seen) != n or len(idem) * len(group) != n:
        return None
    for x in range(n):
        for y in range(n):
            xy = t[x, y]
            if coords[xy, 0] != coords[x, 0]:
                return None
            if group[coords[xy, 1]] != t[group[coords[x, 1]], group[coords[y, 1]]]:
                return None
    coords.setflags(write=False)
    return LeftGroupWitness(tuple(idem), group, coords)


def analyze(S):
    """Structural flags of ``S``, computed directly from the definitions."""
    t = S.table
    n = S.order
    rng = np.arange(n)
    idem = tuple(int(x) for x in rng if t[x, x] == x)
    identity = None
    for e in rng:
        if np.all(t[e] == rng) and np.all(t[:, e] == rng):
            identity = int(e)
            break
    commutative = bool(np.array_equal(t, t.T))
    cancellative = all(len(set(t[x])) == n and len(set(t[:, x])) == n for x in rng)
    is_group = identity is not None and all(
        any(t[x, y] == identity and t[y, x] == identity for y in rng) for x in rng
    )

    inverses = []
    for x in rng:
        cands = [int(y) for y in rng if t[t[x, y], x] == x and t[t[y, x], y] == y]
        if len(cands) != 1:
            inverses = None
            break
        inverses.append(cands[0])
    is_inverse = inverses is not None
    central = all(np.array_equal(t[e], t[:, e]) for e in idem)
    witness = _left_group(S, idem)
    return SemigroupFacts(
        idempotents=idem,
        identity=identity,
        is_monoid=identity is not None,
        is_group=is_group,
        is_commutative=commutative,
        is_cancellative=cancellative,
        is_inverse=is_inverse,
        is_clifford=is_inverse and central,
        is_left_zero=bool(np.all(t == rng[:, None])),
        is_left_group=witness is not None,
        inverses=tuple(inverses) if is_inverse else None,
        left_group=witness,
    )


# ---------------------------------------------------------------- congruences

@dataclass(frozen=True)
class Congruence:
    """A partition stored as class indices, numbered by first occurrence."""

    classes: tuple

    @classmethod
    def from_labels(cls, labels):
        relabel_map = {}
        return cls(tuple(relabel_map.setdefault(int(v), len(relabel_map)) for v in labels))

    @classmethod
    def from_blocks(cls, n, blocks):
        labels = [-1] * n
        for i, block in enumerate(blocks):
            for x in block:
                labels[x] = i
        if -1 in labels:
            raise ValueError("blocks do not cover the carrier")
        return cls.from_labels(labels)

    @property
    def order(self):
        return len(self.classes)

    def related(self, a, b):
        return self.classes[a] == self.classes[b]

    def blocks(self):
        out = {}
        for x, c in enumerate(self.classes):
            out.setdefault(c, []).append(x)
        return [tuple(out[c]) for c in sorted(out)]

    def class_of(self, x):
        return tuple(y for y, c in enumerate(self.classes) if c == self.classes[x])


def is_congruence(S, classes):
    c = np.asarray(classes)
    t = S.table
    # compatible iff the class of xy depends only on the classes of x and y
    seen = {}
    for x in range(S.order):
        for y in range(S.order):
            key = (c[x], c[y])
            val = c[t[x, y]]
            if seen.setdefault(key, val) != val:
                return False
    return True


def set_partitions(n):
    """Restricted growth strings of length n."""
    if n == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            yield from rec(prefix + [v], max(top, v))

    yield from rec([0], 0)


def enumerate_congruences(S):
    """All congruences of ``S``, by filtering every set partition."""
    if S.order > MAX_PARTITION_ORDER:
        raise OrderTooLarge(f"congruence enumeration limited to order {MAX_PARTITION_ORDER}")
    return [Congruence(p) for p in set_partitions(S.order) if is_congruence(S, p)]


def quotient(S, rho):
    """S / rho with classes numbered as in ``rho.classes``."""
    k = max(rho.classes) + 1
    t = np.empty((k, k), dtype=np.int64)
    reps = [blk[0] for blk in rho.blocks()]
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            t[i, j] = rho.classes[S.table[a, b]]
    return CayleyTable(t)


# --------------------------------------------------------------------- groups

def _require_group(G):
    facts = analyze(G)
    if not facts.is_group:
        raise NotAGroup("the table is not a group")
    return facts


def group_inverse(G, facts=None):
    facts = facts or _require_group(G)
    return np.array(facts.inverses, dtype=np.int64)


def is_normal_subgroup(G, K, facts=None):
    facts = facts or _require_group(G)
    K = set(K)
    t = G.table
    inv = facts.inverses
    if facts.identity not in K:
        return False
    if any(t[a, b] not in K for a in K for b in K):
        return False
    return all(t[t[g, k], inv[g]] in K for g in range(G.order) for k in K)


def normal_subgroups(G):
    """All normal subgroups, as frozensets, ordered by size then elements."""
    facts = _require_group(G)
    one = facts.identity
    others = [x for x in range(G.order) if x != one]
    found = []
    for mask in range(1 << len(others)):
        K = {one} | {x for i, x in enumerate(others) if mask >> i & 1}
        if is_normal_subgroup(G, K, facts):
            found.append(frozenset(K))
    return sorted(found, key=lambda K: (len(K), sorted(K)))


def cosets(G, K):
    """Right cosets Kx, each sorted, ordered by least element."""
    t = G.table
    out = []
    seen = set()
    for x in range(G.order):
        if x in seen:
            continue
        c = tuple(sorted({int(t[k, x]) for k in K}))
        seen.update(c)
        out.append(c)
    return out


def coset_representative_systems(G, K):
    """Yield (R, mu) for every choice of one representative per coset of K.

    ``mu[x]`` is the chosen representative of Kx.
    """
    facts = _require_group(G)
    if not is_normal_subgroup(G, K, facts):
        raise NotNormal(f"{sorted(K)} is not a normal subgroup")
    cs = cosets(G, K)
    for reps in product(*cs):
        mu = np.empty(G.order, dtype=np.int64)
        for c, r in zip(cs, reps):
            mu[list(c)] = r
        mu.setflags(write=False)
        yield frozenset(reps), mu

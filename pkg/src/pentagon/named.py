"""Small named semigroups with fixed labelings.

Labelings (the identity is 0 in every monoid):

* ``cyclic(n)``: Z_n, element k is the residue k.
* ``symmetric3()``: S_3, permutations of (0, 1, 2) in lexicographic order,
  so 0 is the identity and 1, 2, 5 are the transpositions.
* ``klein()``: Z2 x Z2 with (a, b) stored as 2a + b.
* ``clifford_monoid()``: M = {1, x, y}, x^2 = x, y^2 = x, xy = yx = y;
  labels 1 -> 0, x -> 1, y -> 2.
* ``idempotent_example_monoid()``: M = {1, a, b}, a^2 = a, ab = ba = a,
  b^2 = 1; labels 1 -> 0, a -> 1, b -> 2.
* ``chain_monoid()``: S = {1, x, y} commutative idempotent, xy = y;
  labels 1 -> 0, x -> 1, y -> 2.
* ``null_semigroup(n)``: xy = 0.
"""
from itertools import permutations

import numpy as np

from .semigroup import CayleyTable, direct_product, validate_table


def cyclic(n):
    r = np.arange(n)
    return CayleyTable((r[:, None] + r[None, :]) % n)


def left_zero(n):
    return CayleyTable(np.repeat(np.arange(n)[:, None], n, axis=1))


def right_zero(n):
    return CayleyTable(np.repeat(np.arange(n)[None, :], n, axis=0))


def null_semigroup(n):
    return CayleyTable(np.zeros((n, n), dtype=np.int64))


def trivial():
    return CayleyTable([[0]])


def symmetric3():
    return symmetric_group(3)


def symmetric_group(k):
    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (p * q)(i) = p(q(i))
    table = [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    return CayleyTable(table)


def sign(k, x):
    p = list(permutations(range(k)))[x]
    inversions = sum(1 for i in range(k) for j in range(i + 1, k) if p[i] > p[j])
    return -1 if inversions % 2 else 1


def klein():
    return direct_product(cyclic(2), cyclic(2))


def elementary_abelian(rank):
    G = trivial()
    for _ in range(rank):
        G = direct_product(G, cyclic(2))
    return G


def clifford_monoid():
    return validate_table(3, [[0, 1, 2], [1, 1, 2], [2, 2, 1]])


def idempotent_example_monoid():
    return validate_table(3, [[0, 1, 2], [1, 1, 1], [2, 1, 0]])


def chain_monoid():
    return validate_table(3, [[0, 1, 2], [1, 1, 2], [2, 2, 2]])


def two_element_semilattice_monoid():
    """T = {1, z}, z^2 = z; labels 1 -> 0, z -> 1."""
    return validate_table(2, [[0, 1], [1, 1]])


def groups_up_to(order):
    """One group per isomorphism type with 2 <= |G| <= ``order`` (order <= 6)."""
    out = {
        "Z2": cyclic(2), "Z3": cyclic(3), "Z4": cyclic(4), "Z2xZ2": klein(),
        "Z5": cyclic(5), "Z6": cyclic(6), "S3": symmetric3(),
    }
    return {k: G for k, G in out.items() if G.order <= order}

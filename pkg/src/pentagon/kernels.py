"""Hot loops: associativity, backtracking searches, canonical relabeling.

Every public kernel here takes and returns plain ``int64`` numpy arrays.
Cells of an ``n x n`` table are addressed row-major, ``k = x * n + y``, and
``-1`` marks an unassigned cell during search.
"""
import numpy as np

from ._accel import HAS_NUMBA, jit

# search filter bits
INVOLUTIVE = 1
IDEMPOTENT = 2
NONDEGENERATE = 4
BIJECTIVE = 8
COMMUTATIVE = 16
COCOMMUTATIVE = 32
E_INVARIANT = 64
E_FIXED = 128


# ---------------------------------------------------------------- associativity

@jit
def _first_nonassociative_loop(table):
    n = table.shape[0]
    for x in range(n):
        for y in range(n):
            xy = table[x, y]
            for z in range(n):
                if table[xy, z] != table[x, table[y, z]]:
                    return x, y, z
    return -1, -1, -1


def _first_nonassociative_np(table):
    bad = np.argwhere(table[table] != table[:, table])
    if len(bad) == 0:
        return -1, -1, -1
    x, y, z = bad[0]
    return int(x), int(y), int(z)


def first_nonassociative(table):
    """Lexicographically first triple with (xy)z != x(yz), or (-1, -1, -1)."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    if HAS_NUMBA:
        x, y, z = _first_nonassociative_loop(table)
        return int(x), int(y), int(z)
    return _first_nonassociative_np(table)


# ------------------------------------------------------------- semigroup search

@jit
def _assoc_cell_ok(t, n, a, b):
    # every triple (x, y, z) whose four cells are assigned and one of them is (a, b)
    # cells: (x,y), (xy,z), (y,z), (x,yz)
    v = t[a * n + b]
    # (x, y) = (a, b)
    for z in range(n):
        l = t[v * n + z]
        yz = t[b * n + z]
        if l >= 0 and yz >= 0:
            r = t[a * n + yz]
            if r >= 0 and l != r:
                return False
    # (xy, z) = (a, b)
    for x in range(n):
        for y in range(n):
            if t[x * n + y] == a:
                yz = t[y * n + b]
                if yz >= 0:
                    r = t[x * n + yz]
                    if r >= 0 and r != v:
                        return False
    # (y, z) = (a, b)
    for x in range(n):
        xy = t[x * n + a]
        if xy >= 0:
            l = t[xy * n + b]
            r = t[x * n + v]
            if l >= 0 and r >= 0 and l != r:
                return False
    # (x, yz) = (a, b)
    for y in range(n):
        xy = t[a * n + y]
        if xy < 0:
            continue
        for z in range(n):
            if t[y * n + z] == b:
                l = t[xy * n + z]
                if l >= 0 and l != v:
                    return False
    return True


@jit
def _grow(out, count):
    bigger = np.empty((out.shape[0] * 2, out.shape[1]), np.int64)
    bigger[:count] = out[:count]
    return bigger


@jit
def search_tables(n, prefix, stop):
    """All associative completions of ``prefix`` over cells ``len(prefix)..stop-1``.

    Returns an array of flattened partial tables (only the first ``stop``
    cells are meaningful).
    """
    N = n * n
    t = np.full(N, -1, np.int64)
    out = np.empty((64, N), np.int64)
    count = 0
    start = prefix.shape[0]
    for k in range(start):
        t[k] = prefix[k]
        if not _assoc_cell_ok(t, n, k // n, k % n):
            return out[:0]
    if start >= stop:
        out[0] = t
        return out[:1]
    k = start
    while k >= start:
        v = t[k] + 1
        t[k] = -1
        while v < n:
            t[k] = v
            if _assoc_cell_ok(t, n, k // n, k % n):
                break
            t[k] = -1
            v += 1
        if v >= n:
            k -= 1
            continue
        if k == stop - 1:
            if count == out.shape[0]:
                out = _grow(out, count)
            out[count] = t
            count += 1
        else:
            k += 1
            t[k] = -1
    return out[:count]


# ----------------------------------------------------------------- theta search

@jit
def _theta_cell_ok(table, th, n, a, b, flags, idem):
    v = th[a * n + b]
    ab = table[a, b]

    # (P1)  theta_x(y) * theta_{xy}(z) == theta_x(yz)
    # cell plays theta_x(y)
    for z in range(n):
        t2 = th[ab * n + z]
        t3 = th[a * n + table[b, z]]
        if t2 >= 0 and t3 >= 0 and table[v, t2] != t3:
            return False
    # cell plays theta_{xy}(z)
    for x in range(n):
        for y in range(n):
            if table[x, y] == a:
                t1 = th[x * n + y]
                t3 = th[x * n + table[y, b]]
                if t1 >= 0 and t3 >= 0 and table[t1, v] != t3:
                    return False
    # cell plays theta_x(yz)
    for y in range(n):
        t1 = th[a * n + y]
        if t1 < 0:
            continue
        ay = table[a, y]
        for z in range(n):
            if table[y, z] == b:
                t2 = th[ay * n + z]
                if t2 >= 0 and table[t1, t2] != v:
                    return False

    # (P2)  theta_{theta_x(y)}(theta_{xy}(w)) == theta_y(w)
    # cell plays theta_x(y)
    for w in range(n):
        t2 = th[ab * n + w]
        t4 = th[b * n + w]
        if t2 >= 0 and t4 >= 0:
            t3 = th[v * n + t2]
            if t3 >= 0 and t3 != t4:
                return False
    # cell plays theta_{xy}(w)
    for x in range(n):
        for y in range(n):
            if table[x, y] == a:
                t1 = th[x * n + y]
                t4 = th[y * n + b]
                if t1 >= 0 and t4 >= 0:
                    t3 = th[t1 * n + v]
                    if t3 >= 0 and t3 != t4:
                        return False
    # cell plays the outer theta_{theta_x(y)}(theta_{xy}(w))
    for x in range(n):
        for y in range(n):
            if th[x * n + y] == a:
                xy = table[x, y]
                for w in range(n):
                    if th[xy * n + w] == b:
                        t4 = th[y * n + w]
                        if t4 >= 0 and t4 != v:
                            return False
    # cell plays theta_y(w)
    for x in range(n):
        t1 = th[x * n + a]
        t2 = th[table[x, a] * n + b]
        if t1 >= 0 and t2 >= 0:
            t3 = th[t1 * n + t2]
            if t3 >= 0 and t3 != v:
                return False

    if flags == 0:
        return True

    if flags & INVOLUTIVE:
        # xy theta_x(y) == x  and  theta_{xy}(theta_x(y)) == y
        if table[ab, v] != a:
            return False
        t = th[ab * n + v]
        if t >= 0 and t != b:
            return False
        for x in range(n):
            for y in range(n):
                if table[x, y] == a and th[x * n + y] == b and v != y:
                    return False
    if flags & IDEMPOTENT:
        # xy theta_x(y) == xy  and  theta_{xy}(theta_x(y)) == theta_x(y)
        if table[ab, v] != ab:
            return False
        t = th[ab * n + v]
        if t >= 0 and t != v:
            return False
        for x in range(n):
            for y in range(n):
                if table[x, y] == a and th[x * n + y] == b and v != b:
                    return False
    if flags & NONDEGENERATE:
        for c in range(n):
            if c != b and th[a * n + c] == v:
                return False
    if flags & BIJECTIVE:
        for x in range(n):
            for y in range(n):
                if (x != a or y != b) and table[x, y] == ab and th[x * n + y] == v:
                    return False
    if flags & COMMUTATIVE:
        # theta_x == theta_{xy}
        for y in range(n):
            t = th[table[a, y] * n + b]
            if t >= 0 and t != v:
                return False
        for x in range(n):
            for y in range(n):
                if table[x, y] == a:
                    t = th[x * n + b]
                    if t >= 0 and t != v:
                        return False
    if flags & COCOMMUTATIVE:
        # x theta_y(z) == xz
        for x in range(n):
            if table[x, v] != table[x, b]:
                return False
        # theta_x(theta_y(z)) == theta_y(theta_x(z)); symmetric in x, y so two roles suffice
        for x in range(n):
            t1 = th[x * n + v]
            t2 = th[x * n + b]
            if t1 >= 0 and t2 >= 0:
                t3 = th[a * n + t2]
                if t3 >= 0 and t1 != t3:
                    return False
        for y in range(n):
            for z in range(n):
                if th[y * n + z] == b:
                    t2 = th[a * n + z]
                    if t2 >= 0:
                        t3 = th[y * n + t2]
                        if t3 >= 0 and t3 != v:
                            return False
    if flags & E_INVARIANT:
        if idem[b]:
            for e in range(n):
                if idem[e]:
                    t = th[a * n + e]
                    if t >= 0 and t != v:
                        return False
    if flags & E_FIXED:
        if idem[b] and v != b:
            return False
    return True


@jit
def search_thetas(table, idem, flags, prefix, stop):
    """Depth-first enumeration of theta cells ``len(prefix)..stop-1``.

    A candidate value is kept only if every (P1)/(P2)/filter instance that
    becomes fully assigned with it holds.  Returns flattened theta arrays.
    """
    n = table.shape[0]
    N = n * n
    th = np.full(N, -1, np.int64)
    out = np.empty((64, N), np.int64)
    count = 0
    start = prefix.shape[0]
    for k in range(start):
        th[k] = prefix[k]
        if not _theta_cell_ok(table, th, n, k // n, k % n, flags, idem):
            return out[:0]
    if start >= stop:
        out[0] = th
        return out[:1]
    k = start
    while k >= start:
        v = th[k] + 1
        th[k] = -1
        while v < n:
            th[k] = v
            if _theta_cell_ok(table, th, n, k // n, k % n, flags, idem):
                break
            th[k] = -1
            v += 1
        if v >= n:
            k -= 1
            continue
        if k == stop - 1:
            if count == out.shape[0]:
                out = _grow(out, count)
            out[count] = th
            count += 1
        else:
            k += 1
            th[k] = -1
    return out[:count]


# ------------------------------------------------------------------ canonical

@jit
def _canonical_loop(layers, perms, invs):
    L, n = layers.shape[0], layers.shape[1]
    M = L * n * n
    best = np.empty(M, np.int64)
    cur = np.empty(M, np.int64)
    orig = layers.reshape(M)
    best_k = -1
    stab = 0
    for k in range(perms.shape[0]):
        p = perms[k]
        q = invs[k]
        # relabeled[l, i, j] = p[layers[l, q[i], q[j]]], compared lazily
        state = 0 if best_k >= 0 else -1  # -1 smaller, 0 equal so far, 1 larger
        same = True
        m = 0
        for l in range(L):
            for i in range(n):
                for j in range(n):
                    val = p[layers[l, q[i], q[j]]]
                    cur[m] = val
                    if same and val != orig[m]:
                        same = False
                    if state == 0:
                        if val < best[m]:
                            state = -1
                        elif val > best[m]:
                            state = 1
                    m += 1
        if same:
            stab += 1
        if state == -1:
            best[:] = cur
            best_k = k
    return best, best_k, stab


def _canonical_np(layers, perms, invs):
    L, n = layers.shape[0], layers.shape[1]
    m = perms.shape[0]
    rel = layers[:, invs[:, :, None], invs[:, None, :]]  # (L, m, n, n)
    rel = perms[np.arange(m)[None, :, None, None], rel]
    flat = rel.transpose(1, 0, 2, 3).reshape(m, L * n * n)
    order = np.lexsort(flat.T[::-1])
    k = int(order[0])
    stab = int(np.all(flat == layers.reshape(1, -1), axis=1).sum())
    return flat[k].copy(), k, stab


def canonical_layers(layers, perms, invs):
    """Lexicographic minimum of ``layers`` over simultaneous relabelings.

    ``layers`` has shape (L, n, n); every layer is relabeled by the same
    permutation p as ``new[p[i], p[j]] = p[old[i, j]]``.  Returns the
    minimal flattened array, the index of the first permutation reaching it,
    and the number of permutations fixing ``layers`` (automorphisms).
    """
    layers = np.ascontiguousarray(layers, dtype=np.int64)
    if HAS_NUMBA:
        best, k, stab = _canonical_loop(layers, perms, invs)
        return best, int(k), int(stab)
    return _canonical_np(layers, perms, invs)


# ------------------------------------------------------------- batch checks

@jit
def _axioms_mask_loop(table, thetas):
    m, n = thetas.shape[0], table.shape[0]
    out = np.ones(m, np.bool_)
    for k in range(m):
        th = thetas[k]
        ok = True
        for x in range(n):
            if not ok:
                break
            for y in range(n):
                if not ok:
                    break
                xy = table[x, y]
                t1 = th[x, y]
                for z in range(n):
                    if table[t1, th[xy, z]] != th[x, table[y, z]]:
                        ok = False
                        break
                    if th[t1, th[xy, z]] != th[y, z]:
                        ok = False
                        break
        out[k] = ok
    return out


def _axioms_mask_np(table, thetas):
    n = table.shape[0]
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    xy, yz = table[x, y], table[y, z]
    t1 = thetas[:, x, y]
    t2 = thetas[:, xy, z]
    p1 = table[t1, t2] == thetas[:, x, yz]
    m = np.arange(thetas.shape[0])[:, None, None, None]
    p2 = thetas[m, t1, t2] == thetas[:, y, z]
    return (p1 & p2).reshape(len(thetas), -1).all(axis=1)


def axioms_mask(table, thetas):
    """Boolean mask over a batch of theta families: (P1) and (P2) both hold."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    thetas = np.ascontiguousarray(thetas, dtype=np.int64)
    if HAS_NUMBA:
        return _axioms_mask_loop(table, thetas)
    return _axioms_mask_np(table, thetas)


@jit
def _direct_mask_loop(first, second):
    # maps s_k(x, y) = (first[k, x, y], second[k, x, y]); check s23 s13 s12 == s12 s23
    m, n = first.shape[0], first.shape[1]
    out = np.ones(m, np.bool_)
    for k in range(m):
        f = first[k]
        g = second[k]
        ok = True
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    # left: s12 -> (a, b, z); s13 -> (c, b, d); s23 -> (c, e, h)
                    a = f[x, y]
                    b = g[x, y]
                    c = f[a, z]
                    d = g[a, z]
                    e = f[b, d]
                    h = g[b, d]
                    # right: s23 -> (x, p, r); s12 -> (u, w, r)
                    p = f[y, z]
                    r = g[y, z]
                    u = f[x, p]
                    w = g[x, p]
                    if c != u or e != w or h != r:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        out[k] = ok
    return out


def _direct_mask_np(first, second):
    n = first.shape[1]
    m = np.arange(first.shape[0])[:, None, None, None]
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    a, b = first[:, x, y], second[:, x, y]
    c, d = first[m, a, z], second[m, a, z]
    e, h = first[m, b, d], second[m, b, d]
    p, r = first[:, y, z], second[:, y, z]
    u, w = first[m, x, p], second[m, x, p]
    ok = (c == u) & (e == w) & (h == r)
    return ok.reshape(first.shape[0], -1).all(axis=1)


def direct_mask(first, second):
    """Boolean mask over a batch of maps X^2 -> X^2 satisfying the pentagon identity."""
    first = np.ascontiguousarray(first, dtype=np.int64)
    second = np.ascontiguousarray(second, dtype=np.int64)
    if HAS_NUMBA:
        return _direct_mask_loop(first, second)
    return _direct_mask_np(first, second)

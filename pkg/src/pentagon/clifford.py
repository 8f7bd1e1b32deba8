"""Clifford semigroups, congruence pairs, E(X)-invariant and E(X)-fixed solutions."""
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CompatibilityFailed,
    HypothesisFailed,
    MuConditionFailed,
    NotClifford,
    NotCongruencePair,
    PentagonError,
    QuotientNotGroup,
    TheoremViolation,
)
from .semigroup import Congruence, analyze, automorphisms, is_congruence, quotient, subsemigroup
from .solution import is_solution_isomorphism, solutions_isomorphic, verify_solution


@dataclass(frozen=True)
class CliffordStructure:
    """A Clifford semigroup as a semilattice of groups.

    ``groups[e]`` is G_e = {x : x x^-1 = e}; ``below[f]`` lists the
    idempotents e <= f; phi(f, e) maps G_f -> G_e by y -> e y.
    """

    semigroup: object
    idempotents: tuple
    inverses: tuple
    groups: dict
    component: tuple
    below: dict

    def leq(self, e, f):
        return e in self.below[f]

    def phi(self, f, e):
        if not self.leq(e, f):
            raise ValueError(f"phi_{{{f},{e}}} needs {e} <= {f}")
        t = self.semigroup.table
        return {y: int(t[e, y]) for y in self.groups[f]}

    def to_json(self):
        return {
            "idempotents": list(self.idempotents),
            "groups": {str(e): list(self.groups[e]) for e in self.idempotents},
            "phi": {
                f"{f},{e}": {str(k): v for k, v in self.phi(f, e).items()}
                for f in self.idempotents
                for e in self.below[f]
            },
        }


def _require_clifford(S):
    facts = analyze(S)
    if not facts.is_clifford:
        raise NotClifford("the semigroup is not Clifford")
    return facts


def clifford_structure(S):
    facts = _require_clifford(S)
    t = S.table
    inv = facts.inverses
    E = facts.idempotents
    comp = tuple(int(t[x, inv[x]]) for x in range(S.order))
    groups = {e: tuple(x for x in range(S.order) if comp[x] == e) for e in E}
    below = {f: tuple(e for e in E if t[e, f] == e and t[f, e] == e) for f in E}
    st = CliffordStructure(S, E, inv, groups, comp, below)

    for e in E:
        G = groups[e]
        if any(t[a, b] not in G for a in G for b in G) or any(t[e, a] != a for a in G):
            raise TheoremViolation(f"G_{e} is not a group with identity {e}")
    for x in range(S.order):
        for y in range(S.order):
            e, f = comp[x], comp[y]
            ef = int(t[e, f])
            if t[x, y] != t[t[ef, x], t[ef, y]]:
                raise TheoremViolation(f"product law fails at ({x}, {y})")
    for f in E:
        for e in below[f]:
            ph = st.phi(f, e)
            if any(ph[t[a, b]] != t[ph[a], ph[b]] for a in groups[f] for b in groups[f]):
                raise TheoremViolation(f"phi_{{{f},{e}}} is not a homomorphism")
            for g in below[e]:
                inner = st.phi(e, g)
                outer = st.phi(f, g)
                if any(inner[ph[y]] != outer[y] for y in groups[f]):
                    raise TheoremViolation("phi maps do not compose")
    return st


# ------------------------------------------------------------ basic solutions

def canonical_clifford_solutions(S):
    """I(x, y) = (xy, y), F(x, y) = (xy, y y^-1) and E_e(x, y) = (xy, e)."""
    facts = _require_clifford(S)
    n = S.order
    inv = np.array(facts.inverses)
    rng = np.arange(n)
    I = verify_solution(S, np.tile(rng, (n, 1)))
    F = verify_solution(S, np.tile(S.table[rng, inv], (n, 1)))
    Es = {e: verify_solution(S, np.full((n, n), e)) for e in facts.idempotents}
    for s in (I, F):
        if not invariance_flags(s)[1]:
            raise TheoremViolation("I and F should be E(X)-fixed")
    for s in Es.values():
        if not invariance_flags(s)[0]:
            raise TheoremViolation("E_e should be E(X)-invariant")
    return I, F, Es


def invariance_flags(s):
    """(E(X)-invariant, E(X)-fixed)."""
    E = list(analyze(s.semigroup).idempotents)
    th = s.theta[:, E]
    invariant = bool(np.all(th == th[:, :1]))
    fixed = bool(np.all(th == np.array(E)[None, :]))
    return invariant, fixed


# ----------------------------------------------------------- congruence pairs

@dataclass(frozen=True)
class CongruencePairData:
    """A normal subsemigroup K and a congruence tau on E(X) given by blocks."""

    K: frozenset
    tau: tuple = field(default=())

    def tau_related(self, e, f):
        return any(e in blk and f in blk for blk in self.tau)


def _inverse_facts(S):
    facts = analyze(S)
    if not facts.is_inverse:
        raise NotCongruencePair("the semigroup is not inverse")
    return facts


def check_congruence_pair(S, pair, facts=None):
    """Raise NotCongruencePair naming the first failed condition."""
    facts = facts or _inverse_facts(S)
    t = S.table
    inv = facts.inverses
    E = facts.idempotents
    K = pair.K
    covered = sorted(x for blk in pair.tau for x in blk)
    if covered != sorted(E):
        raise NotCongruencePair("tau must partition E(X)")
    if not set(E) <= K:
        raise NotCongruencePair("E(X) is not contained in K")
    for a in K:
        if inv[a] not in K:
            raise NotCongruencePair(f"{a} in K but its inverse is not")
        for k in K:
            if t[a, k] not in K:
                raise NotCongruencePair("K is not closed")
            if t[t[inv[a], k], a] not in K:
                raise NotCongruencePair(f"a^-1 K a not in K for a = {a}")
    for e in E:
        for f in E:
            if pair.tau_related(e, f):
                for g in E:
                    if not pair.tau_related(t[e, g], t[f, g]):
                        raise NotCongruencePair("tau is not a congruence on E(X)")
                for a in range(S.order):
                    if not pair.tau_related(t[t[inv[a], e], a], t[t[inv[a], f], a]):
                        raise NotCongruencePair("tau is not normal")
    for a in range(S.order):
        for e in E:
            if t[a, e] in K and pair.tau_related(e, t[inv[a], a]) and a not in K:
                raise NotCongruencePair(f"pair condition fails at a = {a}, e = {e}")


def rho_of_pair(S, pair, facts=None):
    facts = facts or _inverse_facts(S)
    t = S.table
    inv = facts.inverses
    n = S.order
    related = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in range(n):
            related[a, b] = pair.tau_related(t[inv[a], a], t[inv[b], b]) and t[a, inv[b]] in pair.K
    labels = [-1] * n
    nxt = 0
    for a in range(n):
        if labels[a] < 0:
            for b in range(n):
                if related[a, b]:
                    labels[b] = nxt
            nxt += 1
    rho = Congruence.from_labels(labels)
    for a in range(n):
        for b in range(n):
            if related[a, b] != rho.related(a, b):
                raise TheoremViolation("rho_(K, tau) is not an equivalence")
    return rho


def kernel_and_trace_of(S, rho, facts=None):
    facts = facts or _inverse_facts(S)
    E = facts.idempotents
    K = frozenset(x for x in range(S.order) if any(rho.related(x, e) for e in E))
    blocks = {}
    for e in E:
        blocks.setdefault(rho.classes[e], []).append(e)
    tau = tuple(tuple(b) for b in sorted(blocks.values()))
    return CongruencePairData(K, tau)


def congruence_from_pair(S, pair):
    """rho_(K, tau) = {(a, b) : (a^-1 a, b^-1 b) in tau, a b^-1 in K}."""
    facts = _inverse_facts(S)
    check_congruence_pair(S, pair, facts)
    rho = rho_of_pair(S, pair, facts)
    if not is_congruence(S, rho.classes):
        raise TheoremViolation("rho_(K, tau) is not compatible")
    back = kernel_and_trace_of(S, rho, facts)
    if back.K != pair.K or sorted(back.tau) != sorted(tuple(sorted(b)) for b in pair.tau):
        raise TheoremViolation("Ker/tr of rho_(K, tau) do not return (K, tau)")
    return rho


def kernel_and_trace(S, rho):
    """(Ker rho, tr rho), checked to be a congruence pair that rebuilds rho."""
    facts = _inverse_facts(S)
    pair = kernel_and_trace_of(S, rho, facts)
    try:
        check_congruence_pair(S, pair, facts)
    except NotCongruencePair as exc:
        raise TheoremViolation(f"(Ker, tr) is not a congruence pair: {exc}") from exc
    if rho_of_pair(S, pair, facts) != rho:
        raise TheoremViolation("rho_(Ker rho, tr rho) != rho")
    return pair


# --------------------------------------------------------- E(X)-invariant

def _quotient_group_check(S, rho):
    Q = quotient(S, rho)
    if not analyze(Q).is_group:
        raise QuotientNotGroup("S / rho is not a group")
    return Q


def construct_e_invariant(S, rho, R, mu=None):
    """s(x, y) = (xy, mu(x)^-1 mu(xy)) where mu picks the representative in R."""
    facts = _require_clifford(S)
    t = S.table
    inv = np.array(facts.inverses)
    if not is_congruence(S, rho.classes):
        raise PentagonError("rho is not a congruence")
    _quotient_group_check(S, rho)
    R = sorted(set(int(r) for r in R))
    if sorted(rho.classes[r] for r in R) != sorted(set(rho.classes)):
        raise PentagonError("R is not a system of representatives of S / rho")
    rep = {rho.classes[r]: r for r in R}
    expected = np.array([rep[c] for c in rho.classes], dtype=np.int64)
    if mu is None:
        mu = expected
    mu = np.asarray(mu, dtype=np.int64)
    if not np.array_equal(mu, expected):
        raise PentagonError("mu(x) must be the representative of the class of x")
    for x in range(S.order):
        for y in range(S.order):
            m = mu[t[x, y]]
            if t[t[mu[x], inv[mu[x]]], m] != m:
                raise MuConditionFailed((x, y))
    theta = t[inv[mu][:, None], mu[t]]
    s = verify_solution(S, theta)
    if not invariance_flags(s)[0]:
        raise TheoremViolation("constructed solution is not E(X)-invariant")
    return s


@dataclass(frozen=True)
class EInvariantData:
    pair: CongruencePairData
    rho: Congruence
    representatives: dict   # e -> theta_e(X)
    theta_e_agree: bool     # theta_e == theta_f for all idempotents e, f


def extract_e_invariant_data(s):
    """Congruence pair (K, E x E) and representative systems theta_e(X)."""
    S = s.semigroup
    facts = _require_clifford(S)
    t = S.table
    inv = np.array(facts.inverses)
    E = facts.idempotents
    if not invariance_flags(s)[0]:
        raise PentagonError("solution is not E(X)-invariant")
    th = s.theta
    Eset = set(E)
    K = frozenset(x for x in range(S.order) if all(int(th[e, x]) in Eset for e in E))
    pair = CongruencePairData(K, (tuple(E),))
    try:
        check_congruence_pair(S, pair, facts)
        rho = rho_of_pair(S, pair, facts)
        if not is_congruence(S, rho.classes):
            raise TheoremViolation("rho_(K, tau) is not a congruence")
        _quotient_group_check(S, rho)
    except (NotCongruencePair, QuotientNotGroup) as exc:
        raise TheoremViolation(str(exc)) from exc
    reps = {}
    for e in E:
        te = th[e]
        image = frozenset(int(v) for v in te)
        if sorted(rho.classes[r] for r in image) != sorted(set(rho.classes)):
            raise TheoremViolation(f"theta_{e}(X) is not a representative system")
        for x in range(S.order):
            if not rho.related(int(te[x]), x):
                raise TheoremViolation(f"(theta_{e}({x}), {x}) not in rho")
            for y in range(S.order):
                m = te[t[x, y]]
                if t[t[te[x], inv[te[x]]], m] != m:
                    raise TheoremViolation(f"mu-condition fails for theta_{e}")
        rebuilt = t[inv[te][:, None], te[t]]
        if not np.array_equal(rebuilt, th):
            raise TheoremViolation(f"theta_x(y) != theta_{e}(x)^-1 theta_{e}(xy)")
        reps[e] = image
    agree = all(np.array_equal(th[e], th[E[0]]) for e in E)
    return EInvariantData(pair, rho, reps, agree)


def e_invariant_isomorphic(s, t):
    """psi in Aut(S) with psi theta_e = eta_psi(e) psi for all idempotents e, or None.

    Both solutions must live on the same table; the answer is cross-checked
    against the general isomorphism test.
    """
    if not np.array_equal(s.table, t.table):
        raise PentagonError("both solutions must be on the same semigroup table")
    E = list(analyze(s.semigroup).idempotents)
    found = None
    for psi in automorphisms(s.semigroup):
        if all(np.array_equal(psi[s.theta[e]], t.theta[psi[e]][psi]) for e in E):
            found = psi
            break
    general = solutions_isomorphic(s, t)
    if (found is None) != (general is None):
        raise TheoremViolation("idempotent-restricted and general isomorphism tests disagree")
    if found is not None and not is_solution_isomorphism(s, t, found):
        raise TheoremViolation("restricted isomorphism is not a solution isomorphism")
    return found


# ------------------------------------------------------------- E(X)-fixed

def default_epsilon(st):
    """eps_{e,f} = phi_{e,f} when f <= e, the constant map onto f otherwise."""
    eps = {}
    for e in st.idempotents:
        for f in st.idempotents:
            if st.leq(f, e):
                eps[e, f] = st.phi(e, f)
            else:
                eps[e, f] = {x: f for x in st.groups[e]}
    return eps


def glue_e_fixed(S, group_thetas, epsilon):
    """Glue per-group solutions theta^[e] on G_e into an E(X)-fixed solution.

    ``group_thetas[e]`` is an n x n array read on G_e x G_e;
    ``epsilon[e, f]`` maps each x in G_e into G_f (dict or length-n array).
    theta_x(y) = theta^[f]_{eps_{e,f}(x)}(y) for x in G_e, y in G_f.
    """
    st = clifford_structure(S)
    t = S.table
    E = st.idempotents
    G = st.groups
    eps = {k: {x: int(v[x]) for x in G[k[0]]} for k, v in epsilon.items()}
    th = {e: np.asarray(group_thetas[e], dtype=np.int64) for e in E}

    for e in E:
        sub, elems = subsemigroup(S, G[e])
        idx = {x: i for i, x in enumerate(elems)}
        local = [[idx.get(int(th[e][a, b]), -1) for b in elems] for a in elems]
        if min(min(r) for r in local) < 0:
            raise CompatibilityFailed("theta^[e] leaves G_e", (e,))
        verify_solution(sub, local)
    for e in E:
        for f in E:
            if (e, f) not in eps:
                raise CompatibilityFailed("eps_{e,f} missing", (e, f))
            if any(v not in G[f] for v in eps[e, f].values()):
                raise CompatibilityFailed("eps_{e,f} leaves G_f", (e, f))
            if st.leq(f, e) and eps[e, f] != st.phi(e, f):
                raise CompatibilityFailed("eps_{e,f} == phi_{e,f} for e >= f", (e, f))

    for e in E:
        for f in E:
            ef = int(t[e, f])
            for h in E:
                Gh = list(G[h])
                for x in G[e]:
                    for y in G[f]:
                        lhs = th[h][eps[ef, h][int(t[x, y])], Gh]
                        rhs = th[h][int(t[eps[e, h][x], eps[f, h][y]]), Gh]
                        if not np.array_equal(lhs, rhs):
                            raise CompatibilityFailed("first gluing condition", (e, f, h, x, y))
                        left = eps[f, h][int(th[f][eps[e, f][x], y])]
                        right = int(th[h][eps[e, h][x], eps[f, h][y]])
                        if left != right:
                            raise CompatibilityFailed("second gluing condition", (e, f, h, x, y))

    n = S.order
    theta = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        e = st.component[x]
        for y in range(n):
            f = st.component[y]
            theta[x, y] = th[f][eps[e, f][x], y]
    s = verify_solution(S, theta)
    if not invariance_flags(s)[1]:
        raise TheoremViolation("glued solution is not E(X)-fixed")
    return s


def e_fixed_kernel(s, epsilon):
    """{a : theta_e(a) = a a^-1 for every idempotent e <= a a^-1}, checked to equal
    the union of the per-group kernels K_e = {a in G_e : theta_e(a) = e}.
    """
    S = s.semigroup
    st = clifford_structure(S)
    E = st.idempotents
    for e in E:
        for f in E:
            if st.leq(e, f) and int(epsilon[e, f][e]) != f:
                raise HypothesisFailed(f"eps_{{{e},{f}}}({e}) != {f}")
    group_thetas = {e: s.theta for e in E}
    try:
        rebuilt = glue_e_fixed(S, group_thetas, epsilon)
    except PentagonError as exc:
        raise HypothesisFailed(f"solution is not glued from these maps: {exc}") from exc
    if rebuilt != s:
        raise HypothesisFailed("solution is not glued from these maps")
    th = s.theta
    comp = st.component
    left = frozenset(
        a for a in range(S.order)
        if all(th[e, a] == comp[a] for e in st.below[comp[a]])
    )
    right = frozenset(a for e in E for a in st.groups[e] if th[e, a] == e)
    if left != right:
        raise TheoremViolation(f"kernel mismatch: {sorted(left)} vs {sorted(right)}")
    return left

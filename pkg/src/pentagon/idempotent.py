"""Idempotent solutions, monoid identities for theta, and the central-idempotent classification."""
from dataclasses import dataclass

import numpy as np

from .errors import ConditionFailed, IdempotentsNotCentral, PreconditionFailed, TheoremViolation
from .report import Report
from .semigroup import Congruence, analyze
from .solution import classify_properties, verify_solution


def _monoid_facts(S):
    facts = analyze(S)
    if not facts.is_monoid:
        raise PreconditionFailed("the semigroup is not a monoid")
    return facts


def _in_right_ideal(t, e, z):
    # z in eX
    return bool(np.any(t[e] == z))


def _in_left_ideal(t, e, z):
    # z in Xe
    return bool(np.any(t[:, e] == z))


def monoid_theta_checks(s):
    """The four theta identities every solution on a monoid satisfies."""
    S = s.semigroup
    facts = _monoid_facts(S)
    one = facts.identity
    t, th = S.table, s.theta
    E = set(facts.idempotents)
    n = S.order
    rng = range(n)
    r = Report("monoid theta identities")
    r.check_all("theta_x(1) in E(M)", ((int(th[x, one]) in E, (x,)) for x in rng))
    r.check_all(
        "theta_1 = theta_{theta_x(1)} theta_x",
        ((th[one, y] == th[th[x, one], th[x, y]], (x, y)) for x in rng for y in rng),
    )
    r.check_all(
        "theta_1(x) in theta_1(1) M",
        ((_in_right_ideal(t, th[one, one], th[one, x]), (x,)) for x in rng),
    )
    r.check_all(
        "theta_x = theta_{theta_1(x)} theta_x",
        ((th[x, y] == th[th[one, x], th[x, y]], (x, y)) for x in rng for y in rng),
    )
    return r


def _idempotent_map(row):
    return bool(np.array_equal(row[row], row))


def idempotent_theta_checks(s):
    """Identities forced on theta by s o s = s (with the monoid corollary when 1 exists)."""
    if not classify_properties(s).idempotent:
        raise PreconditionFailed("s is not idempotent")
    S = s.semigroup
    facts = analyze(S)
    t, th = S.table, s.theta
    n = S.order
    E = set(facts.idempotents)
    rng = range(n)
    r = Report("idempotent theta identities")
    for name in ("a", "b", "c", "d", "e", "f", "g"):
        r.checks[name] = None
    for e in facts.idempotents:
        for x in rng:
            if t[x, e] == x:
                te = th[x, e]
                r.check_all("a", [(_in_left_ideal(t, te, x), (e, x))])
                r.check_all("b", ((_in_left_ideal(t, te, th[y, x]), (e, x, y)) for y in rng))
                r.check_all("c", [(np.array_equal(th[e], th[e][th[x]]), (e, x))])
            if t[e, x] == x:
                v = th[e, x]
                r.check_all("d", [(int(v) in E, (e, x))])
                r.check_all("e", [(_in_left_ideal(t, v, x), (e, x))])
                r.check_all("f", ((_in_left_ideal(t, v, th[y, x]), (e, x, y)) for y in rng))
                r.check_all("g", [(_idempotent_map(th[x]), (e, x))])
    if facts.is_monoid:
        one = facts.identity
        r.check_all("theta_1(x) in E(M)", ((int(th[one, x]) in E, (x,)) for x in rng))
        r.check_all("theta_1(1) = 1", [(th[one, one] == one, (one,))])
        r.check_all("theta_x = theta_{theta_1(x)}", ((np.array_equal(th[x], th[th[one, x]]), (x,)) for x in rng))
        r.check_all("theta_1 = theta_1 theta_x", ((np.array_equal(th[one], th[one][th[x]]), (x,)) for x in rng))
        r.check_all("theta_x idempotent", ((_idempotent_map(th[x]), (x,)) for x in rng))
    return r


def _central_idempotent_facts(S):
    facts = _monoid_facts(S)
    t = S.table
    for e in facts.idempotents:
        if not np.array_equal(t[e], t[:, e]):
            raise IdempotentsNotCentral(f"idempotent {e} is not central")
    return facts


@dataclass(frozen=True)
class Theta1Data:
    mu: np.ndarray
    kernel: Congruence
    representatives: tuple


def theta1_homomorphism_data(s):
    """theta_1 as an idempotent monoid map into E(M), with its kernel."""
    if not classify_properties(s).idempotent:
        raise PreconditionFailed("s is not idempotent")
    S = s.semigroup
    facts = _central_idempotent_facts(S)
    one = facts.identity
    t, th = S.table, s.theta
    mu = th[one].copy()
    if mu[one] != one or not np.array_equal(mu[t], t[np.ix_(mu, mu)]):
        raise TheoremViolation("theta_1 is not a monoid homomorphism")
    if not _idempotent_map(mu) or not set(mu.tolist()) <= set(facts.idempotents):
        raise TheoremViolation("theta_1 is not an idempotent map into E(M)")
    kernel = Congruence.from_labels(mu.tolist())
    image = sorted(set(mu.tolist()))
    if sorted(kernel.classes[v] for v in image) != sorted(set(kernel.classes)):
        raise TheoremViolation("theta_1(M) is not a system of representatives")
    if not np.all(mu[th] == mu[None, :]):
        raise TheoremViolation("(theta_x(y), y) not in ker theta_1")
    return Theta1Data(mu, kernel, tuple(image))


@dataclass(frozen=True)
class IdempotentClassificationData:
    """mu: M -> E(M) and maps thetas[e] for e in the image of mu."""

    mu: np.ndarray
    thetas: dict


def check_idempotent_data(M, data):
    facts = _central_idempotent_facts(M)
    one = facts.identity
    t = M.table
    n = M.order
    mu = np.asarray(data.mu, dtype=np.int64)
    E = set(facts.idempotents)
    if mu.shape != (n,) or not set(mu.tolist()) <= E:
        raise ConditionFailed("mu maps into E(M)", ())
    if mu[one] != one:
        raise ConditionFailed("mu(1) = 1", (one,))
    for x in range(n):
        for y in range(n):
            if mu[t[x, y]] != t[mu[x], mu[y]]:
                raise ConditionFailed("mu is a homomorphism", (x, y))
    for x in range(n):
        if mu[mu[x]] != mu[x]:
            raise ConditionFailed("mu is idempotent", (x,))
        if t[x, mu[x]] != x:
            raise ConditionFailed("mu(x) is a right identity for x", (x,))
    image = sorted(set(mu.tolist()))
    if sorted(data.thetas) != image:
        raise ConditionFailed("thetas indexed by the image of mu", tuple(image))
    th = {e: np.asarray(data.thetas[e], dtype=np.int64) for e in image}
    if not np.array_equal(th[one], mu):
        raise ConditionFailed("theta_1 = mu", (one,))
    for e in image:
        for f in image:
            ef = int(t[e, f])
            if ef not in th:
                raise ConditionFailed("condition 1", (e, f))
            bad = np.nonzero(th[e] != th[e][th[ef]])[0]
            if len(bad):
                raise ConditionFailed("condition 1", (e, f, int(bad[0])))
        for x in range(n):
            h = int(mu[t[e, x]])
            j = int(mu[x])
            for y in range(n):
                if th[e][t[x, y]] != t[th[e][x], th[h][y]]:
                    raise ConditionFailed("condition 2", (e, x, y))
            ej = int(t[e, j])
            if ej not in th or th[ej][th[e][x]] != th[e][x]:
                raise ConditionFailed("condition 3", (e, x))
    return th


def construct_idempotent_central(M, data):
    """s(x, y) = (xy, theta_{mu(x)}(y))."""
    th = check_idempotent_data(M, data)
    mu = np.asarray(data.mu, dtype=np.int64)
    theta = np.stack([th[int(mu[x])] for x in range(M.order)])
    s = verify_solution(M, theta)
    if not classify_properties(s).idempotent:
        raise TheoremViolation("constructed solution is not idempotent")
    return s


def extract_idempotent_data(s):
    """mu = theta_1 and thetas[e] = theta_e; round-trips through the construction."""
    M = s.semigroup
    data1 = theta1_homomorphism_data(s)
    mu = data1.mu
    data = IdempotentClassificationData(mu, {e: s.theta[e].copy() for e in data1.representatives})
    try:
        rebuilt = construct_idempotent_central(M, data)
    except ConditionFailed as exc:
        raise TheoremViolation(f"extracted data fails: {exc}") from exc
    if rebuilt != s:
        raise TheoremViolation("construction does not reproduce the solution")
    return data

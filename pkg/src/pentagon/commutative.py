"""Commutative and cocommutative solutions."""
import numpy as np

from .report import Report
from .semigroup import analyze, is_homomorphism
from .solution import legs_agree


def commutativity_characterizations(s):
    """Compare the leg definitions with their element-wise characterizations.

    Each ``*_agree`` fact is True when the two sides give the same verdict.
    """
    S = s.semigroup
    t, th = S.table, s.theta
    n = S.order
    rng = range(n)
    facts = analyze(S)

    commutative = legs_agree(t, th, ["13", "12"], ["12", "13"])
    cocommutative = legs_agree(t, th, ["23", "13"], ["13", "23"])

    r = Report("commutativity characterizations")
    r.check_all("xzy = xyz", ((t[t[x, z], y] == t[t[x, y], z], (x, y, z)) for x in rng for y in rng for z in rng))
    r.check_all("theta_x = theta_xy", ((np.array_equal(th[x], th[t[x, y]]), (x, y)) for x in rng for y in rng))
    r.check_all("x theta_y(z) = xz", ((t[x, th[y, z]] == t[x, z], (x, y, z)) for x in rng for y in rng for z in rng))
    r.check_all(
        "theta_x theta_y = theta_y theta_x",
        ((np.array_equal(th[x][th[y]], th[y][th[x]]), (x, y)) for x in rng for y in rng),
    )
    comm_ids = r.checks["xzy = xyz"] is None and r.checks["theta_x = theta_xy"] is None
    cocomm_ids = r.checks["x theta_y(z) = xz"] is None and r.checks["theta_x theta_y = theta_y theta_x"] is None
    r.facts.update(
        commutative=commutative,
        cocommutative=cocommutative,
        commutative_agree=commutative == comm_ids,
        cocommutative_agree=cocommutative == cocomm_ids,
    )
    if facts.is_monoid or facts.is_clifford:
        gamma = th[0]
        constant = bool(np.all(th == gamma[None, :]))
        endo = constant and is_homomorphism(S, S, gamma) and bool(np.array_equal(gamma[gamma], gamma))
        predicted_comm = facts.is_commutative and endo
        predicted_cocomm = bool(np.all(th == np.arange(n)[None, :]))
        r.facts.update(
            structured_carrier=True,
            commutative_structure_agree=commutative == predicted_comm,
            cocommutative_identity_agree=cocommutative == predicted_cocomm,
        )
    else:
        r.facts["structured_carrier"] = False
    return r


def characterizations_consistent(report):
    return all(v for k, v in report.facts.items() if k.endswith("_agree"))

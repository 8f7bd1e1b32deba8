"""Exception types.  Everything raised on bad input derives from PentagonError."""


class PentagonError(ValueError):
    pass


class OutOfRangeEntry(PentagonError):
    pass


class NotAssociative(PentagonError):
    def __init__(self, x, y, z):
        super().__init__(f"(x*y)*z != x*(y*z) at (x, y, z) = ({x}, {y}, {z})")
        self.witness = (x, y, z)


class OrderTooLarge(PentagonError):
    pass


class NotAGroup(PentagonError):
    pass


class NotNormal(PentagonError):
    pass


class NotClifford(PentagonError):
    pass


class SolutionViolation(PentagonError):
    """A theta family failing (P1) or (P2).

    ``violations`` maps each failed axiom name to its lexicographically first
    witness, so callers see every failed axiom even though the raised type
    names only the first.
    """

    axiom = None

    def __init__(self, witness, violations=None):
        self.witness = tuple(witness)
        self.violations = dict(violations or {self.axiom: self.witness})
        super().__init__(f"{self.axiom} fails at {self.witness}")


class P1Violation(SolutionViolation):
    axiom = "P1"


class P2Violation(SolutionViolation):
    axiom = "P2"


class NotBijective(PentagonError):
    pass


class NotProductShaped(PentagonError):
    pass


class PreconditionFailed(PentagonError):
    pass


class ConditionFailed(PreconditionFailed):
    """A named identity of a construction fails; ``witness`` holds the arguments."""

    def __init__(self, name, witness):
        self.name = name
        self.witness = tuple(witness)
        super().__init__(f"{name} fails at {self.witness}")


class TheoremViolation(PentagonError):
    """A structural consequence of a verified solution did not hold (internal error)."""


class SchemaError(PentagonError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class ClosureFailed(ConditionFailed):
    def __init__(self, witness):
        super().__init__("closure", witness)


class CocycleFailed(ConditionFailed):
    def __init__(self, witness):
        super().__init__("cocycle", witness)


class SigmaConditionFailed(ConditionFailed):
    def __init__(self, i):
        super().__init__("sigma^(sigma(i)+1) == sigma^i", (i,))


class MuConditionFailed(ConditionFailed):
    def __init__(self, witness):
        super().__init__("mu(xy) == mu(x) mu(x)^-1 mu(xy)", witness)


class CompatibilityFailed(ConditionFailed):
    pass


class NotExactFactorization(PentagonError):
    pass


class NotMatched(PentagonError):
    pass


class NotCongruencePair(PentagonError):
    pass


class QuotientNotGroup(PentagonError):
    pass


class HypothesisFailed(PentagonError):
    pass


class NotInvolutive(PentagonError):
    pass


class NotWellDefined(TheoremViolation):
    pass


class DecompositionFailed(TheoremViolation):
    pass


class NotElementaryAbelian2Group(PentagonError):
    pass


class BadSigma(PentagonError):
    pass


class IdempotentsNotCentral(PentagonError):
    pass

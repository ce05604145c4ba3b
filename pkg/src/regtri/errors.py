"""Exception types shared across the package."""


class RegtriError(Exception):
    pass


class NotFullDimensional(RegtriError):
    pass


class NotAFace(RegtriError):
    pass


class NotConvexPosition(RegtriError):
    pass


class NotAVertex(RegtriError):
    pass


class ValidationFailed(RegtriError):
    """A lexicographic lifting violated the same-side condition.

    Carries the label of the offending point and the labels spanning the
    violated hyperplane; the usual remedy is to shrink the epsilon chain
    from that index on and retry.
    """

    def __init__(self, label, hyperplane_labels):
        self.label = label
        self.hyperplane_labels = frozenset(hyperplane_labels)
        super().__init__(
            f"lift validation failed at point {label} "
            f"against hyperplane {sorted(self.hyperplane_labels)}"
        )


class DegenerateStep(RegtriError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"placing step {label} hit a spanned hyperplane")


class NotATriangulation(RegtriError):
    def __init__(self, witness=None):
        self.witness = witness
        super().__init__(f"not a triangulation: {witness}")


class NonPureComplex(RegtriError):
    pass


class PointUnused(RegtriError):
    pass


class GenericityFailure(RegtriError):
    """Two sweep breakpoints collided; the caller should perturb the
    lifting vector and retry."""


class NonTriangulationSnapshot(RegtriError):
    """A sweep snapshot was non-simplicial, which means the supplied
    lifting vector did not satisfy the sweep precondition."""


class NonUniqueIndex(RegtriError):
    """Suffix recovery found zero or several neighborly double
    contractions; this contradicts the construction and indicates a bug
    upstream, so we fail loudly."""

    def __init__(self, candidates):
        self.candidates = sorted(candidates)
        super().__init__(f"expected exactly one index, got {self.candidates}")


class TooFewPoints(RegtriError):
    pass


class BudgetExceeded(RegtriError):
    """Enumeration ran out of budget; `partial` holds what was found so
    far and is only a lower bound."""

    def __init__(self, count, partial=None, frontier=None):
        self.count = count
        self.partial = partial
        self.frontier = frontier
        super().__init__(f"budget exceeded after {count} results")

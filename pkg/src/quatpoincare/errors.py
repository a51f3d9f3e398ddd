"""Exception types raised across the package."""


class QuatPoincareError(Exception):
    pass


class NotSymmetric(QuatPoincareError):
    pass


class InvalidSignature(QuatPoincareError):
    pass


class InvalidBlockLabel(QuatPoincareError):
    pass


class JacobiViolation(QuatPoincareError):
    def __init__(self, triple, residual=None):
        super().__init__(f"Jacobi identity fails on basis triple {triple}")
        self.triple = triple
        self.residual = residual


class DegenerateMetric(QuatPoincareError):
    pass


class KernelMismatch(QuatPoincareError):
    pass


class NotRiemannian(QuatPoincareError):
    pass


class ClosureViolation(QuatPoincareError):
    def __init__(self, pair):
        super().__init__(f"bracket of {pair} leaves the subspace")
        self.pair = pair


class DocumentError(QuatPoincareError):
    pass

"""Exception types shared by every module in the package."""

from __future__ import annotations


class HumbertError(Exception):
    """Base class for all package-specific errors."""


class PoleError(HumbertError):
    """A Pochhammer denominator or eigenvalue denominator hit a pole."""


class SignatureError(HumbertError):
    """A parameter map does not match the target function's signature."""


class DomainError(HumbertError):
    """An evaluation point lies outside the function's convergence region."""


class NoConvergence(HumbertError):
    """Series summation hit the diagonal/term budget before converging."""


class NonConvergence(HumbertError):
    """Quadrature refinement hit the maximum level before converging."""


class UnknownIdentity(HumbertError):
    """An operator-identity id is not in the identity catalog."""


class UnknownFormula(HumbertError):
    """A formula id is not in the decomposition catalog."""


class UnsupportedTransform(HumbertError):
    """An argument transform is not in the closed supported list."""


class ConstraintViolation(HumbertError):
    """A printed parameter constraint fails for the given bindings."""

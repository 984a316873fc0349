"""Insertion weights, boundary cosmological constants and their σ-variables.

A boundary cosmological constant μ is traded for σ through μ = e^{iπγ(σ - Q/2)};
positive μ sits on the line Re σ = Q/2.
"""
import cmath
import math
from dataclasses import dataclass, field

from boundary_liouville.exceptions import BranchError


def mu_from_sigma(sigma, coupling):
    return cmath.exp(1j * math.pi * coupling.gamma * (complex(sigma) - coupling.q_charge / 2.0))


def sigma_from_mu(mu, coupling):
    """Inverse of ``mu_from_sigma`` on the principal branch, arg μ in (-π, π]."""
    mu = complex(mu)
    if mu == 0:
        raise BranchError("mu = 0 is the Im(sigma) -> +infinity limit, it has no sigma")
    log_mu = cmath.log(mu)
    # cmath puts the negative real axis at +π already, keep it there for -0.0j
    if log_mu.imag <= -math.pi:
        log_mu += 2j * math.pi
    return coupling.q_charge / 2.0 + log_mu / (1j * math.pi * coupling.gamma)


def conformal_weight(beta, coupling):
    half = complex(beta) / 2.0
    return half * (coupling.q_charge - half)


@dataclass(frozen=True)
class BetaTriple:
    beta1: complex
    beta2: complex
    beta3: complex
    beta_bar: complex = field(init=False)

    def __post_init__(self):
        for name in ('beta1', 'beta2', 'beta3'):
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, 'beta_bar', self.beta1 + self.beta2 + self.beta3)

    def __iter__(self):
        return iter((self.beta1, self.beta2, self.beta3))

    def cyclic(self):
        return BetaTriple(self.beta2, self.beta3, self.beta1)

    def replace(self, **changes):
        values = {'beta1': self.beta1, 'beta2': self.beta2, 'beta3': self.beta3}
        values.update(changes)
        return BetaTriple(**values)


@dataclass(frozen=True)
class SigmaTriple:
    sigma1: complex
    sigma2: complex
    sigma3: complex

    def __post_init__(self):
        for name in ('sigma1', 'sigma2', 'sigma3'):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def __iter__(self):
        return iter((self.sigma1, self.sigma2, self.sigma3))

    @classmethod
    def uniform(cls, value):
        return cls(value, value, value)

    @classmethod
    def from_mus(cls, mus, coupling):
        return cls(*(sigma_from_mu(mu, coupling) for mu in mus))

    def mus(self, coupling):
        return MuTriple(*(mu_from_sigma(sigma, coupling) for sigma in self))

    def cyclic(self):
        return SigmaTriple(self.sigma2, self.sigma3, self.sigma1)

    def shifted(self, amount):
        return SigmaTriple(*(sigma + amount for sigma in self))

    def replace(self, **changes):
        values = {'sigma1': self.sigma1, 'sigma2': self.sigma2, 'sigma3': self.sigma3}
        values.update(changes)
        return SigmaTriple(**values)


def _candidate_normals(mus):
    # the feasible set of normal angles is cut out by the arcs [arg μ - π/2, arg μ + π/2]
    # inside (-π/2, π/2), so its end points and the midpoints between them cover it
    edges = [-math.pi / 2.0, 0.0, math.pi / 2.0]
    for mu in list(mus) + [sum(mus)]:
        if mu == 0:
            continue
        angle = cmath.phase(mu)
        for edge in (angle - math.pi / 2.0, angle + math.pi / 2.0):
            # fold into (-π, π]
            edge = math.atan2(math.sin(edge), math.cos(edge))
            if -math.pi / 2.0 < edge < math.pi / 2.0:
                edges.append(edge)
    edges = sorted(set(edges))
    candidates = list(edges[1:-1])
    candidates += [(low + high) / 2.0 for low, high in zip(edges[:-1], edges[1:])]
    return candidates


def half_space_condition(mus, tolerance=1e-12):
    """Whether one closed half-plane through 0 holds every μ and strictly holds their sum.

    The half-plane must not contain the negative real axis, which forces the unit
    normal v to have Re v > 0.
    """
    mus = [complex(mu) for mu in mus]
    total = sum(mus)
    for angle in _candidate_normals(mus):
        normal = cmath.exp(1j * angle)
        if normal.real <= 0:
            continue
        if all((mu * normal.conjugate()).real >= -tolerance for mu in mus) \
                and (total * normal.conjugate()).real > tolerance:
            return True
    return False


@dataclass(frozen=True)
class MuTriple:
    mu1: complex
    mu2: complex
    mu3: complex
    half_space_ok: bool = field(init=False)

    def __post_init__(self):
        for name in ('mu1', 'mu2', 'mu3'):
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, 'half_space_ok', half_space_condition(self))

    def __iter__(self):
        return iter((self.mu1, self.mu2, self.mu3))

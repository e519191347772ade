"""Exact complex CRT reconstruction with Gaussian-integer moduli.

A validated modulus system holds a positive integer gcd M and pairwise
coprime cofactors whose product is a positive integer; reconstruction of
an error-free complex value goes through the common remainder modulo M
and an exact lattice CRT over the cofactors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cmod import circ_dist_real, floor_c, mod_c, mod_real
from .gaussian import GaussianInt, extended_gcd, is_coprime, mod_exact


class InvalidSystemError(ValueError):
    """The moduli do not satisfy the system invariants."""


class InconsistentRemaindersError(ValueError):
    """Error-free remainders whose residues modulo M disagree."""


@dataclass(frozen=True)
class ModulusSystem:
    """Moduli M*Γ_i with precomputed CRT cofactor data.

    gamma is the positive integer Γ = prod(Γ_i); gammas[i] = Γ/Γ_i and
    gamma_invs[i] is its inverse modulo Γ_i, reduced into the fundamental
    square of Γ_i.
    """

    M: int
    cofactors: tuple[GaussianInt, ...]
    gamma: int = field(init=False)
    gammas: tuple[GaussianInt, ...] = field(init=False)
    gamma_invs: tuple[GaussianInt, ...] = field(init=False)

    def __post_init__(self):
        if not self.cofactors:
            raise InvalidSystemError("at least one cofactor required")
        if self.M < 1:
            raise InvalidSystemError(f"gcd M must be a positive integer, got {self.M}")
        for g in self.cofactors:
            if g.norm() < 2:
                raise InvalidSystemError(f"cofactor {g} has |Γ| < sqrt(2)")
        for i in range(len(self.cofactors)):
            for j in range(i + 1, len(self.cofactors)):
                if not is_coprime(self.cofactors[i], self.cofactors[j]):
                    raise InvalidSystemError(
                        f"cofactors {self.cofactors[i]} and {self.cofactors[j]} are not coprime"
                    )
        prod = GaussianInt(1, 0)
        for g in self.cofactors:
            prod = prod * g
        if prod.im != 0 or prod.re < 1:
            raise InvalidSystemError(f"cofactor product {prod} is not a positive integer")
        object.__setattr__(self, "gamma", prod.re)
        gammas = []
        invs = []
        for g in self.cofactors:
            gi = _divide_exact(prod, g)
            gammas.append(gi)
            _, u, _ = extended_gcd(gi, g)
            inv = _unit_scaled_inverse(gi, g, u)
            invs.append(inv)
        object.__setattr__(self, "gammas", tuple(gammas))
        object.__setattr__(self, "gamma_invs", tuple(invs))

    @property
    def L(self) -> int:
        return len(self.cofactors)

    @property
    def moduli(self) -> tuple[GaussianInt, ...]:
        """The full moduli M*Γ_i."""
        m = GaussianInt(self.M, 0)
        return tuple(m * g for g in self.cofactors)

    @property
    def range(self) -> int:
        """Side length M*Γ of the unambiguous square."""
        return self.M * self.gamma

    def crt_lattice(self, qs: list[GaussianInt]) -> GaussianInt:
        """<sum γ̄_i γ_i q_i> mod Γ, computed exactly over the cofactor lattice."""
        if len(qs) != self.L:
            raise ValueError(f"expected {self.L} values, got {len(qs)}")
        acc = GaussianInt(0, 0)
        g = GaussianInt(self.gamma, 0)
        for inv, gi, q in zip(self.gamma_invs, self.gammas, qs):
            acc = mod_exact(acc + mod_exact(inv * gi * q, g), g)
        return acc


def _divide_exact(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    p = a * b.conj()
    n = b.norm()
    if p.re % n or p.im % n:
        raise InvalidSystemError(f"{b} does not divide {a}")
    return GaussianInt(p.re // n, p.im // n)


def _unit_scaled_inverse(a: GaussianInt, m: GaussianInt, u: GaussianInt) -> GaussianInt:
    # extended_gcd gives u*a == g with g a unit; scale to u'*a == 1 and reduce.
    from .gaussian import NoInverseError, ONE, UNITS, euclid_gcd

    g = euclid_gcd(a, m)
    if not g.is_unit():
        raise NoInverseError(f"{a} not invertible modulo {m}")
    ginv = next(w for w in UNITS if w * g == ONE)
    return mod_exact(ginv * u, m)


def build_system(M: int, cofactors: list[GaussianInt]) -> ModulusSystem:
    """Validate and precompute a modulus system."""
    return ModulusSystem(M, tuple(cofactors))


@dataclass(frozen=True)
class CommonSolution:
    n: complex
    r_common: complex
    q: tuple[GaussianInt, ...]
    n0: GaussianInt


def remainder_vector(n: complex, sys: ModulusSystem) -> list[complex]:
    """Remainders of n modulo each full modulus M*Γ_i."""
    return [mod_c(n, m) for m in sys.moduli]


def reconstruct_unit_gcd(remainders: list[complex], sys: ModulusSystem, verify: bool = False) -> complex:
    """Error-free reconstruction in the fundamental square of Γ for systems
    with unit gcd (M = 1).

    The shared fractional part of the remainders is split off exactly, the
    integer parts go through the lattice CRT.  Inconsistent inputs still
    produce some element of the square; pass verify=True to check the
    round trip.
    """
    if sys.M != 1:
        raise ValueError("reconstruct_unit_gcd applies to systems with M = 1")
    if len(remainders) != sys.L:
        raise ValueError(f"expected {sys.L} remainders, got {len(remainders)}")
    floors = [floor_c(r) for r in remainders]
    frac = complex(remainders[0]) - complex(floors[0])
    n0 = sys.crt_lattice(floors)
    n = complex(n0) + frac
    if verify:
        back = remainder_vector(n, sys)
        for got, want in zip(back, remainders):
            if abs(got - want) > 1e-6 * max(1.0, abs(complex(sys.gamma))):
                raise InconsistentRemaindersError("remainders are not consistent")
    return n


def solve_common(remainders: list[complex], sys: ModulusSystem) -> CommonSolution:
    """Solve the common-remainder system for error-free remainders.

    All remainders must agree modulo M within 1e-9*M; noisy inputs belong
    to the MLE estimator instead.
    """
    if len(remainders) != sys.L:
        raise ValueError(f"expected {sys.L} remainders, got {len(remainders)}")
    M = float(sys.M)
    residues = [
        complex(mod_real(r.real, M), mod_real(r.imag, M)) for r in map(complex, remainders)
    ]
    r_common = residues[0]
    tol = 1e-9 * M
    for res in residues[1:]:
        d_re = abs(circ_dist_real(res.real, r_common.real, M))
        d_im = abs(circ_dist_real(res.imag, r_common.imag, M))
        if d_re > tol or d_im > tol:
            raise InconsistentRemaindersError(
                f"residues modulo M disagree beyond {tol}: {res} vs {r_common}"
            )
    qs = []
    for r in remainders:
        w = (complex(r) - r_common) / M
        q = GaussianInt(int(round(w.real)), int(round(w.imag)))
        if abs(w.real - q.re) > 1e-9 or abs(w.imag - q.im) > 1e-9:
            raise InconsistentRemaindersError(f"(r - r_common)/M = {w} is not a Gaussian integer")
        qs.append(q)
    n0 = sys.crt_lattice(qs)
    n = sys.M * complex(n0) + r_common
    return CommonSolution(n=n, r_common=r_common, q=tuple(qs), n0=n0)

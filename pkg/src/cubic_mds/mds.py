"""Assembly of the two-variable series and its verification identities.

The series is evaluated two independent ways (directly over reduced
forms and through the counting coefficients), sliced one inner series
at a time, twisted by the characters mod 24, and checked against the
residue-proof identity, the residue Euler product, and the completed
functional equation.  Every evaluator truncates in a fixed order so a
given call is reproducible bit for bit.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from . import arith, forms, sqcount
from .errors import PoleError
from .euler import local_factor_closed
from .lfunc import (
    DirichletCharacter,
    A_j,
    L_removed_23,
    character_eta,
    complex_gamma,
    completed_Lambda,
    characters_mod24,
    dirichlet_L,
    primitive_part,
    psi_n_character,
    riemann_zeta,
)

# ======================================================================
# truncation plumbing
# ======================================================================


@dataclass(frozen=True)
class TruncationSpec:
    """Cutoffs and tolerance for one truncated evaluation.

    m_cutoff bounds the inner (form/coefficient) index, n_cutoff the
    outer index, local_order the number of prime-power terms kept in a
    local series, and tolerance the acceptance threshold a comparison
    is judged against.  The tolerance should be justified by the tail
    bound (see coefficient_tail_bound) at the point of use.
    """

    m_cutoff: int
    n_cutoff: int
    local_order: int = 60
    tolerance: float = 1e-8

    def __post_init__(self) -> None:
        if self.m_cutoff < 1 or self.n_cutoff < 1 or self.local_order < 1:
            raise ValueError("TruncationSpec cutoffs must be positive")
        if not self.tolerance > 0:
            raise ValueError("TruncationSpec tolerance must be positive")


@dataclass(frozen=True)
class SeriesComparison:
    """Two truncated evaluations of one quantity, with their distance."""

    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    spec: TruncationSpec

    @classmethod
    def compare(
        cls, lhs: complex, rhs: complex, spec: TruncationSpec
    ) -> "SeriesComparison":
        lhs = complex(lhs)
        rhs = complex(rhs)
        abs_err = abs(lhs - rhs)
        rel_err = abs_err / max(abs(lhs), abs(rhs), 1e-300)
        return cls(lhs=lhs, rhs=rhs, abs_err=abs_err, rel_err=rel_err, spec=spec)

    @property
    def passed(self) -> bool:
        return self.rel_err <= self.spec.tolerance

    def to_json(self) -> str:
        payload = {
            "lhs_re": self.lhs.real,
            "lhs_im": self.lhs.imag,
            "rhs_re": self.rhs.real,
            "rhs_im": self.rhs.imag,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "spec": {
                "m_cutoff": self.spec.m_cutoff,
                "n_cutoff": self.spec.n_cutoff,
                "local_order": self.spec.local_order,
                "tolerance": self.spec.tolerance,
            },
        }
        return json.dumps(payload, sort_keys=True, separators=(", ", ": "))

    @classmethod
    def from_json(cls, text: str) -> "SeriesComparison":
        data = json.loads(text)
        spec = TruncationSpec(**data["spec"])
        return cls(
            lhs=complex(data["lhs_re"], data["lhs_im"]),
            rhs=complex(data["rhs_re"], data["rhs_im"]),
            abs_err=float(data["abs_err"]),
            rel_err=float(data["rel_err"]),
            spec=spec,
        )


def coefficient_tail_bound(m_cutoff: int, sigma: float) -> float:
    """Bound on the dropped inner tail sum_{m > M} C(3m, -n) m^(-sigma).

    For squarefree n the coefficient is at most 4 * d(m) (each odd
    prime contributes a factor <= 2, the primes 2 and 3 at most 4 and 2
    once), and sum_{m > M} d(m) m^(-sigma) is bounded by the integral
    M^(1-sigma) (log M / (sigma - 1) + 1 / (sigma - 1)^2).  Valid for
    sigma > 1.
    """
    if sigma <= 1:
        raise ValueError("tail bound requires sigma > 1")
    lg = math.log(m_cutoff)
    return 4.0 * m_cutoff ** (1.0 - sigma) * (
        lg / (sigma - 1.0) + 1.0 / (sigma - 1.0) ** 2
    )


def _cpow(base: float, s: complex) -> complex:
    """base^(-s) for positive real base."""
    return cmath.exp(-complex(s) * math.log(base))


def _fsum_complex(res: list[float], ims: list[float]) -> complex:
    return complex(math.fsum(res), math.fsum(ims))


def _inverse_powers(count: int, s: complex) -> np.ndarray:
    """Array [1^(-s), ..., count^(-s)] as complex128."""
    ks = np.arange(1, count + 1, dtype=float)
    return np.exp(-complex(s) * np.log(ks))


# ======================================================================
# the double series, two routes
# ======================================================================


def Z_direct(
    s1: complex,
    s2: complex,
    spec: TruncationSpec,
    require_odd_squarefree: bool = True,
) -> complex:
    """Sum of a^(-s1) (3ac - b^2)^(-s2) over reduced representatives.

    Terms are generated lexicographically in (a, b, c) and accumulated
    with exact compensated summation, so the value is independent of
    any regrouping.  Meaningful for Re(s1) > 1 and Re(s2) > 1 where the
    truncation tails are controlled.
    """
    res: list[float] = []
    ims: list[float] = []
    for a, _b, _c, n in forms.enumerate_representatives(
        spec.m_cutoff, spec.n_cutoff, require_odd_squarefree
    ):
        t = _cpow(a, s1) * _cpow(n, s2)
        res.append(t.real)
        ims.append(t.imag)
    return _fsum_complex(res, ims)


def _coefficient_double_sum(
    s1: complex, s2: complex, spec: TruncationSpec, coprime_six: bool
) -> complex:
    """Sum of C(3m,-n) m^(-s1) n^(-s2), ascending n then ascending m.

    Each n-slice is an independent dot product against one shared
    vector of inverse powers; slices are folded in ascending n order.
    """
    sqfree = arith.squarefree_mask(spec.n_cutoff)
    powers = _inverse_powers(spec.m_cutoff, s1)
    res: list[float] = []
    ims: list[float] = []
    for n in range(1, spec.n_cutoff + 1, 2):
        if not sqfree[n]:
            continue
        if coprime_six and n % 3 == 0:
            continue
        coeffs = np.asarray(
            sqcount.coefficient_sieve(n, spec.m_cutoff)[1:], dtype=float
        )
        inner = complex(coeffs @ powers)
        t = inner * _cpow(n, s2)
        res.append(t.real)
        ims.append(t.imag)
    return _fsum_complex(res, ims)


def Z_coeff(s1: complex, s2: complex, spec: TruncationSpec) -> complex:
    """Coefficient route: C(3m,-n) m^(-s1) n^(-s2) over odd squarefree n.

    Identical term multiset as Z_direct under matched cutoffs, grouped
    by n instead of by form.
    """
    return _coefficient_double_sum(s1, s2, spec, coprime_six=False)


def Z_n_oracle(n: int, s: complex, m_cutoff: int) -> complex:
    """Truncated inner series sum_{m <= M} C(3m,-n) m^(-s).

    Brute reference for the closed form and the local-factor product;
    meaningful for Re(s) > 1.
    """
    coeffs = np.asarray(sqcount.coefficient_sieve(n, m_cutoff)[1:], dtype=float)
    powers = _inverse_powers(m_cutoff, s)
    return complex(coeffs @ powers)


def Z_n_euler_product(n: int, s: complex, prime_cutoff: int) -> complex:
    """Product of the closed local factors over primes up to the cutoff."""
    out = 1 + 0j
    for p in arith.primes_up_to(prime_cutoff):
        out *= local_factor_closed(p, n, s)
    return out


# ======================================================================
# character-twisted pieces
# ======================================================================

# Inner L-values are shared across the 8 twists and across repeated
# verification calls at one s; the key is (n, s).
_L23_CACHE: dict[tuple[int, complex], complex] = {}
_L23_CACHE_LIMIT = 65536


def _L23_eta(n: int, s: complex) -> complex:
    key = (n, complex(s))
    val = _L23_CACHE.get(key)
    if val is None:
        if len(_L23_CACHE) >= _L23_CACHE_LIMIT:
            _L23_CACHE.clear()
        val = L_removed_23(character_eta(n), s)
        _L23_CACHE[key] = val
    return val


def Z_star(
    chi: DirichletCharacter, s1: complex, s2: complex, spec: TruncationSpec
) -> complex:
    """Twisted outer series over squarefree n coprime to 6.

    sum chi(n) L_{2,3}(eta_n, s1) n^(-s2) truncated at n_cutoff, in
    ascending n order.  chi must have modulus 24.  Meaningful for
    Re(s1) > 1 and Re(s2) > 1.
    """
    if chi.modulus != 24:
        raise ValueError("Z_star expects a character of modulus 24")
    sqfree = arith.squarefree_mask(spec.n_cutoff)
    res: list[float] = []
    ims: list[float] = []
    for n in range(1, spec.n_cutoff + 1, 2):
        if n % 3 == 0 or not sqfree[n]:
            continue
        cv = complex(chi(n))
        if cv == 0:
            continue
        t = cv * _L23_eta(n, s1) * _cpow(n, s2)
        res.append(t.real)
        ims.append(t.imag)
    return _fsum_complex(res, ims)


# ======================================================================
# residue-proof identity and residue product
# ======================================================================


def residue_identity_check(
    chi: DirichletCharacter,
    s1: complex,
    s2: complex,
    spec: TruncationSpec,
    inner_terms: int = 20000,
) -> SeriesComparison:
    """Check L(2 s2, chi^2) Z*(s1, s2) against its unfolded m-sum.

    The right side is sum over m coprime to 6 of (-1/m) m^(-s1) times
    prod_{p | m} (1 - chi^2(p) p^(-2 s2))^(-1) times the L-value at s2
    of the twist k -> chi(k) (k/m), each inner L truncated at
    inner_terms.  Both sides use the cutoffs in spec (n_cutoff for the
    twisted series, m_cutoff for the m-sum).
    """
    if chi.modulus != 24:
        raise ValueError("residue identity expects a character of modulus 24")
    # chi^2 as an honest character table (principal on the units).
    chi_sq = DirichletCharacter(24, [chi(k) ** 2 for k in range(24)])
    lhs = dirichlet_L(chi_sq, 2 * complex(s2)).value * Z_star(chi, s1, s2, spec)

    kinv = _inverse_powers(inner_terms, s2)
    ks = np.arange(inner_terms + 1)
    chi_vec = np.asarray([complex(chi(k)).real for k in range(24)])[ks % 24]
    res: list[float] = []
    ims: list[float] = []
    for m in range(1, spec.m_cutoff + 1):
        if m % 2 == 0 or m % 3 == 0:
            continue
        # (k/m) depends only on k mod m, so one table per m suffices.
        table = np.asarray([arith.kronecker(r, m) for r in range(m)], dtype=float)
        jac = table[ks % m]
        twist = chi_vec * jac
        l_inner = complex(twist[1:] @ kinv)
        pref = arith.kronecker(-1, m) * _cpow(m, s1)
        for p, _e in arith.factorize(m).factors:
            csq = complex(chi(p)) ** 2
            pref /= 1 - csq * _cpow(p, 2 * complex(s2))
        t = pref * l_inner
        res.append(t.real)
        ims.append(t.imag)
    rhs = _fsum_complex(res, ims)
    return SeriesComparison.compare(lhs, rhs, spec)


def _mobius(k: int) -> int:
    if k == 1:
        return 1
    mu = 1
    for _p, e in arith.factorize(k).factors:
        if e > 1:
            return 0
        mu = -mu
    return mu


def prime_zeta(e: complex) -> complex:
    """sum over primes p of p^(-e) for Re(e) > 1, via log-zeta Moebius."""
    e = complex(e)
    if e.real <= 1:
        raise PoleError("prime zeta requires Re(e) > 1")
    total = 0j
    k = 1
    while k * e.real <= 60:
        mu = _mobius(k)
        if mu:
            total += mu / k * cmath.log(riemann_zeta(k * e))
        k += 1
    return total


def _prime_zeta_tail(e: complex, primes: list[int]) -> complex:
    """sum_{p > P} p^(-e) with P the largest member of the sieve list."""
    ps = np.asarray(primes, dtype=float)
    head = complex(np.exp(-complex(e) * np.log(ps)).sum())
    return prime_zeta(e) - head


def residue_product(
    chi: DirichletCharacter,
    s1: complex,
    prime_cutoff: int,
    compensate_tail: bool = True,
) -> complex:
    """Residue constant: (1/3) conductor factor times the p >= 5 product.

    Each factor is
        (1 - chi^2(p)/p^2 + chi^2(p)/p^(2 s1 + 2) - 1/p^(2 s1 + 1))
        / (1 - chi^2(p)/p^2),
    multiplied over 5 <= p <= prime_cutoff in ascending order.  With
    compensate_tail the analytically summed log of the dropped p >
    prime_cutoff factors is added back (prime-zeta expansion), which is
    what makes successive cutoffs agree to ~1e-12 instead of the raw
    ~1/(P log P) drift.  The product diverges when Re(2 s1 + 1) <= 1;
    that configuration raises PoleError rather than returning noise.
    """
    if chi.modulus != 24:
        raise ValueError("residue product expects a character of modulus 24")
    s1 = complex(s1)
    if compensate_tail and 2 * s1.real + 1 <= 1 + 1e-12:
        raise PoleError("residue product diverges for Re(2 s1 + 1) <= 1")
    front = 1 / 3
    for p, _e in arith.factorize(chi.conductor).factors:
        front *= 1 - 1 / p
    primes = arith.primes_up_to(prime_cutoff)
    partial = complex(front)
    for p in primes:
        if p in (2, 3):
            continue
        csq = complex(chi(p)) ** 2
        inv2 = 1.0 / (p * p)
        num = 1 - csq * inv2 + csq * _cpow(p, 2 * s1 + 2) - _cpow(p, 2 * s1 + 1)
        den = 1 - csq * inv2
        partial *= num / den
    if not compensate_tail:
        return partial
    # log factor = log(1 - w) with w = p^-(2s1+1) / (1 + 1/p); expand in
    # powers of p^-1 and sum each exponent over p > cutoff exactly.
    exponent_cap = 16.0
    tail_log = 0j
    k = 1
    while k * (2 * s1.real + 1) <= exponent_cap:
        j = 0
        while k * (2 * s1.real + 1) + j <= exponent_cap:
            e = k * (2 * s1 + 1) + j
            coeff = -(1.0 / k) * ((-1) ** j) * math.comb(k + j - 1, j)
            tail_log += coeff * _prime_zeta_tail(e, primes)
            j += 1
        k += 1
    return partial * cmath.exp(tail_log)


def residue_product_gap(
    chi: DirichletCharacter,
    s1: complex,
    prime_cutoff: int,
    compensate_tail: bool = True,
) -> float:
    """Convergence monitor: |value(P) - value(P/2)| for the product."""
    hi = residue_product(chi, s1, prime_cutoff, compensate_tail)
    lo = residue_product(chi, s1, prime_cutoff // 2, compensate_tail)
    return abs(hi - lo)


# ======================================================================
# functional equation checks
# ======================================================================


def functional_equation_check(
    n: int, s_grid: list[complex], tolerance: float = 1e-8
) -> list[SeriesComparison]:
    """Compare the completed L-value at s and 1 - s over a grid.

    n must be odd, squarefree and coprime to 3.  Grid points where a
    Gamma pole makes either side undefined raise PoleError instead of
    being dropped silently.
    """
    spec = TruncationSpec(m_cutoff=1, n_cutoff=1, local_order=1, tolerance=tolerance)
    out = []
    for s in s_grid:
        s = complex(s)
        lhs = completed_Lambda(n, s)
        rhs = completed_Lambda(n, 1 - s)
        out.append(SeriesComparison.compare(lhs, rhs, spec))
    return out


def functional_equation_term_check(
    n: int, s1: complex, s2: complex, tolerance: float = 1e-8
) -> SeriesComparison:
    """One n-term of the global reflection, written multiplicatively.

    With chi the primitive twist attached to n, conductor f = f0 * n
    (f0 is 4 or 1 according to n mod 4), the completed functional
    equation rearranges to

        L(s1, chi) n^(-s2) = (pi/f0)^(s1 - 1/2)
                             * Gamma(1 - s1/2) / Gamma((s1 + 1)/2)
                             * L(1 - s1, chi) n^(-(s1 + s2 - 1/2)),

    which is the term-level form of sending (s1, s2) to
    (1 - s1, s1 + s2 - 1/2).  Both sides are returned as a comparison;
    a single constant in place of (pi/f0)^(s1-1/2) cannot work because
    f0 genuinely depends on n mod 4.
    """
    s1 = complex(s1)
    s2 = complex(s2)
    prim = primitive_part(psi_n_character(n))
    f = prim.modulus
    if f % n:
        raise ValueError("conductor is not a multiple of n; inadmissible n")
    f0 = f // n
    lhs = dirichlet_L(prim, s1).value * _cpow(n, s2)
    gamma_ratio = complex_gamma(1 - s1 / 2) / complex_gamma((s1 + 1) / 2)
    rhs = (
        cmath.exp((s1 - 0.5) * math.log(math.pi / f0))
        * gamma_ratio
        * dirichlet_L(prim, 1 - s1).value
        * _cpow(n, s1 + s2 - 0.5)
    )
    spec = TruncationSpec(m_cutoff=1, n_cutoff=1, local_order=1, tolerance=tolerance)
    return SeriesComparison.compare(lhs, rhs, spec)


# ======================================================================
# decomposition of the coprime-to-6 slice
# ======================================================================


def decomposition_check(
    s1: complex, s2: complex, spec: TruncationSpec
) -> SeriesComparison:
    """Coefficient double sum against the character decomposition.

    Left side: sum over squarefree n coprime to 6 (n <= n_cutoff) of
    n^(-s2) sum_{m <= m_cutoff} C(3m,-n) m^(-s1).  Right side:

        (1/8) zeta(s1)/zeta(2 s1) (1 - 2^(-s1))^(-1)
            * sum_j sum_chi chi(j) A_j(s1) Z*_chi(s1, s2)

    with j over the units mod 24 and chi over the eight real characters
    mod 24.  The n-cutoffs match on both sides so the outer truncation
    cancels; the inner m-truncation on the left is the only gap, and
    m_cutoff must be chosen so its tail bound sits below the tolerance.
    """
    s1 = complex(s1)
    s2 = complex(s2)
    lhs = _coefficient_double_sum(s1, s2, spec, coprime_six=True)

    chars = characters_mod24()
    units = (1, 5, 7, 11, 13, 17, 19, 23)
    ajs = {j: A_j(j, s1) for j in units}
    total = 0j
    for chi in chars:
        zs = Z_star(chi, s1, s2, spec)
        weight = 0j
        for j in units:
            weight += complex(chi(j)) * ajs[j]
        total += weight * zs
    front = riemann_zeta(s1) / riemann_zeta(2 * s1) / (1 - _cpow(2, s1))
    rhs = front * total / 8
    return SeriesComparison.compare(lhs, rhs, spec)

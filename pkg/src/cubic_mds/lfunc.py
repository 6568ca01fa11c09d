"""Dirichlet characters, Gauss sums, and L-function evaluation.

Characters are dense value tables on their modulus (the moduli here
stay in the thousands, so no label machinery is needed).  L-functions
are evaluated two independent ways: a truncated Dirichlet sum, honest
only well right of the convergence line, and a Hurwitz-zeta route

    L(s, chi) = q^(-s) sum_{a=1..q} chi(a) zeta(s, a/q)

with the Hurwitz values continued by Euler-Maclaurin, which reaches
into the critical strip.  For non-principal characters the pole of each
Hurwitz term at s = 1 is removed before summing (the chi-weighted poles
cancel exactly), so values like L(1, chi_4) = pi/4 are directly
computable.

On top of that sit the closed forms of the slice series: the nine-branch
rational factor A_j keyed by a residue class mod 24, its character-
average a_n, and Z_n_closed, which evaluates the full slice series over
m through a quadratic L-value.  The completed Lambda used by the
functional-equation checks is built from the primitive character
underlying psi_n and its true conductor; the raw mod-12n table is
imprimitive (its conductor is n or 4n, never 12n), and only the
primitive completion is self-dual under s -> 1-s.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import arith
from .errors import PoleError

_POLE_EPS = 1e-13
_ONE_EPS = 1e-9


# ======================================================================
# complex gamma (Lanczos, g = 7, 9 coefficients)
# ======================================================================

_LANCZOS_COEFF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def complex_gamma(z: complex) -> complex:
    """Gamma(z) accurate to ~1e-12 relative for |Im z| <= 50.

    Reflection formula left of Re z = 1/2; PoleError at the poles
    z = 0, -1, -2, ...
    """
    z = complex(z)
    if z.real < 0.5:
        nearest = round(z.real)
        if nearest <= 0 and abs(z - nearest) < _POLE_EPS:
            raise PoleError(f"gamma pole at z = {nearest}")
        sine = cmath.sin(cmath.pi * z)
        if abs(sine) < 1e-290:
            raise PoleError("gamma reflection hit sin(pi z) = 0")
        return cmath.pi / (sine * complex_gamma(1 - z))
    w = z - 1
    acc = _LANCZOS_COEFF[0]
    for i in range(1, len(_LANCZOS_COEFF)):
        acc += _LANCZOS_COEFF[i] / (w + i)
    t = w + 7.5
    return math.sqrt(2 * math.pi) * t ** (w + 0.5) * cmath.exp(-t) * acc


# ======================================================================
# Hurwitz zeta via Euler-Maclaurin
# ======================================================================

# Base of 30 summed terms, Bernoulli corrections through B_30.  The
# shift grows with |Im s| (Euler-Maclaurin needs the cutoff past the
# oscillation scale) to keep the asymptotic remainder under 1e-13 on
# the whole envelope Re(s) >= -2, |Im s| <= 50.  Growing it further
# buys nothing: for Re(s) < 0 the summed head terms exceed 1 in
# magnitude and double-precision rounding, not the remainder, sets the
# floor.  The returned error estimate accounts for both parts.
_EM_SHIFT = 30


def _em_shift(s: complex) -> int:
    return max(_EM_SHIFT, int(1.6 * abs(s.imag)) + 10)


_BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
    Fraction(854513, 138),
    Fraction(-236364091, 2730),
    Fraction(8553103, 6),
    Fraction(-23749461029, 870),
    Fraction(8615841276005, 14322),
)
_EM_COEFF = tuple(
    float(b / math.factorial(2 * j)) for j, b in enumerate(_BERNOULLI, start=1)
)


def _expm1_over(u: np.ndarray) -> np.ndarray:
    """(e^u - 1)/u elementwise, stable near u = 0."""
    u = np.asarray(u, dtype=complex)
    out = np.empty_like(u)
    small = np.abs(u) < 1e-4
    us = u[small]
    out[small] = 1 + us / 2 + us * us / 6 + us**3 / 24
    ub = u[~small]
    out[~small] = (np.exp(ub) - 1) / ub
    return out


def _hurwitz_block(
    s: complex, xs: np.ndarray, deflate: bool
) -> tuple[np.ndarray, float]:
    """Euler-Maclaurin Hurwitz values for an array of x in (0, 1].

    With deflate=True returns zeta(s, x) - 1/(s-1), finite at s = 1.
    Second result is a per-point error estimate.
    """
    s = complex(s)
    xs = np.asarray(xs, dtype=float)
    if np.any(xs <= 0) or np.any(xs > 1):
        raise ValueError("hurwitz_zeta requires x in (0, 1]")
    if not deflate and abs(s - 1) < _POLE_EPS:
        raise PoleError("hurwitz zeta pole at s = 1")
    shift = _em_shift(s)
    base = np.arange(shift, dtype=float)[:, None] + xs[None, :]
    head_terms = np.power(base, -s)
    head = head_terms.sum(axis=0)
    mass = float(np.max(np.abs(head_terms).sum(axis=0)))
    w = shift + xs
    logw = np.log(w)
    if deflate:
        # (w^(1-s) - 1)/(s-1) = -log(w) * (e^u - 1)/u,  u = (1-s) log w
        tail1 = -logw * _expm1_over((1 - s) * logw)
    else:
        tail1 = np.exp((1 - s) * logw) / (s - 1)
    wms = np.exp(-s * logw)
    total = head + tail1 + 0.5 * wms
    mass += float(np.max(np.abs(tail1))) + 0.5 * float(np.max(np.abs(wms)))
    power = wms / w
    winv2 = 1.0 / (w * w)
    rising = s
    last = 0.0
    for j, coeff in enumerate(_EM_COEFF, start=1):
        term = coeff * rising * power
        total = total + term
        last = float(np.max(np.abs(term)))
        rising = rising * (s + 2 * j - 1) * (s + 2 * j)
        power = power * winv2
    # Rounding floor: (k+x)^(-s) = exp(-s log(k+x)) turns a one-ulp
    # error in the exponent into a relative error of about
    # ulp * |s| * |log(k+x)|, so the stacked absolute mass times that
    # amplification bounds the accumulated noise.
    amp = abs(s) * max(math.log(shift + 1.0), -math.log(float(xs.min())))
    rounding = 2.5e-16 * (1.0 + amp) * (mass + shift)
    err = 2.0 * last + rounding
    return total, err


def hurwitz_zeta(s: complex, x: float) -> complex:
    """zeta(s, x) = sum (k+x)^(-s) continued past the abscissa.

    Documented accuracy envelope: Re(s) >= -2, |Im s| <= 50, x in
    (0, 1].  For Re(s) >= 0 and x >= 0.05 the absolute error stays
    below 1e-10.  Outside that region the value itself can be large
    (x^{-Re s} or the near-pole 1/(s-1)) and the floor is a few ulp of
    the largest intermediate magnitude, phase-amplified; the internal
    estimate tracks it and the tests check both against a
    multiprecision reference.  PoleError at s = 1.
    """
    values, _ = _hurwitz_block(s, np.array([float(x)]), deflate=False)
    return complex(values[0])


# ======================================================================
# characters
# ======================================================================

class DirichletCharacter:
    """Dense-table character mod q.

    values[m] is chi(m mod q); entries are exactly zero on residues
    sharing a factor with q.  parity is 0 when chi(-1) = 1, 1 when
    chi(-1) = -1.  The conductor (minimal inducing modulus) is computed
    on first access and cached; construction itself stays cheap so bulk
    sweeps can build thousands of tables.
    """

    __slots__ = ("modulus", "values", "parity", "is_real", "_conductor")

    def __init__(self, modulus: int, values) -> None:
        if modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {modulus}")
        values = tuple(values)
        if len(values) != modulus:
            raise ValueError("values table must have exactly `modulus` entries")
        self.modulus = modulus
        self.values = values
        if modulus == 1:
            self.parity = 0
        else:
            v = complex(values[modulus - 1])
            if abs(v - 1) < _ONE_EPS:
                self.parity = 0
            elif abs(v + 1) < _ONE_EPS:
                self.parity = 1
            else:
                raise ValueError(f"chi(-1) = {v} is not +-1")
        self.is_real = all(abs(complex(v).imag) < 1e-12 for v in values)
        self._conductor: int | None = None

    def __call__(self, m: int):
        return self.values[m % self.modulus]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.values))

    def __repr__(self) -> str:
        kind = "real" if self.is_real else "complex"
        return f"DirichletCharacter(mod {self.modulus}, {kind})"

    @property
    def is_principal(self) -> bool:
        q = self.modulus
        return all(
            abs(complex(self.values[a]) - 1) < _ONE_EPS
            for a in range(q)
            if gcd(a, q) == 1
        )

    @property
    def conductor(self) -> int:
        if self._conductor is None:
            q = self.modulus
            found = q
            for d in range(1, q + 1):
                if q % d:
                    continue
                if all(
                    abs(complex(self.values[a]) - 1) < _ONE_EPS
                    for a in range(1, q)
                    if gcd(a, q) == 1 and a % d == 1 % d
                ):
                    found = d
                    break
            if q == 1:
                found = 1
            self._conductor = found
        return self._conductor

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus


def principal_character(q: int) -> DirichletCharacter:
    """The principal character mod q."""
    if q < 1:
        raise ValueError(f"modulus must be >= 1, got {q}")
    if q == 1:
        return DirichletCharacter(1, (1,))
    vals = [1 if gcd(m, q) == 1 else 0 for m in range(q)]
    return DirichletCharacter(q, vals)


def character_from_symbol(top: int, modulus: int) -> DirichletCharacter:
    """Table m -> kronecker(top, m) on residues coprime to the modulus.

    Multiplicative fill over a smallest-prime-factor sieve; entries off
    the coprime residues are zero.
    """
    if modulus < 1:
        raise ValueError(f"modulus must be >= 1, got {modulus}")
    if modulus == 1:
        return DirichletCharacter(1, (1,))
    spf = arith.spf_list(modulus)
    at_prime: dict[int, int] = {}
    vals = [0] * modulus
    vals[1 % modulus] = 1
    for m in range(2, modulus):
        p = spf[m]
        vp = at_prime.get(p)
        if vp is None:
            vp = 0 if modulus % p == 0 else arith.kronecker(top, p)
            at_prime[p] = vp
        vals[m] = vals[m // p] * vp if vp else 0
    return DirichletCharacter(modulus, vals)


def character_eta(n: int) -> DirichletCharacter:
    """Quadratic character m -> (-n/m), tabulated mod 4n.

    4n is a defining modulus for the Kronecker symbol of -n on odd
    arguments; the actual conductor (|disc| of the right quadratic
    field) divides it and is exposed through `.conductor`.
    """
    if n < 1:
        raise ValueError(f"character_eta requires n >= 1, got {n}")
    return character_from_symbol(-n, 4 * n)


def psi_n_character(n: int) -> DirichletCharacter:
    """The odd real character m -> chi_4(m) (n/m) 1_3(m), mod 12n.

    Requires n odd, squarefree, coprime to 3.  The table is always an
    odd character (checked), but it is never primitive: its conductor
    is 4n when n = 1 mod 4 and n when n = 3 mod 4.
    """
    if n < 1 or n % 2 == 0 or n % 3 == 0 or not arith.is_squarefree(n):
        raise ValueError(
            f"psi_n requires odd squarefree n coprime to 3, got {n}"
        )
    q = 12 * n
    vals = [0] * q
    for m in range(q):
        if m % 2 == 0 or m % 3 == 0:
            continue
        chi4 = 1 if m % 4 == 1 else -1
        vals[m] = chi4 * arith.kronecker(n, m)
    chi = DirichletCharacter(q, vals)
    if chi.parity != 1:
        raise AssertionError(f"psi_{n} failed the odd-parity check")
    return chi


_UNITS_MOD24 = (1, 5, 7, 11, 13, 17, 19, 23)
# exponent vector of each unit on the generators (5, 7, 13)
_EXP_MOD24 = {
    1: (0, 0, 0),
    5: (1, 0, 0),
    7: (0, 1, 0),
    11: (1, 1, 0),
    13: (0, 0, 1),
    17: (1, 0, 1),
    19: (0, 1, 1),
    23: (1, 1, 1),
}


def characters_mod24() -> list[DirichletCharacter]:
    """All 8 characters of (Z/24)^x, indexed by sign pattern.

    The group is (Z/2)^3 on the generators 5, 7, 13.  Index j in 0..7
    maps bit 0 to the sign at 5, bit 1 to the sign at 7, bit 2 to the
    sign at 13 (set bit = value -1); index 0 is the principal character.
    """
    out = []
    for j in range(8):
        signs = (
            -1 if j & 1 else 1,
            -1 if j & 2 else 1,
            -1 if j & 4 else 1,
        )
        vals = [0] * 24
        for u, (e5, e7, e13) in _EXP_MOD24.items():
            vals[u] = (signs[0] ** e5) * (signs[1] ** e7) * (signs[2] ** e13)
        out.append(DirichletCharacter(24, vals))
    return out


def primitive_part(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character inducing chi, tabulated on the conductor."""
    f = chi.conductor
    q = chi.modulus
    if f == q:
        return chi
    vals: list = [0] * f
    for a in range(f):
        if gcd(a, f) != 1:
            continue
        t = a
        while gcd(t, q) != 1:
            t += f
        vals[a] = chi.values[t % q]
    return DirichletCharacter(f, vals)


def _primitive_root(prime_power: int, p: int) -> int:
    phi = prime_power // p * (p - 1)
    prime_divs = [q for q, _ in arith.factorize(phi).factors]
    for g in range(2, prime_power):
        if gcd(g, prime_power) != 1:
            continue
        if all(pow(g, phi // q, prime_power) != 1 for q in prime_divs):
            return g
    raise ArithmeticError(f"no primitive root mod {prime_power}")


def all_characters_mod(q: int) -> list[DirichletCharacter]:
    """Every Dirichlet character mod q (complex-valued in general).

    Built from the cyclic decomposition of the unit group; intended for
    exhaustive sweeps at small moduli, not for bulk arithmetic.
    """
    if q < 1:
        raise ValueError(f"modulus must be >= 1, got {q}")
    if q == 1:
        return [DirichletCharacter(1, (1,))]
    # components: (prime power P, dlog table over (Z/P)^x, cyclic order)
    comps: list[tuple[int, dict[int, int], int]] = []
    for p, e in arith.factorize(q).factors:
        P = p**e
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                comps.append((P, {1: 0, 3: 1}, 2))
            else:
                half = 2 ** (e - 2)
                dlog_sign: dict[int, int] = {}
                dlog_five: dict[int, int] = {}
                u = 1
                for k in range(half):
                    dlog_sign[u] = 0
                    dlog_five[u] = k
                    dlog_sign[(-u) % P] = 1
                    dlog_five[(-u) % P] = k
                    u = u * 5 % P
                comps.append((P, dlog_sign, 2))
                comps.append((P, dlog_five, half))
        else:
            g = _primitive_root(P, p)
            order = P // p * (p - 1)
            dlog: dict[int, int] = {}
            u = 1
            for k in range(order):
                dlog[u] = k
                u = u * g % P
            comps.append((P, dlog, order))
    orders = [d for _, _, d in comps]
    out: list[DirichletCharacter] = []
    index = [0] * len(comps)
    while True:
        vals: list = [0] * q
        for m in range(q):
            if gcd(m, q) != 1:
                continue
            angle = 0.0
            for (P, dlog, d), k in zip(comps, index):
                angle += k * dlog[m % P] / d
            z = cmath.exp(2j * math.pi * angle)
            # snap the exact rational points so real characters stay integer
            if abs(z.imag) < 1e-12:
                vals[m] = int(round(z.real))
            else:
                vals[m] = z
        out.append(DirichletCharacter(q, vals))
        pos = 0
        while pos < len(index):
            index[pos] += 1
            if index[pos] < orders[pos]:
                break
            index[pos] = 0
            pos += 1
        else:
            break
        if pos >= len(index):
            break
    return out


def fundamental_discriminants(bound: int) -> list[int]:
    """All fundamental discriminants d with |d| <= bound, 1 included.

    d = 1 mod 4 squarefree, or d = 4m with m = 2, 3 mod 4 squarefree.
    Sorted by (|d|, d).
    """
    found = []
    for d in range(-bound, bound + 1):
        if d == 0:
            continue
        if d % 4 == 1 and arith.is_squarefree(abs(d)):
            found.append(d)
        elif d % 4 == 0:
            m = d // 4
            if m % 4 in (2, 3) and arith.is_squarefree(abs(m)):
                found.append(d)
    found.sort(key=lambda d: (abs(d), d))
    return found


def real_primitive_characters(max_modulus: int) -> list[DirichletCharacter]:
    """Every real primitive character of modulus <= max_modulus.

    These are exactly the Kronecker symbols (d/.) of fundamental
    discriminants d with |d| <= max_modulus, tabulated mod |d|.
    """
    return [
        character_from_symbol(d, abs(d))
        for d in fundamental_discriminants(max_modulus)
    ]


def real_characters_mod(q: int) -> list[DirichletCharacter]:
    """All real characters of modulus exactly q (principal included)."""
    out = [principal_character(q)]
    for d in fundamental_discriminants(q):
        if d != 1 and q % abs(d) == 0:
            out.append(character_from_symbol(d, q))
    return out


# ======================================================================
# Gauss sums
# ======================================================================

def twisted_exponential_sum(chi: DirichletCharacter) -> complex:
    """Raw sum over l mod q of chi(l) e^(2 pi i l / q), no primitivity gate."""
    q = chi.modulus
    total = 0j
    for l in range(q):
        v = chi.values[l]
        if v:
            total += complex(v) * cmath.exp(2j * math.pi * l / q)
    return total


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) for primitive chi; equals sqrt(q) or i sqrt(q) when real.

    Raises ValueError on imprimitive input: the defining sum still
    exists but loses the modulus-sqrt normalization, so callers must
    reduce to the primitive part first (see `primitive_part`).
    """
    if not chi.is_primitive:
        raise ValueError(
            f"gauss_sum requires a primitive character; this one has "
            f"conductor {chi.conductor} < modulus {chi.modulus}"
        )
    return twisted_exponential_sum(chi)


# ======================================================================
# L-series evaluation
# ======================================================================

@dataclass(frozen=True)
class LSeriesValue:
    """One L-evaluation: the point, the value, how, and an error bound."""

    s: complex
    value: complex
    method: str
    error_estimate: float


def dirichlet_L(chi: DirichletCharacter, s: complex) -> LSeriesValue:
    """L(s, chi) by the Hurwitz route, valid through the critical strip.

    For non-principal chi the per-term Hurwitz pole at s = 1 is removed
    before summing (the removed poles cancel against Sum chi(a) = 0), so
    the value is finite and correct at s = 1 as well.  Principal chi at
    s = 1 raises PoleError.
    """
    s = complex(s)
    q = chi.modulus
    principal = chi.is_principal
    if principal and abs(s - 1) < _POLE_EPS:
        raise PoleError("L(s, principal chi) has its pole at s = 1")
    residues = [a for a in range(1, q + 1) if chi.values[a % q]]
    weights = np.array([complex(chi.values[a % q]) for a in residues])
    xs = np.array([a / q for a in residues])
    hur, point_err = _hurwitz_block(s, xs, deflate=not principal)
    scale = cmath.exp(-s * math.log(q)) if q > 1 else 1.0
    value = complex(scale * np.sum(weights * hur))
    err = abs(scale) * len(residues) * (point_err + 1e-15)
    return LSeriesValue(
        s=s, value=value, method="hurwitz_euler_maclaurin", error_estimate=err
    )


def dirichlet_L_direct(
    chi: DirichletCharacter, s: complex, terms: int = 200000
) -> LSeriesValue:
    """Truncated Dirichlet sum Sum_{m<=terms} chi(m) m^(-s).

    Useful only for Re(s) comfortably > 1.  The error estimate is the
    Abel-summation tail bound (character partial sums bounded by q) for
    non-principal chi, and the integral tail of zeta for principal chi.
    """
    s = complex(s)
    q = chi.modulus
    sigma = s.real
    vals = np.asarray(
        [complex(v) for v in chi.values], dtype=complex
    )[np.arange(1, terms + 1) % q]
    m = np.arange(1, terms + 1, dtype=float)
    total = complex(np.sum(vals * np.power(m, -s)))
    if chi.is_principal:
        if sigma <= 1:
            err = math.inf
        else:
            err = terms ** (1 - sigma) / (sigma - 1)
    else:
        if sigma <= 0:
            err = math.inf
        else:
            err = q * terms ** (-sigma) * (1 + abs(s) / sigma)
    return LSeriesValue(
        s=s, value=total, method="truncated_sum", error_estimate=err
    )


_PRINCIPAL_MOD1 = None


def riemann_zeta(s: complex) -> complex:
    """zeta(s) as the modulus-1 case of dirichlet_L; PoleError at s = 1."""
    global _PRINCIPAL_MOD1
    if _PRINCIPAL_MOD1 is None:
        _PRINCIPAL_MOD1 = DirichletCharacter(1, (1,))
    return dirichlet_L(_PRINCIPAL_MOD1, s).value


def L_removed_23(chi: DirichletCharacter, s: complex) -> complex:
    """L(s, chi) with the Euler factors at 2 and 3 removed.

    Equals the restricted sum over m coprime to 6 of chi(m) m^(-s).
    """
    s = complex(s)
    base = dirichlet_L(chi, s).value
    f2 = 1 - complex(chi(2)) * cmath.exp(-s * math.log(2))
    f3 = 1 - complex(chi(3)) * cmath.exp(-s * math.log(3))
    return base * f2 * f3


def L_squarefree_restricted(
    psi: DirichletCharacter, b: int, w: complex, N: int
) -> complex:
    """Truncated sum over squarefree d <= N coprime to b of psi(d) d^(-w)."""
    if b < 1 or N < 1:
        raise ValueError("b and N must be >= 1")
    w = complex(w)
    q = psi.modulus
    d = np.arange(1, N + 1)
    keep = arith.squarefree_mask(N)[1:]
    if b > 1:
        keep = keep & (np.gcd(d, b) == 1)
    dk = d[keep]
    vals = np.asarray([complex(v) for v in psi.values], dtype=complex)[dk % q]
    return complex(np.sum(vals * np.power(dk.astype(float), -w)))


def lb_finite_product(psi: DirichletCharacter, b: int, w: complex) -> complex:
    """Product over p | b of (1 + psi(p) p^(-w))^(-1).

    This is the factor by which restricting the squarefree sum to
    gcd(d, b) = 1 divides it: each stripped prime removes one binomial
    Euler factor (1 + psi(p) p^(-w)).  Equivalently, the product of
    (1 - psi(p) p^(-w)) / (1 - psi(p)^2 p^(-2w)) over p | b.
    """
    w = complex(w)
    out = 1 + 0j
    for p, _ in arith.factorize(b).factors:
        factor = 1 + complex(psi(p)) * cmath.exp(-w * math.log(p))
        if abs(factor) < _POLE_EPS:
            raise PoleError(f"restricted-sum factor vanishes at p = {p}")
        out /= factor
    return out


# ======================================================================
# closed forms of the slice series
# ======================================================================

def _pow(base: int, s: complex) -> complex:
    return cmath.exp(-s * math.log(base))


def _guard(value: complex, what: str) -> complex:
    if abs(value) < _POLE_EPS:
        raise PoleError(f"denominator {what} vanishes")
    return value


def A_j(j: int, s: complex) -> complex:
    """Nine-branch rational factor in 2^(-s), 3^(-s), keyed by j mod 24.

    Branch selection narrows by residue: first mod 3, then mod 6,
    mod 12, and finally mod 24.
    """
    s = complex(s)
    x2 = _pow(2, s)
    x3 = _pow(3, s)
    if j % 3 == 1:
        return 0j
    if j % 6 == 0:
        return 1 / _guard(1 + x3, "1 + 3^-s")
    if j % 6 == 2:
        return 2 / _guard(1 - x3 * x3, "1 - 3^-2s")
    r12 = j % 12
    if r12 == 5:
        return (1 - x2) * 2 / _guard(1 - x3 * x3, "1 - 3^-2s")
    if r12 == 9:
        return (1 - x2) / _guard(1 + x3, "1 + 3^-s")
    r24 = j % 24
    deep2 = (1 - x2) / _guard(1 + x2, "1 + 2^-s") * (1 + x2 + 2 * x2 * x2)
    if r24 == 3:
        return deep2 / _guard(1 + x3, "1 + 3^-s")
    if r24 == 11:
        return deep2 * 2 / _guard(1 - x3 * x3, "1 - 3^-2s")
    shallow2 = 1 - x2 + 2 * x2 * x2
    if r24 == 15:
        return shallow2 / _guard(1 + x3, "1 + 3^-s")
    if r24 == 23:
        return shallow2 * 2 / _guard(1 - x3 * x3, "1 - 3^-2s")
    raise AssertionError(f"unreachable branch for j = {j}")


def a_n(n: int, s: complex) -> complex:
    """Character-averaged branch factor: (1/8) sum over j, chi of
    chi(j)^(-1) A_j(s) chi(n).

    Defined for n coprime to 24; must reproduce A_{n mod 24}(s) exactly,
    which is the orthogonality check the tests enforce.
    """
    if gcd(n, 24) != 1:
        raise ValueError(f"a_n requires gcd(n, 24) = 1, got n = {n}")
    s = complex(s)
    chars = characters_mod24()
    total = 0j
    for j in _UNITS_MOD24:
        aj = A_j(j, s)
        if aj == 0:
            continue
        for chi in chars:
            # real characters: chi(j)^(-1) = chi(j)
            total += chi.values[j] * aj * chi.values[n % 24]
    return total / 8


def Z_n_closed(n: int, s: complex) -> complex:
    """Closed form of the slice series Sum_m C(3m, -n) m^(-s), n odd squarefree.

    The value is  zeta(s)/zeta(2s) * A_{n mod 24}(s) * (1 - 2^-s)^(-1)
    * L_{2,3}(s, (-n/.)),  where L_{2,3} is the quadratic L-series with
    its Euler factors at 2 and 3 removed.  The explicit geometric factor
    at 2 compensates the removed factor there: the branch table A_j
    carries the true 2-adic unit contribution, so only the trivial
    (1 - 2^-s)^(-1) from zeta remains to be restored.  Identically zero
    when n = 1 mod 3.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError(f"Z_n_closed requires odd positive n, got {n}")
    if not arith.is_squarefree(n):
        raise ValueError(f"Z_n_closed requires squarefree n, got {n}")
    s = complex(s)
    j = n % 24
    if j % 3 == 1:
        return 0j
    branch = A_j(j, s)
    z1 = riemann_zeta(s)
    z2 = _guard(riemann_zeta(2 * s), "zeta(2s)")
    lval = L_removed_23(character_eta(n), s)
    x2 = _pow(2, s)
    return z1 / z2 * branch * lval / _guard(1 - x2, "1 - 2^-s")


def completed_Lambda(n: int, s: complex) -> complex:
    """Completed L-value (pi/f)^(-(s+1)/2) Gamma((s+1)/2) L(s, chi_f).

    chi_f is the primitive character underlying psi_n and f its
    conductor (4n for n = 1 mod 4, n for n = 3 mod 4).  With the true
    conductor the function is exactly self-dual: Lambda(1-s) =
    Lambda(s), which the functional-equation suite checks.  The raw
    mod-12n table cannot be used here: it is imprimitive, and a
    completed L built on the modulus 12n is not self-dual.
    """
    s = complex(s)
    prim = primitive_part(psi_n_character(n))
    f = prim.modulus
    front = cmath.exp(-((s + 1) / 2) * math.log(math.pi / f))
    gam = complex_gamma((s + 1) / 2)
    lval = dirichlet_L(prim, s).value
    return front * gam * lval

"""Integer and modular arithmetic primitives.

Everything downstream -- square-root counting, local Euler factors,
character tables, bulk series evaluation -- reduces to a handful of
tools collected here:

* factorization with a 64-bit input contract (trial division, then
  Brent's cycle variant of Pollard rho behind a Miller-Rabin test),
* the fully extended Kronecker symbol (a/b), defined for every pair of
  integers except (0, 0),
* squarefree detection and the decomposition n = 2^c * k * N^2 * M^2
  with k odd squarefree, N supported on the primes of k, M coprime to
  2k,
* shared sieves (primes, smallest prime factor, squarefree mask) that
  the series code leans on for multiplicative fills.

All functions are pure.  The sieve caches only ever grow and are safe
to share once built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_MAX_FACTOR_INPUT = 2**63 - 1

# Witnesses proving primality for every n < 3.3e24, comfortably past the
# 63-bit input contract (Sorenson-Webster bases).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


# ======================================================================
# primality and factorization
# ======================================================================

def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the 63-bit range."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """One nontrivial factor of composite odd n via Brent's cycle finder."""
    if n % 2 == 0:
        return 2
    # Deterministic seed schedule keeps runs reproducible.
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


@dataclass(frozen=True)
class PrimeFactorization:
    """n = prod p^e over `factors`, ordered by ascending prime."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def reconstruct(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


def factorize(n: int) -> PrimeFactorization:
    """Full factorization of 1 <= n <= 2^63 - 1 (empty list for n = 1)."""
    if not 1 <= n <= _MAX_FACTOR_INPUT:
        raise ValueError(f"factorize requires 1 <= n <= 2^63-1, got {n}")
    found: dict[int, int] = {}
    m = n
    for p in (2, 3, 5):
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    d = 7
    while d * d <= m and d <= 1_000_000:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            found[d] = e
        d += 2
    if m > 1:
        # No prime factor below 1e6 left; m <= 1e12 must itself be prime.
        stack = [m]
        while stack:
            t = stack.pop()
            if is_probable_prime(t):
                found[t] = found.get(t, 0) + 1
                continue
            g = _brent_rho(t)
            stack.append(g)
            stack.append(t // g)
    items = tuple(sorted(found.items()))
    return PrimeFactorization(n=n, factors=items)


def valuation(n: int, p: int) -> int:
    """Exponent of p in n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ======================================================================
# Kronecker symbol
# ======================================================================

def kronecker(a: int, b: int) -> int:
    """Kronecker symbol (a/b), extended to all integers except (0, 0).

    Agrees with the Jacobi symbol for odd b > 0 and with the Legendre
    symbol for odd prime b.  Conventions at the extended arguments:
    (a/2) is 0 for even a and (-1)^((a^2-1)/8) for odd a; (a/-1) is -1
    exactly when a < 0; (a/0) is 1 for a = +-1 and 0 otherwise.
    """
    if b == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if b < 0:
        b = -b
        if a < 0:
            result = -1
    if b % 2 == 0:
        if a % 2 == 0:
            return 0
        v = 0
        while b % 2 == 0:
            b //= 2
            v += 1
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    a %= b
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                result = -result
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            result = -result
        a %= b
    return result if b == 1 else 0


def chi_d(d: int, n: int) -> int:
    """Quadratic character (d/n) with d in the numerator slot.

    Thin wrapper over the Kronecker symbol so call sites read the same
    way formulas do: chi_d(d, 2) = (-1)^((d^2-1)/8) for odd d, and
    chi_d(d, -1) = sign(d).
    """
    return kronecker(d, n)


# ======================================================================
# squarefree structure
# ======================================================================

def is_squarefree(n: int) -> bool:
    """True when no prime square divides n (n >= 1)."""
    if n < 1:
        raise ValueError(f"is_squarefree requires n >= 1, got {n}")
    if n % 4 == 0 or n % 9 == 0 or n % 25 == 0:
        return False
    return all(e == 1 for _, e in factorize(n).factors)


@dataclass(frozen=True)
class SquarefreeSplit:
    """n = 2^two_exponent * kernel * ramified_square^2 * unramified_square^2.

    kernel is odd and squarefree; every prime of ramified_square divides
    kernel; unramified_square is odd and coprime to kernel.
    """

    n: int
    two_exponent: int
    kernel: int
    ramified_square: int
    unramified_square: int

    def reconstruct(self) -> int:
        return (
            2**self.two_exponent
            * self.kernel
            * self.ramified_square**2
            * self.unramified_square**2
        )


def squarefree_split(n: int) -> SquarefreeSplit:
    """Canonical 2^c * k * N^2 * M^2 decomposition of n >= 1."""
    if n < 1:
        raise ValueError(f"squarefree_split requires n >= 1, got {n}")
    c = 0
    m = n
    while m % 2 == 0:
        m //= 2
        c += 1
    kernel = 1
    ram = 1
    unram = 1
    for p, e in factorize(m).factors:
        if e % 2 == 1:
            kernel *= p
            ram *= p ** ((e - 1) // 2)
        else:
            unram *= p ** (e // 2)
    return SquarefreeSplit(
        n=n,
        two_exponent=c,
        kernel=kernel,
        ramified_square=ram,
        unramified_square=unram,
    )


# ======================================================================
# shared sieves
# ======================================================================

_SPF_ARRAY = np.zeros(0, dtype=np.int64)
_SPF_LIST: list[int] = []


def _build_spf(limit: int) -> np.ndarray:
    spf = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            np.minimum(block, p, out=block)
    return spf


def spf_array(limit: int) -> np.ndarray:
    """Smallest-prime-factor table as int64 array (index 0..limit).

    spf[1] = 1 and spf[p] = p for primes; treat the result as
    read-only -- it is a shared cache.
    """
    global _SPF_ARRAY
    if len(_SPF_ARRAY) <= limit:
        _SPF_ARRAY = _build_spf(limit)
    return _SPF_ARRAY


def spf_list(limit: int) -> list[int]:
    """Same table as a plain list, faster for tight Python loops."""
    global _SPF_LIST
    if len(_SPF_LIST) <= limit:
        _SPF_LIST = spf_array(limit).tolist()
    return _SPF_LIST


def primes_up_to(limit: int) -> list[int]:
    """Ascending primes p <= limit."""
    if limit < 2:
        return []
    mask = bytearray([1]) * (limit + 1)
    mask[0] = mask[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = bytearray(len(mask[p * p :: p]))
    return [i for i in range(limit + 1) if mask[i]]


def squarefree_mask(limit: int) -> np.ndarray:
    """Boolean array: mask[n] is True iff n is squarefree (mask[0] False)."""
    mask = np.ones(limit + 1, dtype=bool)
    mask[0] = False
    for q in range(2, math.isqrt(limit) + 1):
        mask[q * q :: q * q] = False
    return mask

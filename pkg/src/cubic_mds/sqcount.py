"""Counting square roots modulo m.

C(m, n) = #{x mod m : x^2 = n (mod m)} is the whole arithmetic engine:
it is multiplicative in m by the Chinese remainder theorem, and on
prime powers it has a short closed form.  The series coefficients are
the specialization  coefficient(m, n) = C(3m, -n).

Two independent routes are kept side by side on purpose: an exhaustive
counter (`count_roots_bruteforce`, plus a whole-residue-table variant)
and the closed formula (`count_roots_prime_power` assembled by
`count_roots`).  Tests pit one against the other.
"""

from __future__ import annotations

from . import arith
from .errors import OracleScaleError

_BRUTEFORCE_LIMIT = 10**7


# ======================================================================
# exhaustive oracles
# ======================================================================

def count_roots_bruteforce(m: int, n: int) -> int:
    """#{x in [0, m) : x^2 = n mod m} by direct enumeration (m <= 1e7)."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m > _BRUTEFORCE_LIMIT:
        raise OracleScaleError(
            f"exhaustive count refused for m = {m} > {_BRUTEFORCE_LIMIT}"
        )
    target = n % m
    return sum(1 for x in range(m) if x * x % m == target)


def count_roots_residue_table(m: int) -> "np.ndarray":
    """Exhaustive counts for every residue at once: table[r] = C(m, r).

    One pass over x in [0, m) histogrammed by x^2 mod m; this is the
    oracle the bulk sweeps use (m <= 1e7).
    """
    import numpy as np

    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m > _BRUTEFORCE_LIMIT:
        raise OracleScaleError(
            f"exhaustive table refused for m = {m} > {_BRUTEFORCE_LIMIT}"
        )
    x = np.arange(m, dtype=np.int64)
    return np.bincount(x * x % m, minlength=m)


# ======================================================================
# closed formula
# ======================================================================

def _unit_count(p: int, alpha: int, u: int) -> int:
    """C(p^alpha, u) for p not dividing u, alpha >= 1."""
    if p == 2:
        if alpha == 1:
            return 1
        if alpha == 2:
            return 2 if u % 4 == 1 else 0
        return 4 if u % 8 == 1 else 0
    return 1 + arith.kronecker(u, p)


def count_roots_prime_power(p: int, alpha: int, n: int) -> int:
    """C(p^alpha, n) in closed form; alpha = 0 gives 1.

    Splitting n = p^r * n0 with p not dividing n0 (n = 0 behaves as
    r = infinity): r >= alpha contributes p^floor(alpha/2); r < alpha
    odd contributes 0; r < alpha even contributes p^(r/2) times the
    unit-square count of n0 modulo p^(alpha-r).
    """
    if alpha < 0:
        raise ValueError(f"exponent must be >= 0, got {alpha}")
    if alpha == 0:
        return 1
    if n % p == 0:
        r = 0
        m = n
        while r < alpha and m % p == 0:
            m //= p
            r += 1
        if r >= alpha:
            return p ** (alpha // 2)
        if r % 2 == 1:
            return 0
        return p ** (r // 2) * _unit_count(p, alpha - r, m)
    return _unit_count(p, alpha, n)


def count_roots(m: int, n: int) -> int:
    """C(m, n) for m >= 1, any integer n, via CRT over factorize(m)."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    out = 1
    for p, e in arith.factorize(m).factors:
        out *= count_roots_prime_power(p, e, n)
        if out == 0:
            return 0
    return out


# ======================================================================
# series coefficients
# ======================================================================

def coefficient(m: int, n: int) -> int:
    """Series coefficient C(3m, -n) for m, n >= 1."""
    if m < 1 or n < 1:
        raise ValueError(f"coefficient requires m, n >= 1, got ({m}, {n})")
    return count_roots(3 * m, -n)


def coefficient_sieve(n: int, m_cutoff: int) -> list[int]:
    """[0, C(3*1, -n), ..., C(3*m_cutoff, -n)] by multiplicative sieve.

    Index 0 is a placeholder.  Identical to calling coefficient(m, n)
    for each m, but fills a smallest-prime-factor table once and reuses
    prime-power counts, which is what makes cutoffs in the millions
    affordable.
    """
    if n < 1 or m_cutoff < 1:
        raise ValueError(
            f"coefficient_sieve requires n, m_cutoff >= 1, got ({n}, {m_cutoff})"
        )
    spf = arith.spf_list(m_cutoff)
    ppc: dict[tuple[int, int], int] = {}

    def local(p: int, e: int) -> int:
        key = (p, e)
        v = ppc.get(key)
        if v is None:
            v = count_roots_prime_power(p, e, -n)
            ppc[key] = v
        return v

    # h[k] = C(k, -n), multiplicative fill.
    h = [0] * (m_cutoff + 1)
    h[1] = 1
    for m in range(2, m_cutoff + 1):
        p = spf[m]
        q = m // p
        e = 1
        while q % p == 0:
            q //= p
            e += 1
        hq = h[q]
        h[m] = hq * local(p, e) if hq else 0

    # three_part[j] = C(3^(j+1), -n); the 3-exponent of 3m is v3(m) + 1.
    three_part = [local(3, 1)]
    g = [0] * (m_cutoff + 1)
    for m in range(1, m_cutoff + 1):
        if m % 3:
            g[m] = three_part[0] * h[m]
        else:
            t = m
            e = 0
            while t % 3 == 0:
                t //= 3
                e += 1
            while len(three_part) <= e:
                three_part.append(local(3, len(three_part) + 1))
            g[m] = three_part[e] * h[t]
    return g

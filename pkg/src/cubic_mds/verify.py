"""Numbered verification suites.

Each suite checks one acceptance property end to end and returns a
CriterionResult.  The same registry drives the command line (`verify`)
and the acceptance tests, so a pass here is exactly a pass there.

Budgets are wall-clock seconds calibrated for a 4-core box; on smaller
machines they are scaled up proportionally.  A criterion passes only
if the mathematical check succeeds within its scaled budget.
"""

from __future__ import annotations

import math
import os
import random
import time
from dataclasses import dataclass

import numpy as np

from . import arith, forms, mds, sqcount
from .euler import LocalFactorInput, local_factor_closed, local_factor_oracle
from .lfunc import (
    A_j,
    DirichletCharacter,
    Z_n_closed,
    a_n,
    all_characters_mod,
    characters_mod24,
    dirichlet_L,
    gauss_sum,
    lb_finite_product,
    L_squarefree_restricted,
    psi_n_character,
    real_primitive_characters,
    twisted_exponential_sum,
)

# ======================================================================
# result plumbing
# ======================================================================


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    elapsed: float
    budget: float

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:2d} [{self.name}]: {verdict} - {self.detail}"


def scaled_budget(reference_seconds: float) -> float:
    """Reference budgets assume 4 cores; scale up on smaller machines."""
    cores = os.cpu_count() or 1
    return reference_seconds * 4.0 / min(4, cores)


def _finish(
    number: int,
    name: str,
    ok: bool,
    detail: str,
    t0: float,
    reference_seconds: float,
) -> CriterionResult:
    elapsed = time.perf_counter() - t0
    budget = scaled_budget(reference_seconds)
    if elapsed > budget:
        ok = False
        detail += "; exceeded time budget"
    return CriterionResult(
        number=number,
        name=name,
        passed=ok,
        detail=detail,
        elapsed=elapsed,
        budget=budget,
    )


# ======================================================================
# criterion 1: counting formula vs exhaustive count
# ======================================================================


def criterion_count_oracle() -> CriterionResult:
    """C(m, n) by the multiplicative formula equals the exhaustive count
    for every 1 <= m <= 2000 and -2000 <= n <= 2000, exactly."""
    t0 = time.perf_counter()
    m_max, n_lim = 2000, 2000
    ns = np.arange(-n_lim, n_lim + 1)

    # Formula route, batched: counts per residue for every prime power,
    # assembled multiplicatively per m.  This is the same composition
    # count_roots performs, evaluated once per residue class.
    ppc: dict[int, np.ndarray] = {}
    for p in arith.primes_up_to(m_max):
        q = p
        e = 1
        while q <= m_max:
            ppc[q] = np.asarray(
                [sqcount.count_roots_prime_power(p, e, r) for r in range(q)],
                dtype=np.int64,
            )
            q *= p
            e += 1

    mismatches = 0
    first_bad = ""
    for m in range(1, m_max + 1):
        exhaustive = sqcount.count_roots_residue_table(m)[ns % m]
        formula = np.ones(ns.shape, dtype=np.int64)
        for p, e in arith.factorize(m).factors:
            formula *= ppc[p**e][ns % (p**e)]
        bad = formula != exhaustive
        if bad.any():
            mismatches += int(bad.sum())
            if not first_bad:
                i = int(np.argmax(bad))
                first_bad = f"; first at (m={m}, n={int(ns[i])})"

    # Tie the scalar interface to the batched values on a fixed sample.
    rng = random.Random(20260819)
    sample_bad = 0
    for _ in range(2000):
        m = rng.randint(1, m_max)
        n = rng.randint(-n_lim, n_lim)
        if sqcount.count_roots(m, n) != sqcount.count_roots_bruteforce(m, n):
            sample_bad += 1

    ok = mismatches == 0 and sample_bad == 0
    detail = (
        f"{m_max * (2 * n_lim + 1)} (m,n) pairs exact, "
        f"{mismatches} residue mismatches{first_bad}, "
        f"{sample_bad} scalar-route mismatches in 2000 samples"
    )
    return _finish(1, "count-oracle", ok, detail, t0, 60.0)


# ======================================================================
# criterion 2: form count equals counting coefficient
# ======================================================================


def criterion_form_bijection() -> CriterionResult:
    """count_forms(m, n) = C(3m, -n) for all m, n <= 300, exactly."""
    t0 = time.perf_counter()
    bad = 0
    first_bad = ""
    for m in range(1, 301):
        for n in range(1, 301):
            if forms.count_forms(m, n) != sqcount.coefficient(m, n):
                bad += 1
                if not first_bad:
                    first_bad = f"; first at (m={m}, n={n})"
    detail = f"90000 pairs exact, {bad} mismatches{first_bad}"
    return _finish(2, "form-bijection", bad == 0, detail, t0, 10.0)


# ======================================================================
# criterion 3: closed local factors vs truncated local series
# ======================================================================


def criterion_local_factors() -> CriterionResult:
    """Closed local factor vs 60-term local series, rel <= 1e-10,
    s = 2, for every prime p <= 53 and every n <= 400."""
    t0 = time.perf_counter()
    worst = 0.0
    worst_at = ""
    for p in arith.primes_up_to(53):
        for n in range(1, 401):
            closed = local_factor_closed(p, n, 2.0)
            oracle = local_factor_oracle(LocalFactorInput(p=p, n=n, s=2.0, K=60))
            rel = abs(closed - oracle) / max(abs(closed), abs(oracle), 1e-300)
            if rel > worst:
                worst = rel
                worst_at = f"(p={p}, n={n})"
    ok = worst <= 1e-10
    detail = f"16 primes x 400 n, worst rel {worst:.3e} at {worst_at}"
    return _finish(3, "local-factors", ok, detail, t0, 30.0)


# ======================================================================
# criterion 4: inner-series closed form vs truncated sum
# ======================================================================


def criterion_zn_closed() -> CriterionResult:
    """Closed inner series vs 1e5-term truncation at s = 2.5,
    rel <= 1e-4 for every odd squarefree n <= 60, zeros exact."""
    t0 = time.perf_counter()
    worst = 0.0
    worst_at = ""
    zero_bad = 0
    checked = 0
    for n in range(1, 61, 2):
        if not arith.is_squarefree(n):
            continue
        checked += 1
        closed = Z_n_closed(n, 2.5)
        oracle = mds.Z_n_oracle(n, 2.5, 100000)
        if n % 3 == 1:
            if closed != 0 or oracle != 0:
                zero_bad += 1
            continue
        rel = abs(closed - oracle) / max(abs(closed), abs(oracle), 1e-300)
        if rel > worst:
            worst = rel
            worst_at = f"n={n}"
    ok = worst <= 1e-4 and zero_bad == 0
    detail = (
        f"{checked} odd squarefree n, worst rel {worst:.3e} at {worst_at}, "
        f"{zero_bad} wrong exact zeros"
    )
    return _finish(4, "inner-series-closed-form", ok, detail, t0, 120.0)


# ======================================================================
# criterion 5: residue-class decomposition of the branch factor
# ======================================================================


def criterion_character_decomposition() -> CriterionResult:
    """a_n(s) = A_{n mod 24}(s) to 1e-12 for all n <= 1000 coprime to
    24 at s in {2, 3, 1.5 + 0.7i}."""
    t0 = time.perf_counter()
    worst = 0.0
    count = 0
    for s in (2.0, 3.0, 1.5 + 0.7j):
        for n in range(1, 1001):
            if math.gcd(n, 24) != 1:
                continue
            count += 1
            diff = abs(a_n(n, s) - A_j(n % 24, s))
            worst = max(worst, diff)
    ok = worst <= 1e-12
    detail = f"{count} (n, s) pairs, worst abs diff {worst:.3e}"
    return _finish(5, "character-decomposition", ok, detail, t0, 5.0)


# ======================================================================
# criterion 6: Gauss sums
# ======================================================================


def criterion_gauss_sums() -> CriterionResult:
    """Part 1: tau(chi) in {sqrt(k), i sqrt(k)} to 1e-10 for every real
    primitive chi of modulus <= 200.  Part 2: the claim
    tau(psi_n) = i sqrt(12 n) for n in {1, 5, 7, 11, 13}."""
    t0 = time.perf_counter()
    worst1 = 0.0
    n_chars = 0
    for chi in real_primitive_characters(200):
        n_chars += 1
        tau = gauss_sum(chi)
        root = math.sqrt(chi.modulus)
        diff = min(abs(tau - root), abs(tau - 1j * root))
        worst1 = max(worst1, diff)
    part1_ok = worst1 <= 1e-10

    # Part 2, taken literally: the modulus-12n sum against i sqrt(12 n).
    worst2 = 0.0
    measured = []
    for n in (1, 5, 7, 11, 13):
        tau = twisted_exponential_sum(psi_n_character(n))
        claim = 1j * math.sqrt(12 * n)
        worst2 = max(worst2, abs(tau - claim))
        measured.append(f"n={n}: {tau:.6f} vs {claim:.6f}")
    part2_ok = worst2 <= 1e-10

    ok = part1_ok and part2_ok
    detail = (
        f"part 1: {n_chars} real primitive chars, worst {worst1:.3e}"
        f" ({'ok' if part1_ok else 'FAIL'}); "
        f"part 2: worst |tau - i sqrt(12n)| = {worst2:.3e}"
        f" ({'ok' if part2_ok else 'FAIL: ' + '; '.join(measured)})"
    )
    return _finish(6, "gauss-sums", ok, detail, t0, 10.0)


# ======================================================================
# criterion 7: completed functional equation
# ======================================================================


def criterion_functional_equation() -> CriterionResult:
    """|Lambda(1-s) - Lambda(s)| / |Lambda(s)| <= 1e-8 for
    n in {1, 5, 7, 11, 13, 17} at s in {0.3, 0.75, 0.6+2i, 0.5+5i}."""
    t0 = time.perf_counter()
    worst = 0.0
    worst_at = ""
    for n in (1, 5, 7, 11, 13, 17):
        comps = mds.functional_equation_check(n, [0.3, 0.75, 0.6 + 2j, 0.5 + 5j])
        for s, c in zip((0.3, 0.75, 0.6 + 2j, 0.5 + 5j), comps):
            if c.rel_err > worst:
                worst = c.rel_err
                worst_at = f"(n={n}, s={s})"
    ok = worst <= 1e-8
    detail = f"24 grid points, worst rel {worst:.3e} at {worst_at}"
    return _finish(7, "functional-equation", ok, detail, t0, 30.0)


# ======================================================================
# criterion 8: squarefree-restricted L identity
# ======================================================================


def criterion_squarefree_l_identity() -> CriterionResult:
    """L(2w, psi^2) L_b(w, psi) = L(w, psi) prod_{p|b}(1+psi(p)p^-w)^-1
    to 1e-6 at w = 2.5 for every psi of modulus <= 60 and b <= 30."""
    t0 = time.perf_counter()
    w = 2.5
    terms = 20000
    worst = 0.0
    worst_at = ""
    combos = 0
    for q in range(1, 61):
        for psi in all_characters_mod(q):
            psi_sq = DirichletCharacter(q, [psi(k) ** 2 for k in range(q)])
            l2 = dirichlet_L(psi_sq, 2 * w).value
            l1 = dirichlet_L(psi, w).value
            for b in range(1, 31):
                lb = L_squarefree_restricted(psi, b, w, terms)
                lhs = l2 * lb
                rhs = l1 * lb_finite_product(psi, b, w)
                rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
                combos += 1
                if rel > worst:
                    worst = rel
                    worst_at = f"(q={q}, b={b})"
    ok = worst <= 1e-6
    detail = f"{combos} (psi, b) combos, worst rel {worst:.3e} at {worst_at}"
    return _finish(8, "squarefree-l-identity", ok, detail, t0, 30.0)


# ======================================================================
# criterion 9: residue identity and residue product stability
# ======================================================================


def criterion_residue_identity() -> CriterionResult:
    """The unfolded residue-proof identity to rel 1e-3 at (2.5, 2.0)
    with cutoffs 2000, and the residue product at s1 = 1/2 stable to
    1e-8 between prime cutoffs 1e4 and 2e4."""
    t0 = time.perf_counter()
    triv = next(c for c in characters_mod24() if c.is_principal)
    spec = mds.TruncationSpec(m_cutoff=2000, n_cutoff=2000, tolerance=1e-3)
    cmp1 = mds.residue_identity_check(triv, 2.5, 2.0, spec)
    lo = mds.residue_product(triv, 0.5, 10000)
    hi = mds.residue_product(triv, 0.5, 20000)
    gap = abs(hi - lo)
    ok = cmp1.passed and gap <= 1e-8
    detail = (
        f"identity rel {cmp1.rel_err:.3e} (tol 1e-3), "
        f"product gap {gap:.3e} between P=1e4 and 2e4 (tol 1e-8)"
    )
    return _finish(9, "residue-identity", ok, detail, t0, 60.0)


# ======================================================================
# criterion 10: regrouping and decomposition
# ======================================================================


def criterion_global_regrouping() -> CriterionResult:
    """Z_direct = Z_coeff to 1e-13 at cutoffs (300, 300), s = (2, 2);
    the coprime-to-6 decomposition to 1e-8 at (2.5, 2.0)."""
    t0 = time.perf_counter()
    spec_a = mds.TruncationSpec(m_cutoff=300, n_cutoff=300, tolerance=1e-13)
    za = mds.Z_direct(2.0, 2.0, spec_a)
    zb = mds.Z_coeff(2.0, 2.0, spec_a)
    diff = abs(za - zb)

    spec_b = mds.TruncationSpec(m_cutoff=1_200_000, n_cutoff=30, tolerance=1e-8)
    cmp_d = mds.decomposition_check(2.5, 2.0, spec_b)

    ok = diff <= 1e-13 and cmp_d.passed
    detail = (
        f"regrouping |diff| {diff:.3e} (tol 1e-13), "
        f"decomposition rel {cmp_d.rel_err:.3e} (tol 1e-8)"
    )
    return _finish(10, "global-regrouping", ok, detail, t0, 60.0)


# ======================================================================
# registry
# ======================================================================

SUITES = (
    criterion_count_oracle,
    criterion_form_bijection,
    criterion_local_factors,
    criterion_zn_closed,
    criterion_character_decomposition,
    criterion_gauss_sums,
    criterion_functional_equation,
    criterion_squarefree_l_identity,
    criterion_residue_identity,
    criterion_global_regrouping,
)

SUITE_NAMES = {
    1: "count-oracle",
    2: "form-bijection",
    3: "local-factors",
    4: "inner-series-closed-form",
    5: "character-decomposition",
    6: "gauss-sums",
    7: "functional-equation",
    8: "squarefree-l-identity",
    9: "residue-identity",
    10: "global-regrouping",
}


def run_suite(selector: str) -> list[CriterionResult]:
    """Run "all", a criterion number ("3"), or a suite name."""
    selector = selector.strip().lower()
    if selector == "all":
        return [fn() for fn in SUITES]
    by_name = {name: num for num, name in SUITE_NAMES.items()}
    if selector.isdigit() and int(selector) in SUITE_NAMES:
        return [SUITES[int(selector) - 1]()]
    if selector in by_name:
        return [SUITES[by_name[selector] - 1]()]
    raise ValueError(
        f"unknown suite {selector!r}; use 'all', 1..10, or one of "
        + ", ".join(sorted(by_name))
    )

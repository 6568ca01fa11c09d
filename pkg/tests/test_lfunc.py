"""Characters, Gauss sums, Hurwitz/L evaluation, slice closed forms."""

import cmath
import math

import mpmath
import numpy as np
import pytest

from cubic_mds import arith, lfunc
from cubic_mds.errors import PoleError
from cubic_mds.lfunc import (
    DirichletCharacter,
    A_j,
    L_removed_23,
    L_squarefree_restricted,
    Z_n_closed,
    a_n,
    all_characters_mod,
    character_eta,
    characters_mod24,
    completed_Lambda,
    complex_gamma,
    dirichlet_L,
    dirichlet_L_direct,
    gauss_sum,
    hurwitz_zeta,
    lb_finite_product,
    primitive_part,
    principal_character,
    psi_n_character,
    real_primitive_characters,
    riemann_zeta,
    twisted_exponential_sum,
)

mpmath.mp.dps = 30


def mp_hurwitz(s: complex, x: float) -> complex:
    return complex(mpmath.zeta(mpmath.mpc(s), mpmath.mpf(x)))


# ======================================================================
# gamma and Hurwitz zeta
# ======================================================================


def test_gamma_against_mpmath():
    pts = [0.5, 1.0, 3.7, -0.5 + 0.0j, 2.5 + 6j, -1.5 + 3j, 0.25 - 20j]
    for z in pts:
        want = complex(mpmath.gamma(mpmath.mpc(z)))
        got = complex_gamma(complex(z))
        assert abs(got - want) <= 1e-11 * abs(want), z


def test_gamma_pole():
    for z in [0.0, -1.0, -7.0]:
        with pytest.raises(PoleError):
            complex_gamma(z)


def test_hurwitz_clean_region_absolute_1e10():
    # Documented guarantee: abs error < 1e-10 for Re(s) >= 0, x >= 0.05.
    worst = 0.0
    for s in [0.0 + 0j, 0.5 + 0j, 2.0 + 0j, 0.25 + 5j, 2.0 + 30j, 1.5 - 50j]:
        for x in [0.05, 1 / 12.0, 0.25, 0.5, 23 / 24.0, 1.0]:
            got = hurwitz_zeta(s, x)
            want = mp_hurwitz(s, x)
            worst = max(worst, abs(got - want))
    assert worst < 1e-10


def test_hurwitz_error_estimate_honest_on_corners():
    # Outside the clean region the returned estimate must still bound
    # the actual error against a 30-digit reference.
    from cubic_mds.lfunc import _hurwitz_block

    for s in [-2.0 + 50j, -1.5 + 35j, 2.5 + 0j, 1.0001 + 0j, 2.0 + 50j]:
        for x in [0.007, 0.05, 0.4, 1.0]:
            values, est = _hurwitz_block(complex(s), np.array([x]), False)
            actual = abs(complex(values[0]) - mp_hurwitz(s, x))
            assert actual <= est, (s, x, actual, est)


def test_hurwitz_deflated_at_one_is_minus_digamma():
    from cubic_mds.lfunc import _hurwitz_block

    for x in [0.1, 0.3, 0.5, 5 / 7.0, 1.0]:
        values, _ = _hurwitz_block(1.0 + 0j, np.array([x]), True)
        want = -complex(mpmath.digamma(mpmath.mpf(x)))
        assert abs(complex(values[0]) - want) < 1e-12, x


def test_hurwitz_guards():
    with pytest.raises(PoleError):
        hurwitz_zeta(1.0, 0.5)
    with pytest.raises(ValueError):
        hurwitz_zeta(2.0, 0.0)
    with pytest.raises(ValueError):
        hurwitz_zeta(2.0, 1.5)


def test_riemann_zeta_against_mpmath():
    for s in [2.0, 3.0, 0.5 + 14.1347j, -1.5 + 2j, 2.5 + 40j]:
        want = complex(mpmath.zeta(mpmath.mpc(s)))
        got = riemann_zeta(complex(s))
        assert abs(got - want) <= 1e-10 * max(1.0, abs(want)), s


# ======================================================================
# characters
# ======================================================================


def test_character_validation():
    with pytest.raises(ValueError):
        DirichletCharacter(3, (1, 1))  # wrong table length
    with pytest.raises(ValueError):
        DirichletCharacter(5, (0, 1, 2, 3, 4))  # chi(-1) not +-1


def test_principal_character():
    chi = principal_character(12)
    assert [chi(k) for k in range(12)] == [
        0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1
    ]
    assert chi.is_principal
    assert chi.conductor == 1


def test_characters_mod24_structure():
    chars = characters_mod24()
    assert len(chars) == 8
    assert chars[0].is_principal
    for j, chi in enumerate(chars):
        assert chi(5) == (-1 if j & 1 else 1)
        assert chi(7) == (-1 if j & 2 else 1)
        assert chi(13) == (-1 if j & 4 else 1)
        assert chi.is_real
        # real 2-torsion group: chi * chi = principal
        for u in (1, 5, 7, 11, 13, 17, 19, 23):
            assert chi(u) in (1, -1)
            assert chi(u) * chi(u) == 1


def test_characters_mod24_orthogonality():
    chars = characters_mod24()
    units = (1, 5, 7, 11, 13, 17, 19, 23)
    for i, chi in enumerate(chars):
        for k, psi in enumerate(chars):
            inner = sum(chi(u) * psi(u) for u in units)
            assert inner == (8 if i == k else 0)


def test_all_characters_mod_counts_and_orthogonality():
    for q in [1, 2, 3, 8, 12, 15, 24, 40]:
        chars = all_characters_mod(q)
        phi = sum(1 for a in range(1, q + 1) if math.gcd(a, q) == 1)
        assert len(chars) == phi
        tables = {tuple(np.round(np.asarray(c.values, complex), 9).tolist())
                  for c in chars}
        assert len(tables) == phi
        for chi in chars:
            total = sum(complex(chi(a)) for a in range(q))
            want = phi if chi.is_principal else 0.0
            assert abs(total - want) < 1e-9, q
            # multiplicativity on a few pairs
            for a in range(1, q):
                for b in (2, 5):
                    assert abs(
                        complex(chi(a * b)) - complex(chi(a)) * complex(chi(b))
                    ) < 1e-12


def test_character_eta_matches_symbol():
    for n in [1, 5, 7, 15, 33]:
        chi = character_eta(n)
        assert chi.modulus == 4 * n
        for m in range(1, 60):
            if math.gcd(m, 4 * n) == 1:
                assert chi(m) == arith.kronecker(-n, m), (n, m)


def test_psi_n_conductors_frozen():
    # conductor 4n for n = 1 mod 4, n for n = 3 mod 4; never 12n since
    # the mod-3 indicator window is principal.
    expected = {1: 4, 5: 20, 7: 7, 11: 11, 13: 52, 17: 68, 19: 19, 23: 23}
    for n, cond in expected.items():
        psi = psi_n_character(n)
        assert psi.modulus == 12 * n
        assert psi.conductor == cond, n
        assert psi.parity == 1


def test_psi_n_rejects_bad_input():
    for n in [2, 9, 12, 45]:
        with pytest.raises(ValueError):
            psi_n_character(n)


def test_primitive_part_properties():
    for n in [1, 5, 7, 13, 23]:
        psi = psi_n_character(n)
        prim = primitive_part(psi)
        assert prim.modulus == psi.conductor
        assert prim.is_primitive
        # agreement on residues coprime to the big modulus
        for m in range(1, 12 * n):
            if math.gcd(m, 12 * n) == 1:
                assert prim(m) == psi(m), (n, m)


# ======================================================================
# Gauss sums
# ======================================================================


def test_gauss_sums_real_primitive_sqrt_axis():
    chars = real_primitive_characters(60)
    assert chars
    for chi in chars:
        tau = gauss_sum(chi)
        root = math.sqrt(chi.modulus)
        if chi.parity == 0:
            assert abs(tau - root) < 1e-10, chi.modulus
        else:
            assert abs(tau - 1j * root) < 1e-10, chi.modulus


def test_gauss_sum_rejects_imprimitive():
    with pytest.raises(ValueError):
        gauss_sum(psi_n_character(5))
    with pytest.raises(ValueError):
        gauss_sum(principal_character(8))


def test_twisted_sum_matches_definition():
    for chi in [psi_n_character(5), character_eta(7), characters_mod24()[3]]:
        q = chi.modulus
        want = sum(
            complex(chi(l)) * cmath.exp(2j * math.pi * l / q)
            for l in range(q)
        )
        assert abs(twisted_exponential_sum(chi) - want) < 1e-9


def test_twisted_sums_of_psi_frozen():
    # Raw imprimitive sums: tau(psi_1) = 2i, tau(psi_5) = -i sqrt(20),
    # tau(psi_7) = tau(psi_11) = 0, tau(psi_13) = +i sqrt(52).  None
    # equals i sqrt(12 n).
    frozen = {
        1: 2j,
        5: -1j * math.sqrt(20),
        7: 0j,
        11: 0j,
        13: 1j * math.sqrt(52),
    }
    for n, want in frozen.items():
        got = twisted_exponential_sum(psi_n_character(n))
        assert abs(got - want) < 1e-9, n
        assert abs(got - 1j * math.sqrt(12 * n)) > 1.0, n


def test_gauss_sum_of_primitive_part_of_psi():
    for n in [1, 5, 7, 11, 13]:
        prim = primitive_part(psi_n_character(n))
        tau = gauss_sum(prim)
        assert abs(tau - 1j * math.sqrt(prim.modulus)) < 1e-10, n


# ======================================================================
# L values
# ======================================================================


def test_dirichlet_L_matches_direct_sum():
    for chi in [character_eta(5), psi_n_character(7), characters_mod24()[6]]:
        for s in [2.5 + 0j, 3.0 + 1.0j]:
            a = dirichlet_L(chi, s)
            b = dirichlet_L_direct(chi, s, 200000)
            assert abs(a.value - b.value) <= (
                a.error_estimate + b.error_estimate
            ), (chi.modulus, s)


def test_dirichlet_L_error_estimate_vs_mpmath():
    # Independent 30-digit reference: q^-s sum of Hurwitz values away
    # from s = 1, and -(1/q) sum chi(a) digamma(a/q) exactly at s = 1
    # (the per-term zeta poles cancel for non-principal chi).
    for chi in [character_eta(5), characters_mod24()[1]]:
        q = chi.modulus
        for s in [0.5 + 0j, 1.0 + 0j, 0.3 + 5j, 2.0 + 0j]:
            ref = mpmath.mpc(0)
            for a in range(1, q + 1):
                v = chi(a)
                if not v:
                    continue
                if s == 1:
                    ref -= v * mpmath.digamma(mpmath.mpf(a) / q) / q
                else:
                    ref += v * mpmath.zeta(mpmath.mpc(s), mpmath.mpf(a) / q)
            if s != 1:
                ref *= mpmath.power(q, -mpmath.mpc(s))
            got = dirichlet_L(chi, complex(s))
            assert abs(got.value - complex(ref)) <= got.error_estimate, (q, s)


def test_dirichlet_L_principal_pole():
    with pytest.raises(PoleError):
        dirichlet_L(principal_character(6), 1.0)


def test_dirichlet_L_nonprincipal_finite_at_one():
    # L(1, chi_-4) = pi/4.
    chi = primitive_part(character_eta(1))
    got = dirichlet_L(chi, 1.0).value
    assert abs(got - math.pi / 4) < 1e-12


def test_euler_product_spot_check():
    chi = character_eta(5)
    s = 3.0 + 0j
    prod = 1.0 + 0j
    for p in arith.primes_up_to(100000):
        v = chi(p)
        if v:
            prod /= 1 - v * p**-3.0
    assert abs(dirichlet_L(chi, s).value - prod) < 1e-9


def test_L_removed_23_is_coprime6_sum():
    for n in [5, 7, 11]:
        chi = character_eta(n)
        s = 2.5
        want = sum(
            chi(m) * m**-s
            for m in range(1, 20001)
            if m % 2 and m % 3
        )
        assert abs(L_removed_23(chi, s) - want) < 1e-8, n


def test_squarefree_restricted_identity_small():
    # L(2w, psi^2) * Sum_{d squarefree, (d,b)=1} psi(d) d^-w equals
    # L(w, psi) * prod_{p|b} (1 + psi(p) p^-w)^(-1).
    w = 2.5
    for q in [5, 8, 12]:
        for psi in all_characters_mod(q):
            psi_sq = DirichletCharacter(
                q, [complex(v) ** 2 for v in psi.values]
            )
            for b in [1, 6, 10]:
                lhs = dirichlet_L(psi_sq, 2 * w).value * L_squarefree_restricted(
                    psi, b, w, 20000
                )
                rhs = dirichlet_L(psi, w).value * lb_finite_product(psi, b, w)
                assert abs(lhs - rhs) <= 1e-6 * max(1.0, abs(rhs)), (q, b)


# ======================================================================
# branch factors and slice closed forms
# ======================================================================


def test_A_j_vanishes_on_1_mod_3():
    for j in (1, 7, 13, 19):
        assert A_j(j, 2.0) == 0
        assert A_j(j, 1.5 + 0.7j) == 0


def test_A_j_explicit_at_s2():
    # x2 = 1/4, x3 = 1/9.  j = 5 mod 12: (1 - x2) * 2 / (1 - x3^2).
    want = (1 - 0.25) * 2 / (1 - 1 / 81.0)
    assert abs(A_j(5, 2.0) - want) < 1e-15
    # j = 0 mod 6: 1 / (1 + x3).
    assert abs(A_j(6, 2.0) - 1 / (1 + 1 / 9.0)) < 1e-15


def test_a_n_reproduces_branch_factor():
    for s in [2.0 + 0j, 1.5 + 0.7j]:
        for n in range(1, 200):
            if math.gcd(n, 24) != 1:
                continue
            assert abs(a_n(n, s) - A_j(n % 24, s)) < 1e-12, (n, s)
    with pytest.raises(ValueError):
        a_n(6, 2.0)


def test_Z_n_closed_zero_slices():
    for n in [1, 7, 13, 19, 25, 31]:
        if arith.is_squarefree(n):
            assert Z_n_closed(n, 2.5) == 0, n


def test_Z_n_closed_vs_partial_sum():
    from cubic_mds import sqcount

    for n in [3, 5, 11, 15, 23, 35]:
        s = 2.5
        coeffs = sqcount.coefficient_sieve(n, 30000)
        partial = sum(c * m**-s for m, c in enumerate(coeffs) if m and c)
        got = Z_n_closed(n, s)
        assert abs(got - partial) <= 2e-5 * max(1.0, abs(got)), n


def test_Z_n_closed_rejects_bad_n():
    for n in [2, 9, 45]:
        with pytest.raises(ValueError):
            Z_n_closed(n, 2.5)


# ======================================================================
# completed values and self-duality
# ======================================================================


def test_completed_Lambda_self_dual():
    for n in [1, 5, 7, 11, 13]:
        for s in [0.3 + 0j, 0.75 + 0j, 0.6 + 2j, 0.5 + 5j]:
            a = completed_Lambda(n, s)
            b = completed_Lambda(n, 1 - s)
            assert abs(a - b) <= 1e-10 * max(abs(a), abs(b)), (n, s)


def test_completed_Lambda_gamma_pole():
    with pytest.raises(PoleError):
        completed_Lambda(5, -1.0)

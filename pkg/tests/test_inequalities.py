"""Inequality checks: remainder, hypotheses, main theorem, baselines."""

import math

import numpy as np
import pytest

from qcovdet import (
    FAIL,
    HYPOTHESIS_NOT_MET,
    KM,
    PASS,
    SLD,
    WY,
    DensityMatrix,
    asymmetric_kernel,
    binomial_remainder,
    check_cross,
    check_function_ordering,
    check_hierarchy,
    check_main_inequality,
    check_robertson_schrodinger,
    classical_kernel,
    custom_kernel,
    minkowski_check,
    sample_instance,
    sample_unitary,
    symmetric_kernel,
    wyd,
)

import oracles


class TestRemainder:
    def test_n1_empty_sum(self):
        assert binomial_remainder(3.7, 0.2, 1) == 0.0

    def test_n2_geometric_cross_term(self):
        a, b = 0.9, 0.4
        assert binomial_remainder(a, b, 2) == pytest.approx(
            2.0 * math.sqrt(a * b), rel=1e-15
        )

    def test_n3_all_ones(self):
        assert binomial_remainder(1.0, 1.0, 3) == pytest.approx(6.0, abs=1e-15)

    def test_zero_arguments_kill_every_term(self):
        assert binomial_remainder(0.0, 5.0, 4) == 0.0
        assert binomial_remainder(5.0, 0.0, 4) == 0.0

    def test_matches_oracle_sum(self):
        for big_n in (2, 3, 4, 5):
            assert binomial_remainder(0.37, 1.9, big_n) == pytest.approx(
                oracles.remainder_sum(0.37, 1.9, big_n), rel=1e-14
            )

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            binomial_remainder(-0.1, 1.0, 2)
        with pytest.raises(ValueError):
            binomial_remainder(1.0, -0.1, 2)
        with pytest.raises(ValueError):
            binomial_remainder(1.0, 1.0, 0)


class TestMinkowski:
    def test_proportional_equality(self):
        rep = minkowski_check(np.eye(2), np.eye(2))
        assert rep["ok"]
        assert rep["gap"] == pytest.approx(0.0, abs=1e-12)

    def test_singular_summands(self):
        rep = minkowski_check(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        assert rep["ok"]
        assert rep["lhs_root"] == pytest.approx(1.0)
        assert rep["rhs_roots"] == 0.0

    def test_random_psd_pairs(self):
        rng = np.random.default_rng(50)
        for _ in range(200):
            nn = rng.integers(1, 7)
            a = rng.standard_normal((nn, nn))
            b = rng.standard_normal((nn, nn))
            rep = minkowski_check(a @ a.T, b @ b.T)
            assert rep["ok"]

    def test_rejects_non_symmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            minkowski_check(np.array([[1.0, 2.0], [0.0, 1.0]]), np.eye(2))

    def test_rejects_indefinite(self):
        with pytest.raises(ValueError, match="semidefinite"):
            minkowski_check(np.diag([1.0, -1.0]), np.eye(2))


class TestFunctionOrdering:
    def test_reflexive(self):
        rep = check_function_ordering(WY, WY)
        assert rep.ok
        assert rep.min_margin == pytest.approx(0.0, abs=1e-15)

    def test_sld_dominates_everything(self):
        for f in (WY, wyd(0.3), wyd(0.5), wyd(-1.0), wyd(1.5), KM):
            assert check_function_ordering(SLD, f).ok, f.label

    def test_wy_does_not_dominate_sld(self):
        rep = check_function_ordering(WY, SLD)
        assert not rep.ok
        assert rep.witness is not None
        # at t = 1 the ratio gap is 0.25 - 0.5
        t = np.array([0.1, 1.0, 10.0])
        margins = WY.zero / WY(t) - SLD.zero / SLD(t)
        assert margins[1] == pytest.approx(-0.25, abs=1e-14)
        assert margins.min() < -0.2

    def test_everything_dominates_non_regular(self):
        for f1 in (SLD, WY, wyd(0.3), KM, wyd(-1.0)):
            for f2 in (KM, wyd(-1.0), wyd(1.5)):
                assert check_function_ordering(f1, f2).ok

    def test_sld_wy_margin_values(self):
        """Pin the two ratios at t in {0.1, 1, 10}; sld stays on top."""
        for t in (0.1, 1.0, 10.0):
            r_sld = 0.5 / oracles.f_sld(t)
            r_wy = 0.25 / oracles.f_wy(t)
            assert r_sld >= r_wy
            assert check_function_ordering(SLD, WY).ok


def _qubit_main_report(**kwargs):
    density = DensityMatrix(np.diag([0.7, 0.3]))
    sx = np.array([[0, 1], [1, 0]], complex)
    sy = np.array([[0, -1j], [1j, 0]], complex)
    return check_main_inequality(
        density, [sx, sy], classical_kernel(), asymmetric_kernel(SLD), **kwargs
    )


class TestMainInequality:
    def test_pinned_qubit_components(self):
        """Oracle-assembled 2x2 case: G1 = I, G2 = 0.16 I, so det G1 = 1,
        det G2 = 0.4^4, det(G1-G2) = 0.84^2, R = 2*0.16*0.84 and the
        inequality is tight (Minkowski equality for proportional parts)."""
        rep = _qubit_main_report()
        assert rep.verdict == PASS
        assert rep.lhs == pytest.approx(1.0, abs=1e-14)
        assert rep.components["det_g2"] == pytest.approx(0.4**4, rel=1e-12)
        assert rep.components["det_diff"] == pytest.approx(0.84**2, rel=1e-12)
        assert rep.remainder == pytest.approx(2 * 0.16 * 0.84, rel=1e-12)
        assert rep.rhs == pytest.approx(1.0, rel=1e-12)
        assert rep.margin == pytest.approx(0.0, abs=1e-12)

    def test_pinned_qubit_printed_variant_overshoots(self):
        """The printed remainder (base det G1) gives rhs = 2.4112 > 1: the
        erratum, visible deterministically on the desk example."""
        rep = _qubit_main_report()
        assert rep.components["remainder_printed"] == pytest.approx(
            2 * math.sqrt(1.0 * 0.84**2), rel=1e-12
        )
        assert rep.components["rhs_printed"] == pytest.approx(2.4112, rel=1e-12)
        assert rep.components["rhs_printed"] > rep.lhs + rep.tol

    def test_equal_kernels_margin_zero(self, qutrit_state):
        _, obs = sample_instance(3, 2, 60)
        g = symmetric_kernel(WY)
        rep = check_main_inequality(qutrit_state, obs, g, g)
        assert rep.verdict == PASS
        assert rep.components["det_diff"] == pytest.approx(0.0, abs=1e-15)
        assert rep.remainder == pytest.approx(0.0, abs=1e-12)
        assert rep.margin == pytest.approx(0.0, abs=1e-12)

    def test_n1_scalar_case_margin_vanishes(self):
        """N = 1 is the scalar variance bound: rhs telescopes back to lhs
        up to one rounding of the subtraction."""
        density, obs = sample_instance(3, 1, 61)
        rep = check_main_inequality(
            density, obs, classical_kernel(), asymmetric_kernel(WY)
        )
        assert rep.verdict == PASS
        assert rep.remainder == 0.0
        ulp = np.spacing(max(abs(rep.lhs), abs(rep.rhs)))
        assert abs(rep.margin) <= 4 * ulp

    def test_hypothesis_not_met_with_witness(self, qubit_state, pauli):
        sx, sy, _ = pauli
        rep = check_main_inequality(
            qubit_state, [sx, sy], asymmetric_kernel(SLD), classical_kernel()
        )
        assert rep.verdict == HYPOTHESIS_NOT_MET
        assert not rep.hypothesis.ok
        assert rep.hypothesis.witness is not None

    def test_sweep_random_pairs_all_pass(self):
        pairs = [
            (classical_kernel(), symmetric_kernel(WY)),
            (classical_kernel(), asymmetric_kernel(SLD)),
            (symmetric_kernel(SLD), symmetric_kernel(WY)),
            (asymmetric_kernel(SLD), asymmetric_kernel(wyd(0.3))),
        ]
        for seed in range(40):
            n = (2, 3, 4)[seed % 3]
            big_n = (1, 2, 3)[seed % 3]
            density, obs = sample_instance(n, big_n, 1000 + seed)
            g1, g2 = pairs[seed % len(pairs)]
            rep = check_main_inequality(density, obs, g1, g2)
            assert rep.verdict == PASS, (seed, rep.name, rep.margin)
            assert rep.components["minkowski"]["ok"]

    def test_margin_unitary_invariance(self):
        density, obs = sample_instance(3, 2, 62)
        rep = check_main_inequality(
            density, obs, classical_kernel(), asymmetric_kernel(SLD)
        )
        v = sample_unitary(3, 63)
        density_rot = DensityMatrix(v @ density.matrix @ v.conj().T)
        obs_rot = [v @ a @ v.conj().T for a in obs]
        rep_rot = check_main_inequality(
            density_rot, obs_rot, classical_kernel(), asymmetric_kernel(SLD)
        )
        assert rep_rot.margin == pytest.approx(
            rep.margin, rel=1e-8, abs=1e-10 * max(1.0, abs(rep.lhs))
        )


class TestHierarchy:
    def test_three_rungs_on_random_instances(self):
        for seed in range(20):
            density, obs = sample_instance((2, 3, 4)[seed % 3], 2, 1100 + seed)
            for f in (SLD, WY, wyd(0.3), wyd(-1.0), KM):
                reports = check_hierarchy(density, obs, f)
                assert len(reports) == 3
                assert all(r.verdict == PASS for r in reports), (seed, f.label)

    def test_sld_symmetric_rung_is_equality(self, qutrit_state):
        _, obs = sample_instance(3, 2, 64)
        reports = check_hierarchy(qutrit_state, obs, SLD)
        first = reports[0]  # classical vs symmetric: identical kernels
        assert first.components["det_diff"] == pytest.approx(0.0, abs=1e-12)
        assert first.margin == pytest.approx(0.0, abs=1e-10)

    def test_maximally_mixed_kills_asymmetric(self, pauli):
        sx, sy, _ = pauli
        density = DensityMatrix(np.eye(2) / 2)
        reports = check_hierarchy(density, [sx, sy], SLD)
        last = reports[2]
        assert last.components["det_g2"] == pytest.approx(0.0, abs=1e-14)
        assert all(r.verdict == PASS for r in reports)

    def test_det_chain_explicit(self):
        """det(classical) >= det(symmetric_f) >= det(asymmetric_f) read off
        the report sides directly."""
        density, obs = sample_instance(4, 3, 65)
        f = wyd(0.3)
        reports = check_hierarchy(density, obs, f)
        det_cl = reports[0].lhs
        det_s = reports[0].components["det_g2"]
        det_as = reports[1].components["det_g2"]
        assert det_cl >= det_s - 1e-9 * max(1, det_cl)
        assert det_s >= det_as - 1e-9 * max(1, det_s)


class TestCross:
    def test_asym_vs_sym_with_non_regular_target(self):
        """f2 with f2(0) = 0 makes the symmetric side vanish; hypothesis
        sampling passes and the conclusion is trivially true."""
        density, obs = sample_instance(3, 2, 70)
        rep = check_cross(density, obs, SLD, KM, direction="asym_vs_sym")
        assert rep.verdict == PASS
        assert rep.components["det_g2"] == pytest.approx(0.0, abs=1e-14)

    def test_asym_vs_sym_fails_hypothesis_for_regular_target(self):
        """With f2 regular the symmetric kernel is positive at x = y while
        the asymmetric one vanishes: no dominance, witness at (1, 1)."""
        density, obs = sample_instance(3, 2, 71)
        rep = check_cross(density, obs, SLD, WY, direction="asym_vs_sym")
        assert rep.verdict == HYPOTHESIS_NOT_MET
        assert rep.components["ratio_hypothesis"]["witness"] == [1.0, 1.0]

    def test_sym_vs_asym_same_function_reduces_to_hierarchy(self):
        density, obs = sample_instance(3, 2, 72)
        for f in (SLD, WY, wyd(0.3)):
            rep = check_cross(density, obs, f, f, direction="sym_vs_asym")
            assert rep.components["ratio_hypothesis"]["ok"]
            assert rep.verdict == PASS

    def test_sym_vs_asym_printed_hypothesis_is_not_sufficient(self):
        """f1 = km, f2 = sld: the stated ratio condition holds, yet the
        symmetric side of km is identically zero and cannot dominate the
        asymmetric side of sld.  The kernel-level gate catches this and
        the verdict is HYPOTHESIS_NOT_MET rather than FAIL."""
        density, obs = sample_instance(2, 2, 73)
        rep = check_cross(density, obs, KM, SLD, direction="sym_vs_asym")
        assert rep.components["ratio_hypothesis"]["ok"]
        assert not rep.hypothesis.ok
        assert rep.verdict == HYPOTHESIS_NOT_MET

    def test_direction_validation(self, qubit_state, pauli):
        with pytest.raises(ValueError, match="direction"):
            check_cross(qubit_state, [pauli[0]], SLD, WY, direction="up")


class TestRobertsonSchrodinger:
    def test_qubit_closed_form(self, pauli):
        """D = diag(p, 1-p), obs = (sigma_x, sigma_y): lhs = 1 and
        rhs = (2p-1)^2 for every p; equality approached at the boundary."""
        sx, sy, _ = pauli
        for p in (0.5, 0.6, 0.7, 0.9, 0.99):
            density = DensityMatrix(np.diag([p, 1 - p]))
            rep = check_robertson_schrodinger(density, [sx, sy])
            assert rep.verdict == PASS
            assert rep.lhs == pytest.approx(1.0, abs=1e-12)
            assert rep.rhs == pytest.approx((2 * p - 1) ** 2, abs=1e-12)

    def test_odd_tuple_reduces_to_nonnegativity(self):
        density, obs = sample_instance(4, 3, 80)
        rep = check_robertson_schrodinger(density, obs)
        assert rep.rhs == pytest.approx(0.0, abs=1e-12)
        assert rep.verdict == PASS

    def test_commuting_observables_zero_bound(self, qutrit_state):
        a = np.diag([1.0, 2.0, 3.0]).astype(complex)
        b = np.diag([0.5, -1.0, 2.0]).astype(complex)
        rep = check_robertson_schrodinger(qutrit_state, [a, b])
        assert rep.rhs == pytest.approx(0.0, abs=1e-14)
        assert rep.verdict == PASS

    def test_random_sweep_passes(self):
        for seed in range(30):
            density, obs = sample_instance((2, 3, 4)[seed % 3], 2, 1200 + seed)
            rep = check_robertson_schrodinger(density, obs)
            assert rep.verdict == PASS


class TestReportShape:
    def test_report_serializes(self):
        rep = _qubit_main_report()
        d = rep.to_dict()
        assert d["verdict"] == PASS
        assert d["margin"] == d["lhs"] - d["rhs"]
        assert d["hypothesis"]["ok"] is True
        assert set(d["components"]) >= {
            "det_g1", "det_g2", "det_diff", "rhs_printed", "minkowski", "n", "N",
        }

    def test_verdict_respects_tolerance_definition(self):
        rep = _qubit_main_report(tol_scale=1e-9)
        assert rep.tol == pytest.approx(1e-9 * max(1.0, abs(rep.lhs), abs(rep.rhs)))
        assert (rep.verdict == PASS) == (rep.margin >= -rep.tol)

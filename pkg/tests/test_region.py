from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_force_feasible
from fracbouss import region as R
from fracbouss.rational import QInterval

EXAMPLE = R.FeasibilityWitness(
    alpha=F(4, 5),
    beta=F(3, 10),
    delta=F(1, 10),
    m=F(3),
    delta_tilde=F(1, 20),
    q=F(37, 10),
    eta=F(19, 50),
    s=F(1, 4),
    p=F(27, 20),
    r=F(4),
    rho=F(5, 4),
)


def endpoints(iv: QInterval):
    return iv.lo, iv.hi


def inside_points():
    """(α, β) strictly inside the region on a rational grid, with margin."""
    out = []
    for a in [F(k, 100) for k in range(75, 99, 2)]:
        lo, hi = 1 - a, R.f_alpha(a)
        for u in (F(1, 5), F(1, 2), F(4, 5)):
            out.append((a, lo + u * (hi - lo)))
    return out


alphas_in_unit = st.fractions(F(1, 100), F(99, 100), max_denominator=1000)
region_alphas = st.fractions(F(74, 100), F(99, 100), max_denominator=1000)


class TestRegionShape:
    @pytest.mark.parametrize(
        "alpha, expected",
        [(F(4, 5), F(2, 5)), (F(9, 10), F(3, 10)), (F(37, 50), F(1507, 5200))],
    )
    def test_f_alpha(self, alpha, expected):
        assert R.f_alpha(alpha) == expected

    @pytest.mark.parametrize("alpha", [F(1), F(0), F(3, 2)])
    def test_f_alpha_domain(self, alpha):
        with pytest.raises(ValueError):
            R.f_alpha(alpha)

    def test_threshold(self):
        root = R.alpha_threshold()
        assert root.decimal(4) == "0.7351"
        a, b = root.enclosure(F(1, 10**40))
        assert abs(5 * a * a - 20 * a + 12) < F(1, 10**38)

    @pytest.mark.parametrize(
        "alpha, expected", [(F(37, 50), True), (F(73, 100), False), (F(9, 10), True)]
    )
    def test_nonempty(self, alpha, expected):
        assert R.is_region_nonempty(alpha) is expected

    @given(alpha=alphas_in_unit)
    def test_nonempty_matches_polynomial_sign(self, alpha):
        # above 2/3 the region is nonempty exactly where 5α² - 20α + 12 < 0
        if alpha > F(2, 3):
            assert R.is_region_nonempty(alpha) == (5 * alpha**2 - 20 * alpha + 12 < 0)

    def test_in_region(self):
        assert R.in_region(F(4, 5), F(3, 10))
        assert not R.in_region(F(4, 5), F(1, 5))
        assert not R.in_region(F(4, 5), F(2, 5))
        assert not R.in_region(F(1, 2), F(3, 5))


class TestRanges:
    def test_delta(self):
        assert endpoints(R.delta_range(F(4, 5), F(3, 10))) == (F(1, 20), F(3, 20))

    def test_delta_clamped_at_zero(self):
        iv = R.delta_range(F(9, 10), F(1, 5))
        assert endpoints(iv) == (0, F(1, 10)) and iv.lo_open

    def test_delta_preconditions(self):
        with pytest.raises(ValueError):
            R.delta_range(F(3, 5), F(1, 2))

    @given(alpha=st.fractions(F(2, 3), 1, max_denominator=500), u=st.fractions(0, 1, max_denominator=500))
    def test_delta_nonempty(self, alpha, u):
        if not F(2, 3) < alpha < 1:
            return
        beta = 1 - alpha + u * alpha  # anything in (1 - α, 1)
        if not (1 - alpha < beta < 1):
            return
        assert not R.delta_range(alpha, beta).is_empty

    def test_m(self):
        assert endpoints(R.m_range(F(4, 5), F(3, 10))) == (F(5, 2), F(15, 4))

    def test_m_below_threshold(self):
        assert R.m_range(F(73, 100), F(27, 100)).is_empty

    def test_m_vacuous_linear_condition(self):
        # 2(2-α)β - 3α + 2 < 0 here, so that condition flips to a negative floor
        a, b = F(9, 10), F(1, 5)
        assert 2 * (2 - a) * b - 3 * a + 2 < 0
        (bd,) = [bd for bd in R.m_bounds(a, b) if bd.label == "(2(2-α)β-3α+2)m < 4(2-α)β"]
        assert bd.lower and bd.value < 0

    def test_m_direction_flip(self):
        bounds = R._linear("x", F(-2), F(3))
        assert len(bounds) == 1 and bounds[0].lower and bounds[0].value == F(-3, 2)
        assert R._linear("x", 0, -1)  # impossible, not vacuous

    def test_q(self):
        assert endpoints(R.q_range(F(4, 5), F(3), F(1, 20))) == (F(80, 23), F(4))
        # the side condition m ≤ 2/(2 - 2α + δ̃) holds at these values
        assert F(3) <= 2 / (2 - 2 * F(4, 5) + F(1, 20))

    def test_q_side_condition(self):
        a = F(4, 5)
        with pytest.raises(R.SideConditionError):
            R.q_range(a, F(3), (3 * a - 2) / 4)

    def test_eta(self):
        assert endpoints(R.eta_range(F(4, 5), F(3, 10), F(3))) == (F(12, 35), F(2, 5))

    def test_eta_empty_when_beta_reaches_half_alpha(self):
        assert R.eta_range(F(4, 5), F(2, 5), F(3)).is_empty

    def test_s(self):
        assert endpoints(R.s_range(F(4, 5), F(3, 10), F(3), F(19, 50))) == (F(9, 43), F(3, 10))

    def test_s_needs_eta_above_beta(self):
        with pytest.raises(ValueError):
            R.s_range(F(4, 5), F(3, 10), F(3), F(3, 10))

    def test_s_degenerate(self):
        with pytest.raises(R.DegenerateRangeError):
            R.s_range(F(4, 5), F(3, 10), F(12), F(7, 20))  # m - (2-α)(m-2) = 0

    def test_p(self):
        iv = R.p_range(F(4, 5), F(3, 10), F(3), F(19, 50), F(1, 4))
        assert endpoints(iv) == (F(25, 19), F(650, 473))
        assert abs(float(iv.hi) - 1.3742) < 1e-4

    def test_r(self):
        x, r = R.r_range(F(4, 5), F(3))
        assert (x.lo, x.hi, x.lo_open, x.hi_open) == (F(7, 15), F(3, 5), False, True)
        assert (r.lo, r.hi, r.lo_open, r.hi_open) == (F(10, 3), F(30, 7), True, False)

    @given(alpha=st.fractions(F(7, 10), F(99, 100), max_denominator=1000))
    def test_r_window_closes_at_m_two_over_alpha(self, alpha):
        # 2/m + α - 1 meets the open end 2α - 1, so m > 2/α must be strict
        x, _ = R.r_range(alpha, 2 / alpha)
        assert x.is_empty
        y, _ = R.r_range(alpha, 2 / alpha + F(1, 1000))
        assert not y.is_empty or (2 - alpha) / (2 / alpha + F(1, 1000)) >= 2 * alpha - 1

    def test_rho(self):
        assert endpoints(R.rho_range(F(4, 5), F(3, 10))) == (1, F(3, 2))
        assert endpoints(R.rho_range(F(9, 10), F(3, 10))) == (1, F(3))
        assert R.rho_range(F(4, 5), F(1, 5)).is_empty

    @given(alpha=region_alphas, u=st.fractions(F(1, 20), F(19, 20), max_denominator=100))
    def test_p_range_nonempty_for_interior_choices(self, alpha, u):
        if not R.is_region_nonempty(alpha):
            return
        beta = 1 - alpha + u * (R.f_alpha(alpha) - 1 + alpha)
        m = R.m_range(alpha, beta).midpoint
        eta_iv = R.eta_range(alpha, beta, m)
        if eta_iv.is_empty:
            return
        eta = eta_iv.midpoint
        s_iv = R.s_range(alpha, beta, m, eta)
        if s_iv.is_empty:
            return
        p_iv = R.p_range(alpha, beta, m, eta, s_iv.midpoint)
        assert not p_iv.is_empty
        assert 1 < p_iv.lo and p_iv.hi <= 2


class TestWitness:
    def test_example_is_valid(self):
        assert R.verify_witness(EXAMPLE) == []

    def test_example_derived(self):
        d = EXAMPLE.derived
        for value in (d.mu, d.varsigma, d.lam, d.l):
            assert 0 < value < 1
        assert d.s2 == 1 - F(4, 5) + F(1, 20)
        assert d.s1 == 1 + F(3, 10) - F(4, 5) - F(19, 50)
        # closed forms computed by hand from the witness
        assert d.mu == (-F(8, 5) + F(1, 10) + F(8) / F(37, 10)) / F(4, 5)
        assert d.varsigma == (2 - F(6) / F(37, 10)) / F(4, 5)

    def test_s_above_beta(self):
        assert "s < β" in R.verify_witness(EXAMPLE.replace(s=F(7, 20)))

    def test_alpha_below_threshold(self):
        bad = R.verify_witness(EXAMPLE.replace(alpha=F(1, 2)))
        assert "α > (10-2√10)/5" in bad

    def test_q_at_upper_endpoint(self):
        a, m = EXAMPLE.alpha, EXAMPLE.m
        w = EXAMPLE.replace(q=2 * m / (2 - a))
        assert w.derived.varsigma == 1
        bad = R.verify_witness(w)
        assert "ς < 1" in bad and "q < 2m/(2-α)" in bad

    def test_p_at_lower_endpoint(self):
        m = EXAMPLE.m
        w = EXAMPLE.replace(p=2 * m / (3 * m - 4))
        # λ reaches 0 (not 1) at this endpoint
        assert w.derived.lam == 0
        bad = R.verify_witness(w)
        assert "λ > 0" in bad and "p > 2m/(3m-4)" in bad

    @pytest.mark.parametrize(
        "field, value, label",
        [
            ("delta", F(3, 20), "δ < β/2"),
            ("m", F(5, 2), "m > 2/α"),
            ("delta_tilde", F(0), "δ̃ > 0"),
            ("eta", F(2, 5), "η < α/2"),
            ("rho", F(3, 2), "β/ρ > 1-α"),
            ("r", F(10, 3), "2/r < 2α-1"),
        ],
    )
    def test_open_endpoints_rejected(self, field, value, label):
        assert label in R.verify_witness(EXAMPLE.replace(**{field: value}))

    def test_closed_endpoint_accepted(self):
        # 2/r may sit on its lower bound
        w = EXAMPLE.replace(r=2 / F(7, 15))
        assert not any(lab.startswith("2/r") for lab in R.verify_witness(w))

    def test_closing_condition_uses_delta(self):
        # δ just above the δ-range floor breaks (2sl/(2δ+β)+1)·M ≤ 2
        bad = R.verify_witness(EXAMPLE.replace(delta=F(51, 1000)))
        assert "(2sl/(2δ+β)+1)·m/(m-(m-2)λ) ≤ 2" in bad

    def test_find_example(self):
        w = R.find_witness(F(4, 5), F(3, 10))
        assert w is not None and R.verify_witness(w) == []

    @pytest.mark.parametrize("alpha, beta", [(F(73, 100), F(27, 100)), (F(1, 2), F(3, 5))])
    def test_find_infeasible(self, alpha, beta):
        assert R.find_witness(alpha, beta) is None

    def test_deterministic(self):
        assert R.find_witness(F(4, 5), F(3, 10)) == R.find_witness(F(4, 5), F(3, 10))

    @pytest.mark.parametrize("alpha, beta", inside_points())
    def test_search_and_checker_agree(self, alpha, beta):
        w = R.find_witness(alpha, beta)
        assert w is not None
        assert R.verify_witness(w) == []
        assert 1 < w.p < 2

    def test_backjumping_matches_chronological(self, monkeypatch):
        # with every dependency set widened, backjumping degrades to plain backtracking
        fast = [R.find_witness(a, b) for a, b in inside_points()[:12]]
        full = {k: tuple(R.SEARCH_ORDER[: R.SEARCH_ORDER.index(k)]) for k in R.SEARCH_ORDER}
        monkeypatch.setattr(R, "_DEPENDS", full)
        slow = [R.find_witness(a, b) for a, b in inside_points()[:12]]
        assert fast == slow

    def test_chain_alone_reaches_past_the_region(self):
        # β above 3 - 3α still admits the exponent chain; the region check rules it out
        a, b = F(9, 10), F(31, 100)
        assert R.find_witness(a, b) is None
        w = R.find_witness(a, b, require_region=False)
        assert w is not None
        assert R.verify_witness(w) == ["β < 3-3α"]
        assert brute_force_feasible(a, b, require_region=False)

    @pytest.mark.parametrize(
        "alpha, beta",
        [(F(4, 5), F(3, 10)), (F(17, 20), F(1, 5)), (F(4, 5), F(1, 10)), (F(4, 5), F(9, 20))],
    )
    def test_oracle(self, alpha, beta):
        assert (R.find_witness(alpha, beta) is not None) == brute_force_feasible(alpha, beta)


class TestSweep:
    def test_coarse_boundary(self):
        alphas = [F(k, 100) for k in range(70, 80)]
        rmap = R.sweep_region(alphas)
        verdict = {c.alpha: c.feasible for c in rmap.cells}
        assert all(not verdict[a] for a in alphas if a <= F(73, 100))
        assert all(verdict[a] for a in alphas if a >= F(74, 100))
        assert rmap.boundary_alpha() == F(74, 100)

    def test_feasible_cells_inside(self):
        rmap = R.sweep_region(
            [F(k, 100) for k in range(74, 96, 3)], [F(k, 40) for k in range(1, 20)]
        )
        for c in rmap.cells:
            if c.feasible:
                assert 1 - c.alpha < c.beta < R.f_alpha(c.alpha)
                assert R.verify_witness(c.witness) == []

    def test_fixed_alpha_beta_window(self):
        betas = [F(k, 200) for k in range(1, 120)]
        rmap = R.sweep_region([F(4, 5)], betas)
        feasible = [c.beta for c in rmap.cells if c.feasible]
        assert feasible and F(1, 5) < min(feasible) and max(feasible) < F(2, 5)
        # a contiguous run of the β grid
        idx = [betas.index(b) for b in feasible]
        assert idx == list(range(idx[0], idx[-1] + 1))

    def test_rational_grid(self):
        assert R.rational_grid("0.70", "0.72", "0.01") == [F(7, 10), F(71, 100), F(72, 100)]
        with pytest.raises(ValueError):
            R.rational_grid(1, 0, F(1, 10))
        with pytest.raises(ValueError):
            R.rational_grid(0, 1, 0)


class TestReduction:
    @pytest.mark.parametrize(
        "alpha, lhs, rhs", [(F(4, 5), F(5, 6), F(7, 10)), (F(7, 10), F(5, 39), F(9, 80))]
    )
    def test_fact_examples(self, alpha, lhs, rhs):
        assert R.fact_inequality_sides(alpha) == (lhs, rhs)
        assert R.verify_fact_inequality(alpha)

    def test_fact_boundary(self):
        assert R.fact_inequality_sides(F(2, 3)) == (0, 0)
        with pytest.raises(ValueError):
            R.verify_fact_inequality(F(2, 3))

    @pytest.mark.parametrize("alpha", [F(3, 4), F(4, 5), F(17, 20), F(9, 10)])
    def test_beta_bounds_at_m_two_over_alpha(self, alpha):
        a = alpha
        expected = {
            3 - 3 * a,
            a / 2,
            (3 * a - 2) / (2 * (2 - a) * (1 - a)),
            (3 * a * a + 4 * a - 4) / (8 * (1 - a)),
        }
        assert set(R.reduced_beta_bounds(a)) == expected
        third = (3 * a - 2) / (2 * (2 - a) * (1 - a))
        assert min(expected) != third
        assert R.verify_fact_inequality(a)

    def test_reduced_bounds_reproduce_f(self):
        for k in range(74, 100):
            a = F(k, 100)
            assert min(R.reduced_beta_bounds(a)) == R.f_alpha(a)


def test_p_bound_is_the_strict_requirement_solved_for_p():
    sp = pytest.importorskip("sympy")
    a, b, m, e, s, p = sp.symbols("alpha beta m eta s p", positive=True)
    c = 1 + b - a - e
    lam = 2 / a - (2 - p) * m / ((m - 2) * a * p)
    l = (2 * (p - 1) - c * p) / ((1 - s) * p)
    requirement = (s / b * l + 1) * m - 2 * (m - (m - 2) * lam)
    root = sp.solve(sp.Eq(requirement, 0), p)
    bound = (4 * (1 - s) * b + 2 * a * s) / ((6 - a - 8 / m) * (1 - s) * b + a * s * (1 + a + e - b))
    assert len(root) == 1 and sp.simplify(root[0] - bound) == 0

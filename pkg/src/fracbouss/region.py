"""Admissible (α, β) region and the exponent chain behind it, in exact arithmetic.

Every constraint is a labelled :class:`~fracbouss.rational.Bound` on one
exponent given the exponents chosen before it.  The ``*_range`` functions
intersect those bounds; :func:`verify_witness` checks them one by one and
reports the labels that fail.

The exponents, in the order they are introduced:

========  ============================================================
delta     order of the θ-regularity gained from the G/θ energy estimate
m         Lebesgue exponent of the G-estimate
delta_t   small loss parameter in the first commutator term
q         Hölder exponent pairing with the first commutator term
eta       smoothness index split between the second and third terms
s         Gagliardo–Nirenberg index for Λ^{1+β-α-η}θ
p         Hölder exponent of the second and third terms
r         dyadic Lebesgue exponent of the Besov bound on G
rho       time-integrability exponent with β/ρ > 1 - α
========  ============================================================
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from .rational import AlgebraicRoot, Bound, QInterval, lower, q, upper

#: Root of 5α² - 20α + 12 in (0, 1), i.e. (10 - 2√10)/5 ≈ 0.735089.
ALPHA_THRESHOLD = AlgebraicRoot((5, -20, 12), Fraction(0), Fraction(1))

ONE = Fraction(1)
TWO = Fraction(2)


class SideConditionError(ValueError):
    """A parameter violates a side condition of a range (not mere emptiness)."""


class DegenerateRangeError(ValueError):
    """A bound's denominator is nonpositive, so the bound cannot be formed."""


def _never(label: str) -> list[Bound]:
    # a pair no number satisfies; both halves carry the label
    return [lower(label, 1), upper(label, 0)]


def _ratio(label: str, num, den, is_lower: bool, strict: bool = True) -> list[Bound]:
    """``x > num/den`` (or ``<``), valid only for a positive denominator."""
    if den <= 0:
        return _never(label)
    make = lower if is_lower else upper
    return [make(label, Fraction(num) / Fraction(den), strict)]


def _linear(label: str, a, c) -> list[Bound]:
    """``a·x < c`` with the direction fixed by the exact sign of ``a``."""
    a, c = Fraction(a), Fraction(c)
    if a > 0:
        return [upper(label, c / a)]
    if a < 0:
        return [lower(label, c / a)]
    return [] if c > 0 else _never(label)


# --------------------------------------------------------------------------
# the region itself


def f_alpha(alpha) -> Fraction:
    """min{3 - 3α, α/2, (3α² + 4α - 4) / (8(1 - α))}."""
    a = q(alpha)
    if not 0 < a < 1:
        raise ValueError(f"f(α) needs 0 < α < 1, got {a}")
    return min(3 - 3 * a, a / 2, (3 * a * a + 4 * a - 4) / (8 * (1 - a)))


def alpha_threshold() -> AlgebraicRoot:
    """Smallest admissible α as an exact algebraic number (float ≈ 0.735089)."""
    return ALPHA_THRESHOLD


def is_region_nonempty(alpha) -> bool:
    """Whether some β satisfies 1 - α < β < f(α)."""
    a = q(alpha)
    return 1 - a < f_alpha(a)


def region_violations(alpha, beta) -> list[str]:
    """Labels of the failed conditions among (10-2√10)/5 < α < 1, 1-α < β < f(α)."""
    a, b = q(alpha), q(beta)
    bad = []
    if ALPHA_THRESHOLD.compare(a) <= 0:
        bad.append("α > (10-2√10)/5")
    if not a < 1:
        bad.append("α < 1")
        return bad
    if not b > 1 - a:
        bad.append("β > 1-α")
    if not b < 3 - 3 * a:
        bad.append("β < 3-3α")
    if not b < a / 2:
        bad.append("β < α/2")
    if not b < (3 * a * a + 4 * a - 4) / (8 * (1 - a)):
        bad.append("β < (3α²+4α-4)/(8(1-α))")
    return bad


def in_region(alpha, beta) -> bool:
    """(10-2√10)/5 < α < 1 and 1 - α < β < f(α)."""
    return not region_violations(alpha, beta)


def midpoint_beta(alpha) -> Fraction:
    """(1 - α + f(α)) / 2, the β used for midpoint sweeps."""
    a = q(alpha)
    return (1 - a + f_alpha(a)) / 2


# --------------------------------------------------------------------------
# bounds per exponent


def delta_bounds(alpha, beta) -> list[Bound]:
    a, b = q(alpha), q(beta)
    return [
        lower("δ > (2-2α-β)/2", (2 - 2 * a - b) / 2),
        lower("δ > (2+β-3α)/2", (2 + b - 3 * a) / 2),
        lower("δ > 0", 0),
        upper("δ < β/2", b / 2),
    ]


def m_bounds(alpha, beta) -> list[Bound]:
    a, b = q(alpha), q(beta)
    out = _ratio("m > 4/(3-α-β)", 4, 3 - a - b, True)
    out.append(upper("m < 4", 4))
    out += _ratio("m < 1/(1-α)", 1, 1 - a, False)
    out += _linear(
        "(2(2-α)β-3α+2)m < 4(2-α)β", 2 * (2 - a) * b - 3 * a + 2, 4 * (2 - a) * b
    )
    out += _linear("(4+8β-4α-3α²)m < 16β", 4 + 8 * b - 4 * a - 3 * a * a, 16 * b)
    out += _ratio("m > 2/α", 2, a, True)
    return out


def delta_tilde_bounds(alpha, m) -> list[Bound]:
    a, m = q(alpha), q(m)
    out = [lower("δ̃ > 0", 0), upper("δ̃ ≤ (3α-2)/8", (3 * a - 2) / 8, strict=False)]
    # m ≤ 2/(2-2α+δ̃)  ⇔  δ̃ ≤ 2/m - 2 + 2α   (m > 0)
    out.append(upper("m ≤ 2/(2-2α+δ̃)", 2 / m - 2 + 2 * a, strict=False))
    return out


def q_bounds(alpha, m, delta_tilde) -> list[Bound]:
    a, m, dt = q(alpha), q(m), q(delta_tilde)
    out = [lower("q > m-1", m - 1)]
    out += _ratio("q > 4(m-1)/(3α-2δ̃)", 4 * (m - 1), 3 * a - 2 * dt, True)
    out.append(lower("q > m", m))
    out.append(upper("q < 2(m-1)", 2 * (m - 1)))
    out += _ratio("q < 2(m-1)/(α-δ̃)", 2 * (m - 1), a - dt, False)
    out += _ratio("q < 2m/(2-α)", 2 * m, 2 - a, False)
    return out


def two_over_r_bounds(alpha, m) -> list[Bound]:
    a, m = q(alpha), q(m)
    return [
        lower("2/r ≥ 2/m+α-1", 2 / m + a - 1, strict=False),
        lower("2/r ≥ (2-α)/m", (2 - a) / m, strict=False),
        upper("2/r < 2α-1", 2 * a - 1),
        upper("2/r ≤ 1", 1, strict=False),
    ]


def rho_bounds(alpha, beta) -> list[Bound]:
    a, b = q(alpha), q(beta)
    out = [lower("ρ > 1", 1)]
    out += _ratio("β/ρ > 1-α", b, 1 - a, False)
    return out


def eta_bounds(alpha, beta, m) -> list[Bound]:
    a, b, m = q(alpha), q(beta), q(m)
    return [
        lower("η > β", b),
        lower(
            "η > ((1+β-α)m-[2(2-α)-(1-α)m]β)/m",
            ((1 + b - a) * m - (2 * (2 - a) - (1 - a) * m) * b) / m,
        ),
        lower(
            "η > (2(1+β-α)+α(1-α)-(8/m-2)β)/(2+α)",
            (2 * (1 + b - a) + a * (1 - a) - (8 / m - 2) * b) / (2 + a),
        ),
        upper("η < 1+β-α", 1 + b - a),
        upper("η < α/2", a / 2),
        upper("η < 3-α-4/m", 3 - a - 4 / m),
    ]


def s_bounds(alpha, beta, m, eta) -> list[Bound]:
    a, b, m, e = q(alpha), q(beta), q(m), q(eta)
    c = 1 + b - a - e
    out = _ratio("s > (1+β-α-η)m/(m-(2-α)(m-2))", c * m, m - (2 - a) * (m - 2), True)
    out += _ratio(
        "s > 2(1+β-α-η)β/(α(α+η-1)+(8/m-2)β)",
        2 * c * b,
        a * (a + e - 1) + (8 / m - 2) * b,
        True,
    )
    out.append(lower("s > 1+β-α-η", c))
    out.append(upper("s < β", b))
    out.append(upper("s < ((3+β-α-η)m-4)/m", ((3 + b - a - e) * m - 4) / m))
    out += _ratio("s < βm/((α+η-2)m+4)", b * m, (a + e - 2) * m + 4, False)
    return out


def p_bounds(alpha, beta, m, eta, s) -> list[Bound]:
    a, b, m, e, s = q(alpha), q(beta), q(m), q(eta), q(s)
    out = _ratio("p > 2m/(3m-4)", 2 * m, 3 * m - 4, True)
    out += _ratio("p > 2s/(2s+α+η-β-1)", 2 * s, 2 * s + a + e - b - 1, True)
    out.append(upper("p < 2", 2))
    out += _ratio("p < 2m/((2-α)(m-2)+m)", 2 * m, (2 - a) * (m - 2) + m, False)
    out += _ratio("p < 2/(α+η-β+s)", 2, a + e - b + s, False)
    out += _ratio(
        "p < (4(1-s)β+2αs)/((6-α-8/m)(1-s)β+αs(1+α+η-β))",
        4 * (1 - s) * b + 2 * a * s,
        (6 - a - 8 / m) * (1 - s) * b + a * s * (1 + a + e - b),
        False,
    )
    return out


# --------------------------------------------------------------------------
# derived exponents


@dataclass(frozen=True)
class DerivedExponents:
    mu: Fraction
    varsigma: Fraction
    lam: Fraction
    l: Fraction
    s1: Fraction
    s2: Fraction


def derived_exponents(alpha, beta, m, delta_tilde, q_, eta, s, p) -> DerivedExponents:
    """Interpolation exponents μ, ς, λ, l and commutator indices s₁, s₂."""
    a, b = q(alpha), q(beta)
    m, dt, qq, e, s, p = q(m), q(delta_tilde), q(q_), q(eta), q(s), q(p)
    if a == 0 or qq == 0 or p == 0 or s == 1 or m == 2:
        raise ValueError("degenerate exponents: zero denominator")
    c = 1 + b - a - e
    return DerivedExponents(
        mu=(-2 * a + 2 * dt + 4 * (m - 1) / qq) / a,
        varsigma=(2 - 2 * m / qq) / a,
        lam=2 / a - (2 - p) * m / ((m - 2) * a * p),
        l=(2 * (p - 1) - c * p) / ((1 - s) * p),
        s1=c,
        s2=1 - a + dt,
    )


def _young_factor(m, lam) -> Optional[Fraction]:
    """m / (m - (m-2)λ), or None if the denominator is not positive."""
    den = m - (m - 2) * lam
    return m / den if den > 0 else None


def delta_closing_bounds(alpha, beta, m, s, l, lam) -> list[Bound]:
    """Lower bound on δ from (2sl/(2δ+β) + 1)·m/(m-(m-2)λ) ≤ 2.

    The left side decreases in δ, so the requirement is a lower bound.
    """
    label = "(2sl/(2δ+β)+1)·m/(m-(m-2)λ) ≤ 2"
    b = q(beta)
    factor = _young_factor(q(m), q(lam))
    if factor is None or factor >= 2:
        return _never(label)
    slack = 2 / factor - 1
    # 2sl/(2δ+β) ≤ slack  ⇔  2δ + β ≥ 2sl/slack   (sl > 0)
    sl = q(s) * q(l)
    if sl <= 0:
        return [lower(label, -b / 2, strict=False)]
    return [lower(label, (2 * sl / slack - b) / 2, strict=False)]


# --------------------------------------------------------------------------
# ranges


def _require_unit(alpha, beta=None):
    a = q(alpha)
    if not 0 < a < 1:
        raise ValueError(f"need 0 < α < 1, got {a}")
    if beta is not None and not 0 < q(beta) < 1:
        raise ValueError(f"need 0 < β < 1, got {beta}")


def delta_range(alpha, beta) -> QInterval:
    """max{(2-2α-β)/2, (2+β-3α)/2, 0} < δ < β/2."""
    a, b = q(alpha), q(beta)
    if not (a > Fraction(2, 3) and b > 1 - a):
        raise ValueError("δ-range needs α > 2/3 and β > 1 - α")
    return QInterval.from_bounds(delta_bounds(a, b))


def m_range(alpha, beta) -> QInterval:
    _require_unit(alpha, beta)
    return QInterval.from_bounds(m_bounds(alpha, beta))


def delta_tilde_range(alpha, m) -> QInterval:
    return QInterval.from_bounds(delta_tilde_bounds(alpha, m))


def q_range(alpha, m, delta_tilde) -> QInterval:
    """Admissible q given m and δ̃; side conditions on δ̃ raise."""
    a, m, dt = q(alpha), q(m), q(delta_tilde)
    failed = [b.label for b in delta_tilde_bounds(a, m) if not b.holds(dt)]
    if failed:
        raise SideConditionError(f"δ̃ = {dt} violates: {', '.join(failed)}")
    return QInterval.from_bounds(q_bounds(a, m, dt))


def eta_range(alpha, beta, m) -> QInterval:
    return QInterval.from_bounds(eta_bounds(alpha, beta, m))


def s_range(alpha, beta, m, eta) -> QInterval:
    a, b, m, e = q(alpha), q(beta), q(m), q(eta)
    if not e > b:
        raise ValueError(f"η must exceed β strictly (η = {e}, β = {b})")
    if m - (2 - a) * (m - 2) <= 0:
        raise DegenerateRangeError("m - (2-α)(m-2) ≤ 0")
    if a * (a + e - 1) + (8 / m - 2) * b <= 0:
        raise DegenerateRangeError("α(α+η-1) + (8/m-2)β ≤ 0")
    if (a + e - 2) * m + 4 <= 0:
        raise DegenerateRangeError("(α+η-2)m + 4 ≤ 0")
    return QInterval.from_bounds(s_bounds(a, b, m, e))


def p_range(alpha, beta, m, eta, s) -> QInterval:
    return QInterval.from_bounds(p_bounds(alpha, beta, m, eta, s))


def r_range(alpha, m) -> tuple[QInterval, QInterval]:
    """Interval for 2/r and the matching interval for r itself."""
    a, m = q(alpha), q(m)
    x = QInterval.from_bounds(two_over_r_bounds(a, m))
    if x.is_empty or x.lo is None or x.lo <= 0:
        return x, QInterval.empty()
    # x ∈ [lo, hi)  →  r = 2/x ∈ (2/hi, 2/lo]
    return x, QInterval(2 / x.hi, 2 / x.lo, x.hi_open, x.lo_open)


def rho_range(alpha, beta) -> QInterval:
    return QInterval.from_bounds(rho_bounds(alpha, beta))


# --------------------------------------------------------------------------
# witnesses

WITNESS_FIELDS = ("delta", "m", "delta_tilde", "q", "eta", "s", "p", "r", "rho")


@dataclass(frozen=True)
class FeasibilityWitness:
    alpha: Fraction
    beta: Fraction
    delta: Fraction
    m: Fraction
    delta_tilde: Fraction
    q: Fraction
    eta: Fraction
    s: Fraction
    p: Fraction
    r: Fraction
    rho: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta") + WITNESS_FIELDS:
            object.__setattr__(self, name, q(getattr(self, name)))

    @property
    def derived(self) -> DerivedExponents:
        return derived_exponents(
            self.alpha, self.beta, self.m, self.delta_tilde, self.q, self.eta, self.s, self.p
        )

    def replace(self, **changes) -> "FeasibilityWitness":
        values = asdict(self)
        values.update(changes)
        return FeasibilityWitness(**values)


def _check(bounds, x, bad: list):
    for b in bounds:
        if not b.holds(x):
            bad.append(b.label)


def verify_witness(w: FeasibilityWitness) -> list[str]:
    """Every condition of the exponent chain, checked exactly.

    Returns the labels of the violated conditions; an empty list means the
    witness is valid.
    """
    a, b = w.alpha, w.beta
    bad = region_violations(a, b)
    if not 0 < a < 1 or not 0 < b < 1:
        if not 0 < b < 1:
            bad.append("0 < β < 1")
        if not 0 < a:
            bad.append("α > 0")
        return bad

    _check(delta_bounds(a, b), w.delta, bad)
    _check(m_bounds(a, b), w.m, bad)
    _check(delta_tilde_bounds(a, w.m), w.delta_tilde, bad)
    _check(q_bounds(a, w.m, w.delta_tilde), w.q, bad)
    if w.r <= 0:
        bad.append("r > 0")
    else:
        _check(two_over_r_bounds(a, w.m), 2 / w.r, bad)
    _check(rho_bounds(a, b), w.rho, bad)
    _check(eta_bounds(a, b, w.m), w.eta, bad)
    _check(s_bounds(a, b, w.m, w.eta), w.s, bad)
    _check(p_bounds(a, b, w.m, w.eta, w.s), w.p, bad)

    try:
        d = w.derived
    except ValueError:
        bad.append("derived exponents defined")
        return bad
    for name, value in (("μ", d.mu), ("ς", d.varsigma), ("λ", d.lam), ("l", d.l)):
        if not value > 0:
            bad.append(f"{name} > 0")
        if not value < 1:
            bad.append(f"{name} < 1")

    m, s, e = w.m, w.s, w.eta
    if not d.s1 < s * d.l:
        bad.append("1+β-α-η < s·l")
    # commutator indices: s₁ ∈ [0, 1-α), s₁ + η > 2-2α, s₂ - δ̃/2 > 1-α
    if not d.s1 >= 0:
        bad.append("s₁ ≥ 0")
    if not d.s1 < 1 - a:
        bad.append("s₁ < 1-α")
    if not d.s1 + e > 2 - 2 * a:
        bad.append("s₁ + η > 2-2α")
    if not d.s2 - w.delta_tilde / 2 > 1 - a:
        bad.append("s₂ - δ̃/2 > 1-α")

    young1 = m - (m - 1) * d.varsigma
    if young1 <= 0 or not m * d.mu / young1 <= 2:
        bad.append("mμ/(m-(m-1)ς) ≤ 2")

    factor = _young_factor(m, d.lam)
    if factor is None:
        bad.append("m-(m-2)λ > 0")
    else:
        if not (2 * s * d.l / (2 * w.delta + b) + 1) * factor <= 2:
            bad.append("(2sl/(2δ+β)+1)·m/(m-(m-2)λ) ≤ 2")
        if not (s / b * d.l + 1) * factor < 2:
            bad.append("(sl/β+1)·m/(m-(m-2)λ) < 2")
    return bad


# --------------------------------------------------------------------------
# search

SEARCH_ORDER = ("m", "delta_tilde", "q", "r", "rho", "eta", "s", "p", "delta")

# variables each interval depends on (beyond α, β)
_DEPENDS = {
    "m": (),
    "delta_tilde": ("m",),
    "q": ("m", "delta_tilde"),
    "r": ("m",),
    "rho": (),
    "eta": ("m",),
    "s": ("m", "eta"),
    "p": ("m", "eta", "s"),
    "delta": ("m", "eta", "s", "p"),
}


def _interval(var: str, a: Fraction, b: Fraction, x: dict) -> QInterval:
    if var == "m":
        return QInterval.from_bounds(m_bounds(a, b))
    if var == "delta_tilde":
        return QInterval.from_bounds(delta_tilde_bounds(a, x["m"]))
    if var == "q":
        return QInterval.from_bounds(q_bounds(a, x["m"], x["delta_tilde"]))
    if var == "r":
        # searched through 2/r
        return QInterval.from_bounds(two_over_r_bounds(a, x["m"]))
    if var == "rho":
        return QInterval.from_bounds(rho_bounds(a, b))
    if var == "eta":
        return QInterval.from_bounds(eta_bounds(a, b, x["m"]))
    if var == "s":
        return QInterval.from_bounds(s_bounds(a, b, x["m"], x["eta"]))
    if var == "p":
        return QInterval.from_bounds(p_bounds(a, b, x["m"], x["eta"], x["s"]))
    if var == "delta":
        m, e, s, p = x["m"], x["eta"], x["s"], x["p"]
        c = 1 + b - a - e
        l = (2 * (p - 1) - c * p) / ((1 - s) * p)
        lam = 2 / a - (2 - p) * m / ((m - 2) * a * p)
        return QInterval.from_bounds(
            delta_bounds(a, b) + delta_closing_bounds(a, b, m, s, l, lam)
        )
    raise KeyError(var)


def _to_witness(a, b, x: dict) -> FeasibilityWitness:
    return FeasibilityWitness(
        alpha=a,
        beta=b,
        delta=x["delta"],
        m=x["m"],
        delta_tilde=x["delta_tilde"],
        q=x["q"],
        eta=x["eta"],
        s=x["s"],
        p=x["p"],
        r=2 / x["r"],
        rho=x["rho"],
    )


def find_witness(alpha, beta, max_depth: int = 10, require_region: bool = True):
    """Search dyadic grids for a witness, or return ``None`` if infeasible.

    Each exponent is drawn from its live interval (given the exponents fixed
    before it) at refinement depths 1..``max_depth``.  Dead ends jump back to
    the latest exponent that the failing interval depends on; skipped
    branches cannot contain a solution, so the first witness found is the
    same one plain chronological backtracking would find.

    With ``require_region=False`` the region condition on (α, β) is not
    imposed and only the exponent chain is searched.
    """
    a, b = q(alpha), q(beta)
    if not (0 < a < 1 and 0 < b < 1):
        return None
    if require_region and not in_region(a, b):
        return None
    order = SEARCH_ORDER
    assigned: dict = {}

    def solve(level: int):
        if level == len(order):
            w = _to_witness(a, b, assigned)
            bad = verify_witness(w)
            if require_region and bad or not require_region and (
                set(bad) - set(region_violations(a, b))
            ):
                return None, set(order)
            return w, None
        var = order[level]
        conflict = set(_DEPENDS[var])
        iv = _interval(var, a, b, assigned)
        for x in iv.dyadic_points(max_depth):
            assigned[var] = x
            found, child = solve(level + 1)
            if found is not None:
                return found, None
            del assigned[var]
            if var not in child:
                return None, child
            conflict |= child - {var}
        return None, conflict

    found, _ = solve(0)
    return found


# --------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class RegionCell:
    alpha: Fraction
    beta: Fraction
    feasible: bool
    witness: Optional[FeasibilityWitness] = None


@dataclass
class RegionMap:
    cells: list = field(default_factory=list)

    def feasible_alphas(self) -> list:
        return sorted({c.alpha for c in self.cells if c.feasible})

    def boundary_alpha(self) -> Optional[Fraction]:
        """Smallest α with a feasible cell."""
        alphas = self.feasible_alphas()
        return alphas[0] if alphas else None


def rational_grid(lo, hi, step) -> list:
    lo, hi, step = q(lo), q(hi), q(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    if lo > hi:
        raise ValueError(f"empty grid: min {lo} > max {hi}")
    count = int((hi - lo) / step)
    return [lo + k * step for k in range(count + 1)]


def sweep_region(alphas, betas=None, keep_witnesses: bool = True) -> RegionMap:
    """Evaluate :func:`find_witness` over a grid.

    ``betas=None`` pairs each α with :func:`midpoint_beta`; otherwise every
    (α, β) combination is evaluated.
    """
    out = RegionMap()
    for a in alphas:
        a = q(a)
        if betas is None:
            if not 0 < a < 1:
                continue
            column = [midpoint_beta(a)]
        else:
            column = [q(b) for b in betas]
        for b in column:
            w = find_witness(a, b)
            out.cells.append(RegionCell(a, b, w is not None, w if keep_witnesses else None))
    return out


# --------------------------------------------------------------------------
# the reduction at m = 2/α


def fact_inequality_sides(alpha) -> tuple:
    """Both sides of (3α-2)/(2(2-α)(1-α)) > (3α²+4α-4)/(8(1-α))."""
    a = q(alpha)
    if a in (1, 2):
        raise ValueError("α = 1 and α = 2 are poles")
    return (3 * a - 2) / (2 * (2 - a) * (1 - a)), (3 * a * a + 4 * a - 4) / (8 * (1 - a))


def verify_fact_inequality(alpha) -> bool:
    a = q(alpha)
    if not Fraction(2, 3) < a < 1:
        raise ValueError(f"the inequality is stated for 2/3 < α < 1, got {a}")
    lhs, rhs = fact_inequality_sides(a)
    return lhs > rhs


# the m-conditions written as (left side, right side) of "left < right"
_M_CONDITIONS = (
    ("4/(3-α-β) < m", lambda a, b, m: (4 / (3 - a - b), m)),
    ("m < 4", lambda a, b, m: (m, Fraction(4))),
    ("m < 1/(1-α)", lambda a, b, m: (m, 1 / (1 - a))),
    (
        "(2(2-α)β-3α+2)m < 4(2-α)β",
        lambda a, b, m: ((2 * (2 - a) * b - 3 * a + 2) * m, 4 * (2 - a) * b),
    ),
    (
        "(4+8β-4α-3α²)m < 16β",
        lambda a, b, m: ((4 + 8 * b - 4 * a - 3 * a * a) * m, 16 * b),
    ),
)


def m_condition_beta_bounds(alpha, m) -> dict:
    """Solve each m-condition for β at fixed (α, m).

    Conditions that are affine in β are solved by evaluating their defect
    at two points; the first one is not affine and is inverted directly.
    Returns ``{label: (kind, value)}`` with kind ``"upper"``/``"lower"``, or
    ``("always", None)`` / ``("never", None)`` when β drops out.
    """
    a, m = q(alpha), q(m)
    out = {}
    for label, cond in _M_CONDITIONS:
        if label.startswith("4/("):
            # 4/(3-α-β) < m with 3-α-β > 0  ⇔  β < 3-α-4/m
            out[label] = ("upper", 3 - a - 4 / m)
            continue
        def defect(b):
            lhs, rhs = cond(a, Fraction(b), m)
            return lhs - rhs
        g0, g1 = defect(0), defect(1)
        slope = g1 - g0
        if slope == 0:
            out[label] = ("always", None) if g0 < 0 else ("never", None)
        else:
            root = -g0 / slope
            out[label] = ("upper", root) if slope > 0 else ("lower", root)
    return out


def reduced_beta_bounds(alpha) -> list:
    """Upper bounds on β from the m-conditions at m = 2/α, plus β < α/2."""
    a = q(alpha)
    bounds = [v for kind, v in m_condition_beta_bounds(a, 2 / a).values() if kind == "upper"]
    bounds.append(a / 2)
    return sorted(set(bounds))

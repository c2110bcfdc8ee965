#pragma once

#include <lao/interval.hpp>
#include <lao/lp.hpp>
#include <lao/rational.hpp>
#include <lao/ski_rental.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lao {

namespace detail {

inline void check_lp_params(std::int64_t B, const Rational& beta, const Rational& gamma) {
    if (B < 2) throw std::invalid_argument("build_lp: B must be >= 2");
    if (beta < 1 || beta >= gamma)
        throw std::invalid_argument("build_lp: need 1 <= beta < gamma");
}

/// Robustness row C(x): sum_{i<=x} (B+i-1) p_i + x sum_{i>x} p_i <= gamma*min(B,x),
/// over `nv` buy-day variables.
inline LpConstraint robustness_row(std::int64_t B, const Rational& gamma, std::int64_t x,
                                   std::size_t nv) {
    LpConstraint c;
    c.coeffs.resize(nv);
    for (std::size_t j = 0; j < nv; ++j) {
        std::int64_t i = static_cast<std::int64_t>(j) + 1;
        c.coeffs[j] = i <= x ? Rational(B + i - 1) : Rational(x);
    }
    c.rel = Relation::LessEq;
    c.rhs = gamma * Rational(x < B ? x : B);
    return c;
}

/// The full feasibility LP for season length y = 2B-1, with `extra_vars`
/// additional buy days p_{y+1}, ... appended (0 for the reduced LP).
inline LpProblem build_lp_impl(std::int64_t B, const Rational& beta, const Rational& gamma,
                               std::int64_t extra_vars) {
    check_lp_params(B, beta, gamma);
    const std::int64_t y = 2 * B - 1;
    const std::size_t nv = static_cast<std::size_t>(y + extra_vars);
    LpProblem lp;
    lp.num_vars = nv;

    LpConstraint prob;
    prob.coeffs.assign(nv, Rational(1));
    prob.rel = Relation::Eq;
    prob.rhs = Rational(1);
    lp.constraints.push_back(std::move(prob));

    // Consistency at x = y: buying at day i <= y costs B+i-1; mass after
    // day y only pays the season's rent y. OPT = B since y >= B.
    LpConstraint cons;
    cons.coeffs.resize(nv);
    for (std::size_t j = 0; j < nv; ++j) {
        std::int64_t i = static_cast<std::int64_t>(j) + 1;
        cons.coeffs[j] = i <= y ? Rational(B + i - 1) : Rational(y);
    }
    cons.rel = Relation::LessEq;
    cons.rhs = beta * Rational(B);
    lp.constraints.push_back(std::move(cons));

    for (std::int64_t x = 1; x <= B - 1; ++x)
        lp.constraints.push_back(robustness_row(B, gamma, x, nv));
    return lp;
}

}  // namespace detail

/// The reduced feasibility LP: y = 2B-1 variables and B+1 constraints
/// (probability mass, consistency, robustness C(1)..C(B-1)).
inline LpProblem build_lp(std::int64_t B, const Rational& beta, const Rational& gamma) {
    return detail::build_lp_impl(B, beta, gamma, 0);
}

/// The reduced LP plus one of the dropped robustness constraints C(x),
/// B <= x <= 2B-1. Appending any of them never changes feasibility.
inline LpProblem build_lp_with_constraint(std::int64_t B, const Rational& beta,
                                          const Rational& gamma, std::int64_t x) {
    if (x < B || x > 2 * B - 1)
        throw std::invalid_argument("build_lp_with_constraint: x must lie in [B, 2B-1]");
    LpProblem lp = detail::build_lp_impl(B, beta, gamma, 0);
    lp.constraints.push_back(detail::robustness_row(B, gamma, x, lp.num_vars));
    return lp;
}

/// The reduced LP extended with buy-day variables p_{y+1}, p_{y+2}.
/// The extra mass never helps, so feasibility is unchanged.
inline LpProblem build_lp_with_tail_vars(std::int64_t B, const Rational& beta,
                                         const Rational& gamma) {
    return detail::build_lp_impl(B, beta, gamma, 2);
}

/// Smallest k with (gamma-1)((1+1/(B-1))^k - 1) >= 1, found by exact
/// exponential-then-binary search (no logarithms anywhere).
inline std::int64_t analytic_support_end(std::int64_t B, const Rational& gamma) {
    if (B < 2) throw std::invalid_argument("analytic_support_end: B must be >= 2");
    if (gamma <= 1) throw std::invalid_argument("analytic_support_end: gamma must exceed 1");
    const Rational ratio(B, B - 1);
    const Rational gm1 = gamma - 1;
    auto reached = [&](std::int64_t k) { return gm1 * (Rational::pow(ratio, k) - 1) >= 1; };
    std::int64_t hi = 1;
    while (!reached(hi)) {
        hi *= 2;
        if (hi > (std::int64_t{1} << 40))
            throw std::overflow_error("analytic_support_end: no support end below 2^40");
    }
    std::int64_t lo = hi / 2;  // reached(lo) is false (or lo == 0)
    while (lo + 1 < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (reached(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

/// The distribution that meets the first k-1 robustness constraints with
/// equality: p_i = ((gamma-1)/(B-1)) (1+1/(B-1))^(i-1) for i < k, remainder
/// on day k. Only defined while k <= B; beyond that gamma is below the
/// feasible-robustness threshold.
inline BuyDistribution analytic_distribution(std::int64_t B, const Rational& gamma) {
    const std::int64_t k = analytic_support_end(B, gamma);
    if (k > B)
        throw std::domain_error(
            "analytic_distribution: support exceeds B (gamma below feasible threshold)");
    const Rational ratio(B, B - 1);
    std::vector<Rational> probs(static_cast<std::size_t>(k));
    Rational term = (gamma - 1) / Rational(B - 1);
    Rational assigned;
    for (std::int64_t i = 1; i <= k - 1; ++i) {
        probs[static_cast<std::size_t>(i - 1)] = term;
        assigned += term;
        term *= ratio;
    }
    probs[static_cast<std::size_t>(k - 1)] = Rational(1) - assigned;
    BuyDistribution dist{k, std::move(probs)};
    dist.validate();
    return dist;
}

/// Closed-form minimal consistency compatible with robustness gamma:
/// 1 + (k-1) gamma / B + (gamma-1)(1 - (B/(B-1))^(k-1)).
inline Rational min_consistency(std::int64_t B, const Rational& gamma) {
    const std::int64_t k = analytic_support_end(B, gamma);
    if (k > B)
        throw std::domain_error(
            "min_consistency: support exceeds B (gamma below feasible threshold)");
    const Rational pow_km1 = Rational::pow(Rational(B, B - 1), k - 1);
    return Rational(1) + Rational(k - 1) * gamma / Rational(B) +
           (gamma - 1) * (Rational(1) - pow_km1);
}

/// Interval form of the large-B consistency floor gamma*ln(1 + 1/(gamma-1)).
inline Interval asymptotic_lower_bound_interval(const Rational& gamma, int digits) {
    if (gamma <= 1)
        throw std::invalid_argument("asymptotic_lower_bound: gamma must exceed 1");
    Interval l = ln_interval(Rational(1) + Rational(1) / (gamma - 1), digits + 4);
    return round_out(Interval(gamma) * l, digits);
}

/// Rational lower enclosure of gamma*ln(1 + 1/(gamma-1)), accurate to
/// `digits` decimal digits from below.
inline Rational asymptotic_lower_bound(const Rational& gamma, int digits) {
    return asymptotic_lower_bound_interval(gamma, digits).lo;
}

/// Enclosure of the chord gap x/B - (1+1/(B-1))^{-1}((1+1/(B-1))^x - 1) for
/// x in [0,1]. Nonnegative everywhere, exactly zero at the endpoints.
inline Interval chord_gap(std::int64_t B, const Rational& x, int digits) {
    if (B < 2) throw std::invalid_argument("chord_gap: B must be >= 2");
    if (x < 0 || x > 1) throw std::invalid_argument("chord_gap: x must lie in [0,1]");
    const Rational base(B, B - 1);
    const Rational scale(B - 1, B);  // (1+1/(B-1))^{-1}
    Interval power = pow_interval(base, x, digits + 2);
    Interval gap = Interval(x / Rational(B)) - scale * (power - Interval(Rational(1)));
    return round_out(gap, digits);
}

struct TightnessReport {
    std::int64_t budget = 0;     // B
    Rational gamma;
    std::int64_t support_end = 0;
    Rational closed_form;        // min_consistency(B, gamma)
    Rational bracket_lo, bracket_hi;
    bool bracket_ok = false;     // bracket_lo < closed_form <= bracket_hi
    bool witness_ok = false;     // analytic distribution satisfies the LP at closed_form
    bool chord_ok = false;       // chord gap certified nonneg on the x grid
};

/// Bisects the consistency boundary over [1, gamma] to `grid` levels with
/// the exact solver, checks the bracket against the closed form, plugs the
/// analytic distribution in as a witness, and certifies the chord
/// inequality on a 101-point grid of x in [0,1].
inline TightnessReport verify_tightness(std::int64_t B, const Rational& gamma,
                                        std::int64_t grid) {
    if (grid < 1) throw std::invalid_argument("verify_tightness: grid must be >= 1");
    TightnessReport report;
    report.budget = B;
    report.gamma = gamma;
    report.support_end = analytic_support_end(B, gamma);
    report.closed_form = min_consistency(B, gamma);

    auto feasible_at = [&](const Rational& beta) {
        return lp_feasible(build_lp(B, beta, gamma)).feasible;
    };

    Rational lo(1), hi = gamma;
    if (feasible_at(Rational(1))) {
        lo = hi = Rational(1);
    } else {
        for (std::int64_t level = 0; level < grid; ++level) {
            Rational mid = (lo + hi) / 2;
            if (feasible_at(mid))
                hi = mid;
            else
                lo = mid;
        }
    }
    report.bracket_lo = lo;
    report.bracket_hi = hi;
    report.bracket_ok = lo <= report.closed_form && report.closed_form <= hi &&
                        (lo < report.closed_form || lo == hi);

    BuyDistribution dist = analytic_distribution(B, gamma);
    std::vector<Rational> witness(static_cast<std::size_t>(2 * B - 1), Rational(0));
    for (std::size_t i = 0; i < dist.probs.size(); ++i) witness[i] = dist.probs[i];
    report.witness_ok = lp_satisfies(build_lp(B, report.closed_form, gamma), witness);

    report.chord_ok = true;
    for (int j = 0; j <= 100; ++j) {
        Rational x(j, 100);
        Interval gap = chord_gap(B, x, 12);
        bool ok = (j == 0 || j == 100) ? (gap.lo == 0 && gap.hi == 0) : gap.lo >= 0;
        if (!ok) {
            report.chord_ok = false;
            break;
        }
    }
    return report;
}

}  // namespace lao

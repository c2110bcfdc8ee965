#pragma once

#include <lao/core.hpp>
#include <lao/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lao {

/// Deterministic strategy: rent through day t-1, buy at the start of day t.
struct DetPolicy {
    std::int64_t buy_day = 1;
};

/// Probability of buying at each day 1..k (zero mass afterwards).
struct BuyDistribution {
    std::int64_t support_end = 1;  // k
    std::vector<Rational> probs;   // length k, nonneg, sums to exactly 1

    void validate() const {
        if (support_end < 1 || probs.size() != static_cast<std::size_t>(support_end))
            throw std::invalid_argument("BuyDistribution: probs length must equal support_end");
        Rational total;
        for (const auto& p : probs) {
            if (p < 0) throw std::invalid_argument("BuyDistribution: negative probability");
            total += p;
        }
        if (total != 1) throw std::invalid_argument("BuyDistribution: probabilities must sum to 1");
    }
};

inline void check_lambda_open_unit(const Rational& lambda) {
    if (lambda <= 0 || lambda >= 1)
        throw std::invalid_argument("lambda must lie in (0,1)");
}

/// Buy day of the prediction-guided deterministic strategy:
/// ceil(lambda*B) when the prediction favors buying (y >= B), else
/// ceil(B/lambda).
inline DetPolicy det_buy_day(std::int64_t B, std::int64_t y, const Rational& lambda) {
    check_lambda_open_unit(lambda);
    if (B < 1 || y < 1) throw std::invalid_argument("det_buy_day: B, y must be >= 1");
    Rational target = y >= B ? lambda * Rational(B) : Rational(B) / lambda;
    return DetPolicy{target.ceil().convert_to<std::int64_t>()};
}

/// Cost of following a buy-at-day-t strategy through an x-day season:
/// x if the season ends before the buy day, else t - 1 + B.
inline Rational det_cost(std::int64_t B, std::int64_t x, const DetPolicy& policy) {
    if (B < 1 || x < 1 || policy.buy_day < 1)
        throw std::invalid_argument("det_cost: B, x, t must be >= 1");
    if (x < policy.buy_day) return Rational(x);
    return Rational(policy.buy_day - 1 + B);
}

namespace detail {

/// The only two buy days the deterministic strategy can pick for a given
/// (B, lambda): one for the y >= B regime, one for y < B (absent if B = 1).
inline std::vector<std::int64_t> det_regime_buy_days(std::int64_t B, const Rational& lambda) {
    std::vector<std::int64_t> days{det_buy_day(B, B, lambda).buy_day};
    if (B >= 2) {
        std::int64_t t = det_buy_day(B, 1, lambda).buy_day;
        if (t != days[0]) days.push_back(t);
    }
    return days;
}

}  // namespace detail

/// Measured worst-case consistency and robustness of the deterministic
/// strategy by exhaustive sweep. Beyond X_max = 2*ceil(B/lambda) + B both
/// ALG and OPT are constant in x, so the finite sweep attains the suprema.
/// The y-sweep collapses exactly onto the two possible buy-day regimes.
inline TradeoffPoint det_worst_case(std::int64_t B, const Rational& lambda) {
    check_lambda_open_unit(lambda);
    if (B < 1) throw std::invalid_argument("det_worst_case: B must be >= 1");
    const std::int64_t x_max =
        2 * (Rational(B) / lambda).ceil().convert_to<std::int64_t>() + B;

    Rational consistency(1);
    for (std::int64_t y = 1; y <= x_max; ++y) {
        DetPolicy t = det_buy_day(B, y, lambda);
        SkiInstance inst(B, y, y);
        Rational r = det_cost(B, y, t) / opt_ski_cost(inst);
        consistency = max(consistency, r);
    }

    Rational robustness(1);
    for (std::int64_t t : detail::det_regime_buy_days(B, lambda)) {
        DetPolicy policy{t};
        for (std::int64_t x = 1; x <= x_max; ++x) {
            SkiInstance inst(B, x, 1);
            Rational r = det_cost(B, x, policy) / opt_ski_cost(inst);
            robustness = max(robustness, r);
        }
    }
    return make_tradeoff_point(lambda, consistency, robustness);
}

/// Adversarial instance against the deterministic strategy: pick the
/// smallest prediction y with y > (1+lambda)B, then end the season exactly
/// on the strategy's buy day. Achieves ratio >= 1 + (B-1)/(lambda*B + 1).
inline SkiInstance det_adversary(std::int64_t B, const Rational& lambda) {
    check_lambda_open_unit(lambda);
    if (B < 1) throw std::invalid_argument("det_adversary: B must be >= 1");
    Rational threshold = (Rational(1) + lambda) * Rational(B);
    std::int64_t y = threshold.floor().convert_to<std::int64_t>() + 1;
    std::int64_t x = det_buy_day(B, y, lambda).buy_day;
    return SkiInstance(B, x, y);
}

/// Buy-day distribution of the prediction-guided randomized strategy:
/// support 1..k with k as in det_buy_day, day i weighted (1-1/B)^(k-i).
inline BuyDistribution rand_distribution(std::int64_t B, std::int64_t y, const Rational& lambda) {
    check_lambda_open_unit(lambda);
    if (B < 2) throw std::invalid_argument("rand_distribution: B must be >= 2");
    if (y < 1) throw std::invalid_argument("rand_distribution: y must be >= 1");
    const std::int64_t k = det_buy_day(B, y, lambda).buy_day;
    const Rational r(B - 1, B);
    // weights r^(k-i); normalizer sum_{m=0}^{k-1} r^m = (1 - r^k)/(1 - r)
    Rational normalizer = (Rational(1) - Rational::pow(r, k)) / (Rational(1) - r);
    std::vector<Rational> probs(static_cast<std::size_t>(k));
    Rational weight(1);  // r^(k-i) built from i = k downwards
    for (std::int64_t i = k; i >= 1; --i) {
        probs[static_cast<std::size_t>(i - 1)] = weight / normalizer;
        weight *= r;
    }
    BuyDistribution dist{k, std::move(probs)};
    dist.validate();
    return dist;
}

/// Expected cost of a buy-day distribution over an x-day season:
/// sum_{i<=x} (B+i-1) p_i + x * P(buy day > x).
inline Rational expected_cost(const BuyDistribution& dist, std::int64_t B, std::int64_t x) {
    if (B < 1 || x < 1) throw std::invalid_argument("expected_cost: B, x must be >= 1");
    dist.validate();
    Rational bought;
    Rational tail_prob;
    for (std::int64_t i = 1; i <= dist.support_end; ++i) {
        const Rational& p = dist.probs[static_cast<std::size_t>(i - 1)];
        if (i <= x)
            bought += Rational(B + i - 1) * p;
        else
            tail_prob += p;
    }
    return bought + Rational(x) * tail_prob;
}

namespace detail {

struct RandSweep {
    Rational worst;          // max ratio over x in [1, cap]
    Rational worst_below_b;  // max ratio over x in [1, B-1]
    Rational at_b;           // ratio at x = B
};

/// Ratio sweep of expected cost over OPT for one fixed distribution,
/// incremental in x: E(x+1) - E(x) = (B-1) p_{x+1} + P(buy day > x).
inline RandSweep rand_sweep(const BuyDistribution& dist, std::int64_t B, std::int64_t x_cap) {
    Rational e = Rational(B) * dist.probs[0] + Rational(1) - dist.probs[0];  // E(1)
    Rational tail = Rational(1) - dist.probs[0];                             // P(i > 1)
    RandSweep sweep{e, e, e};                                                // OPT(1) = 1
    if (B == 1) sweep.worst_below_b = Rational(0);
    for (std::int64_t x = 2; x <= x_cap; ++x) {
        Rational p_x = x <= dist.support_end ? dist.probs[static_cast<std::size_t>(x - 1)]
                                             : Rational(0);
        e += Rational(B - 1) * p_x + tail;
        tail -= p_x;
        Rational r = e / Rational(x < B ? x : B);
        sweep.worst = max(sweep.worst, r);
        if (x < B) sweep.worst_below_b = max(sweep.worst_below_b, r);
        if (x == B) sweep.at_b = r;
    }
    return sweep;
}

}  // namespace detail

/// Measured worst-case consistency and robustness of the randomized
/// strategy. Expected cost is constant in x past the support end and OPT
/// is constant past B, so sweeping x to max(k, B) attains the suprema; the
/// y-sweep again collapses onto the two buy-day regimes. Consistency reads
/// off the same sweeps: x = y < B points live in the high-k sweep below B,
/// and every x = y >= B point equals the low-k sweep's value at B.
inline TradeoffPoint rand_worst_case(std::int64_t B, const Rational& lambda) {
    check_lambda_open_unit(lambda);
    if (B < 2) throw std::invalid_argument("rand_worst_case: B must be >= 2");
    if (lambda * Rational(B) <= 1)
        throw std::invalid_argument("rand_worst_case: need lambda > 1/B");

    BuyDistribution low = rand_distribution(B, B, lambda);  // y >= B regime
    BuyDistribution high = rand_distribution(B, 1, lambda); // y < B regime

    detail::RandSweep low_sweep =
        detail::rand_sweep(low, B, low.support_end > B ? low.support_end : B);
    detail::RandSweep high_sweep =
        detail::rand_sweep(high, B, high.support_end > B ? high.support_end : B);

    Rational consistency = max(low_sweep.at_b, high_sweep.worst_below_b);
    Rational robustness = max(low_sweep.worst, high_sweep.worst);
    return make_tradeoff_point(lambda, consistency, robustness);
}

}  // namespace lao

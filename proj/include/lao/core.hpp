#pragma once

#include <lao/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lao {

/// A ski-rental instance: buy for B once, or rent for 1 per day, over a
/// season of x days; y is the predicted season length.
struct SkiInstance {
    std::int64_t buy_cost = 1;        // B
    std::int64_t true_days = 1;       // x
    std::int64_t predicted_days = 1;  // y

    SkiInstance(std::int64_t B, std::int64_t x, std::int64_t y)
        : buy_cost(B), true_days(x), predicted_days(y) {
        if (B < 1 || x < 1 || y < 1)
            throw std::invalid_argument("SkiInstance: B, x, y must be >= 1");
    }

    std::int64_t prediction_error() const {
        return true_days >= predicted_days ? true_days - predicted_days
                                           : predicted_days - true_days;
    }
};

/// n jobs with true processing times x_i and predicted times y_i.
struct JobSet {
    std::vector<Rational> true_times;
    std::vector<Rational> predicted_times;

    JobSet(std::vector<Rational> x, std::vector<Rational> y)
        : true_times(std::move(x)), predicted_times(std::move(y)) {
        if (true_times.size() != predicted_times.size() || true_times.empty())
            throw std::invalid_argument("JobSet: need equal-length nonempty time lists");
        for (const auto& t : true_times)
            if (t <= 0) throw std::invalid_argument("JobSet: true times must be positive");
        for (const auto& t : predicted_times)
            if (t <= 0) throw std::invalid_argument("JobSet: predicted times must be positive");
    }

    std::size_t size() const { return true_times.size(); }

    Rational prediction_error() const {
        Rational e;
        for (std::size_t i = 0; i < size(); ++i)
            e += abs(true_times[i] - predicted_times[i]);
        return e;
    }
};

/// ALG cost, OPT cost, and their exact quotient.
struct RatioReport {
    Rational alg_cost;
    Rational opt_cost;
    Rational ratio;
};

/// One point on a consistency/robustness trade-off curve.
struct TradeoffPoint {
    Rational lambda;
    Rational beta;   // consistency
    Rational gamma;  // robustness
};

inline TradeoffPoint make_tradeoff_point(const Rational& lambda, const Rational& beta,
                                         const Rational& gamma) {
    if (lambda < 0 || lambda > 1)
        throw std::invalid_argument("TradeoffPoint: lambda must lie in [0,1]");
    if (beta < 1 || gamma < beta)
        throw std::invalid_argument("TradeoffPoint: need 1 <= beta <= gamma");
    return TradeoffPoint{lambda, beta, gamma};
}

/// Offline optimum for ski rental: min(x, B).
inline Rational opt_ski_cost(const SkiInstance& inst) {
    return Rational(std::min(inst.true_days, inst.buy_cost));
}

/// Offline optimum total completion time on one machine: run jobs in
/// shortest-processing-time order; position i (ascending) is counted
/// n - i + 1 times.
inline Rational opt_completion(const std::vector<Rational>& times) {
    if (times.empty()) throw std::invalid_argument("opt_completion: empty time list");
    for (const auto& t : times)
        if (t <= 0) throw std::invalid_argument("opt_completion: times must be positive");
    std::vector<Rational> sorted = times;
    std::stable_sort(sorted.begin(), sorted.end());
    Rational total;
    const std::size_t n = sorted.size();
    for (std::size_t i = 0; i < n; ++i)
        total += Rational(static_cast<std::int64_t>(n - i)) * sorted[i];
    return total;
}

/// Exact ALG/OPT. A ratio below 1 means the caller's simulator produced a
/// cost below the offline optimum, which is a bug, not a data point.
inline RatioReport ratio(const Rational& alg, const Rational& opt) {
    if (opt <= 0) throw std::invalid_argument("ratio: opt must be positive");
    if (alg < opt) throw std::logic_error("ratio: alg < opt (simulator bug)");
    return RatioReport{alg, opt, alg / opt};
}

}  // namespace lao

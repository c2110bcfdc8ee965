#pragma once

#include <lao/core.hpp>
#include <lao/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lao {

enum class SchedEventKind { Complete, Overrun, Budget };

/// One simulator event. Jobs are numbered from 1; budget events carry
/// job = 0.
struct SchedEvent {
    Rational time;
    SchedEventKind kind = SchedEventKind::Complete;
    std::int64_t job = 0;

    friend bool operator==(const SchedEvent& a, const SchedEvent& b) {
        return a.time == b.time && a.kind == b.kind && a.job == b.job;
    }
};

/// A maximal span of time with constant processing rates.
struct ScheduleInterval {
    Rational begin, end;
    std::vector<Rational> rates;  // per job, zero for finished jobs, sum <= 1
};

struct Schedule {
    std::vector<ScheduleInterval> intervals;
    std::vector<Rational> completion_times;
    /// delay[i][j]: processing given to job i strictly before job j completes.
    std::vector<std::vector<Rational>> delay;
    std::vector<SchedEvent> events;

    Rational total_completion_time() const {
        Rational total;
        for (const auto& t : completion_times) total += t;
        return total;
    }

    /// Cumulative processing per job over [0, t].
    std::vector<Rational> processed_before(const Rational& t) const {
        std::vector<Rational> cum(intervals.empty() ? completion_times.size()
                                                    : intervals.front().rates.size());
        for (const auto& iv : intervals) {
            if (iv.begin >= t) break;
            Rational len = min(iv.end, t) - iv.begin;
            for (std::size_t i = 0; i < cum.size(); ++i) cum[i] += iv.rates[i] * len;
        }
        return cum;
    }
};

/// A preemptive single-machine policy. RoundRobin splits the processor
/// evenly among unfinished jobs. TwoStage runs round robin until a
/// wall-clock budget of lambda*n*OPT_y/C(n,2) has elapsed, then serves
/// unfinished jobs one at a time in ascending predicted time; any observed
/// misprediction switches it to round robin permanently.
struct Policy {
    enum class Kind { RoundRobin, TwoStage };
    Kind kind = Kind::RoundRobin;
    Rational lambda;
};

inline Policy round_robin_policy() { return Policy{Policy::Kind::RoundRobin, Rational(0)}; }

inline Policy two_stage_policy(const Rational& lambda) {
    if (lambda <= 0) throw std::invalid_argument("two_stage_policy: lambda must be positive");
    return Policy{Policy::Kind::TwoStage, lambda};
}

/// Event-driven run to completion. Events occur when a job's cumulative
/// processing reaches its true time (completion), when it reaches the
/// predicted time of an unfinished job (overrun; detection only), and when
/// the two-stage budget empties. A completion that lands exactly on the
/// prediction is not an overrun and raises no flag.
inline Schedule simulate(const Policy& policy, const JobSet& jobs) {
    const std::size_t n = jobs.size();
    const bool two_stage = policy.kind == Policy::Kind::TwoStage;
    if (two_stage && n < 2)
        throw std::invalid_argument("simulate: two-stage policy needs at least 2 jobs");

    Schedule sched;
    sched.completion_times.assign(n, Rational(0));
    sched.delay.assign(n, std::vector<Rational>(n, Rational(0)));

    std::vector<Rational> cum(n, Rational(0));
    std::vector<bool> done(n, false);
    std::vector<bool> overrun_seen(n, false);
    std::size_t remaining = n;

    bool in_stage1 = two_stage;
    bool mispredicted = false;
    Rational budget;
    if (two_stage) {
        Rational pair_count(static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2);
        budget = policy.lambda * Rational(static_cast<std::int64_t>(n)) *
                 opt_completion(jobs.predicted_times) / pair_count;
    }

    // Stage-2 service order: ascending predicted time, ties by input index.
    std::vector<std::size_t> by_prediction(n);
    std::iota(by_prediction.begin(), by_prediction.end(), std::size_t{0});
    std::stable_sort(by_prediction.begin(), by_prediction.end(),
                     [&](std::size_t a, std::size_t b) {
                         return jobs.predicted_times[a] < jobs.predicted_times[b];
                     });

    Rational now(0);
    while (remaining > 0) {
        std::vector<Rational> rates(n, Rational(0));
        bool round_robin_now = !two_stage || mispredicted || in_stage1;
        if (round_robin_now) {
            Rational share(1, static_cast<std::int64_t>(remaining));
            for (std::size_t i = 0; i < n; ++i)
                if (!done[i]) rates[i] = share;
        } else {
            for (std::size_t i : by_prediction) {
                if (!done[i]) {
                    rates[i] = Rational(1);
                    break;
                }
            }
        }

        // Shortest time to the next event under these rates.
        bool have_step = false;
        Rational step;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || rates[i].is_zero()) continue;
            Rational to_completion = (jobs.true_times[i] - cum[i]) / rates[i];
            if (!have_step || to_completion < step) {
                step = to_completion;
                have_step = true;
            }
            if (cum[i] < jobs.predicted_times[i]) {
                Rational to_overrun = (jobs.predicted_times[i] - cum[i]) / rates[i];
                if (to_overrun < step) step = to_overrun;
            }
        }
        if (two_stage && in_stage1 && !mispredicted && budget < step) {
            step = budget;
            have_step = true;
        }
        if (!have_step) throw std::logic_error("simulate: no runnable job");

        Rational next = now + step;
        sched.intervals.push_back(ScheduleInterval{now, next, rates});
        for (std::size_t i = 0; i < n; ++i) {
            if (rates[i].is_zero()) continue;
            Rational amount = rates[i] * step;
            cum[i] += amount;
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) sched.delay[i][j] += amount;
        }
        now = next;
        if (two_stage && in_stage1 && !mispredicted) budget -= step;

        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || cum[i] != jobs.true_times[i]) continue;
            done[i] = true;
            --remaining;
            sched.completion_times[i] = now;
            sched.events.push_back(
                {now, SchedEventKind::Complete, static_cast<std::int64_t>(i) + 1});
            if (cum[i] != jobs.predicted_times[i]) mispredicted = true;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || overrun_seen[i] || cum[i] != jobs.predicted_times[i]) continue;
            overrun_seen[i] = true;
            sched.events.push_back(
                {now, SchedEventKind::Overrun, static_cast<std::int64_t>(i) + 1});
            mispredicted = true;
        }
        if (two_stage && in_stage1 && !mispredicted && budget.is_zero()) {
            in_stage1 = false;
            sched.events.push_back({now, SchedEventKind::Budget, 0});
        }
    }
    return sched;
}

/// Robustness floor for any (1+lambda)-consistent deterministic scheduler:
/// (n + n(n+1)lambda) / (1 + lambda (n+1)(n+2)/2). Only meaningful for
/// lambda up to 1 - 2/(n+1); past that plain round robin already matches.
inline Rational sched_lower_bound(std::int64_t n, const Rational& lambda) {
    if (n < 2) throw std::invalid_argument("sched_lower_bound: n must be >= 2");
    if (lambda < 0 || lambda > Rational(1) - Rational(2, n + 1))
        throw std::invalid_argument("sched_lower_bound: lambda must lie in [0, 1-2/(n+1)]");
    Rational num = Rational(n) + Rational(n) * Rational(n + 1) * lambda;
    Rational den = Rational(1) + lambda * Rational((n + 1) * (n + 2)) / 2;
    return num / den;
}

/// Adversarial instance for a (1+lambda)-consistent policy: run it on the
/// all-ones instance with perfect predictions, snapshot each job's
/// processing when the first job completes, and end every other job just
/// past that snapshot. Jobs are returned with the first finisher in front
/// and the rest ordered by nonincreasing snapshot.
inline JobSet adversary_instance(const Policy& policy, std::int64_t n, const Rational& lambda,
                                 const Rational& epsilon) {
    if (n < 2) throw std::invalid_argument("adversary_instance: n must be >= 2");
    if (epsilon <= 0) throw std::invalid_argument("adversary_instance: epsilon must be positive");
    std::vector<Rational> ones(static_cast<std::size_t>(n), Rational(1));
    JobSet all_ones(ones, ones);
    Schedule sched = simulate(policy, all_ones);

    Rational first_time = sched.completion_times[0];
    std::size_t first = 0;
    for (std::size_t i = 1; i < sched.completion_times.size(); ++i) {
        if (sched.completion_times[i] < first_time) {
            first_time = sched.completion_times[i];
            first = i;
        }
    }
    if (first_time > Rational(2 * n))
        throw std::runtime_error("adversary_instance: policy starved all jobs past time 2n");

    std::vector<Rational> snapshot = sched.processed_before(first_time);
    std::vector<Rational> others;
    for (std::size_t i = 0; i < snapshot.size(); ++i)
        if (i != first) others.push_back(snapshot[i]);
    std::stable_sort(others.begin(), others.end(),
                     [](const Rational& a, const Rational& b) { return b < a; });

    // The construction presumes the policy honored (1+lambda)-consistency
    // up to the first completion: sum_i (i-1) d(i,i) <= n(n+1) lambda / 2.
    Rational weighted;
    for (std::size_t i = 0; i < others.size(); ++i)
        weighted += Rational(static_cast<std::int64_t>(i) + 1) * others[i];
    if (weighted > Rational(n) * Rational(n + 1) * lambda / 2)
        throw std::invalid_argument(
            "adversary_instance: policy is not (1+lambda)-consistent on the all-ones instance");

    std::vector<Rational> x{Rational(1)};
    for (const auto& d : others) x.push_back(d + epsilon);
    return JobSet(x, std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
}

/// Competitive ratio when the prediction is exactly right (x = y).
inline RatioReport consistency_ratio(const Policy& policy, const std::vector<Rational>& y) {
    JobSet jobs(y, y);
    Schedule sched = simulate(policy, jobs);
    return ratio(sched.total_completion_time(), opt_completion(y));
}

/// Worst simulated ratio for two jobs with predictions fixed at (1,1),
/// over the grid x in {step, 2 step, ..., cap}^2 plus the near-boundary
/// candidates that approach the supremum (epsilon = step/100).
inline RatioReport worst_case_ratio_two_jobs(const Policy& policy, const Rational& grid_step,
                                             const Rational& cap) {
    if (grid_step <= 0) throw std::invalid_argument("worst_case_ratio_two_jobs: step must be positive");
    if (cap < 2) throw std::invalid_argument("worst_case_ratio_two_jobs: cap must be >= 2");
    const std::vector<Rational> y{Rational(1), Rational(1)};

    RatioReport best;
    bool have_best = false;
    auto consider = [&](const Rational& x1, const Rational& x2) {
        JobSet jobs({x1, x2}, y);
        Schedule sched = simulate(policy, jobs);
        RatioReport r = ratio(sched.total_completion_time(), opt_completion(jobs.true_times));
        if (!have_best || best.ratio < r.ratio) {
            best = r;
            have_best = true;
        }
    };

    const std::int64_t steps = (cap / grid_step).floor().convert_to<std::int64_t>();
    for (std::int64_t a = 1; a <= steps; ++a)
        for (std::int64_t b = 1; b <= steps; ++b)
            consider(Rational(a) * grid_step, Rational(b) * grid_step);

    consider(Rational(1), Rational(1));
    if (policy.kind == Policy::Kind::TwoStage) {
        Rational eps = grid_step / 100;
        Rational knee = 3 * policy.lambda;
        consider(Rational(1), knee + eps);
        consider(Rational(1) + eps, knee + 2 * eps);
        consider(knee + eps, Rational(1));
    }
    return best;
}

inline std::string format_trace(const Schedule& sched) {
    std::ostringstream os;
    for (const auto& e : sched.events) {
        os << "t=" << e.time.fraction_str() << " event=";
        switch (e.kind) {
            case SchedEventKind::Complete: os << "complete"; break;
            case SchedEventKind::Overrun: os << "overrun"; break;
            case SchedEventKind::Budget: os << "budget"; break;
        }
        os << " job=" << e.job << '\n';
    }
    return os.str();
}

inline std::vector<SchedEvent> parse_trace(const std::string& text) {
    std::vector<SchedEvent> events;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string t_field, e_field, j_field;
        if (!(ls >> t_field >> e_field >> j_field))
            throw std::invalid_argument("parse_trace: malformed line: " + line);
        auto strip = [&](std::string& fld, const std::string& prefix) {
            if (fld.rfind(prefix, 0) != 0)
                throw std::invalid_argument("parse_trace: malformed line: " + line);
            fld = fld.substr(prefix.size());
        };
        strip(t_field, "t=");
        strip(e_field, "event=");
        strip(j_field, "job=");
        auto t = Rational::parse(t_field);
        if (!t) throw std::invalid_argument("parse_trace: bad time: " + line);
        SchedEvent event;
        event.time = *t;
        if (e_field == "complete")
            event.kind = SchedEventKind::Complete;
        else if (e_field == "overrun")
            event.kind = SchedEventKind::Overrun;
        else if (e_field == "budget")
            event.kind = SchedEventKind::Budget;
        else
            throw std::invalid_argument("parse_trace: bad event kind: " + line);
        event.job = std::stoll(j_field);
        events.push_back(std::move(event));
    }
    return events;
}

}  // namespace lao

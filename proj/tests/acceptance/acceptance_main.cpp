// Acceptance suite: runs every shipped guarantee end to end and prints one
// PASS/FAIL line per criterion. Exit code is the number of failures.

#include <lao/cli.hpp>
#include <lao/curves.hpp>
#include <lao/scheduling.hpp>
#include <lao/ski_lp.hpp>
#include <lao/ski_rental.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace lao;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Criterion {
    int id;
    std::string label;
    std::function<bool(std::string&)> body;
};

bool expect(bool cond, const std::string& detail, std::string& why) {
    if (!cond && why.empty()) why = detail;
    return cond;
}

// 1. Deterministic tightness at B = 100: measured consistency and
//    robustness inside the guarantee (with integrality slack), adversary at
//    or above its exact floor, under 1 s per lambda.
bool criterion1(std::string& why) {
    const std::int64_t B = 100;
    bool ok = true;
    for (const Rational& lambda :
         {Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        auto start = std::chrono::steady_clock::now();
        TradeoffPoint wc = det_worst_case(B, lambda);
        SkiInstance adv = det_adversary(B, lambda);
        DetPolicy policy = det_buy_day(B, adv.predicted_days, lambda);
        Rational adv_ratio = det_cost(B, adv.true_days, policy) / opt_ski_cost(adv);
        double elapsed = seconds_since(start);
        ok &= expect(wc.beta <= Rational(1) + lambda + Rational(1, B),
                     "consistency above 1+lambda+1/B at lambda=" + lambda.str(), why);
        ok &= expect(wc.gamma <= Rational(1) + Rational(1) / lambda + Rational(2, B),
                     "robustness above 1+1/lambda+2/B at lambda=" + lambda.str(), why);
        ok &= expect(adv_ratio >= Rational(1) + Rational(B - 1) / (lambda * Rational(B) + 1),
                     "adversary below its floor at lambda=" + lambda.str(), why);
        ok &= expect(elapsed < 1.0, "sweep exceeded 1 s at lambda=" + lambda.str(), why);
    }
    return ok;
}

// 2. Randomized guarantee at B = 50: measured values at or below the
//    transcendental bounds, compared through upper enclosures of width
//    1e-10, under 5 s per lambda.
bool criterion2(std::string& why) {
    const std::int64_t B = 50;
    const int digits = 10;
    bool ok = true;
    for (const Rational& lambda :
         {Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        auto start = std::chrono::steady_clock::now();
        TradeoffPoint wc = rand_worst_case(B, lambda);
        Interval em_l = exp_interval(-lambda, digits + 2);
        Rational cons_bound =
            round_up((Interval(lambda) / (Interval(Rational(1)) - em_l)).hi, digits);
        Interval em_lb = exp_interval(-(lambda - Rational(1, B)), digits + 2);
        Rational rob_bound = round_up(reciprocal(Interval(Rational(1)) - em_lb).hi, digits);
        double elapsed = seconds_since(start);
        ok &= expect(wc.beta <= cons_bound,
                     "consistency above its bound at lambda=" + lambda.str(), why);
        ok &= expect(wc.gamma <= rob_bound,
                     "robustness above its bound at lambda=" + lambda.str(), why);
        ok &= expect(elapsed < 5.0, "sweep exceeded 5 s at lambda=" + lambda.str(), why);
    }
    return ok;
}

// 3. LP tightness: depth-40 bisection brackets the closed form, the LP is
//    feasible exactly at it and infeasible a hair below, and the analytic
//    distribution is accepted as a witness. Under 60 s in total.
bool criterion3(std::string& why) {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    for (std::int64_t B : {5, 10, 20}) {
        for (const Rational& gamma : {Rational(8, 5), Rational(2), Rational(3)}) {
            const std::string tag = " at B=" + std::to_string(B) + ", gamma=" + gamma.str();
            TightnessReport r = verify_tightness(B, gamma, 40);
            ok &= expect(r.bracket_ok, "bisection bracket missed the closed form" + tag, why);
            ok &= expect(r.witness_ok, "analytic witness rejected" + tag, why);

            Rational mc = r.closed_form;
            ok &= expect(lp_feasible(build_lp(B, mc, gamma)).feasible,
                         "LP infeasible at the closed form" + tag, why);
            Rational below = mc - (gamma - 1) / Rational::pow(Rational(2), 30);
            ok &= expect(!lp_feasible(build_lp(B, below, gamma)).feasible,
                         "LP feasible below the closed form" + tag, why);
        }
    }
    ok &= expect(seconds_since(start) < 60.0, "LP tightness exceeded 60 s", why);
    return ok;
}

// 4. Reduction lemmas: restoring any dropped constraint C(x) or the tail
//    variables never flips feasibility (B <= 8, 5x5 grid); the chord
//    inequality holds on the 101-point grid with exact zero endpoints.
bool criterion4(std::string& why) {
    bool ok = true;
    for (std::int64_t B = 2; B <= 8; ++B) {
        for (int gi = 0; gi < 5 && ok; ++gi) {
            Rational gamma = Rational(8, 5) + Rational(gi, 2);  // 1.6 .. 3.6
            for (int bi = 0; bi < 5 && ok; ++bi) {
                Rational beta = Rational(1) + (gamma - 1) * Rational(bi, 5);
                bool base = lp_feasible(build_lp(B, beta, gamma)).feasible;
                for (std::int64_t x = B; x <= 2 * B - 1; ++x) {
                    bool with_row =
                        lp_feasible(build_lp_with_constraint(B, beta, gamma, x)).feasible;
                    ok &= expect(with_row == base,
                                 "C(" + std::to_string(x) + ") flipped feasibility at B=" +
                                     std::to_string(B),
                                 why);
                }
                bool with_vars = lp_feasible(build_lp_with_tail_vars(B, beta, gamma)).feasible;
                ok &= expect(with_vars == base,
                             "tail variables flipped feasibility at B=" + std::to_string(B), why);
            }
        }
    }
    for (std::int64_t B : {2, 10, 100}) {
        for (int j = 0; j <= 100; ++j) {
            Interval gap = chord_gap(B, Rational(j, 100), 12);
            bool point_ok = (j == 0 || j == 100) ? (gap.lo == 0 && gap.hi == 0) : gap.lo >= 0;
            ok &= expect(point_ok,
                         "chord gap not certified at B=" + std::to_string(B) +
                             ", x=" + std::to_string(j) + "/100",
                         why);
        }
    }
    return ok;
}

// 5. Asymptotic match: at gamma = 1/(1-e^-lambda) the consistency floor
//    equals lambda/(1-e^-lambda) within overlapping 1e-10 enclosures.
bool criterion5(std::string& why) {
    bool ok = true;
    for (const Rational& lambda : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        Interval em_l = exp_interval(-lambda, 14);
        Interval gamma_enc = reciprocal(Interval(Rational(1)) - em_l);
        Rational gamma_pick = round_down(gamma_enc.lo, 12);
        Interval floor_enc = asymptotic_lower_bound_interval(gamma_pick, 12);
        Interval target = Interval(lambda) / (Interval(Rational(1)) - em_l);
        Rational pad(1, pow10(10));
        Interval padded(floor_enc.lo - pad, floor_enc.hi + pad);
        ok &= expect(floor_enc.width() <= pad && target.width() <= pad,
                     "enclosures wider than 1e-10 at lambda=" + lambda.str(), why);
        ok &= expect(padded.intersects(target),
                     "floor and guarantee enclosures disjoint at lambda=" + lambda.str(), why);
    }
    return ok;
}

// 6. Two-stage consistency is exact: ALG <= (1+lambda) OPT as rationals on
//    a 10-instance grid of perfect predictions, with equality at (1,1).
bool criterion6(std::string& why) {
    auto q = [](const char* s) { return *Rational::parse(s); };
    std::vector<std::vector<Rational>> grid = {
        {q("1"), q("1")},   {q("1"), q("2")},     {q("2"), q("1")},     {q("1"), q("3")},
        {q("3"), q("2")},   {q("1/2"), q("1/2")}, {q("5"), q("1")},     {q("2"), q("3")},
        {q("7/2"), q("3/2")}, {q("1"), q("10")},
    };
    bool ok = true;
    for (const Rational& lambda :
         {Rational(1, 100), Rational(1, 10), Rational(1, 5), Rational(3, 10)}) {
        for (const auto& y : grid) {
            RatioReport r = consistency_ratio(two_stage_policy(lambda), y);
            ok &= expect(r.alg_cost <= (Rational(1) + lambda) * r.opt_cost,
                         "consistency exceeded 1+lambda at lambda=" + lambda.str(), why);
        }
        RatioReport unit = consistency_ratio(two_stage_policy(lambda), {Rational(1), Rational(1)});
        ok &= expect(unit.ratio == Rational(1) + lambda,
                     "unit instance not exactly 1+lambda at lambda=" + lambda.str(), why);
    }
    return ok;
}

// 7. Two-stage robustness: the grid maximum approaches the guarantee from
//    below, within 1/20, in under 30 s per lambda.
bool criterion7(std::string& why) {
    bool ok = true;
    for (const Rational& lambda :
         {Rational(1, 100), Rational(1, 10), Rational(1, 5), Rational(3, 10)}) {
        auto start = std::chrono::steady_clock::now();
        RatioReport r =
            worst_case_ratio_two_jobs(two_stage_policy(lambda), Rational(1, 100), Rational(3));
        double elapsed = seconds_since(start);
        Rational bound = Rational(1) + Rational(1) / (Rational(1) + 6 * lambda);
        ok &= expect(r.ratio < bound, "grid maximum reached the open bound at lambda=" + lambda.str(),
                     why);
        ok &= expect(r.ratio >= bound - Rational(1, 20),
                     "grid maximum more than 1/20 below the bound at lambda=" + lambda.str(), why);
        ok &= expect(elapsed < 30.0, "grid sweep exceeded 30 s at lambda=" + lambda.str(), why);
    }
    return ok;
}

// 8. Adversary effectiveness: the generated instance pushes the two-stage
//    policy within 1e-3 of its robustness bound; round robin on all-ones
//    lands exactly on 2 - 2/(n+1).
bool criterion8(std::string& why) {
    bool ok = true;
    Rational eps(1, 10000);
    for (const Rational& lambda : {Rational(1, 100), Rational(1, 10), Rational(1, 5)}) {
        JobSet adv = adversary_instance(two_stage_policy(lambda), 2, lambda, eps);
        Schedule sched = simulate(two_stage_policy(lambda), adv);
        Rational r = sched.total_completion_time() / opt_completion(adv.true_times);
        Rational bound = Rational(1) + Rational(1) / (Rational(1) + 6 * lambda);
        ok &= expect(r >= bound - Rational(1, 1000),
                     "adversary ratio more than 1e-3 below the bound at lambda=" + lambda.str(),
                     why);
    }
    for (std::int64_t n : {2, 3, 5}) {
        std::vector<Rational> ones(static_cast<std::size_t>(n), Rational(1));
        Schedule sched = simulate(round_robin_policy(), JobSet(ones, ones));
        Rational r = sched.total_completion_time() / opt_completion(ones);
        ok &= expect(r == Rational(2) - Rational(2, n + 1),
                     "round robin off 2-2/(n+1) at n=" + std::to_string(n), why);
    }
    return ok;
}

// 9. Formula identities for the scheduling floor.
bool criterion9(std::string& why) {
    bool ok = true;
    for (int j = 0; j < 50; ++j) {
        Rational lambda(j, 150);
        Rational v = sched_lower_bound(2, lambda);
        ok &= expect(v == (Rational(2) + 6 * lambda) / (Rational(1) + 6 * lambda),
                     "floor != (2+6l)/(1+6l) at lambda=" + lambda.str(), why);
        ok &= expect(v == Rational(1) + Rational(1) / (Rational(1) + 6 * lambda),
                     "floor != 1+1/(1+6l) at lambda=" + lambda.str(), why);
    }
    for (std::int64_t n = 2; n <= 10; ++n) {
        ok &= expect(sched_lower_bound(n, Rational(0)) == Rational(n),
                     "floor at lambda=0 is not n for n=" + std::to_string(n), why);
        Rational top = Rational(1) - Rational(2, n + 1);
        ok &= expect(sched_lower_bound(n, top) == Rational(2) - Rational(2, n + 1),
                     "floor at the endpoint is not 2-2/(n+1) for n=" + std::to_string(n), why);
    }
    return ok;
}

// 10. Curve emission through the CLI: both figures as CSV, dominance row by
//     row, lossless round-trip on the exact columns.
bool criterion10(std::string& why) {
    bool ok = true;
    struct Job {
        const char* which;
        const char* path;
    };
    for (const Job& job : {Job{"ski", "acceptance_ski.csv"}, Job{"sched2", "acceptance_sched2.csv"}}) {
        std::ostringstream out, err;
        int code = run_cli({"curve", "--which", job.which, "--budget", "50", "--out", job.path},
                           out, err);
        ok &= expect(code == 0, std::string("curve subcommand failed for ") + job.which, why);
        if (code != 0) continue;

        std::ifstream in(job.path);
        ok &= expect(in.good(), std::string("missing CSV for ") + job.which, why);
        std::vector<CurveSeries> parsed = parse_csv(in);
        ok &= expect(dominance_holds(parsed),
                     std::string("dominance violated in emitted rows for ") + job.which, why);

        std::ostringstream round;
        emit_csv(parsed, round);
        std::istringstream again(round.str());
        std::vector<CurveSeries> reparsed = parse_csv(again);
        bool lossless = reparsed.size() == parsed.size();
        for (std::size_t s = 0; lossless && s < parsed.size(); ++s) {
            lossless = reparsed[s].points.size() == parsed[s].points.size();
            for (std::size_t i = 0; lossless && i < parsed[s].points.size(); ++i)
                lossless = reparsed[s].points[i].beta == parsed[s].points[i].beta &&
                           reparsed[s].points[i].gamma == parsed[s].points[i].gamma;
        }
        ok &= expect(lossless, std::string("round-trip lost exact values for ") + job.which, why);
        std::remove(job.path);
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    long only = 0;
    if (argc == 3 && std::string(argv[1]) == "--only") only = std::strtol(argv[2], nullptr, 10);

    std::vector<Criterion> criteria = {
        {1, "deterministic ski-rental tightness (B=100)", criterion1},
        {2, "randomized ski-rental guarantee (B=50)", criterion2},
        {3, "LP tightness via exact bisection", criterion3},
        {4, "LP reduction lemmas and chord inequality", criterion4},
        {5, "asymptotic floor matches the randomized guarantee", criterion5},
        {6, "two-stage consistency is exact", criterion6},
        {7, "two-stage robustness approached from below", criterion7},
        {8, "adversary effectiveness", criterion8},
        {9, "scheduling floor formula identities", criterion9},
        {10, "curve emission: dominance and lossless round-trip", criterion10},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && only != c.id) continue;
        auto start = std::chrono::steady_clock::now();
        std::string why;
        bool ok = false;
        try {
            ok = c.body(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double elapsed = seconds_since(start);
        std::printf("criterion %2d: %s  [%ss, %s]%s%s\n", c.id, ok ? "PASS" : "FAIL",
                    std::to_string(elapsed).substr(0, 5).c_str(), c.label.c_str(),
                    why.empty() ? "" : " -- ", why.c_str());
        if (!ok) ++failures;
    }
    return failures;
}

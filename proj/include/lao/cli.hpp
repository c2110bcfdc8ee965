#pragma once

#include <lao/curves.hpp>
#include <lao/scheduling.hpp>
#include <lao/ski_lp.hpp>
#include <lao/ski_rental.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace lao {

namespace cli_detail {

inline Rational parse_rational_flag(const std::string& text, const std::string& flag) {
    auto q = Rational::parse(text);
    if (!q)
        throw CLI::ValidationError(flag, "expected num/den or a terminating decimal, got '" +
                                             text + "'");
    return *q;
}

inline std::vector<Rational> parse_rational_list(const std::string& text,
                                                 const std::string& flag) {
    std::vector<Rational> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        values.push_back(parse_rational_flag(item, flag));
    if (values.empty()) throw CLI::ValidationError(flag, "expected a comma-separated list");
    return values;
}

inline std::string join(const std::vector<Rational>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += values[i].str();
    }
    return out;
}

inline int run_ski_det(std::int64_t B, const Rational& lambda, std::optional<std::int64_t> x,
                       std::optional<std::int64_t> y, std::ostream& out) {
    if (x.has_value()) {
        DetPolicy policy = det_buy_day(B, *y, lambda);
        SkiInstance inst(B, *x, *y);
        Rational alg = det_cost(B, *x, policy);
        RatioReport r = ratio(alg, opt_ski_cost(inst));
        out << "buy_day=" << policy.buy_day << '\n';
        out << "alg=" << r.alg_cost << '\n';
        out << "opt=" << r.opt_cost << '\n';
        out << "ratio=" << r.ratio << '\n';
        return 0;
    }
    TradeoffPoint wc = det_worst_case(B, lambda);
    Rational cons_bound = Rational(1) + lambda + Rational(1, B);
    Rational rob_bound = Rational(1) + Rational(1) / lambda + Rational(2, B);
    SkiInstance adv = det_adversary(B, lambda);
    DetPolicy adv_policy = det_buy_day(B, adv.predicted_days, lambda);
    RatioReport adv_r = ratio(det_cost(B, adv.true_days, adv_policy), opt_ski_cost(adv));
    Rational adv_bound = Rational(1) + Rational(B - 1) / (lambda * Rational(B) + 1);
    bool ok = wc.beta <= cons_bound && wc.gamma <= rob_bound && adv_r.ratio >= adv_bound;
    out << "consistency=" << wc.beta << '\n';
    out << "robustness=" << wc.gamma << '\n';
    out << "consistency_bound=" << cons_bound << '\n';
    out << "robustness_bound=" << rob_bound << '\n';
    out << "adversary_y=" << adv.predicted_days << '\n';
    out << "adversary_x=" << adv.true_days << '\n';
    out << "adversary_ratio=" << adv_r.ratio << '\n';
    out << "adversary_bound=" << adv_bound << '\n';
    out << "bounds_ok=" << (ok ? "true" : "false") << '\n';
    return ok ? 0 : 1;
}

inline int run_ski_rand(std::int64_t B, const Rational& lambda, std::optional<std::int64_t> x,
                        std::optional<std::int64_t> y, std::ostream& out) {
    if (x.has_value()) {
        BuyDistribution dist = rand_distribution(B, *y, lambda);
        SkiInstance inst(B, *x, *y);
        RatioReport r = ratio(expected_cost(dist, B, *x), opt_ski_cost(inst));
        out << "support_end=" << dist.support_end << '\n';
        out << "expected_cost=" << r.alg_cost << '\n';
        out << "opt=" << r.opt_cost << '\n';
        out << "ratio=" << r.ratio << '\n';
        return 0;
    }
    TradeoffPoint wc = rand_worst_case(B, lambda);
    const int digits = 10;
    Interval em_l = exp_interval(-lambda, digits + 2);
    Rational cons_bound = round_up((Interval(lambda) / (Interval(Rational(1)) - em_l)).hi, digits);
    Interval em_lb = exp_interval(-(lambda - Rational(1, B)), digits + 2);
    Rational rob_bound = round_up(reciprocal(Interval(Rational(1)) - em_lb).hi, digits);
    bool ok = wc.beta <= cons_bound && wc.gamma <= rob_bound;
    out << "consistency=" << wc.beta << '\n';
    out << "robustness=" << wc.gamma << '\n';
    out << "consistency_bound=" << cons_bound.decimal_str(12) << '\n';
    out << "robustness_bound=" << rob_bound.decimal_str(12) << '\n';
    out << "bounds_ok=" << (ok ? "true" : "false") << '\n';
    return ok ? 0 : 1;
}

inline int run_ski_lp(std::int64_t B, const Rational& gamma, std::optional<Rational> beta,
                      std::optional<std::int64_t> bisect, std::ostream& out) {
    if (beta.has_value()) {
        LpFeasibility f = lp_feasible(build_lp(B, *beta, gamma));
        out << "feasible=" << (f.feasible ? "true" : "false") << '\n';
        if (f.witness) out << "witness=" << join(*f.witness) << '\n';
        if (f.certificate) out << "certificate=" << join(*f.certificate) << '\n';
        return f.feasible ? 0 : 1;
    }
    TightnessReport report = verify_tightness(B, gamma, *bisect);
    bool ok = report.bracket_ok && report.witness_ok && report.chord_ok;
    out << "beta_min=" << report.bracket_hi << '\n';
    out << "bracket_lo=" << report.bracket_lo << '\n';
    out << "bracket_hi=" << report.bracket_hi << '\n';
    out << "closed_form=" << report.closed_form << '\n';
    out << "support_end=" << report.support_end << '\n';
    out << "bracket_ok=" << (report.bracket_ok ? "true" : "false") << '\n';
    out << "witness_ok=" << (report.witness_ok ? "true" : "false") << '\n';
    out << "chord_ok=" << (report.chord_ok ? "true" : "false") << '\n';
    return ok ? 0 : 1;
}

inline int run_sched(const std::string& policy_name, const Rational& lambda,
                     const std::vector<Rational>& x, const std::vector<Rational>& y, bool trace,
                     std::ostream& out) {
    Policy policy = policy_name == "rr" ? round_robin_policy() : two_stage_policy(lambda);
    JobSet jobs(x, y);
    Schedule sched = simulate(policy, jobs);
    if (trace) out << format_trace(sched);
    RatioReport r = ratio(sched.total_completion_time(), opt_completion(x));
    out << "alg=" << r.alg_cost << '\n';
    out << "opt=" << r.opt_cost << '\n';
    out << "ratio=" << r.ratio << '\n';
    out << "completions=" << join(sched.completion_times) << '\n';
    return 0;
}

inline int run_sched_adversary(const std::string& policy_name, std::int64_t n,
                               const Rational& lambda, const Rational& epsilon,
                               std::ostream& out) {
    Policy policy = policy_name == "rr" ? round_robin_policy() : two_stage_policy(lambda);
    JobSet adv = adversary_instance(policy, n, lambda, epsilon);
    Schedule sched = simulate(policy, adv);
    RatioReport r = ratio(sched.total_completion_time(), opt_completion(adv.true_times));
    out << "x=" << join(adv.true_times) << '\n';
    out << "y=" << join(adv.predicted_times) << '\n';
    out << "ratio=" << r.ratio << '\n';
    out << "bound=" << sched_lower_bound(n, lambda) << '\n';
    return 0;
}

inline int run_curve(const std::string& which, std::int64_t B, std::int64_t n,
                     const std::string& out_path, const std::string& svg_path,
                     std::ostream& out) {
    std::vector<CurveSeries> series;
    if (which == "ski") {
        std::vector<Rational> lambdas;
        for (int j = 1; j <= 19; ++j) {
            Rational lambda(j, 20);
            if (lambda * Rational(B) > 1) lambdas.push_back(lambda);
        }
        series = ski_curves(B, lambdas);
    } else if (which == "sched2") {
        std::vector<Rational> lambdas;
        for (int j = 1; j <= 19; ++j) lambdas.push_back(Rational(j, 60));
        series = sched_curves(2, lambdas);
    } else {  // schedN
        std::vector<Rational> lambdas;
        Rational top = Rational(1) - Rational(2, n + 1);
        for (int j = 0; j <= 12; ++j) lambdas.push_back(top * Rational(j, 12));
        series = sched_curves(n, lambdas);
    }
    write_curves_csv(series, out_path);
    std::size_t rows = 0;
    for (const auto& s : series) rows += s.points.size();
    out << "series=" << series.size() << '\n';
    out << "rows=" << rows << '\n';
    out << "csv=" << out_path << '\n';
    if (!svg_path.empty()) {
        write_curves_svg(series, svg_path);
        out << "svg=" << svg_path << '\n';
    }
    return 0;
}

}  // namespace cli_detail

/// Command-line front door. Returns the process exit code: 0 on success,
/// 1 when a computation finished with a negative verdict (infeasible LP,
/// violated bound) or failed at runtime, 2 on usage errors.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"learning-augmented online algorithms: ski rental and scheduling"};
    app.require_subcommand(1);

    // ski-det / ski-rand
    std::int64_t budget = 0;
    std::string lambda_text, beta_text, eps_text = "1/10000";
    std::optional<std::int64_t> x_opt, y_opt;

    auto add_instance_flags = [&](CLI::App* cmd) {
        cmd->add_option("--budget", budget, "buy cost B")->required();
        cmd->add_option("--lambda", lambda_text, "trade-off parameter in (0,1)")->required();
        auto* xo = cmd->add_option("--x", x_opt, "true season length");
        auto* yo = cmd->add_option("--y", y_opt, "predicted season length");
        xo->needs(yo);
        yo->needs(xo);
    };

    CLI::App* ski_det = app.add_subcommand("ski-det", "deterministic ski rental");
    add_instance_flags(ski_det);
    CLI::App* ski_rand = app.add_subcommand("ski-rand", "randomized ski rental");
    add_instance_flags(ski_rand);

    CLI::App* ski_lp = app.add_subcommand("ski-lp", "feasibility LP for randomized ski rental");
    std::string gamma_text;
    std::int64_t bisect_depth = 0;
    ski_lp->add_option("--budget", budget, "buy cost B")->required();
    ski_lp->add_option("--gamma", gamma_text, "robustness target")->required();
    auto* beta_opt = ski_lp->add_option("--beta", beta_text, "consistency to test");
    auto* bisect_opt =
        ski_lp->add_option("--bisect", bisect_depth, "bisection depth for the boundary");
    beta_opt->excludes(bisect_opt);
    bisect_opt->excludes(beta_opt);

    CLI::App* sched = app.add_subcommand("sched", "simulate a scheduling policy");
    std::string policy_name, x_list, y_list;
    bool trace = false;
    sched->add_option("--policy", policy_name, "rr or two-stage")
        ->required()
        ->check(CLI::IsMember({"rr", "two-stage"}));
    sched->add_option("--lambda", lambda_text, "two-stage trade-off parameter");
    sched->add_option("--x", x_list, "true processing times, comma separated")->required();
    sched->add_option("--y", y_list, "predicted processing times, comma separated")->required();
    sched->add_flag("--trace", trace, "print one line per simulator event");

    CLI::App* sched_adv = app.add_subcommand("sched-adversary", "adversarial instance generator");
    std::int64_t n_jobs = 0;
    sched_adv->add_option("--policy", policy_name, "rr or two-stage")
        ->required()
        ->check(CLI::IsMember({"rr", "two-stage"}));
    sched_adv->add_option("--n", n_jobs, "number of jobs")->required();
    sched_adv->add_option("--lambda", lambda_text, "consistency parameter")->required();
    sched_adv->add_option("--epsilon", eps_text, "adversary margin");

    CLI::App* curve = app.add_subcommand("curve", "emit trade-off curves as CSV/SVG");
    std::string which, out_path, svg_path;
    curve->add_option("--which", which, "ski, sched2, or schedN")
        ->required()
        ->check(CLI::IsMember({"ski", "sched2", "schedN"}));
    curve->add_option("--budget", budget, "buy cost B for ski curves")->default_val(50);
    curve->add_option("--n", n_jobs, "job count for schedN curves")->default_val(3);
    curve->add_option("--out", out_path, "CSV output path")->required();
    curve->add_option("--svg", svg_path, "optional SVG output path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        auto lambda_of = [&](const std::string& text) {
            return cli_detail::parse_rational_flag(text, "--lambda");
        };
        if (ski_det->parsed()) {
            Rational lambda = lambda_of(lambda_text);
            if (lambda <= 0 || lambda >= 1)
                throw std::invalid_argument("--lambda must lie in (0,1)");
            return cli_detail::run_ski_det(budget, lambda, x_opt, y_opt, out);
        }
        if (ski_rand->parsed()) {
            Rational lambda = lambda_of(lambda_text);
            if (lambda <= 0 || lambda >= 1)
                throw std::invalid_argument("--lambda must lie in (0,1)");
            return cli_detail::run_ski_rand(budget, lambda, x_opt, y_opt, out);
        }
        if (ski_lp->parsed()) {
            if (beta_opt->count() == 0 && bisect_opt->count() == 0)
                throw std::invalid_argument("ski-lp needs --beta or --bisect");
            Rational gamma = cli_detail::parse_rational_flag(gamma_text, "--gamma");
            std::optional<Rational> beta;
            std::optional<std::int64_t> depth;
            if (beta_opt->count())
                beta = cli_detail::parse_rational_flag(beta_text, "--beta");
            else
                depth = bisect_depth;
            return cli_detail::run_ski_lp(budget, gamma, beta, depth, out);
        }
        if (sched->parsed()) {
            if (policy_name == "two-stage" && lambda_text.empty())
                throw std::invalid_argument("two-stage policy needs --lambda");
            Rational lambda = policy_name == "two-stage" ? lambda_of(lambda_text) : Rational(0);
            return cli_detail::run_sched(policy_name, lambda,
                                         cli_detail::parse_rational_list(x_list, "--x"),
                                         cli_detail::parse_rational_list(y_list, "--y"), trace,
                                         out);
        }
        if (sched_adv->parsed()) {
            Rational lambda = lambda_of(lambda_text);
            Rational epsilon = cli_detail::parse_rational_flag(eps_text, "--epsilon");
            return cli_detail::run_sched_adversary(policy_name, n_jobs, lambda, epsilon, out);
        }
        if (curve->parsed()) return cli_detail::run_curve(which, budget, n_jobs, out_path, svg_path, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace lao

#pragma once

#include <lao/core.hpp>
#include <lao/interval.hpp>
#include <lao/rational.hpp>
#include <lao/scheduling.hpp>
#include <lao/ski_lp.hpp>
#include <lao/ski_rental.hpp>

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lao {

enum class SeriesKind { UpperBound, LowerBound, Measured };

inline const char* kind_label(SeriesKind k) {
    switch (k) {
        case SeriesKind::UpperBound: return "upper-bound";
        case SeriesKind::LowerBound: return "lower-bound";
        case SeriesKind::Measured: return "measured";
    }
    return "?";
}

inline SeriesKind parse_kind(const std::string& s) {
    if (s == "upper-bound") return SeriesKind::UpperBound;
    if (s == "lower-bound") return SeriesKind::LowerBound;
    if (s == "measured") return SeriesKind::Measured;
    throw std::invalid_argument("parse_kind: unknown series kind: " + s);
}

struct CurveSeries {
    std::string name;
    SeriesKind kind = SeriesKind::UpperBound;
    std::vector<TradeoffPoint> points;

    void validate() const {
        for (std::size_t i = 1; i < points.size(); ++i)
            if (!(points[i - 1].lambda < points[i].lambda))
                throw std::invalid_argument("CurveSeries: lambdas must strictly increase");
    }
};

namespace detail {
constexpr int kCurveDigits = 12;
}

/// Ski-rental trade-off curves over a lambda grid: the deterministic
/// closed form, the randomized guarantee, the large-B randomized floor,
/// and measured worst cases at the given B. Transcendental values are
/// stored as directed rational enclosure endpoints (upper bounds round up,
/// lower bounds round down) so plotted dominance cannot be an enclosure
/// artifact.
inline std::vector<CurveSeries> ski_curves(std::int64_t B,
                                           const std::vector<Rational>& lambdas) {
    if (B < 2) throw std::invalid_argument("ski_curves: B must be >= 2");
    const int d = detail::kCurveDigits;
    CurveSeries det{"ski-det", SeriesKind::UpperBound, {}};
    CurveSeries rand_ub{"ski-rand", SeriesKind::UpperBound, {}};
    CurveSeries rand_lb{"ski-rand-lower", SeriesKind::LowerBound, {}};
    CurveSeries measured{"ski-rand-measured", SeriesKind::Measured, {}};

    for (const Rational& lambda : lambdas) {
        if (lambda * Rational(B) <= 1 || lambda >= 1)
            throw std::invalid_argument("ski_curves: lambdas must lie in (1/B, 1)");

        det.points.push_back(
            make_tradeoff_point(lambda, Rational(1) + lambda, Rational(1) + Rational(1) / lambda));

        // Randomized guarantee: lambda/(1-e^-lambda) consistent,
        // 1/(1-e^-(lambda-1/B)) robust.
        Interval em_l = exp_interval(-lambda, d);
        Interval beta_ub = Interval(lambda) / (Interval(Rational(1)) - em_l);
        Interval em_lb = exp_interval(-(lambda - Rational(1, B)), d);
        Interval gamma_ub = reciprocal(Interval(Rational(1)) - em_lb);
        rand_ub.points.push_back(make_tradeoff_point(lambda, round_up(beta_ub.hi, d),
                                                     round_up(gamma_ub.hi, d)));

        // Large-B floor at matching robustness gamma = 1/(1-e^-lambda):
        // consistency at least gamma*ln(1 + 1/(gamma-1)).
        Interval gamma_lb = reciprocal(Interval(Rational(1)) - em_l);
        Rational gamma_pick = round_down(gamma_lb.lo, d);
        Rational beta_floor = asymptotic_lower_bound(gamma_pick, d);
        rand_lb.points.push_back(make_tradeoff_point(lambda, beta_floor, gamma_pick));

        TradeoffPoint m = rand_worst_case(B, lambda);
        measured.points.push_back(m);
    }
    return {det, rand_ub, rand_lb, measured};
}

/// Scheduling trade-off curves. For n = 2: the two-stage guarantee, the
/// matching robustness floor, the earlier known guarantee reparametrized
/// onto the same consistency axis, and measured grid maxima. For n != 2
/// only the robustness floor is available.
inline std::vector<CurveSeries> sched_curves(std::int64_t n,
                                             const std::vector<Rational>& lambdas) {
    if (n < 2) throw std::invalid_argument("sched_curves: n must be >= 2");
    if (n != 2) {
        CurveSeries lb{"schedN-lower", SeriesKind::LowerBound, {}};
        for (const Rational& lambda : lambdas)
            lb.points.push_back(
                make_tradeoff_point(lambda, Rational(1) + lambda, sched_lower_bound(n, lambda)));
        return {lb};
    }

    CurveSeries tight{"sched2-tight", SeriesKind::UpperBound, {}};
    CurveSeries lower{"sched2-lower", SeriesKind::LowerBound, {}};
    CurveSeries prior{"sched2-prior", SeriesKind::UpperBound, {}};
    CurveSeries measured{"sched2-measured", SeriesKind::Measured, {}};

    for (const Rational& lambda : lambdas) {
        if (lambda <= 0 || lambda >= Rational(1, 3))
            throw std::invalid_argument("sched_curves: lambdas must lie in (0, 1/3) for n = 2");
        Rational beta = Rational(1) + lambda;
        Rational gamma = Rational(1) + Rational(1) / (Rational(1) + 6 * lambda);
        tight.points.push_back(make_tradeoff_point(lambda, beta, gamma));
        lower.points.push_back(make_tradeoff_point(lambda, beta, sched_lower_bound(2, lambda)));

        // Earlier guarantee ((1+u)/(2u) consistent, 2/(1-u) robust) at the
        // parameter u whose consistency matches ours: u = (1+lambda)/(1+2*lambda),
        // giving robustness 2(1+2*lambda)/lambda on the shared axis.
        Rational prior_gamma = 2 * (Rational(1) + 2 * lambda) / lambda;
        prior.points.push_back(make_tradeoff_point(lambda, beta, prior_gamma));

        Policy policy = two_stage_policy(lambda);
        Rational m_beta = consistency_ratio(policy, {Rational(1), Rational(1)}).ratio;
        Rational m_gamma = worst_case_ratio_two_jobs(policy, Rational(1, 50), Rational(3)).ratio;
        measured.points.push_back(make_tradeoff_point(lambda, m_beta, m_gamma));
    }
    return {tight, lower, prior, measured};
}

/// Lower-bound series must stay pointwise at or below their matching
/// upper-bound series ("<name>-lower" pairs with "<name>" or "<name>-tight")
/// in both coordinates, row by row.
inline bool dominance_holds(const std::vector<CurveSeries>& series) {
    std::map<std::string, const CurveSeries*> by_name;
    for (const auto& s : series) by_name[s.name] = &s;
    for (const auto& s : series) {
        if (s.kind != SeriesKind::LowerBound) continue;
        const std::string suffix = "-lower";
        if (s.name.size() <= suffix.size() ||
            s.name.compare(s.name.size() - suffix.size(), suffix.size(), suffix) != 0)
            continue;
        std::string base = s.name.substr(0, s.name.size() - suffix.size());
        const CurveSeries* ub = nullptr;
        if (auto it = by_name.find(base); it != by_name.end())
            ub = it->second;
        else if (auto it2 = by_name.find(base + "-tight"); it2 != by_name.end())
            ub = it2->second;
        if (!ub || ub->kind != SeriesKind::UpperBound) continue;
        if (ub->points.size() != s.points.size()) return false;
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            if (s.points[i].lambda != ub->points[i].lambda) return false;
            if (s.points[i].beta > ub->points[i].beta) return false;
            if (s.points[i].gamma > ub->points[i].gamma) return false;
        }
    }
    return true;
}

/// CSV schema: series,lambda,beta,gamma,kind,beta_exact,gamma_exact.
/// The decimal columns carry 12 significant digits; the exact columns are
/// lossless num/den.
inline void emit_csv(const std::vector<CurveSeries>& series, std::ostream& os) {
    if (series.empty()) throw std::invalid_argument("emit_csv: no series to emit");
    os << "series,lambda,beta,gamma,kind,beta_exact,gamma_exact\n";
    for (const auto& s : series) {
        s.validate();
        for (const auto& p : s.points) {
            os << s.name << ',' << p.lambda.decimal_str(12) << ',' << p.beta.decimal_str(12)
               << ',' << p.gamma.decimal_str(12) << ',' << kind_label(s.kind) << ','
               << p.beta.fraction_str() << ',' << p.gamma.fraction_str() << '\n';
        }
    }
}

inline std::vector<CurveSeries> parse_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "series,lambda,beta,gamma,kind,beta_exact,gamma_exact")
        throw std::invalid_argument("parse_csv: bad header");
    std::vector<CurveSeries> series;
    std::map<std::string, std::size_t> index;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (fields.size() != 7) throw std::invalid_argument("parse_csv: bad row: " + line);
        auto lambda = Rational::parse(fields[1]);
        auto beta = Rational::parse(fields[5]);
        auto gamma = Rational::parse(fields[6]);
        if (!lambda || !beta || !gamma)
            throw std::invalid_argument("parse_csv: bad rationals: " + line);
        auto it = index.find(fields[0]);
        if (it == index.end()) {
            index.emplace(fields[0], series.size());
            series.push_back(CurveSeries{fields[0], parse_kind(fields[4]), {}});
            it = index.find(fields[0]);
        }
        series[it->second].points.push_back(TradeoffPoint{*lambda, *beta, *gamma});
    }
    return series;
}

inline void write_curves_csv(const std::vector<CurveSeries>& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_curves_csv: cannot write " + path);
    emit_csv(series, out);
    if (!out) throw std::runtime_error("write_curves_csv: write failed for " + path);
}

/// Minimal static SVG: one polyline per series over consistency/robustness
/// axes, with ticks and a legend.
inline void write_curves_svg(const std::vector<CurveSeries>& series, const std::string& path) {
    if (series.empty()) throw std::invalid_argument("write_curves_svg: no series to plot");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_curves_svg: cannot write " + path);

    double bmin = 1e300, bmax = -1e300, gmin = 1e300, gmax = -1e300;
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            double b = p.beta.to_double(), g = p.gamma.to_double();
            bmin = b < bmin ? b : bmin;
            bmax = b > bmax ? b : bmax;
            gmin = g < gmin ? g : gmin;
            gmax = g > gmax ? g : gmax;
        }
    }
    if (bmax < bmin) throw std::invalid_argument("write_curves_svg: series have no points");
    if (bmax - bmin < 1e-9) bmax = bmin + 1;
    if (gmax - gmin < 1e-9) gmax = gmin + 1;

    const double W = 800, H = 560, ml = 70, mr = 190, mt = 30, mb = 60;
    auto sx = [&](double b) { return ml + (b - bmin) / (bmax - bmin) * (W - ml - mr); };
    auto sy = [&](double g) { return H - mb - (g - gmin) / (gmax - gmin) * (H - mt - mb); };
    const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                             "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    char buf[64];
    for (int t = 0; t <= 5; ++t) {
        double b = bmin + (bmax - bmin) * t / 5, g = gmin + (gmax - gmin) * t / 5;
        std::snprintf(buf, sizeof buf, "%.4g", b);
        out << "<line x1=\"" << sx(b) << "\" y1=\"" << H - mb << "\" x2=\"" << sx(b) << "\" y2=\""
            << H - mb + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << sx(b) << "\" y=\"" << H - mb + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">" << buf << "</text>\n";
        std::snprintf(buf, sizeof buf, "%.4g", g);
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(g) << "\" x2=\"" << ml << "\" y2=\""
            << sy(g) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << sy(g) + 4
            << "\" font-size=\"12\" text-anchor=\"end\">" << buf << "</text>\n";
    }
    out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 15
        << "\" font-size=\"14\" text-anchor=\"middle\">consistency</text>\n";
    out << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << (mt + H - mb) / 2 << ")\">robustness</text>\n";

    std::size_t ci = 0;
    for (const auto& s : series) {
        const char* color = palette[ci % 8];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        if (s.kind == SeriesKind::LowerBound) out << " stroke-dasharray=\"6 3\"";
        out << " points=\"";
        for (const auto& p : s.points)
            out << sx(p.beta.to_double()) << ',' << sy(p.gamma.to_double()) << ' ';
        out << "\"/>\n";
        if (s.kind == SeriesKind::Measured)
            for (const auto& p : s.points)
                out << "<circle cx=\"" << sx(p.beta.to_double()) << "\" cy=\""
                    << sy(p.gamma.to_double()) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << W - mr + 12 << "\" y=\"" << mt + 16 + 18 * ci
            << "\" font-size=\"12\" fill=\"" << color << "\">" << s.name << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write_curves_svg: write failed for " + path);
}

}  // namespace lao

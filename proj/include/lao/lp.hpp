#pragma once

#include <lao/rational.hpp>

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lao {

enum class Relation { LessEq, Eq };

struct LpConstraint {
    std::vector<Rational> coeffs;
    Relation rel = Relation::LessEq;
    Rational rhs;
};

/// A pure feasibility LP: find x >= 0 with A1 x <= b1, A2 x = b2.
/// There is no objective.
struct LpProblem {
    std::size_t num_vars = 0;
    std::vector<LpConstraint> constraints;

    void validate() const {
        if (num_vars == 0) throw std::invalid_argument("LpProblem: no variables");
        for (const auto& c : constraints)
            if (c.coeffs.size() != num_vars)
                throw std::invalid_argument("LpProblem: coefficient row length mismatch");
    }
};

struct LpFeasibility {
    bool feasible = false;
    /// A point satisfying every constraint exactly, when feasible.
    std::optional<std::vector<Rational>> witness;
    /// Farkas multipliers (one per constraint) proving infeasibility:
    /// c_i <= 0 on every <= row, sum_i c_i a_ij <= 0 for all j, and
    /// sum_i c_i b_i > 0.
    std::optional<std::vector<Rational>> certificate;
};

/// Exact check of a candidate point against every constraint and x >= 0.
inline bool lp_satisfies(const LpProblem& lp, const std::vector<Rational>& x) {
    if (x.size() != lp.num_vars) return false;
    for (const auto& v : x)
        if (v < 0) return false;
    for (const auto& c : lp.constraints) {
        Rational lhs;
        for (std::size_t j = 0; j < lp.num_vars; ++j) lhs += c.coeffs[j] * x[j];
        if (c.rel == Relation::LessEq ? lhs > c.rhs : lhs != c.rhs) return false;
    }
    return true;
}

/// Exact check of a Farkas infeasibility certificate.
inline bool lp_certificate_valid(const LpProblem& lp, const std::vector<Rational>& c) {
    if (c.size() != lp.constraints.size()) return false;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (lp.constraints[i].rel == Relation::LessEq && c[i] > 0) return false;
    Rational combined_rhs;
    for (std::size_t i = 0; i < c.size(); ++i) combined_rhs += c[i] * lp.constraints[i].rhs;
    if (combined_rhs <= 0) return false;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        Rational g;
        for (std::size_t i = 0; i < c.size(); ++i) g += c[i] * lp.constraints[i].coeffs[j];
        if (g > 0) return false;
    }
    return true;
}

/// `coeff_1 ... coeff_n REL rhs` per line, every rational as num/den.
inline std::string dump_lp(const LpProblem& lp) {
    lp.validate();
    std::ostringstream os;
    for (const auto& c : lp.constraints) {
        for (const auto& a : c.coeffs) os << a.fraction_str() << ' ';
        os << (c.rel == Relation::LessEq ? "<=" : "=") << ' ' << c.rhs.fraction_str() << '\n';
    }
    return os.str();
}

/// Exact feasibility via phase-1 simplex with Bland's rule. Every row gets
/// an artificial variable (plus a slack/surplus for inequalities); the
/// artificial sum is driven to zero iff the system is feasible. The witness
/// is re-verified against the original constraints before returning; on
/// infeasibility a Farkas certificate is extracted from the final duals and
/// attached only if it verifies exactly.
inline LpFeasibility lp_feasible(const LpProblem& lp) {
    lp.validate();
    const std::size_t n = lp.num_vars;
    const std::size_t m = lp.constraints.size();
    if (m == 0) return LpFeasibility{true, std::vector<Rational>(n, Rational(0)), std::nullopt};

    // Normalize rows to nonnegative rhs, flipping <= rows to >= as needed.
    // sign[i] records the flip so certificate multipliers can be mapped back.
    std::vector<int> sign(m, 1);
    std::size_t num_ineq = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.constraints[i].rhs < 0) sign[i] = -1;
        if (lp.constraints[i].rel == Relation::LessEq) ++num_ineq;
    }

    // Column layout: [0,n) structural | [n, n+num_ineq) slack/surplus |
    // [n+num_ineq, n+num_ineq+m) artificials | rhs.
    const std::size_t slack0 = n;
    const std::size_t art0 = n + num_ineq;
    const std::size_t cols = art0 + m;
    std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(cols + 1));
    {
        std::size_t next_slack = slack0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& c = lp.constraints[i];
            Rational s(sign[i]);
            for (std::size_t j = 0; j < n; ++j) tab[i][j] = s * c.coeffs[j];
            if (c.rel == Relation::LessEq) {
                tab[i][next_slack++] = Rational(sign[i]);  // slack (+1) or surplus (-1)
            }
            tab[i][art0 + i] = Rational(1);
            tab[i][cols] = s * c.rhs;
        }
    }

    // Phase-1 objective row: reduced costs for min(sum of artificials),
    // starting from the all-artificial basis.
    std::vector<Rational> obj(cols + 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= cols; ++j) obj[j] += tab[i][j];
    for (std::size_t i = 0; i < m; ++i) obj[art0 + i] = Rational(0);

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = art0 + i;

    while (true) {
        // Bland: entering column is the lowest index with positive reduced cost.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (obj[j] > 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        // Ratio test; Bland tie-break on the smallest basis variable index.
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0) continue;
            Rational r = tab[i][cols] / tab[i][enter];
            if (leave == m || r < best || (r == best && basis[i] < basis[leave])) {
                leave = i;
                best = r;
            }
        }
        if (leave == m)
            throw std::logic_error("lp_feasible: phase-1 objective unbounded");

        // Pivot on (leave, enter).
        Rational piv = tab[leave][enter];
        for (std::size_t j = 0; j <= cols; ++j) tab[leave][j] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter].is_zero()) continue;
            Rational f = tab[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
        }
        if (!obj[enter].is_zero()) {
            Rational f = obj[enter];
            for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }

    Rational artificial_sum = obj[cols];
    LpFeasibility result;
    if (artificial_sum.is_zero()) {
        result.feasible = true;
        std::vector<Rational> x(n, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) x[basis[i]] = tab[i][cols];
        if (!lp_satisfies(lp, x))
            throw std::logic_error("lp_feasible: witness failed exact re-verification");
        result.witness = std::move(x);
        return result;
    }

    result.feasible = false;
    // Duals from the artificial columns: y_i = 1 + reduced cost of a_i,
    // mapped back through the row sign flips.
    std::vector<Rational> cert(m);
    for (std::size_t i = 0; i < m; ++i)
        cert[i] = Rational(sign[i]) * (Rational(1) + obj[art0 + i]);
    if (lp_certificate_valid(lp, cert)) {
        result.certificate = std::move(cert);
    } else {
        for (auto& v : cert) v = -v;
        if (lp_certificate_valid(lp, cert)) result.certificate = std::move(cert);
    }
    return result;
}

}  // namespace lao

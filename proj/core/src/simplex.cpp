#include "ecotour/simplex.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>

namespace ecotour {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeroTol = 1e-9;   // reduced-cost / pivot threshold
constexpr double kFeasTol = 1e-7;   // phase-1 acceptance
constexpr double kEnterTol = 1e-7;  // required reduced-cost violation to enter

enum class VarState : unsigned char { AtLower, AtUpper, Basic };

struct Tableau {
    int m = 0, n = 0;            // rows, total columns
    std::vector<double> a;       // row-major m*n, kept as B^-1 * A
    std::vector<double> xb;      // basic variable values
    std::vector<int> basis;      // column basic in each row
    std::vector<VarState> state; // per column
    std::vector<double> lower, upper;
    std::vector<double> z;       // reduced costs for the active phase
    std::vector<double> gamma;   // devex reference weights
    std::vector<int> nz;         // pivot-row nonzero scratch

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double cat(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    double nonbasic_value(int j) const { return state[j] == VarState::AtUpper ? upper[j] : lower[j]; }

    void price_from(const std::vector<double>& cost) {
        z = cost;
        for (int i = 0; i < m; ++i) {
            double cb = cost[basis[i]];
            if (cb == 0.0) continue;
            for (int j = 0; j < n; ++j) z[j] -= cb * cat(i, j);
        }
        for (int i = 0; i < m; ++i) z[basis[i]] = 0.0;
        gamma.assign(n, 1.0);
    }

    void pivot(int r, int jin, int jout) {
        double piv = at(r, jin);
        double inv = 1.0 / piv;
        nz.clear();
        for (int j = 0; j < n; ++j) {
            double v = cat(r, j);
            if (v == 0.0) continue;
            at(r, j) = v * inv;
            nz.push_back(j);
        }
        at(r, jin) = 1.0;
        // devex weight update off the scaled pivot row; reset the reference
        // framework whenever weights drift too far
        double gq = gamma[jin];
        double wmax = 1.0;
        for (int j : nz) {
            double cand = cat(r, j);
            cand = cand * cand * gq;
            if (cand > gamma[j]) gamma[j] = cand;
            if (gamma[j] > wmax) wmax = gamma[j];
        }
        gamma[jout] = std::max(gq * inv * inv, 1.0);
        if (wmax > 1e8) gamma.assign(n, 1.0);
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            double f = at(i, jin);
            if (f == 0.0) continue;
            for (int j : nz) at(i, j) -= f * cat(r, j);
            at(i, jin) = 0.0;
        }
        double fz = z[jin];
        if (fz != 0.0) {
            for (int j : nz) z[j] -= fz * cat(r, j);
            z[jin] = 0.0;
        }
    }

    // one simplex phase; returns remaining iteration budget, or -1 on unbounded
    int run(int iters) {
        int degenerate_streak = 0;
        while (iters > 0) {
            --iters;
            bool bland = degenerate_streak > 60;
            int jin = -1;
            double best = 0.0;
            for (int j = 0; j < n; ++j) {
                if (state[j] == VarState::Basic) continue;
                if (lower[j] == upper[j]) continue; // fixed, never enters
                double v = 0.0;
                if (state[j] == VarState::AtLower && z[j] < -kEnterTol) v = -z[j];
                else if (state[j] == VarState::AtUpper && z[j] > kEnterTol) v = z[j];
                else continue;
                if (bland) { jin = j; break; }
                double score = v * v / gamma[j]; // devex pricing
                if (score > best) { best = score; jin = j; }
            }
            if (jin < 0) return iters; // optimal for this phase

            double dir = state[jin] == VarState::AtLower ? 1.0 : -1.0;
            double theta = upper[jin] - lower[jin]; // bound-flip limit, may be inf
            int leave = -1;
            double leave_rate = 0.0;
            bool leave_at_upper = false;
            for (int i = 0; i < m; ++i) {
                double rate = -dir * cat(i, jin); // d(xb_i)/d(theta)
                if (rate < -kZeroTol) {
                    double room = xb[i] - lower[basis[i]];
                    double t = room <= 0.0 ? 0.0 : room / -rate;
                    if (t < theta - 1e-10 ||
                        (t < theta + 1e-10 && (leave < 0 || std::abs(rate) > std::abs(leave_rate)))) {
                        theta = t; leave = i; leave_rate = rate; leave_at_upper = false;
                    }
                } else if (rate > kZeroTol && upper[basis[i]] < kInf) {
                    double room = upper[basis[i]] - xb[i];
                    double t = room <= 0.0 ? 0.0 : room / rate;
                    if (t < theta - 1e-10 ||
                        (t < theta + 1e-10 && (leave < 0 || std::abs(rate) > std::abs(leave_rate)))) {
                        theta = t; leave = i; leave_rate = rate; leave_at_upper = true;
                    }
                }
            }
            if (theta == kInf) return -1; // unbounded ray

            degenerate_streak = theta <= kZeroTol ? degenerate_streak + 1 : 0;

            if (leave < 0) { // entering variable flips to its other bound
                for (int i = 0; i < m; ++i) xb[i] += theta * (-dir * cat(i, jin));
                state[jin] = state[jin] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
                continue;
            }
            double enter_val = nonbasic_value(jin) + dir * theta;
            for (int i = 0; i < m; ++i) xb[i] += theta * (-dir * cat(i, jin));
            int out = basis[leave];
            state[out] = leave_at_upper ? VarState::AtUpper : VarState::AtLower;
            xb[leave] = enter_val;
            state[jin] = VarState::Basic;
            basis[leave] = jin;
            pivot(leave, jin, out);
        }
        return 0;
    }
};

} // namespace

LpSolution solve_lp(const LpProblem& prob, int max_iters) {
    const int m = static_cast<int>(prob.rows.size());
    const int nv = prob.num_vars;

    // nonbasic structural variables start at their lower bound; a row whose
    // own slack can absorb the residual at that point starts with the slack
    // basic and needs no artificial
    std::vector<double> resid(m, 0.0);
    for (int i = 0; i < m; ++i) {
        const auto& r = prob.rows[i];
        double s = r.rhs;
        for (auto [j, c] : r.terms) s -= c * prob.lower[j];
        resid[i] = s;
    }

    // column layout: [structural | slacks | artificials for rows that need one]
    int num_slack = 0;
    for (const auto& r : prob.rows)
        if (r.sense != '=') ++num_slack;
    std::vector<char> needs_art(m, 0);
    int num_art = 0;
    for (int i = 0; i < m; ++i) {
        const char sense = prob.rows[i].sense;
        bool slack_ok = (sense == '<' && resid[i] >= 0.0) || (sense == '>' && resid[i] <= 0.0);
        needs_art[i] = !slack_ok;
        num_art += needs_art[i];
    }
    const int n = nv + num_slack + num_art;

    Tableau t;
    t.m = m;
    t.n = n;
    t.a.assign(static_cast<std::size_t>(m) * n, 0.0);
    t.lower.assign(n, 0.0);
    t.upper.assign(n, kInf);
    t.state.assign(n, VarState::AtLower);
    for (int j = 0; j < nv; ++j) {
        t.lower[j] = prob.lower[j];
        t.upper[j] = prob.upper[j];
    }

    t.basis.resize(m);
    t.xb.resize(m);
    int slack = nv;
    int art = nv + num_slack;
    for (int i = 0; i < m; ++i) {
        const auto& r = prob.rows[i];
        // sign-fix rows so the starting basic variable sits at a non-negative
        // value with a +1 column
        const double sgn = (needs_art[i] ? resid[i] < 0.0 : r.sense == '>') ? -1.0 : 1.0;
        for (auto [j, c] : r.terms) t.at(i, j) += sgn * c;
        int sc = -1;
        if (r.sense != '=') {
            sc = slack++;
            t.at(i, sc) = sgn * (r.sense == '<' ? 1.0 : -1.0);
        }
        if (needs_art[i]) {
            t.at(i, art) = 1.0;
            t.basis[i] = art;
            t.xb[i] = std::abs(resid[i]);
            t.state[art] = VarState::Basic;
            ++art;
        } else {
            t.basis[i] = sc;
            t.xb[i] = std::abs(resid[i]);
            t.state[sc] = VarState::Basic;
        }
    }

    LpSolution out;

    // phase 1: drive artificial mass to zero
    std::vector<double> c1(n, 0.0);
    for (int j = nv + num_slack; j < n; ++j) c1[j] = 1.0;
    int left = max_iters;
    if (num_art > 0) {
        t.price_from(c1);
        left = t.run(max_iters);
        out.iterations = max_iters - std::max(left, 0);
        if (left < 0) { out.status = LpStatus::Unbounded; return out; } // cannot happen with a >= 0 objective
        if (left == 0) { out.status = LpStatus::IterLimit; return out; }
        double art_mass = 0.0;
        for (int i = 0; i < m; ++i)
            if (t.basis[i] >= nv + num_slack) art_mass += t.xb[i];
        if (art_mass > kFeasTol) { out.status = LpStatus::Infeasible; return out; }
    }
    for (int j = nv + num_slack; j < n; ++j) t.upper[j] = 0.0; // pin artificials
    if (std::getenv("ECOTOUR_LP_DEBUG"))
        std::fprintf(stderr, "p1 %d %d\n", num_art, max_iters - std::max(left, 0));

    // phase 2: original objective
    std::vector<double> c2(n, 0.0);
    for (int j = 0; j < nv; ++j) c2[j] = prob.obj[j];
    t.price_from(c2);
    left = t.run(left);
    out.iterations = max_iters - std::max(left, 0);
    if (left < 0) { out.status = LpStatus::Unbounded; return out; }
    if (left == 0) { out.status = LpStatus::IterLimit; return out; }

    if (std::getenv("ECOTOUR_LP_DEBUG"))
        std::fprintf(stderr, "p2 %d\n", max_iters - std::max(left, 0));
    out.x.assign(nv, 0.0);
    for (int j = 0; j < nv; ++j)
        if (t.state[j] != VarState::Basic) out.x[j] = t.nonbasic_value(j);
    for (int i = 0; i < m; ++i)
        if (t.basis[i] < nv) out.x[t.basis[i]] = t.xb[i];
    out.z.assign(t.z.begin(), t.z.begin() + nv);
    double obj = 0.0;
    for (int j = 0; j < nv; ++j) obj += prob.obj[j] * out.x[j];
    out.objective = obj;
    out.status = LpStatus::Optimal;
    return out;
}

} // namespace ecotour

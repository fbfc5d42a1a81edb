#include "ecotour/frontier_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "ecotour/pareto.hpp"

namespace ecotour {
namespace {

std::string num(double v, const char* fmt = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

double cross(const CostVector& a, const CostVector& b, const CostVector& c) {
    const double abt = b.turns - a.turns, abe = b.energy - a.energy;
    const double act = c.turns - a.turns, ace = c.energy - a.energy;
    return abt * ace - abe * act;
}

bool close_energy(double a, double b, double tol) { return std::abs(a - b) <= tol; }

} // namespace

std::vector<CostVector> pareto_filter(std::vector<CostVector> points) {
    std::sort(points.begin(), points.end(), cost_less);
    std::vector<CostVector> out;
    double best = std::numeric_limits<double>::infinity();
    for (const CostVector& p : points) {
        if (p.energy >= best) continue;
        out.push_back(p);
        best = p.energy;
    }
    return out;
}

std::vector<CostVector> extreme_supported(const std::vector<CostVector>& points) {
    const std::vector<CostVector> pf = pareto_filter(points);
    if (pf.size() <= 2) return pf;
    std::vector<CostVector> hull;
    for (const CostVector& p : pf) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0.0)
            hull.pop_back();
        hull.push_back(p);
    }
    return hull;
}

bool on_lower_hull(const CostVector& c, const std::vector<CostVector>& points, double tol) {
    const std::vector<CostVector> hull = extreme_supported(points);
    if (hull.empty()) return false;
    for (const CostVector& v : hull)
        if (v.turns == c.turns && close_energy(v.energy, c.energy, tol)) return true;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const CostVector& a = hull[k];
        const CostVector& b = hull[k + 1];
        if (c.turns <= a.turns || c.turns >= b.turns) continue;
        const double frac = static_cast<double>(c.turns - a.turns) / (b.turns - a.turns);
        const double at_line = a.energy + frac * (b.energy - a.energy);
        if (close_energy(c.energy, at_line, tol)) return true;
    }
    return false;
}

FrontierComparison compare_frontiers(const std::vector<CostVector>& reference,
                                     const std::vector<CostVector>& test) {
    FrontierComparison out;

    std::size_t matched = 0;
    for (const CostVector& r : reference) {
        for (const CostVector& t : test) {
            if (dominates(t, r) || (t.turns == r.turns && close_energy(t.energy, r.energy, 1e-9))) {
                ++matched;
                break;
            }
        }
    }
    out.coverage = reference.empty() ? 1.0 : static_cast<double>(matched) / reference.size();

    std::size_t dominated = 0;
    for (const CostVector& t : test) {
        for (const CostVector& r : reference) {
            if (strictly_dominates(r, t)) {
                ++dominated;
                break;
            }
        }
    }
    out.dominated_fraction = test.empty() ? 0.0 : static_cast<double>(dominated) / test.size();

    int corner_t = 0;
    double corner_e = 0.0;
    for (const CostVector& p : reference) {
        corner_t = std::max(corner_t, p.turns);
        corner_e = std::max(corner_e, p.energy);
    }
    for (const CostVector& p : test) {
        corner_t = std::max(corner_t, p.turns);
        corner_e = std::max(corner_e, p.energy);
    }
    const double ref_area = staircase_area(reference, corner_t + 1, corner_e + 1.0);
    const double test_area = staircase_area(test, corner_t + 1, corner_e + 1.0);
    if (ref_area > 0.0)
        out.area_ratio = test_area / ref_area;
    else // an empty reference has zero area; any covered area is infinitely better
        out.area_ratio = test_area > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    return out;
}

void write_frontier_csv(std::ostream& os, const std::vector<Tour>& tours) {
    os << "turns,energy_kwh,duration_s,penalty_s,node_sequence\n";
    for (const Tour& t : tours) {
        os << t.cost.turns << ',' << num(t.cost.energy) << ',' << num(t.duration) << ','
           << num(t.penalty) << ',';
        for (std::size_t k = 0; k < t.nodes.size(); ++k) {
            if (k) os << ' ';
            os << t.nodes[k];
        }
        os << '\n';
    }
}

void write_frontier_svg(std::ostream& os,
                        const std::vector<std::pair<std::string, std::vector<CostVector>>>& series) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    const double W = 640, H = 480, ml = 64, mr = 24, mt = 28, mb = 48;

    double t_lo = std::numeric_limits<double>::infinity(), t_hi = -t_lo;
    double e_lo = t_lo, e_hi = -t_lo;
    for (const auto& [label, pts] : series) {
        for (const CostVector& p : pts) {
            t_lo = std::min(t_lo, static_cast<double>(p.turns));
            t_hi = std::max(t_hi, static_cast<double>(p.turns));
            e_lo = std::min(e_lo, p.energy);
            e_hi = std::max(e_hi, p.energy);
        }
    }
    if (!(t_lo <= t_hi)) { t_lo = 0; t_hi = 1; e_lo = 0; e_hi = 1; }
    if (t_hi - t_lo < 1e-12) { t_lo -= 1; t_hi += 1; }
    if (e_hi - e_lo < 1e-12) { e_lo -= 1; e_hi += 1; }

    auto sx = [&](double t) { return ml + (t - t_lo) / (t_hi - t_lo) * (W - ml - mr); };
    auto sy = [&](double e) { return H - mb - (e - e_lo) / (e_hi - e_lo) * (H - mt - mb); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
       << H - mb << "\" stroke=\"#333\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
       << "\" stroke=\"#333\"/>\n";
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
       << "\" text-anchor=\"middle\" font-size=\"13\">left turns</text>\n";
    os << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
       << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
       << (mt + H - mb) / 2 << ")\">energy [kWh]</text>\n";
    os << "<text x=\"" << ml << "\" y=\"" << H - mb + 16 << "\" font-size=\"11\">"
       << num(t_lo, "%.6g") << "</text>\n";
    os << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 16
       << "\" text-anchor=\"end\" font-size=\"11\">" << num(t_hi, "%.6g") << "</text>\n";
    os << "<text x=\"" << ml - 6 << "\" y=\"" << H - mb << "\" text-anchor=\"end\" font-size=\"11\">"
       << num(e_lo, "%.6g") << "</text>\n";
    os << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << num(e_hi, "%.6g") << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = palette[s % 6];
        std::vector<CostVector> pts = pareto_filter(series[s].second);
        if (!pts.empty()) {
            std::ostringstream path;
            path << 'M' << num(sx(pts[0].turns), "%.6g") << ' ' << num(sy(pts[0].energy), "%.6g");
            for (std::size_t k = 1; k < pts.size(); ++k) {
                path << " H" << num(sx(pts[k].turns), "%.6g");
                path << " V" << num(sy(pts[k].energy), "%.6g");
            }
            os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color
               << "\" stroke-width=\"1.5\"/>\n";
        }
        for (const CostVector& p : series[s].second)
            os << "<circle cx=\"" << num(sx(p.turns), "%.6g") << "\" cy=\""
               << num(sy(p.energy), "%.6g") << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
        os << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 16 + 16 * s
           << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">"
           << series[s].first << "</text>\n";
    }
    os << "</svg>\n";
}

std::string render_bench_table(const std::vector<BenchRow>& rows) {
    const std::vector<std::string> head = {"instance",   "fraction",    "terminals", "frontier",
                                           "best turns", "best energy", "seconds",   "note"};
    std::vector<std::vector<std::string>> cells;
    for (const BenchRow& r : rows) {
        cells.push_back({r.instance, num(r.fraction, "%.2f"), std::to_string(r.terminals),
                         std::to_string(r.frontier_size), std::to_string(r.best_turns),
                         num(r.best_energy, "%.4f"), r.seconds, r.note});
    }
    std::vector<std::size_t> width(head.size());
    for (std::size_t c = 0; c < head.size(); ++c) {
        width[c] = head[c].size();
        for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "  " : "");
            os << row[c] << std::string(width[c] - row[c].size(), ' ');
        }
        os << '\n';
    };
    line(head);
    std::vector<std::string> rule;
    for (std::size_t w : width) rule.emplace_back(w, '-');
    line(rule);
    for (const auto& row : cells) line(row);
    return os.str();
}

} // namespace ecotour

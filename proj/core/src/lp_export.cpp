#include "ecotour/lp_export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "ecotour/errors.hpp"

namespace ecotour {

namespace {

std::string fmt(double v) {
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15)
        return std::to_string(static_cast<long long>(v));
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// append one "c name" term, folding lines around 200 columns
void append_term(std::string& out, std::size_t& line_len, double coeff, const std::string& name,
                 bool first) {
    const double a = std::abs(coeff);
    const std::string mag = a == 1.0 ? name : fmt(a) + " " + name;
    const std::string piece = coeff < 0 ? "- " + mag : first ? mag : "+ " + mag;
    if (line_len + piece.size() + 1 > 200) {
        out += "\n ";
        line_len = 1;
    } else if (line_len > 0) {
        out += " ";
        ++line_len;
    }
    out += piece;
    line_len += piece.size();
}

} // namespace

std::string to_lp_format(const MipModel& model) {
    std::string out;
    out += "\\ " + model.name + "\n";
    out += "Minimize\n obj:";
    std::size_t ll = 5;
    bool first = true;
    for (std::size_t j = 0; j < model.vars.size(); ++j) {
        if (model.vars[j].obj == 0.0) continue;
        append_term(out, ll, model.vars[j].obj, model.vars[j].name, first);
        first = false;
    }
    if (first) { // degenerate all-zero objective still needs one term
        append_term(out, ll, 0.0, model.vars.at(0).name, true);
    }
    out += "\nSubject To\n";
    for (const auto& row : model.rows) {
        out += " " + row.name + ":";
        ll = row.name.size() + 2;
        bool f = true;
        for (const auto& [j, c] : row.terms) {
            if (c == 0.0) continue;
            append_term(out, ll, c, model.vars[j].name, f);
            f = false;
        }
        const char* rel = row.sense == '<' ? "<=" : row.sense == '>' ? ">=" : "=";
        out += std::string(" ") + rel + " " + fmt(row.rhs) + "\n";
    }
    out += "Bounds\n";
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& v : model.vars) {
        if (v.type == 'B' && v.lower == 0.0 && v.upper == 1.0) continue; // implied
        if (v.lower == v.upper) {
            out += " " + v.name + " = " + fmt(v.lower) + "\n";
        } else if (v.lower == 0.0 && v.upper < inf) {
            out += " " + v.name + " <= " + fmt(v.upper) + "\n";
        } else {
            out += " " + fmt(v.lower) + " <= " + v.name + " <= " +
                   (v.upper < inf ? fmt(v.upper) : std::string("+inf")) + "\n";
        }
    }
    out += "Binaries\n";
    std::string bin = " ";
    std::size_t bl = 1;
    for (const auto& v : model.vars) {
        if (v.type != 'B') continue;
        if (bl + v.name.size() + 1 > 200) {
            bin += "\n ";
            bl = 1;
        }
        bin += v.name + " ";
        bl += v.name.size() + 1;
    }
    out += bin + "\nEnd\n";
    return out;
}

void write_lp_file(const MipModel& model, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open " + path + " for writing");
    f << to_lp_format(model);
}

} // namespace ecotour

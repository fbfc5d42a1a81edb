#include "ecotour/spb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "ecotour/errors.hpp"
#include "ecotour/rng.hpp"

namespace ecotour {
namespace {

// whitespace tokenizer that remembers the line of the last token
struct TokenReader {
    std::istream& in;
    std::string line;
    std::istringstream tokens;
    int line_no = 0;

    explicit TokenReader(std::istream& s) : in(s) {}

    bool next(double& out) {
        while (!(tokens >> out)) {
            if (!std::getline(in, line)) return false;
            ++line_no;
            tokens.clear();
            tokens.str(line);
        }
        return true;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("travel-time file, line " + std::to_string(line_no) + ": " + what);
    }
};

} // namespace

SpbInstance load_spb(std::istream& in, double fraction, std::uint64_t seed) {
    TokenReader r(in);
    double n_raw = 0.0;
    if (!r.next(n_raw)) r.fail("missing node count");
    const int n = static_cast<int>(n_raw);
    if (n < 2 || n_raw != n) r.fail("bad node count");

    std::vector<std::vector<double>> time(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!r.next(time[i][j])) r.fail("travel-time matrix ended early");

    std::vector<TimeWindow> window(n);
    for (int i = 0; i < n; ++i) {
        if (!r.next(window[i].start) || !r.next(window[i].end))
            r.fail("window lines ended early");
        if (window[i].end < window[i].start) r.fail("window ends before it starts");
    }

    if (fraction <= 0.0 || fraction > 1.0)
        throw SchemaError("terminal fraction must be in (0, 1]");

    Rng rng(seed);
    const int want = std::min(n, static_cast<int>(std::ceil(fraction * n)));
    std::vector<int> others;
    for (int v = 1; v < n; ++v) others.push_back(v);
    rng.shuffle(others);
    std::vector<int> terminals{0};
    for (int k = 0; k + 1 < want; ++k) terminals.push_back(others[k]);
    std::sort(terminals.begin(), terminals.end());

    std::vector<LineEdge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            LineEdge e;
            e.tail = u;
            e.head = v;
            e.turns = rng.bernoulli(0.5) ? 1 : 0;
            e.energy = rng.uniform(0.0, 10.0);
            e.time = time[u][v];
            edges.push_back(e);
        }
    }

    SpbInstance out{LineGraph(n, std::move(edges), terminals, 0), {},
                    std::min(static_cast<int>(terminals.size()), 4)};
    for (int t : terminals) out.windows.set(t, window[t]);
    return out;
}

SpbInstance load_spb_file(const std::string& path, double fraction, std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open travel-time file: " + path);
    return load_spb(in, fraction, seed);
}

} // namespace ecotour

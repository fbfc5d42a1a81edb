#include "ecotour/instance_io.hpp"

#include <fstream>
#include <limits>

#include <json.hpp>

#include "ecotour/errors.hpp"

namespace ecotour {

using nlohmann::json;

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

double window_end(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        throw SchemaError("bad window bound: " + s);
    }
    return j.get<double>();
}

Instance from_line_graph_json(const json& j, const std::string& path) {
    const double unit_scale = [&] {
        const std::string unit = j.value("energy_unit", std::string("kwh"));
        if (unit == "kwh") return 1.0;
        if (unit == "joule" || unit == "j") return 1.0 / 3.6e6;
        throw SchemaError(path + ": unknown energy_unit " + unit);
    }();

    std::vector<LineEdge> edges;
    for (const auto& je : j.at("edges")) {
        LineEdge e;
        e.tail = je.at("tail").get<int>();
        e.head = je.at("head").get<int>();
        e.turns = je.at("turns").get<int>();
        e.energy = je.at("energy").get<double>() * unit_scale;
        e.time = je.at("time").get<double>();
        edges.push_back(e);
    }
    std::vector<int> terminals;
    TimeWindowTable windows;
    for (const auto& jt : j.at("terminals")) {
        const int node = jt.at("node").get<int>();
        terminals.push_back(node);
        if (jt.contains("start") || jt.contains("end")) {
            TimeWindow w;
            w.start = jt.value("start", 0.0);
            w.end = jt.contains("end") ? window_end(jt.at("end"))
                                       : std::numeric_limits<double>::infinity();
            windows.set(node, w);
        }
    }
    Instance inst{LineGraph(j.at("nodes").get<int>(), std::move(edges), std::move(terminals),
                            j.at("depot").get<int>()),
                  std::move(windows), j.value("name", std::string())};
    inst.graph.check_no_negative_energy_cycle();
    return inst;
}

Instance from_road_network_json(const json& j, const std::string& path,
                                const EnergyParams& params, double turn_threshold_deg) {
    RoadNetwork net;
    for (const auto& jn : j.at("nodes")) {
        RoadNode n;
        n.id = jn.at("id").get<long long>();
        n.lat = jn.value("lat", 0.0);
        n.lon = jn.value("lon", 0.0);
        n.elevation_m = jn.value("elevation_m", 0.0);
        net.nodes.push_back(n);
    }
    for (const auto& je : j.at("edges")) {
        RoadEdge e;
        e.tail = je.at("tail").get<int>();
        e.head = je.at("head").get<int>();
        e.length_m = je.at("length_m").get<double>();
        e.speed_mps = je.at("speed_mps").get<double>();
        e.bearing_deg = je.at("bearing_deg").get<double>();
        net.edges.push_back(e);
    }
    net.terminal_edges = j.at("terminal_edges").get<std::vector<int>>();
    net.depot_edge = j.at("depot_edge").get<int>();
    derive_edge_costs(net, params);

    Instance inst;
    inst.graph = build_line_graph(net, turn_threshold_deg);
    inst.name = j.value("name", std::string());
    if (j.contains("windows")) {
        for (const auto& jw : j.at("windows")) {
            TimeWindow w;
            w.start = jw.value("start", 0.0);
            w.end = jw.contains("end") ? window_end(jw.at("end"))
                                       : std::numeric_limits<double>::infinity();
            inst.windows.set(jw.at("edge").get<int>(), w);
        }
    }
    (void)path;
    return inst;
}

} // namespace

Instance load_instance(const std::string& path, const EnergyParams& params,
                       double turn_threshold_deg) {
    const json j = read_json(path);
    if (!j.contains("format")) throw SchemaError(path + ": missing format field");
    const auto format = j.at("format").get<std::string>();
    if (format == "line-graph/1") return from_line_graph_json(j, path);
    if (format == "road-network/1")
        return from_road_network_json(j, path, params, turn_threshold_deg);
    throw SchemaError(path + ": unsupported format " + format);
}

void save_instance(const Instance& inst, const std::string& path) {
    json j;
    j["format"] = "line-graph/1";
    j["energy_unit"] = "kwh";
    if (!inst.name.empty()) j["name"] = inst.name;
    j["nodes"] = inst.graph.node_count();
    j["depot"] = inst.graph.depot();
    json edges = json::array();
    for (const auto& e : inst.graph.edges()) {
        edges.push_back({{"tail", e.tail},
                         {"head", e.head},
                         {"turns", e.turns},
                         {"energy", e.energy},
                         {"time", e.time}});
    }
    j["edges"] = std::move(edges);
    json terminals = json::array();
    for (int t : inst.graph.terminals()) {
        json jt{{"node", t}};
        if (const TimeWindow* w = inst.windows.find(t)) {
            jt["start"] = w->start;
            if (std::isinf(w->end))
                jt["end"] = "inf";
            else
                jt["end"] = w->end;
        }
        terminals.push_back(std::move(jt));
    }
    j["terminals"] = std::move(terminals);

    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace ecotour

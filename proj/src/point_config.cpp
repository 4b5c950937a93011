#include "perc/point_config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "perc/io_util.hpp"

namespace perc {

std::string to_string(ProcessKind k) {
    switch (k) {
        case ProcessKind::poisson: return "poisson";
        case ProcessKind::ginibre: return "ginibre";
        case ProcessKind::gaf: return "gaf";
        default: return "external";
    }
}

ProcessKind process_kind_from_string(const std::string& s) {
    if (s == "poisson") return ProcessKind::poisson;
    if (s == "ginibre") return ProcessKind::ginibre;
    if (s == "gaf") return ProcessKind::gaf;
    if (s == "external") return ProcessKind::external;
    throw parameter_error("unknown process kind: " + s);
}

void write_points_csv(const PointConfig& config, const std::string& path) {
    std::string body = "x,y\n";
    char line[80];
    for (const auto& p : config.points) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g\n", p.x, p.y);
        body += line;
    }
    write_file_atomic(path, body);
}

PointConfig read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    PointConfig config;
    config.process = ProcessKind::external;
    std::string line;
    if (!std::getline(in, line) || line != "x,y")
        throw std::runtime_error(path + ": expected header `x,y`");
    double max_abs = 0.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double x = 0, y = 0;
        char comma = 0;
        if (!(ss >> x >> comma >> y) || comma != ',')
            throw std::runtime_error(path + ": bad row: " + line);
        config.points.push_back({x, y});
        max_abs = std::max({max_abs, std::abs(x), std::abs(y)});
    }
    config.window = Window(max_abs > 0 ? max_abs : 1.0);
    return config;
}

void write_points_metadata(const PointConfig& config, const std::string& path) {
    nlohmann::json j;
    j["process"] = to_string(config.process);
    j["window"] = {{"center", {config.window.center.x, config.window.center.y}},
                   {"half_width", config.window.half_width}};
    j["seed"] = config.seed.master_seed;
    j["replica"] = config.seed.replica;
    j["n"] = config.truncation_order;
    j["n_points"] = config.points.size();
    write_file_atomic(path, j.dump(2) + "\n");
}

} // namespace perc

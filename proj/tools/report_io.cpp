#include "report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace subcalc::cli {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string weights_csv(const WeightTable& t) {
    std::string out = "m,g\n";
    for (std::size_t m = 0; m < t.g.size(); ++m)
        out += std::to_string(m) + "," + num(t.g[m]) + "\n";
    return out;
}

std::string grid_csv(const GridFunction& g, const std::string& value_header) {
    std::string out = "x," + value_header + "\n";
    for (std::size_t i = 0; i < g.values.size(); ++i)
        out += num(g.x(i)) + "," + num(g.values[i]) + "\n";
    return out;
}

std::string starting_csv(const StartingWeightSet& s) {
    std::string out = "n";
    for (int j = 1; j <= s.r; ++j) out += ",kappa_" + std::to_string(j);
    out += "\n";
    for (std::size_t n = 1; n <= s.N; ++n) {
        out += std::to_string(n);
        for (int j = 1; j <= s.r; ++j) out += "," + num(s.at(n, j));
        out += "\n";
    }
    return out;
}

std::string report_csv(const ExperimentResult& r) {
    std::string out;
    if (!r.identities.empty()) {
        out += "# experiment=" + r.experiment + "\n";
        out += "name,max_residual,tolerance,pass\n";
        for (const auto& c : r.identities)
            out += c.name + "," + num(c.max_residual) + "," + num(c.tolerance) + ","
                 + (c.pass ? "1" : "0") + "\n";
        return out;
    }
    bool first = true;
    for (const auto& rep : r.reports) {
        if (!first) out += "\n";
        first = false;
        out += "# experiment=" + rep.experiment + " alpha=" + num(rep.alpha)
             + " sigma=" + num(rep.sigma) + " p=" + std::to_string(rep.p) + "\n";
        out += "h,max_error,rate\n";
        for (std::size_t k = 0; k < rep.rows.size(); ++k) {
            const auto& row = rep.rows[k];
            out += num(row.h) + "," + num(row.max_error) + ","
                 + (k == 0 ? std::string{} : num(row.rate)) + "\n";
        }
    }
    return out;
}

std::string report_json(const ExperimentResult& r) {
    using nlohmann::json;
    if (!r.identities.empty()) {
        json j{{"experiment", r.experiment}, {"checks", json::array()}, {"wall_ms", r.wall_ms}};
        for (const auto& c : r.identities)
            j["checks"].push_back({{"name", c.name},
                                   {"max_residual", c.max_residual},
                                   {"tolerance", c.tolerance},
                                   {"pass", c.pass}});
        return j.dump(2) + "\n";
    }
    const auto report_obj = [](const ConvergenceReport& rep) {
        json rows = json::array();
        for (std::size_t k = 0; k < rep.rows.size(); ++k) {
            json row{{"h", rep.rows[k].h}, {"max_error", rep.rows[k].max_error}};
            row["rate"] = k == 0 ? json{} : json(rep.rows[k].rate);
            rows.push_back(row);
        }
        return json{{"experiment", rep.experiment},
                    {"spec", {{"alpha", rep.alpha}, {"sigma", rep.sigma}, {"p", rep.p}}},
                    {"rows", rows},
                    {"wall_ms", rep.wall_ms}};
    };
    if (r.reports.size() == 1) return report_obj(r.reports[0]).dump(2) + "\n";
    json arr = json::array();
    for (const auto& rep : r.reports) arr.push_back(report_obj(rep));
    return arr.dump(2) + "\n";
}

GridFile read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::vector<double> xs, vs;
    std::string line;
    bool first_line = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        double x = 0.0, v = 0.0;
        char trailing = '\0';
        const int got = std::sscanf(line.c_str(), " %lf , %lf %c", &x, &v, &trailing);
        if (got < 2) {
            if (first_line) {  // a header row
                first_line = false;
                continue;
            }
            throw std::runtime_error("malformed row in " + path + ": " + line);
        }
        first_line = false;
        xs.push_back(x);
        vs.push_back(v);
    }
    if (xs.size() < 2) throw std::runtime_error("input needs at least two samples: " + path);

    GridFile g;
    g.x0 = xs[0];
    g.h = xs[1] - xs[0];
    if (!(g.h > 0.0)) throw std::runtime_error("grid abscissae must increase: " + path);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double dx = xs[i] - xs[i - 1];
        // budget scales with |x| too: positions near 1 carry ~ulp(1) jitter
        // even on a perfectly uniform grid written in decimal
        const double tol = 1e-12 * std::max(std::fabs(g.h), std::fabs(xs[i]));
        if (std::fabs(dx - g.h) > tol)
            throw std::runtime_error("non-uniform grid spacing in " + path);
    }
    g.values = std::move(vs);
    return g;
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace subcalc::cli

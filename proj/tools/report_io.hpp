// File formats for the CLI: 17-significant-digit CSV (round-trips doubles
// exactly) and the JSON report schema.
#pragma once

#include <string>
#include <vector>

#include "subcalc/harness.hpp"
#include "subcalc/starting.hpp"
#include "subcalc/weights.hpp"

namespace subcalc::cli {

std::string weights_csv(const WeightTable& t);
std::string grid_csv(const GridFunction& g, const std::string& value_header);
std::string starting_csv(const StartingWeightSet& s);

// Ladder experiments: one block per report with a `# experiment=...`
// metadata comment; identity experiments get (name, max_residual,
// tolerance, pass) columns instead.
std::string report_csv(const ExperimentResult& r);

// Single report: the schema object {experiment, spec:{alpha, sigma, p},
// rows:[{h, max_error, rate}], wall_ms} with a null rate on the first row.
// Several reports: an array of those objects. Identity experiments carry
// a checks array instead of rows.
std::string report_json(const ExperimentResult& r);

struct GridFile {
    double x0 = 0.0;
    double h = 0.0;
    std::vector<double> values;
};

// Reads two-column CSV (x, value), skipping one header line if present.
// Throws std::runtime_error for malformed rows or spacing deviating more
// than 1e-12 relative from uniform.
GridFile read_grid_csv(const std::string& path);

// path "-" (or empty) writes to stdout.
void write_text(const std::string& path, const std::string& content);

}  // namespace subcalc::cli

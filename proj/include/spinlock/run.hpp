#pragma once

// Experiment orchestration and result serialization.

#include "spinlock/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace spinlock::run {

inline constexpr const char* kVersion = "0.1.0";

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    // Derived summaries (measurement ranges, fitted slopes) echoed in the header.
    std::vector<std::pair<std::string, std::string>> notes;
};

struct RunOptions {
    unsigned threads{1};
};

// Fixed column schemas.
std::vector<std::string> columns_for(config::Experiment experiment);

Table execute(const config::RunConfig& cfg, const RunOptions& options = {});

// 17 significant digits.
std::string format_number(double value);

std::string render_csv(const Table& table, const config::RunConfig& cfg);
std::string render_json(const Table& table, const config::RunConfig& cfg);

// Executes, writes to cfg.output (or `out` when the path is empty), reports
// failures on `diag`. Returns the process exit code.
int run(const config::RunConfig& cfg, const RunOptions& options, std::ostream& out,
        std::ostream& diag);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace spinlock::run

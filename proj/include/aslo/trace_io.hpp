#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "aslo/simulation.hpp"

namespace aslo::io {

/// Header row then one line per record, %.12e, comma separated, LF endings.
void write_csv(std::ostream& os, const sim::Trace& trace);
sim::Trace read_csv(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, const std::string& text);
std::string read_file(const std::filesystem::path& path);

/// trace.csv, metrics.txt and scenario.resolved under dir (created if needed).
void write_run(const std::filesystem::path& dir, const std::string& resolved, const sim::RunResult& result);

}  // namespace aslo::io

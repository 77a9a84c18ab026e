#include "aslo/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aslo::io {

void write_csv(std::ostream& os, const sim::Trace& trace) {
    for (std::size_t c = 0; c < trace.columns.size(); ++c) os << (c ? "," : "") << trace.columns[c];
    os << '\n';
    char buf[32];
    std::string line;
    const std::size_t n = trace.columns.size();
    for (std::size_t r = 0; r < trace.rows(); ++r) {
        line.clear();
        for (std::size_t c = 0; c < n; ++c) {
            if (c) line += ',';
            std::snprintf(buf, sizeof buf, "%.12e", trace.at(r, c));
            line += buf;
        }
        line += '\n';
        os << line;
    }
}

sim::Trace read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    sim::Trace trace;
    std::string line, cell;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
    std::stringstream header(line);
    while (std::getline(header, cell, ',')) trace.columns.push_back(cell);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        std::stringstream ss(line);
        std::size_t count = 0;
        while (std::getline(ss, cell, ',')) {
            trace.data.push_back(std::stod(cell));
            ++count;
        }
        if (count != trace.columns.size())
            throw std::runtime_error(path.string() + ":" + std::to_string(row) + ": wrong number of fields");
    }
    return trace;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_run(const std::filesystem::path& dir, const std::string& resolved, const sim::RunResult& result) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "trace.csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / "trace.csv").string());
        write_csv(out, result.trace);
    }
    write_file(dir / "metrics.txt", sim::format_metrics(result.metrics));
    write_file(dir / "scenario.resolved", resolved);
}

}  // namespace aslo::io

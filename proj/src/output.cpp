#include "srlab/output.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "srlab/constants.hpp"
#include "srlab/errors.hpp"

namespace srlab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
    : path_(path), n_cols_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += columns[i];
    }
    buffer_ += '\n';
}

CsvWriter::~CsvWriter() {
    std::ofstream out(path_);
    out << buffer_;
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    raw_row(cells);
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    if (cells.size() != n_cols_) throw ConfigError("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void RunManifest::write(const std::filesystem::path& dir) const {
    nlohmann::json j;
    j["tool"] = "srlab";
    j["tool_version"] = tool_version;
    j["constants_version"] = constants_version;
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx", static_cast<unsigned long long>(scenario_hash));
    j["scenario_hash"] = hash_hex;
    j["seed"] = seed;
    j["command"] = command;
    j["outputs"] = outputs;
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    j["created_unix_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    std::ofstream out(dir / "manifest.json");
    out << j.dump(2) << "\n";
}

} // namespace srlab

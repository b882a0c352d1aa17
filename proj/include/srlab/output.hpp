#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace srlab {

// CSV with a fixed header; numeric cells are written as %.17g so reruns of
// the same scenario are byte-identical.
class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
    ~CsvWriter();

    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
    std::size_t n_cols_;
    std::string buffer_;
};

std::string format_double(double v);

// Provenance stamp written next to every run's outputs.
struct RunManifest {
    std::string tool_version;
    std::string constants_version;
    std::uint64_t scenario_hash = 0;
    std::uint64_t seed = 0;
    std::string command;
    std::vector<std::string> outputs;

    // writes <dir>/manifest.json (timestamps included there, nothing else
    // in the run output depends on the clock)
    void write(const std::filesystem::path& dir) const;
};

inline constexpr const char* tool_version = "0.1.0";

} // namespace srlab

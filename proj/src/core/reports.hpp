#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/electronic.hpp"
#include "core/vqd.hpp"

namespace qumvqd {

inline constexpr const char* kVersion = "0.1.0";

// 12 significant digits, the CSV contract everywhere
std::string format_value(double v);

std::string fnv1a_hex(const std::string& bytes);
std::string hash_file(const std::string& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string to_string() const;
  void write(const std::string& path) const;
};

// CompressionReport rows with the contract column set.
CsvTable compression_table(const std::vector<CompressionReport>& reports);

// Per-run provenance record; identical inputs and seed reproduce every field
// except wall time.
struct RunManifest {
  std::string command;
  std::string tool_version = kVersion;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::map<std::string, std::string> input_hashes;
  double wall_time_s = 0.0;
  int threads = 0;
  std::vector<std::string> warnings;
  struct StateSummary {
    int index = 0;
    double energy = 0.0;
    bool converged = false;
    std::int64_t evaluations = 0;
    double grad_norm = 0.0;
  };
  std::vector<StateSummary> states;

  std::string to_json() const;
  void write(const std::string& path) const;
};

RunManifest::StateSummary summarize(const StateRecord& rec);

}  // namespace qumvqd

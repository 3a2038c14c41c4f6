#include "core/reports.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qumvqd {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a_hex(ss.str());
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  return out.str();
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::Io, "cannot write " + path);
  out << to_string();
}

CsvTable compression_table(const std::vector<CompressionReport>& reports) {
  CsvTable t;
  t.header = {"M",     "n_e",          "full_dim",
              "restricted_dim", "ratio", "qumodes_full",
              "qumodes_restricted"};
  for (const auto& r : reports)
    t.rows.push_back({std::to_string(r.m), std::to_string(r.n_e),
                      std::to_string(r.full_dim),
                      std::to_string(r.restricted_dim), format_value(r.ratio),
                      std::to_string(r.qumodes_full),
                      std::to_string(r.qumodes_restricted)});
  return t;
}

RunManifest::StateSummary summarize(const StateRecord& rec) {
  RunManifest::StateSummary s;
  s.index = rec.index;
  s.energy = rec.energy;
  s.converged = rec.converged;
  s.evaluations = rec.evaluations;
  s.grad_norm = rec.grad_norm;
  return s;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["tool_version"] = tool_version;
  j["seed"] = seed;
  j["config_hash"] = config_hash;
  j["input_hashes"] = input_hashes;
  j["wall_time_s"] = wall_time_s;
  j["threads"] = threads;
  j["warnings"] = warnings;
  j["states"] = nlohmann::json::array();
  for (const auto& s : states) {
    nlohmann::json js;
    js["index"] = s.index;
    js["energy"] = s.energy;
    js["converged"] = s.converged;
    js["evaluations"] = s.evaluations;
    js["grad_norm"] = s.grad_norm;
    j["states"].push_back(js);
  }
  return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::Io, "cannot write " + path);
  out << to_json();
}

}  // namespace qumvqd

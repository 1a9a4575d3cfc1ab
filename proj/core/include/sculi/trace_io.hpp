// Binary trace files.
//
// Layout (little-endian):
//   char[4] magic "SCTR" | u32 version = 1 | f64 sample_rate | f64 clock |
//   u64 n_samples | f32 samples[n_samples]
// Metadata lives in a JSON sidecar next to the trace: "trace.sctr" ->
// "trace.meta.json".
#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sculi/power_model.hpp"

namespace sculi::io {

inline constexpr char kTraceMagic[4] = {'S', 'C', 'T', 'R'};
inline constexpr std::uint32_t kTraceVersion = 1;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::filesystem::path sidecar_path(const std::filesystem::path& trace_path);

void write_trace_binary(std::ostream& os, const leakage::Trace& t);
/// Reads samples and header only; meta is left default.
leakage::Trace read_trace_binary(std::istream& is);

std::string sidecar_json(const leakage::TraceMeta& meta);
leakage::TraceMeta parse_sidecar(const std::string& json_text);

/// Writes the trace and its sidecar.
void write_trace(const std::filesystem::path& path, const leakage::Trace& t);
/// Reads the trace and, when present, its sidecar.
leakage::Trace read_trace(const std::filesystem::path& path);

}  // namespace sculi::io

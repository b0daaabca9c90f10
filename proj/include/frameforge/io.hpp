#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "frameforge/core.hpp"
#include "frameforge/flow.hpp"

namespace frameforge {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Frame file: {"field": "real"|"complex", "d": int, "n": int,
//              "entries": row-major [re, im] pairs}.
// Plain CSV (.csv) holds a real frame as d rows of n comma-separated values.
// Spec file: {"d": int, "r": ["p/q", ...]}.

FrameMatrix read_frame(const std::filesystem::path& path);
void write_frame(const std::filesystem::path& path, const FrameMatrix& F);

NormSpec read_spec(const std::filesystem::path& path);
void write_spec(const std::filesystem::path& path, const NormSpec& spec);

std::string frame_to_json(const FrameMatrix& F);
FrameMatrix frame_from_json(const std::string& text);
std::string spec_to_json(const NormSpec& spec);
NormSpec spec_from_json(const std::string& text);

/// Trace CSV with header "iteration,energy,grad_norm".
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceSample>& trace);

/// FNV-1a 64-bit hash of a file's bytes, hex-encoded. Used to fingerprint
/// spec files in run manifests.
std::string file_content_hash(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Current UTC time as ISO-8601 (e.g. "2025-03-14T09:26:53Z").
std::string iso8601_utc_now();

}  // namespace frameforge

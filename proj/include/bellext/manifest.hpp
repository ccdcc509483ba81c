#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bellext/analysis.hpp"
#include "bellext/behavior.hpp"

namespace bellext {

// Shortest representation that round-trips a double exactly ("%.17g").
std::string format_real(double v);

// FNV-1a 64-bit digest of a byte string, rendered as 16 hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

struct OutputRecord {
    std::string path;    // as written, relative to the invocation directory
    std::string digest;  // fnv1a64 hex of the file bytes
};

// Replayable record of one CLI run: the subcommand, every parameter that
// influences the output, and digests of the files produced.
struct RunManifest {
    std::string command;
    nlohmann::json parameters;
    std::vector<OutputRecord> outputs;
};

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

void write_manifest(const std::string& path, const RunManifest& m);
RunManifest load_manifest(const std::string& path);

// Conventional manifest location: "<output>.manifest.json".
std::string manifest_path_for(const std::string& output_path);

// --- CSV renderers ---------------------------------------------------------

// Columns: alpha,w_critical,inequality,method
std::string sweep_csv(const analysis::SweepResult& res);

// Columns: id,beta_l_expected,beta_l_computed,facet,tight_dimension,
//          beta_q_ref,seesaw_value,seeds_used,status
std::string table_report_csv(const analysis::TableReport& report);

// Product vertices, one row per vertex, 26 integer columns (no header).
std::string vertex_csv(const VertexSet& vs);

}  // namespace bellext

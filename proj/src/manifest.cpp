#include "bellext/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bellext {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string digest_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to file: " + path);
}

nlohmann::json manifest_to_json(const RunManifest& m) {
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& o : m.outputs) {
        outputs.push_back({{"path", o.path}, {"digest", o.digest}});
    }
    return {{"format", "bellext-run-manifest"},
            {"format_version", 1},
            {"command", m.command},
            {"parameters", m.parameters},
            {"outputs", outputs}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "bellext-run-manifest") {
        throw std::runtime_error("not a run manifest");
    }
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.parameters = j.at("parameters");
    for (const auto& o : j.at("outputs")) {
        m.outputs.push_back({o.at("path").get<std::string>(), o.at("digest").get<std::string>()});
    }
    return m;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    write_text_file(path, manifest_to_json(m).dump(2) + "\n");
}

RunManifest load_manifest(const std::string& path) {
    return manifest_from_json(nlohmann::json::parse(read_text_file(path)));
}

std::string manifest_path_for(const std::string& output_path) {
    return output_path + ".manifest.json";
}

std::string sweep_csv(const analysis::SweepResult& res) {
    std::ostringstream out;
    out << "alpha,w_critical,inequality,method\n";
    const std::string ineq = analysis::sweep_inequality_name(res.config.inequality);
    for (const auto& p : res.points) {
        out << format_real(p.alpha) << ',' << format_real(p.w_critical) << ',' << ineq << ','
            << res.method << '\n';
    }
    return out.str();
}

std::string table_report_csv(const analysis::TableReport& report) {
    std::ostringstream out;
    out << "id,beta_l_expected,beta_l_computed,facet,tight_dimension,beta_q_ref,seesaw_value,"
           "seeds_used,status\n";
    for (const auto& r : report.rows) {
        out << r.id << ',' << r.beta_l_expected << ',' << r.beta_l_computed << ','
            << (r.facet ? "yes" : "no") << ',' << r.tight_dimension << ','
            << (report.with_quantum ? format_real(r.beta_q_ref) : "") << ','
            << (report.with_quantum ? format_real(r.seesaw_value) : "") << ','
            << (report.with_quantum ? std::to_string(r.seeds_used) : "") << ','
            << (r.pass(report.with_quantum) ? "pass" : "FAIL") << '\n';
    }
    return out.str();
}

std::string vertex_csv(const VertexSet& vs) {
    std::ostringstream out;
    write_vertex_csv(vs, out);
    return out.str();
}

}  // namespace bellext

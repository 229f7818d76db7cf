#pragma once

#include <adelab/arith.hpp>

#include <json.hpp>

#include <array>
#include <ostream>
#include <string>
#include <vector>

namespace adelab {

constexpr const char* kToolVersion = "adelab 0.1.0";

enum class OutFormat { Json, Csv, Text };

inline OutFormat parse_format(const std::string& s) {
    if (s == "json") return OutFormat::Json;
    if (s == "csv") return OutFormat::Csv;
    if (s == "text") return OutFormat::Text;
    throw InvalidArgument("unknown output format: " + s);
}

// Canonical rational rendering used by every machine-readable surface.
inline std::string rat_str(const Rat& r) {
    return num(r).get_str() + "/" + den(r).get_str();
}

struct ReportEnvelope {
    std::string command;
    nlohmann::json payload;
    long wall_ms = 0;
    // per-prime rows for csv: p, status, m, k (empty strings where not
    // applicable)
    std::vector<std::array<std::string, 4>> rows;
    bool has_rows = false;
};

// JSON output is canonical: sorted keys (nlohmann's default map), rationals
// as "num/den", no wall time. Byte-identical across runs and worker counts.
inline void emit(const ReportEnvelope& env, OutFormat fmt, std::ostream& os) {
    switch (fmt) {
        case OutFormat::Json: {
            nlohmann::json j;
            j["command"] = env.command;
            j["payload"] = env.payload;
            j["version"] = kToolVersion;
            os << j.dump(2) << "\n";
            return;
        }
        case OutFormat::Csv: {
            if (!env.has_rows)
                throw InvalidArgument(
                    "csv output is only available for per-prime scans");
            os << "p,status,m,k\n";
            for (auto& r : env.rows)
                os << r[0] << "," << r[1] << "," << r[2] << "," << r[3] << "\n";
            return;
        }
        case OutFormat::Text: {
            os << "# " << kToolVersion << "\n";
            os << "# " << env.command << "\n";
            if (env.has_rows) {
                os << "p\tstatus\tm\tk\n";
                for (auto& r : env.rows)
                    os << r[0] << "\t" << r[1] << "\t" << r[2] << "\t" << r[3]
                       << "\n";
            } else {
                os << env.payload.dump(2) << "\n";
            }
            os << "wall_ms: " << env.wall_ms << "\n";
            return;
        }
    }
}

} // namespace adelab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zerostrip/scanner.hpp"

namespace zerostrip {

// Declarative job description: parsed from JSON (config file), overridable by
// CLI flags. serialize(parse(serialize(c))) == serialize(c); unknown keys are
// rejected.
struct JobConfig {
    std::string command;  // chars|eval|scan|zeros|holes|funceq|radii|torus|verify-paper

    std::vector<std::string> series;

    std::optional<double> sigma_lo, sigma_hi, sigma_step;
    std::optional<double> t_lo, t_hi, t_step;
    std::optional<double> sigma, t;
    std::optional<double> eps, threshold;
    std::optional<std::size_t> terms;
    std::optional<std::vector<double>> betas, tau, k_list, freqs, box, y;
    std::optional<uint64_t> modulus, p;
    std::optional<std::vector<std::size_t>> char_indices;
    std::optional<double> big_t, quad_step;
    std::optional<std::string> out, format, subtorus;
    std::optional<int> workers;
    std::optional<uint64_t> seed;
    bool primitive_only = false;
    bool json_output = false;
    bool symmetric_t = false;

    std::string serialize() const;            // canonical JSON text
    static JobConfig parse(const std::string& json_text);

    uint64_t hash() const;                    // FNV-1a of the canonical text

    ScanConfig to_scan_config() const;
};

// Atomic write: temp file in the same directory, then rename.
void atomic_write_file(const std::string& path, const std::string& content);

std::string scan_result_csv(const ScanResult& result, uint64_t config_hash);
std::string plot_data_text(const ScanResult& result, uint64_t config_hash);

extern const char* kArtifactVersion;

}  // namespace zerostrip

#include "zerostrip/jobconfig.hpp"

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "zerostrip/errors.hpp"

namespace zerostrip {

const char* kArtifactVersion = "zerostrip 1.0.0";

namespace {

using json = nlohmann::ordered_json;

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "command",   "series",     "sigma_lo", "sigma_hi",  "sigma_step", "t_lo",
        "t_hi",      "t_step",     "sigma",    "t",         "eps",        "threshold",
        "terms",     "betas",      "tau",      "k_list",    "freqs",      "box",
        "y",         "modulus",    "p",        "char_indices", "big_t",   "quad_step",
        "out",       "format",     "subtorus", "workers",   "seed",       "primitive_only",
        "json_output", "symmetric_t"};
    return keys;
}

template <typename T>
void put(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <typename T>
void get(const json& j, const char* key, std::optional<T>& v) {
    if (j.contains(key)) v = j.at(key).get<T>();
}

}  // namespace

std::string JobConfig::serialize() const {
    json j;
    j["command"] = command;
    if (!series.empty()) j["series"] = series;
    put(j, "sigma_lo", sigma_lo);
    put(j, "sigma_hi", sigma_hi);
    put(j, "sigma_step", sigma_step);
    put(j, "t_lo", t_lo);
    put(j, "t_hi", t_hi);
    put(j, "t_step", t_step);
    put(j, "sigma", sigma);
    put(j, "t", t);
    put(j, "eps", eps);
    put(j, "threshold", threshold);
    put(j, "terms", terms);
    put(j, "betas", betas);
    put(j, "tau", tau);
    put(j, "k_list", k_list);
    put(j, "freqs", freqs);
    put(j, "box", box);
    put(j, "y", y);
    put(j, "modulus", modulus);
    put(j, "p", p);
    put(j, "char_indices", char_indices);
    put(j, "big_t", big_t);
    put(j, "quad_step", quad_step);
    put(j, "out", out);
    put(j, "format", format);
    put(j, "subtorus", subtorus);
    put(j, "workers", workers);
    put(j, "seed", seed);
    if (primitive_only) j["primitive_only"] = true;
    if (json_output) j["json_output"] = true;
    if (symmetric_t) j["symmetric_t"] = true;
    return j.dump();
}

JobConfig JobConfig::parse(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    for (const auto& item : j.items()) {
        if (!known_keys().count(item.key()))
            throw ValidationError("config: unknown key '" + item.key() + "'");
    }
    JobConfig c;
    if (!j.contains("command")) throw ValidationError("config: 'command' is required");
    c.command = j.at("command").get<std::string>();
    if (j.contains("series")) c.series = j.at("series").get<std::vector<std::string>>();
    get(j, "sigma_lo", c.sigma_lo);
    get(j, "sigma_hi", c.sigma_hi);
    get(j, "sigma_step", c.sigma_step);
    get(j, "t_lo", c.t_lo);
    get(j, "t_hi", c.t_hi);
    get(j, "t_step", c.t_step);
    get(j, "sigma", c.sigma);
    get(j, "t", c.t);
    get(j, "eps", c.eps);
    get(j, "threshold", c.threshold);
    get(j, "terms", c.terms);
    get(j, "betas", c.betas);
    get(j, "tau", c.tau);
    get(j, "k_list", c.k_list);
    get(j, "freqs", c.freqs);
    get(j, "box", c.box);
    get(j, "y", c.y);
    get(j, "modulus", c.modulus);
    get(j, "p", c.p);
    get(j, "char_indices", c.char_indices);
    get(j, "big_t", c.big_t);
    get(j, "quad_step", c.quad_step);
    get(j, "out", c.out);
    get(j, "format", c.format);
    get(j, "subtorus", c.subtorus);
    get(j, "workers", c.workers);
    get(j, "seed", c.seed);
    if (j.contains("primitive_only")) c.primitive_only = j.at("primitive_only").get<bool>();
    if (j.contains("json_output")) c.json_output = j.at("json_output").get<bool>();
    if (j.contains("symmetric_t")) c.symmetric_t = j.at("symmetric_t").get<bool>();
    return c;
}

uint64_t JobConfig::hash() const {
    std::string text = serialize();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

ScanConfig JobConfig::to_scan_config() const {
    ScanConfig sc;
    sc.sigma_lo = sigma_lo.value_or(2.0);
    sc.sigma_hi = sigma_hi.value_or(sc.sigma_lo);
    sc.dsigma = sigma_step.value_or(0.01);
    sc.t_lo = t_lo.value_or(0.0);
    sc.t_hi = t_hi.value_or(100.0);
    sc.dt = t_step.value_or(0.01);
    if (symmetric_t) sc.t_lo = -sc.t_hi;
    sc.eps = eps.value_or(1e-6);
    sc.threshold = threshold.value_or(0.0);
    sc.workers = workers.value_or(0);
    sc.fixed_terms = terms.value_or(0);
    return sc;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw NumericalError("cannot open temp file " + tmp.string());
        out << content;
        if (!out.good()) throw NumericalError("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace {
std::string formatted(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}
}  // namespace

std::string scan_result_csv(const ScanResult& result, uint64_t config_hash) {
    std::string out;
    out += "# ";
    out += kArtifactVersion;
    out += " config_hash=" + std::to_string(config_hash) + "\n";
    out += "sigma,min_modulus,argmin_t,tail_bound,warning\n";
    for (const auto& r : result.rows) {
        out += formatted("%.12e", r.sigma) + "," + formatted("%.12e", r.min_modulus) + "," +
               formatted("%.12e", r.argmin_t) + "," + formatted("%.12e", r.tail_bound) + "," +
               (r.warning ? "1" : "0") + "\n";
    }
    return out;
}

std::string plot_data_text(const ScanResult& result, uint64_t config_hash) {
    const auto& c = result.config;
    std::string out;
    out += "# ";
    out += kArtifactVersion;
    out += " config_hash=" + std::to_string(config_hash) + "\n";
    out += "# sigma " + std::to_string(c.sigma_lo) + ":" + std::to_string(c.sigma_hi) + ":" +
           std::to_string(c.dsigma) + " t " + std::to_string(c.t_lo) + ":" +
           std::to_string(c.t_hi) + ":" + std::to_string(c.dt) +
           " eps " + std::to_string(c.eps) + "\n";
    for (const auto& r : result.rows)
        out += formatted("%.12e", r.sigma) + " " + formatted("%.12e", r.min_modulus) + "\n";
    return out;
}

}  // namespace zerostrip

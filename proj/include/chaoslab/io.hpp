#pragma once

#include "chaoslab/chaos2.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace chaoslab {

// parse a spectrum from JSON: either a bare array of eigenvalues or an object
// {"eigenvalues": [...], "tail_count": n, "tail_bound": b}
Spectrum load_spectrum(const std::filesystem::path& file);
void save_spectrum(const Spectrum& s, const std::filesystem::path& file);

// write-to-temp-then-rename; returns the FNV-1a content hash of the payload
std::uint64_t atomic_write(const std::filesystem::path& file, const std::string& content);

std::uint64_t fnv1a(const std::string& content);

struct ManifestEntry {
    std::string path;
    std::uint64_t content_hash = 0;
};

inline constexpr const char* kVersion = "0.1.0";

struct Manifest {
    std::string subcommand;
    std::string config_json;       // the effective configuration
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::string version = kVersion;
    double wall_seconds = 0.0;
    std::vector<ManifestEntry> artifacts;

    std::string to_json() const;
    void write(const std::filesystem::path& file) const;
};

// grid spec "a:b:n"
std::vector<double> parse_grid_spec(const std::string& spec);

std::string csv_line(const std::vector<double>& values);

} // namespace chaoslab

#include "chaoslab/io.hpp"
#include "chaoslab/density.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace chaoslab {

using nlohmann::json;

Spectrum load_spectrum(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("load_spectrum: cannot open " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("load_spectrum: invalid JSON in " + file.string() + ": " + e.what());
    }
    std::vector<double> eig;
    std::optional<int> tail_count;
    std::optional<double> tail_bound;
    if (j.is_array()) {
        for (const auto& v : j) {
            if (!v.is_number())
                throw std::invalid_argument("load_spectrum: field 'eigenvalues' must hold numbers");
            eig.push_back(v.get<double>());
        }
    } else if (j.is_object()) {
        if (!j.contains("eigenvalues") || !j["eigenvalues"].is_array())
            throw std::invalid_argument("load_spectrum: field 'eigenvalues' missing or not an array");
        for (const auto& v : j["eigenvalues"]) {
            if (!v.is_number())
                throw std::invalid_argument("load_spectrum: field 'eigenvalues' must hold numbers");
            eig.push_back(v.get<double>());
        }
        if (j.contains("tail_count")) {
            if (!j["tail_count"].is_number_integer())
                throw std::invalid_argument("load_spectrum: field 'tail_count' must be an integer");
            tail_count = j["tail_count"].get<int>();
        }
        if (j.contains("tail_bound")) {
            if (!j["tail_bound"].is_number())
                throw std::invalid_argument("load_spectrum: field 'tail_bound' must be a number");
            tail_bound = j["tail_bound"].get<double>();
        }
    } else {
        throw std::invalid_argument("load_spectrum: expected array or object");
    }
    if (eig.empty()) throw std::invalid_argument("load_spectrum: field 'eigenvalues' is empty");
    Spectrum s(eig);
    s.tail_count = tail_count;
    s.tail_bound = tail_bound;
    return s;
}

void save_spectrum(const Spectrum& s, const std::filesystem::path& file) {
    json j;
    j["eigenvalues"] = s.eigenvalues;
    if (s.tail_count) j["tail_count"] = *s.tail_count;
    if (s.tail_bound) j["tail_bound"] = *s.tail_bound;
    atomic_write(file, j.dump(2) + "\n");
}

std::uint64_t fnv1a(const std::string& content) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : content) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t atomic_write(const std::filesystem::path& file, const std::string& content) {
    const auto dir = file.parent_path().empty() ? std::filesystem::path(".") : file.parent_path();
    std::filesystem::create_directories(dir);
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp);
        out << content;
        if (!out) throw std::runtime_error("atomic_write: write failed for " + tmp);
    }
    std::filesystem::rename(tmp, file);
    return fnv1a(content);
}

std::string Manifest::to_json() const {
    json j;
    j["subcommand"] = subcommand;
    j["config"] = json::parse(config_json.empty() ? "{}" : config_json);
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["version"] = version;
    j["wall_seconds"] = wall_seconds;
    j["artifacts"] = json::array();
    for (const auto& a : artifacts) j["artifacts"].push_back({{"path", a.path}, {"hash", a.content_hash}});
    return j.dump(2) + "\n";
}

void Manifest::write(const std::filesystem::path& file) const {
    atomic_write(file, to_json());
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    double a = 0.0, b = 0.0;
    int n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    ss >> a >> c1 >> b >> c2 >> n;
    if (!ss || c1 != ':' || c2 != ':' || n < 2)
        throw std::invalid_argument("grid spec must be a:b:n with n >= 2, got '" + spec + "'");
    return make_grid(a, b, n);
}

std::string csv_line(const std::vector<double>& values) {
    std::ostringstream ss;
    ss.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) ss << ',';
        ss << values[i];
    }
    return ss.str();
}

} // namespace chaoslab

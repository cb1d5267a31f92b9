// Experiment runner: density estimation, bound certificates and the
// Ornstein-Uhlenbeck drift-estimation study from one binary.

#include "chaoslab/chaos2.hpp"
#include "chaoslab/density.hpp"
#include "chaoslab/hermite.hpp"
#include "chaoslab/io.hpp"
#include "chaoslab/ou.hpp"
#include "chaoslab/special.hpp"
#include "chaoslab/stein.hpp"
#include "chaoslab/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

using namespace chaoslab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out_dir = ".";
    std::string format = "csv";
    std::string config_file;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "RNG seed");
    cmd->add_option("--threads", c.threads, "worker threads (0 = hardware)");
    cmd->add_option("--out", c.out_dir, "output directory");
    cmd->add_option("--format", c.format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    cmd->add_option("--config", c.config_file, "JSON config file; flags override its values");
}

// flat JSON config expanded to --key=value tokens placed before the user's
// flags, so explicitly passed flags override file values
std::vector<std::string> config_tokens(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("--config: cannot open " + file);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("--config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("--config: expected a JSON object");
    std::vector<std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string v;
        if (it.value().is_string())
            v = it.value().get<std::string>();
        else
            v = it.value().dump();
        out.push_back("--" + it.key() + "=" + v);
    }
    return out;
}

struct RunContext {
    Common common;
    std::string subcommand;
    json effective;
    Manifest manifest;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    fs::path out(const std::string& name) const { return fs::path(common.out_dir) / name; }

    void emit(const fs::path& p, const std::string& content) {
        ManifestEntry e;
        e.path = p.string();
        e.content_hash = atomic_write(p, content);
        manifest.artifacts.push_back(e);
    }

    void finish() {
        manifest.subcommand = subcommand;
        manifest.config_json = effective.dump();
        manifest.config_hash = fnv1a(manifest.config_json);
        manifest.seed = common.seed;
        manifest.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        manifest.write(out(subcommand + "_manifest.json"));
    }
};

TestFunction parse_h_spec(const std::string& spec) {
    // poly:c0,c1,...  or  indh:z:k  (1_{x>z} He_k(x))
    if (spec.rfind("poly:", 0) == 0) {
        std::vector<double> c;
        std::stringstream ss(spec.substr(5));
        std::string tok;
        while (std::getline(ss, tok, ',')) c.push_back(std::stod(tok));
        if (c.empty()) throw CLI::ValidationError("--h", "poly: needs coefficients");
        return TestFunction::polynomial(c);
    }
    if (spec.rfind("indh:", 0) == 0) {
        std::stringstream ss(spec.substr(5));
        std::string ztok, ktok;
        if (!std::getline(ss, ztok, ':') || !std::getline(ss, ktok, ':'))
            throw CLI::ValidationError("--h", "indh: needs z:k");
        return TestFunction::indicator_hermite(std::stod(ztok), std::stoi(ktok));
    }
    throw CLI::ValidationError("--h", "expected poly:c0,c1,... or indh:z:k");
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

int run_hermite_table(RunContext& ctx, int kmax, double lambda, const std::string& grid_spec) {
    const auto grid = parse_grid_spec(grid_spec);
    std::ostringstream csv;
    csv << "k,lambda,x,value\n";
    csv.precision(17);
    for (int k = 0; k <= kmax; ++k)
        for (double x : grid)
            csv << k << ',' << lambda << ',' << x << ',' << hermite_gen_eval(k, lambda, x) << '\n';
    ctx.emit(ctx.out("hermite_table.csv"), csv.str());
    ctx.finish();
    return 0;
}

int run_chaos2_density(RunContext& ctx, const std::string& spectrum_file, std::size_t n,
                       const std::string& grid_spec, int deriv, const std::string& estimator,
                       const std::string& svg_file) {
    const Spectrum spec = load_spectrum(spectrum_file);
    const auto grid = parse_grid_spec(grid_spec);
    const ExactMoments em = exact_moments(spec);
    const double sigma = std::sqrt(em.sigma2);

    DensityEstimate est;
    if (estimator == "fmla1" || deriv > 0) {
        SampleOptions so;
        so.max_gk_order = deriv + 1;
        so.threads = ctx.common.threads;
        const auto samples = sample(spec, n, ctx.common.seed, so);
        est = deriv == 0 ? malliavin_density(samples, grid)
                         : derivative_density(samples, deriv, grid);
    } else if (estimator == "fmla3") {
        GeneralDensityOptions go;
        go.threads = ctx.common.threads;
        est = malliavin_density_general(ChaosExpansion::second_chaos_diagonal(spec.eigenvalues),
                                        grid, n, ctx.common.seed, go);
    } else if (estimator == "kde") {
        SampleOptions so;
        so.max_gk_order = 1;
        so.threads = ctx.common.threads;
        const auto samples = sample(spec, n, ctx.common.seed, so);
        std::vector<double> values;
        values.reserve(samples.size());
        for (const auto& s : samples) values.push_back(s.F);
        est = kde_density(values, grid).estimate;
    } else {
        throw CLI::ValidationError("--estimator", "expected fmla1|fmla3|kde");
    }

    std::ostringstream csv;
    csv << "x,estimate,std_error\n";
    csv.precision(17);
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv << grid[i] << ',' << est.estimate[i] << ',' << est.std_error[i] << '\n';
    ctx.emit(ctx.out("density.csv"), csv.str());

    const auto target = [&](double x) {
        return deriv == 0 ? normal_pdf(x, sigma) : normal_density_derivative(deriv, sigma, x);
    };
    const DistanceReport dist = uniform_distance(est, target);
    json summary;
    summary["estimator"] = est.estimator_tag;
    summary["n"] = est.n;
    summary["rejected"] = est.rejected;
    summary["sigma2"] = em.sigma2;
    if (spec.tail_count && spec.tail_bound) {
        // crude truncation allowance from the stored descriptor
        summary["tail_count"] = *spec.tail_count;
        summary["tail_bound"] = *spec.tail_bound;
        summary["tail_sigma2_bound"] =
            2.0 * (*spec.tail_count) * (*spec.tail_bound) * (*spec.tail_bound);
    }
    summary["sup_gap"] = dist.sup_gap;
    summary["argmax"] = dist.argmax;
    summary["l1_gap"] = dist.l1_gap;
    summary["l2_gap"] = dist.l2_gap;
    summary["integral"] = est.integral();
    ctx.emit(ctx.out("density_summary.json"), summary.dump(2) + "\n");

    if (!svg_file.empty()) {
        SvgPlot plot;
        plot.set_title("density estimate vs normal target");
        plot.set_axis_labels("x", deriv == 0 ? "f(x)" : "f^(" + std::to_string(deriv) + ")(x)");
        SvgPlot::Series s1;
        s1.x = grid;
        s1.y = est.estimate;
        s1.yerr = est.std_error;
        s1.label = est.estimator_tag;
        s1.points = false;
        SvgPlot::Series s2;
        s2.x = grid;
        for (double x : grid) s2.y.push_back(target(x));
        s2.color = "#c23b22";
        s2.label = "normal target";
        s2.points = false;
        plot.add_series(s1);
        plot.add_series(s2);
        ctx.emit(ctx.out(svg_file), plot.render());
    }
    ctx.finish();
    return 0;
}

int run_negmoment(RunContext& ctx, const std::string& spectrum_file, double alpha, double calpha) {
    const Spectrum spec = load_spectrum(spectrum_file);
    const NegativeMomentResult r = negative_moment(spec, alpha, calpha);
    json j;
    j["alpha"] = alpha;
    j["value"] = r.value;
    j["quad_abs_error"] = r.quad_abs_error;
    j["bound_factor"] = r.bound_factor;
    j["bound_with_calpha"] = r.bound_with_calpha;
    j["bound_index"] = r.bound_index;
    j["bound_holds"] = r.bound_holds;
    ctx.emit(ctx.out("negmoment.json"), j.dump(2) + "\n");
    if (ctx.common.format == "csv") {
        std::ostringstream csv;
        csv.precision(17);
        csv << "alpha,value,bound_factor,bound_with_calpha,bound_holds\n";
        csv << alpha << ',' << r.value << ',' << r.bound_factor << ',' << r.bound_with_calpha << ','
            << (r.bound_holds ? 1 : 0) << '\n';
        ctx.emit(ctx.out("negmoment.csv"), csv.str());
    }
    ctx.finish();
    return 0;
}

int run_certificate(RunContext& ctx, const std::string& spectrum_file, double cq) {
    const Spectrum spec = load_spectrum(spectrum_file);
    const BoundReport r = certificate_qrate(spec, cq);
    json j;
    j["sigma2"] = r.sigma2;
    j["m6"] = r.m6;
    j["fourth_moment_gap"] = r.fourth_moment_gap;
    j["sqrt_gap"] = r.sqrt_gap;
    j["constant"] = r.constant;
    j["bound"] = r.bound;
    j["user_cq"] = r.user_cq;
    ctx.emit(ctx.out("certificate.json"), j.dump(2) + "\n");
    ctx.finish();
    return 0;
}

int run_stein_check(RunContext& ctx, const std::string& spectrum_file, const std::string& h_spec,
                    std::size_t n) {
    const Spectrum spec = load_spectrum(spectrum_file);
    const TestFunction h = parse_h_spec(h_spec);
    const ChaosExpansion F = ChaosExpansion::second_chaos_diagonal(spec.eigenvalues);
    const MsIdentityReport r = ms_identity_check(F, h, n, ctx.common.seed, ctx.common.threads);
    json j;
    j["sigma2"] = r.sigma2;
    j["lhs_mean"] = r.lhs_mean;
    j["lhs_se"] = r.lhs_se;
    j["rhs_mean"] = r.rhs_mean;
    j["rhs_se"] = r.rhs_se;
    j["diff_mean"] = r.diff_mean;
    j["diff_se"] = r.diff_se;
    j["z_score"] = r.z_score;
    j["n"] = r.n;
    ctx.emit(ctx.out("stein_check.json"), j.dump(2) + "\n");
    ctx.finish();
    return r.z_score <= 4.0 ? 0 : 1;
}

int run_fourth_moment(RunContext& ctx, const std::string& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw CLI::ValidationError("--spectra", "no .json spectra in " + dir);
    std::vector<Spectrum> spectra;
    for (const auto& f : files) spectra.push_back(load_spectrum(f));
    const FourthMomentReport rep = fourth_moment_report(spectra);
    std::ostringstream csv;
    csv << "index,sigma2,fourth_gap,contraction_norm,var_dfnorm\n";
    csv.precision(17);
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        csv << i << ',' << r.sigma2 << ',' << r.fourth_gap << ',' << r.contraction_norm << ','
            << r.var_dfnorm << '\n';
    }
    ctx.emit(ctx.out("fourth_moment.csv"), csv.str());
    json j;
    j["fourth_gap_decreasing"] = rep.fourth_gap_decreasing;
    j["contraction_decreasing"] = rep.contraction_decreasing;
    j["var_decreasing"] = rep.var_decreasing;
    j["count"] = rep.rows.size();
    ctx.emit(ctx.out("fourth_moment_summary.json"), j.dump(2) + "\n");
    ctx.finish();
    return 0;
}

int run_ou_eigs(RunContext& ctx, double theta, double gamma, double T, int count,
                int nystrom_nodes) {
    const EigenSolveResult es = kernel_spectrum_sl(theta, gamma, T, count);
    std::ostringstream csv;
    csv << "i,lo,lambda,hi,residual,extra\n";
    csv.precision(17);
    for (const auto& r : es.roots)
        csv << r.bracket_index << ',' << r.lambda_lo << ',' << r.lambda << ',' << r.lambda_hi << ','
            << r.residual << ',' << (r.extra ? 1 : 0) << '\n';
    ctx.emit(ctx.out("ou_eigs.csv"), csv.str());
    json j;
    j["theta"] = theta;
    j["gamma"] = gamma;
    j["T"] = T;
    j["count"] = count;
    j["two_sum_sq"] = 2.0 * [&] {
        double s = 0.0;
        for (double l : es.eigenvalues) s += l * l;
        return s;
    }();
    j["exact_second_moment"] = exact_f_t_moment(theta, gamma, T);
    j["tail_bound_sq"] = es.tail_bound_sq;
    if (nystrom_nodes > 0) {
        const NystromResult ny = kernel_spectrum_nystrom(theta, gamma, T, nystrom_nodes);
        std::ostringstream ncsv;
        ncsv << "i,lambda\n";
        ncsv.precision(17);
        for (std::size_t i = 0; i < ny.eigenvalues.size(); ++i)
            ncsv << i + 1 << ',' << ny.eigenvalues[i] << '\n';
        ctx.emit(ctx.out("ou_eigs_nystrom.csv"), ncsv.str());
        double max_rel = 0.0;
        const std::size_t top = std::min<std::size_t>(10, std::min(es.eigenvalues.size(),
                                                                   ny.eigenvalues.size()));
        for (std::size_t i = 0; i < top; ++i)
            max_rel = std::max(max_rel, std::fabs(es.eigenvalues[i] - ny.eigenvalues[i]) /
                                            es.eigenvalues[i]);
        j["nystrom_nodes"] = nystrom_nodes;
        j["nystrom_top10_max_rel_gap"] = max_rel;
        j["nystrom_trace"] = ny.trace;
        j["nystrom_max_residual"] = ny.max_residual;
    }
    ctx.emit(ctx.out("ou_eigs_summary.json"), j.dump(2) + "\n");
    ctx.finish();
    return 0;
}

int run_ou_rate(RunContext& ctx, double theta, double gamma, const std::string& t_list_csv,
                std::size_t n, const std::string& grid_spec, const std::string& svg_file) {
    const std::vector<double> T_list = parse_list(t_list_csv);
    const double sigma = std::sqrt(std::pow(gamma, 4) / (2.0 * theta));
    const auto grid = grid_spec.empty() ? make_grid(-6.0 * sigma, 6.0 * sigma, 241)
                                        : parse_grid_spec(grid_spec);
    const RateReport rep =
        rate_experiment(theta, gamma, T_list, n, ctx.common.seed, grid, ctx.common.threads);
    std::ostringstream csv;
    csv << "T,sup_gap,max_se,exact_fourth_sqrt,spectrum_size\n";
    csv.precision(17);
    for (const auto& p : rep.points)
        csv << p.T << ',' << p.sup_gap << ',' << p.max_se << ',' << p.exact_fourth_sqrt << ','
            << p.spectrum_size << '\n';
    ctx.emit(ctx.out("ou_rate.csv"), csv.str());
    json j;
    j["slope"] = rep.slope;
    j["intercept"] = rep.intercept;
    j["exact_slope"] = rep.exact_slope;
    j["conclusive"] = rep.conclusive;
    j["n"] = rep.n;
    j["sigma2_limit"] = rep.sigma2_limit;
    ctx.emit(ctx.out("ou_rate_summary.json"), j.dump(2) + "\n");
    if (!svg_file.empty()) {
        SvgPlot plot;
        plot.set_title("uniform density distance vs T");
        plot.set_axis_labels("T", "sup gap");
        plot.set_loglog(true);
        SvgPlot::Series s;
        for (const auto& p : rep.points) {
            s.x.push_back(p.T);
            s.y.push_back(p.sup_gap);
            s.yerr.push_back(p.max_se);
        }
        s.label = "sup |f - phi|";
        plot.add_series(s);
        SvgPlot::Series e;
        for (const auto& p : rep.points) {
            e.x.push_back(p.T);
            e.y.push_back(p.exact_fourth_sqrt);
        }
        e.color = "#c23b22";
        e.label = "sqrt(E F^4 - 3 sigma^4)";
        plot.add_series(e);
        ctx.emit(ctx.out(svg_file), plot.render());
    }
    ctx.finish();
    if (!rep.conclusive) {
        std::cerr << "ou-rate: Monte Carlo noise floor too high for the smallest distance; "
                     "increase --n\n";
        return 1;
    }
    return 0;
}

int run_ou_lse(RunContext& ctx, double theta, double gamma, double T, double dt, int seeds) {
    std::ostringstream csv;
    csv << "seed,theta_hat\n";
    csv.precision(17);
    double mean = 0.0, m2 = 0.0;
    for (int s = 0; s < seeds; ++s) {
        OUConfig cfg;
        cfg.theta = theta;
        cfg.gamma = gamma;
        cfg.T = T;
        cfg.dt = dt;
        cfg.seed = ctx.common.seed + static_cast<std::uint64_t>(s);
        const auto path = simulate_ou(cfg);
        const double th = least_squares_estimate(path, dt);
        csv << cfg.seed << ',' << th << '\n';
        mean += th;
        m2 += th * th;
    }
    ctx.emit(ctx.out("ou_lse.csv"), csv.str());
    mean /= seeds;
    json j;
    j["mean"] = mean;
    j["variance"] = m2 / seeds - mean * mean;
    j["scaled_variance"] = T * (m2 / seeds - mean * mean);
    j["target_2theta"] = 2.0 * theta;
    j["seeds"] = seeds;
    ctx.emit(ctx.out("ou_lse_summary.json"), j.dump(2) + "\n");
    ctx.finish();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chaoslab: Malliavin-Stein density estimation experiments"};
    app.require_subcommand(1);
    // config-file tokens may repeat a flag given on the command line
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Common common;

    // hermite-table
    auto* c_herm = app.add_subcommand("hermite-table", "tabulate two-parameter Hermite values");
    int kmax = 8;
    double lambda = 1.0;
    std::string grid_spec = "-3:3:13";
    c_herm->add_option("--kmax", kmax, "highest order")->check(CLI::Range(0, 16));
    c_herm->add_option("--lambda", lambda, "lambda parameter")->check(CLI::NonNegativeNumber);
    c_herm->add_option("--grid", grid_spec, "grid a:b:n");
    add_common(c_herm, common);

    // chaos2-density
    auto* c_dens = app.add_subcommand("chaos2-density", "Monte Carlo density of a second-chaos variable");
    std::string spectrum_file;
    std::size_t n = 100000;
    std::string dens_grid = "-4:4:241";
    int deriv = 0;
    std::string estimator = "fmla1";
    std::string svg_file;
    c_dens->add_option("--spectrum", spectrum_file, "spectrum JSON file")->required();
    c_dens->add_option("--n", n, "sample count");
    c_dens->add_option("--grid", dens_grid, "grid a:b:n");
    c_dens->add_option("--deriv", deriv, "density derivative order")->check(CLI::Range(0, 4));
    c_dens->add_option("--estimator", estimator, "fmla1|fmla3|kde");
    c_dens->add_option("--svg", svg_file, "also draw an SVG plot to this file");
    add_common(c_dens, common);

    // negmoment
    auto* c_neg = app.add_subcommand("negmoment", "negative moment of the squared gradient norm");
    double alpha = 1.0, calpha = 1.0;
    std::string neg_spectrum;
    c_neg->add_option("--spectrum", neg_spectrum, "spectrum JSON file")->required();
    c_neg->add_option("--alpha", alpha, "moment order")->check(CLI::PositiveNumber);
    c_neg->add_option("--calpha", calpha, "user constant for the reference bound");
    add_common(c_neg, common);

    // certificate
    auto* c_cert = app.add_subcommand("certificate", "uniform-distance bound certificate");
    std::string cert_spectrum;
    double cq = 1.0;
    c_cert->add_option("--spectrum", cert_spectrum, "spectrum JSON file")->required();
    c_cert->add_option("--cq", cq, "user constant C_q");
    add_common(c_cert, common);

    // stein-check
    auto* c_stein = app.add_subcommand("stein-check", "Monte Carlo Malliavin-Stein identity check");
    c_stein->set_help_flag("--help", "print help"); // frees -h for the test function flag
    std::string stein_spectrum, h_spec = "indh:0:1";
    std::size_t stein_n = 100000;
    c_stein->add_option("--spectrum", stein_spectrum, "spectrum JSON file")->required();
    c_stein->add_option("--h", h_spec, "test function: poly:c0,c1,... or indh:z:k");
    c_stein->add_option("--n", stein_n, "sample count");
    add_common(c_stein, common);

    // fourth-moment
    auto* c_fm = app.add_subcommand("fourth-moment", "fourth-moment condition quantities for spectra");
    std::string spectra_dir;
    c_fm->add_option("--spectra", spectra_dir, "directory of spectrum JSON files")->required();
    add_common(c_fm, common);

    // ou-eigs
    auto* c_eigs = app.add_subcommand("ou-eigs", "covariance spectrum of the OU estimation kernel");
    double theta = 1.0, gamma = 1.0, T = 10.0;
    int count = 50, nystrom_nodes = 0;
    c_eigs->add_option("--theta", theta)->check(CLI::PositiveNumber);
    c_eigs->add_option("--gamma", gamma)->check(CLI::PositiveNumber);
    c_eigs->add_option("--T", T)->check(CLI::PositiveNumber);
    c_eigs->add_option("--count", count, "bracket count")->check(CLI::PositiveNumber);
    c_eigs->add_option("--nystrom-nodes", nystrom_nodes, "cross-check with this many nodes");
    add_common(c_eigs, common);

    // ou-rate
    auto* c_rate = app.add_subcommand("ou-rate", "density-convergence rate experiment");
    double r_theta = 1.0, r_gamma = 1.0;
    std::string t_list = "5,10,20,40,80";
    std::size_t rate_n = 1000000;
    std::string rate_grid, rate_svg;
    c_rate->add_option("--theta", r_theta)->check(CLI::PositiveNumber);
    c_rate->add_option("--gamma", r_gamma)->check(CLI::PositiveNumber);
    c_rate->add_option("--T-list", t_list, "comma-separated horizons");
    c_rate->add_option("--n", rate_n, "samples per horizon");
    c_rate->add_option("--grid", rate_grid, "grid a:b:n (default +-6 sigma, 241 points)");
    c_rate->add_option("--svg", rate_svg, "log-log SVG plot file");
    add_common(c_rate, common);

    // ou-lse
    auto* c_lse = app.add_subcommand("ou-lse", "least-squares drift estimates over seeds");
    double l_theta = 1.0, l_gamma = 1.0, l_T = 200.0, l_dt = 0.01;
    int l_seeds = 100;
    c_lse->add_option("--theta", l_theta)->check(CLI::PositiveNumber);
    c_lse->add_option("--gamma", l_gamma)->check(CLI::PositiveNumber);
    c_lse->add_option("--T", l_T)->check(CLI::PositiveNumber);
    c_lse->add_option("--dt", l_dt)->check(CLI::PositiveNumber);
    c_lse->add_option("--seeds", l_seeds)->check(CLI::PositiveNumber);
    add_common(c_lse, common);

    // expand --config into leading tokens so later command-line flags win
    std::vector<std::string> tokens;
    for (int i = 1; i < argc; ++i) tokens.emplace_back(argv[i]);
    try {
        std::string config_file;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (tokens[i] == "--config" && i + 1 < tokens.size())
                config_file = tokens[i + 1];
            else if (tokens[i].rfind("--config=", 0) == 0)
                config_file = tokens[i].substr(9);
        }
        if (!config_file.empty() && !tokens.empty()) {
            const auto extra = config_tokens(config_file);
            tokens.insert(tokens.begin() + 1, extra.begin(), extra.end());
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    CLI::App* chosen = nullptr;
    try {
        std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
        app.parse(reversed);
        chosen = app.get_subcommands().front();
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    RunContext ctx;
    ctx.common = common;
    ctx.subcommand = chosen->get_name();
    {
        json cfg;
        cfg["command"] = ctx.subcommand;
        cfg["tokens"] = tokens;
        ctx.effective = cfg;
    }
    ctx.effective["seed"] = common.seed;

    try {
        const std::string& name = ctx.subcommand;
        if (name == "hermite-table") return run_hermite_table(ctx, kmax, lambda, grid_spec);
        if (name == "chaos2-density")
            return run_chaos2_density(ctx, spectrum_file, n, dens_grid, deriv, estimator, svg_file);
        if (name == "negmoment") return run_negmoment(ctx, neg_spectrum, alpha, calpha);
        if (name == "certificate") return run_certificate(ctx, cert_spectrum, cq);
        if (name == "stein-check") return run_stein_check(ctx, stein_spectrum, h_spec, stein_n);
        if (name == "fourth-moment") return run_fourth_moment(ctx, spectra_dir);
        if (name == "ou-eigs") return run_ou_eigs(ctx, theta, gamma, T, count, nystrom_nodes);
        if (name == "ou-rate")
            return run_ou_rate(ctx, r_theta, r_gamma, t_list, rate_n, rate_grid, rate_svg);
        if (name == "ou-lse") return run_ou_lse(ctx, l_theta, l_gamma, l_T, l_dt, l_seeds);
        std::cerr << "unknown subcommand\n";
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << ctx.subcommand << ": " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << ctx.subcommand << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << ctx.subcommand << ": " << e.what() << "\n";
        return 1;
    }
}

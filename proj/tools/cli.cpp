#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "shockvol/calibrate.hpp"
#include "shockvol/empirics.hpp"
#include "shockvol/error.hpp"
#include "shockvol/io.hpp"
#include "shockvol/model.hpp"
#include "shockvol/parallel.hpp"
#include "shockvol/theory.hpp"

namespace shockvol::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Common {
    std::uint64_t seed = 1;
    std::string out = ".";
    std::size_t workers = 0;
    std::string config;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "RNG seed");
    sub->add_option("--out", c.out, "Output directory");
    sub->add_option("--workers", c.workers, "Worker threads (0 = all cores)");
    sub->add_option("--config", c.config, "JSON file with flag values (flags on the command line win)");
}

// Sigma law selection shared by simulate and theory. Priority: --sigma-law JSON, then
// --sigma (constant), then the log-normal law with first two moments (--e-sigma, --e-sigma-sq).
struct LawFlags {
    double d = 0.16;
    double lambda = 0.00097;
    std::optional<double> sigma;
    std::string sigma_law;
    double e_sigma = 0.108;
    double e_sigma_sq = 0.0117;
};

void add_law(CLI::App* sub, LawFlags& f) {
    sub->add_option("--d", f.d, "Scaling exponent D in (0, 1/2]");
    sub->add_option("--lambda", f.lambda, "Shock intensity per day");
    sub->add_option("--sigma", f.sigma, "Constant volatility mark");
    sub->add_option("--sigma-law", f.sigma_law, "Sigma law as JSON, e.g. {\"kind\":\"two_point\",\"lo\":0.1,\"hi\":0.2,\"p_hi\":0.5}");
    sub->add_option("--e-sigma", f.e_sigma, "E sigma (log-normal law when --sigma is absent)");
    sub->add_option("--e-sigma-sq", f.e_sigma_sq, "E sigma^2 (log-normal law when --sigma is absent)");
}

SigmaLaw law_from(const LawFlags& f) {
    if (!f.sigma_law.empty()) return io::sigma_law_from_json(nlohmann::json::parse(f.sigma_law));
    if (f.sigma) return SigmaLaw::constant(*f.sigma);
    if (!(f.e_sigma > 0.0) || !(f.e_sigma_sq >= f.e_sigma * f.e_sigma)) {
        throw std::invalid_argument("need E sigma > 0 and E sigma^2 >= (E sigma)^2");
    }
    const double s2 = std::log(f.e_sigma_sq / (f.e_sigma * f.e_sigma));
    if (s2 <= 0.0) return SigmaLaw::constant(f.e_sigma);
    return SigmaLaw(LogNormalSigma{std::log(f.e_sigma) - 0.5 * s2, std::sqrt(s2)});
}

ModelParams model_from(const LawFlags& f) { return {f.d, f.lambda, law_from(f)}; }

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json option_values(const CLI::App* sub) {
    ordered_json params = ordered_json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string name = opt->get_lnames().front();
        if (name == "help" || name == "config") continue;
        if (opt->get_type_size() == 0) {
            params[name] = opt->count() > 0;
        } else if (opt->count() > 0) {
            const auto& res = opt->results();
            if (opt->get_expected_max() > 1) {
                params[name] = res;
            } else {
                params[name] = res.back();
            }
        } else if (opt->get_expected_max() <= 1 && !opt->get_default_str().empty()) {
            params[name] = opt->get_default_str();
        }
    }
    return params;
}

struct Outputs {
    fs::path dir;
    std::vector<std::string> files;

    fs::path add(const std::string& name) {
        files.push_back(name);
        return dir / name;
    }
};

void write_file(Outputs& outs, const std::string& name, const std::string& text) { io::write_text(outs.add(name), text); }

void write_manifest(Outputs& outs, const CLI::App* sub, const Common& c, const std::vector<std::string>& inputs) {
    ordered_json m;
    m["subcommand"] = sub->get_name();
    m["version"] = SHOCKVOL_VERSION;
    m["timestamp"] = timestamp_utc();
    m["seed"] = c.seed;
    m["parameters"] = option_values(sub);
    m["inputs"] = inputs;
    m["outputs"] = outs.files;
    io::write_text(outs.dir / "manifest.json", io::dump(m));
}

Outputs prepare_out(const Common& c) {
    Outputs o{fs::path(c.out), {}};
    std::error_code ec;
    fs::create_directories(o.dir, ec);
    if (ec || !fs::is_directory(o.dir)) throw IoError("cannot create output directory '" + c.out + "'");
    return o;
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& cols) {
    std::ostringstream s;
    io::write_csv(s, header, cols);
    return s.str();
}

// Weekday calendar dates starting 1935-01-02, for exporting simulated prices.
std::vector<std::string> business_dates(std::size_t n) {
    using namespace std::chrono;
    std::vector<std::string> out;
    out.reserve(n);
    sys_days d = sys_days{year{1935} / January / 2};
    while (out.size() < n) {
        const weekday wd{d};
        if (wd != Saturday && wd != Sunday) {
            const year_month_day ymd{d};
            char buf[16];
            std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                          static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
            out.emplace_back(buf);
        }
        d += days{1};
    }
    return out;
}

// ---- simulate ----

struct SimulateOpts {
    Common common;
    LawFlags law;
    std::size_t steps = 0;
    double dt = 1.0;
    std::size_t paths = 1;
    bool prices = false;
};

void cmd_simulate(const CLI::App* sub, const SimulateOpts& o, std::ostream& out) {
    const ModelParams params = model_from(o.law);
    if (o.prices && o.paths != 1) throw std::invalid_argument("--prices needs --paths 1");
    Outputs outs = prepare_out(o.common);

    std::vector<LogPricePath> paths(o.paths);
    parallel_for(o.paths, o.common.workers,
                 [&](std::size_t k) { paths[k] = simulate_path(params, o.steps, o.dt, o.common.seed, k); });

    if (o.paths == 1) {
        std::ostringstream s;
        io::write_path_csv(s, paths[0]);
        write_file(outs, "path.csv", s.str());
    } else if (o.paths <= 100) {
        for (std::size_t k = 0; k < o.paths; ++k) {
            std::ostringstream s;
            io::write_path_csv(s, paths[k]);
            char name[32];
            std::snprintf(name, sizeof name, "path_%03zu.csv", k);
            write_file(outs, name, s.str());
        }
    } else {
        std::ostringstream s;
        s << "path_id,t,I,X\n";
        for (std::size_t k = 0; k < o.paths; ++k) io::write_long_path_rows(s, k, paths[k]);
        write_file(outs, "paths.csv", s.str());
    }
    if (o.prices) {
        const auto dates = business_dates(paths[0].x_vals.size());
        std::ostringstream s;
        s << "date,price\n";
        for (std::size_t j = 0; j < dates.size(); ++j) s << dates[j] << ',' << io::format_double(std::exp(paths[0].x_vals[j])) << '\n';
        write_file(outs, "prices.csv", s.str());
    }
    ordered_json sidecar;
    sidecar["seed"] = o.common.seed;
    sidecar["params"] = io::to_json(params);
    write_file(outs, "seed.json", io::dump(sidecar));
    write_manifest(outs, sub, o.common, {});
    out << "wrote " << o.paths << " path(s) of " << o.steps << " steps to " << outs.dir.string() << '\n';
}

// ---- theory ----

struct TheoryOpts {
    Common common;
    LawFlags law;
    std::string curve;
    double q_max = 5.0;
    std::size_t q_points = 20;
    std::size_t t_max = 400;
    std::optional<double> x_max;
    std::size_t x_points = 121;
    std::vector<double> x_extra;
    std::size_t z_points = 60;
};

void cmd_theory(const CLI::App* sub, const TheoryOpts& o, std::ostream& out) {
    const ModelParams mp = model_from(o.law);
    const TheoryParams tp = TheoryParams::from_model(mp);
    tp.validate();
    Outputs outs = prepare_out(o.common);
    const std::size_t workers = o.common.workers;
    const std::string file = "theory_" + o.curve + ".csv";

    if (o.curve == "aq" || o.curve == "cq") {
        if (!(o.q_max > 0.0) || o.q_points == 0) throw std::invalid_argument("need --q-max > 0 and --q-points >= 1");
        std::vector<double> q(o.q_points), a(o.q_points), c(o.q_points);
        parallel_for(o.q_points, workers, [&](std::size_t k) {
            q[k] = o.q_max * static_cast<double>(k + 1) / static_cast<double>(o.q_points);
            a[k] = scaling_exponent(tp.D, q[k]);
            c[k] = multiscaling_constant(tp, mp.sigma_law.moment(q[k]), q[k]).value;
        });
        write_file(outs, file, csv({"q", "A", "C"}, {q, a, c}));
    } else if (o.curve == "rho") {
        if (o.t_max == 0) throw std::invalid_argument("need --t-max >= 1");
        std::vector<double> t(o.t_max), r(o.t_max);
        parallel_for(o.t_max, workers, [&](std::size_t k) {
            t[k] = static_cast<double>(k + 1);
            r[k] = rho_theoretical(tp, t[k]);
        });
        write_file(outs, file, csv({"t", "rho"}, {t, r}));
    } else if (o.curve == "density") {
        const double sd = small_time_stddev(tp);
        const double xm = o.x_max.value_or(6.0 * sd);
        if (!(xm > 0.0) || o.x_points < 2) throw std::invalid_argument("need --x-max > 0 and --x-points >= 2");
        std::vector<double> x;
        for (std::size_t k = 0; k < o.x_points; ++k) {
            x.push_back(-xm + 2.0 * xm * static_cast<double>(k) / static_cast<double>(o.x_points - 1));
        }
        x.insert(x.end(), o.x_extra.begin(), o.x_extra.end());
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
        std::vector<double> f(x.size()), tail(x.size());
        parallel_for(x.size(), workers, [&](std::size_t k) {
            f[k] = small_time_density(tp, mp.sigma_law, x[k]);
            tail[k] = x[k] >= 0.0 ? small_time_tail(tp, mp.sigma_law, x[k]) : 1.0 - small_time_tail(tp, mp.sigma_law, -x[k]);
        });
        write_file(outs, file, csv({"x", "f", "tail"}, {x, f, tail}));
    } else {
        const double sd = small_time_stddev(tp);
        if (o.z_points < 2) throw std::invalid_argument("need --z-points >= 2");
        std::vector<double> z(o.z_points), tail(o.z_points);
        parallel_for(o.z_points, workers, [&](std::size_t k) {
            z[k] = sd * std::pow(12.0, static_cast<double>(k) / static_cast<double>(o.z_points - 1));
            tail[k] = small_time_tail(tp, mp.sigma_law, z[k]);
        });
        write_file(outs, file, csv({"z", "tail"}, {z, tail}));
    }
    write_manifest(outs, sub, o.common, {});
    out << "wrote " << (outs.dir / file).string() << '\n';
}

// ---- analyze / fit / variability ----

struct PipelineFlags {
    std::string input;
    std::size_t window = 250;
    std::size_t corr_lag = 1;
    std::size_t max_separation = 400;
};

void add_pipeline(CLI::App* sub, PipelineFlags& f) {
    sub->add_option("--input", f.input, "Price CSV with header date,price");
    sub->add_option("--window", f.window, "Detrending window in trading days")->check(CLI::PositiveNumber);
    sub->add_option("--corr-lag", f.corr_lag, "Lag h of the volatility autocorrelation")->check(CLI::PositiveNumber);
    sub->add_option("--max-separation", f.max_separation, "Largest separation t")->check(CLI::PositiveNumber);
}

ObservableConfig observable_config(const PipelineFlags& f) {
    ObservableConfig cfg = ObservableConfig::standard();
    cfg.corr_lag = f.corr_lag;
    cfg.max_separation = f.max_separation;
    return cfg;
}

ReturnSeries load_returns(const PipelineFlags& f) {
    if (f.input.empty()) throw std::invalid_argument("--input is required");
    const PriceSeries ps = io::read_price_csv(f.input);
    ps.validate();
    if (ps.prices.size() <= f.window) {
        throw DataError("series of " + std::to_string(ps.prices.size()) + " prices is too short for window " +
                        std::to_string(f.window));
    }
    return detrend(ps, f.window);
}

std::string moments_csv(const ObservableSet& obs) {
    std::vector<double> q, a, c, r2;
    for (const ScalingFit& s : obs.a_hat) {
        q.push_back(s.q);
        a.push_back(s.a_hat);
        c.push_back(s.log_c_hat);
        r2.push_back(s.r_squared);
    }
    return csv({"q", "A_hat", "logC_hat", "r2"}, {q, a, c, r2});
}

struct AnalyzeOpts {
    Common common;
    PipelineFlags pipe;
    std::size_t tail_lag = 1;
};

void cmd_analyze(const CLI::App* sub, const AnalyzeOpts& o, std::ostream& out) {
    const ReturnSeries rs = load_returns(o.pipe);
    const ObservableSet obs = compute_observables(rs, observable_config(o.pipe));
    const EmpiricalDistribution dist = empirical_distribution(rs, o.tail_lag);
    Outputs outs = prepare_out(o.common);
    write_file(outs, "observables.json", io::dump(io::to_json(obs)));
    write_file(outs, "moments.csv", moments_csv(obs));
    write_file(outs, "rho.csv", csv({"t", "rho_hat"}, {obs.rho_t, obs.rho_hat}));
    write_file(outs, "tails.csv", csv({"z", "left_tail", "right_tail"}, {dist.z, dist.left_tail, dist.right_tail}));
    write_file(outs, "density.csv", csv({"x", "density"}, {dist.grid, dist.density}));
    write_manifest(outs, sub, o.common, {o.pipe.input});
    out << "analyzed " << rs.size() << " detrended observations; C1_hat=" << io::format_double(obs.c1_hat)
        << " C2_hat=" << io::format_double(obs.c2_hat) << '\n';
}

struct FitOpts {
    Common common;
    PipelineFlags pipe;
    std::string observables;
    double t_discount = 40.0;
    std::size_t n_corr = 400;
    bool unconstrained = false;
    std::size_t max_iterations = 2000;
    double tolerance = 1e-6;
    std::size_t polish_rounds = 6;
};

void cmd_fit(const CLI::App* sub, const FitOpts& o, std::ostream& out) {
    if (o.observables.empty() == o.pipe.input.empty()) throw std::invalid_argument("give exactly one of --observables, --input");
    ObservableSet obs;
    std::vector<std::string> inputs;
    if (!o.observables.empty()) {
        const std::string text = io::read_text(o.observables);
        obs = io::observables_from_json(nlohmann::json::parse(text));
        inputs.push_back(o.observables);
    } else {
        obs = compute_observables(load_returns(o.pipe), observable_config(o.pipe));
        inputs.push_back(o.pipe.input);
    }
    LossConfig cfg;
    cfg.t_discount = o.t_discount;
    cfg.n_corr = o.n_corr;
    FitOptions fo;
    fo.simplex.max_iterations = o.max_iterations;
    fo.simplex.tolerance = o.tolerance;
    fo.max_polish_rounds = o.polish_rounds;
    fo.enforce_moment_constraint = !o.unconstrained;
    fo.workers = resolve_workers(o.common.workers);
    const FitResult res = fit(obs, cfg, fo);

    Outputs outs = prepare_out(o.common);
    write_file(outs, "fit.json", io::dump(io::to_json(res)));
    write_manifest(outs, sub, o.common, inputs);
    out << "D=" << io::format_double(res.params.D) << " lambda=" << io::format_double(res.params.lambda)
        << " e_sigma=" << io::format_double(res.params.e_sigma) << " e_sigma_sq=" << io::format_double(res.params.e_sigma_sq)
        << " loss=" << io::format_double(res.loss_value) << '\n';
}

struct VariabilityOpts {
    Common common;
    PipelineFlags pipe;
    std::size_t window_years = 30;
    std::size_t step_years = 5;
};

void cmd_variability(const CLI::App* sub, const VariabilityOpts& o, std::ostream& out) {
    const ReturnSeries rs = load_returns(o.pipe);
    const auto periods = subperiod_analysis(rs, o.window_years, o.step_years, observable_config(o.pipe));
    std::vector<double> ms, mq, ma, mc, mr, rs_start, rt, rr;
    ordered_json all = ordered_json::array();
    for (const SubperiodObservables& p : periods) {
        for (const ScalingFit& f : p.observables.a_hat) {
            ms.push_back(static_cast<double>(p.start));
            mq.push_back(f.q);
            ma.push_back(f.a_hat);
            mc.push_back(f.log_c_hat);
            mr.push_back(f.r_squared);
        }
        for (std::size_t i = 0; i < p.observables.rho_t.size(); ++i) {
            rs_start.push_back(static_cast<double>(p.start));
            rt.push_back(p.observables.rho_t[i]);
            rr.push_back(p.observables.rho_hat[i]);
        }
        all.push_back({{"start", p.start}, {"length", p.length}, {"observables", io::to_json(p.observables)}});
    }
    Outputs outs = prepare_out(o.common);
    write_file(outs, "variability_moments.csv", csv({"start", "q", "A_hat", "logC_hat", "r2"}, {ms, mq, ma, mc, mr}));
    write_file(outs, "variability_rho.csv", csv({"start", "t", "rho_hat"}, {rs_start, rt, rr}));
    write_file(outs, "variability.json", io::dump(all));
    write_manifest(outs, sub, o.common, {o.pipe.input});
    out << "computed observables on " << periods.size() << " windows\n";
}

// ---- config handling ----

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

std::string scalar_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Appends `--key value` for every config entry not already on the command line.
// A manifest is accepted as a config: its "parameters" object is used.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) file = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) file = args[i].substr(9);
    }
    if (file.empty()) return args;
    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(io::read_text(file));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("config '" + file + "' is not valid JSON: " + e.what());
    }
    if (cfg.contains("parameters") && cfg["parameters"].is_object()) cfg = cfg["parameters"];
    if (!cfg.is_object()) throw DataError("config '" + file + "' must be a JSON object");
    const std::vector<std::string> original = args;
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        if (key == "config" || has_flag(original, flag)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back(flag);
        } else if (value.is_array()) {
            for (const auto& v : value) args.push_back(flag + "=" + scalar_text(v));
        } else if (!value.is_null()) {
            args.push_back(flag + "=" + scalar_text(value));
        }
    }
    return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shock-driven stochastic volatility: simulate, theory curves, analysis and calibration", "shockvol"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SHOCKVOL_VERSION);

    SimulateOpts sim;
    CLI::App* s = app.add_subcommand("simulate", "Simulate log-price paths X = W(I)");
    s->option_defaults()->always_capture_default();
    add_common(s, sim.common);
    add_law(s, sim.law);
    s->add_option("--steps", sim.steps, "Number of grid steps")->required()->check(CLI::PositiveNumber);
    s->add_option("--dt", sim.dt, "Grid step in days")->check(CLI::PositiveNumber);
    s->add_option("--paths", sim.paths, "Number of independent paths")->check(CLI::PositiveNumber);
    s->add_flag("--prices", sim.prices, "Also write prices.csv (date,price) from the single path");

    TheoryOpts th;
    CLI::App* t = app.add_subcommand("theory", "Theoretical curves as CSV grids");
    t->option_defaults()->always_capture_default();
    add_common(t, th.common);
    add_law(t, th.law);
    t->add_option("curve,--curve", th.curve, "aq | cq | rho | density | tail")
        ->required()
        ->check(CLI::IsMember({"aq", "cq", "rho", "density", "tail"}));
    t->add_option("--q-max", th.q_max, "Largest q for aq/cq");
    t->add_option("--q-points", th.q_points, "Number of q values (q = k q_max / n)");
    t->add_option("--t-max", th.t_max, "Largest separation in days for rho");
    t->add_option("--x-max", th.x_max, "Half-width of the density grid (default 6 standard deviations)");
    t->add_option("--x-points", th.x_points, "Points of the density grid");
    t->add_option("--x", th.x_extra, "Extra density abscissae");
    t->add_option("--z-points", th.z_points, "Points of the tail grid");

    AnalyzeOpts an;
    CLI::App* a = app.add_subcommand("analyze", "Empirical observables of a price series");
    a->option_defaults()->always_capture_default();
    add_common(a, an.common);
    add_pipeline(a, an.pipe);
    a->add_option("--tail-lag", an.tail_lag, "Lag of the density and tail estimates")->check(CLI::PositiveNumber);

    FitOpts fi;
    CLI::App* f = app.add_subcommand("fit", "Minimize the loss functional");
    f->option_defaults()->always_capture_default();
    add_common(f, fi.common);
    add_pipeline(f, fi.pipe);
    f->add_option("--observables", fi.observables, "observables.json written by analyze");
    f->add_option("--t-discount", fi.t_discount, "T of the correlation weights e^{-n/T}");
    f->add_option("--n-corr", fi.n_corr, "Number of correlation terms");
    f->add_flag("--unconstrained", fi.unconstrained, "Drop the constraint E sigma^2 >= (E sigma)^2");
    f->add_option("--max-iterations", fi.max_iterations, "Simplex iteration cap per run");
    f->add_option("--tolerance", fi.tolerance, "Simplex diameter tolerance");
    f->add_option("--polish-rounds", fi.polish_rounds, "Simplex restarts from the incumbent");

    VariabilityOpts va;
    CLI::App* v = app.add_subcommand("variability", "Observables on rolling subperiods");
    v->option_defaults()->always_capture_default();
    add_common(v, va.common);
    add_pipeline(v, va.pipe);
    v->add_option("--window-years", va.window_years, "Window length in years")->check(CLI::PositiveNumber);
    v->add_option("--step-years", va.step_years, "Window step in years")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> args = merge_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
        if (s->parsed()) cmd_simulate(s, sim, out);
        if (t->parsed()) cmd_theory(t, th, out);
        if (a->parsed()) cmd_analyze(a, an, out);
        if (f->parsed()) cmd_fit(f, fi, out);
        if (v->parsed()) cmd_variability(v, va, out);
        return kOk;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kData;
    } catch (const DegenerateDataError& e) {
        err << "degenerate data: " << e.what() << '\n';
        return kData;
    } catch (const nlohmann::json::exception& e) {
        err << "data error: malformed JSON: " << e.what() << '\n';
        return kData;
    } catch (const NumericFailure& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const FitFailure& e) {
        err << "fit failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace shockvol::cli

#include "rankint/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "rankint/approximation.hpp"
#include "rankint/curve.hpp"
#include "rankint/errors.hpp"
#include "rankint/monte_carlo.hpp"
#include "rankint/numerics.hpp"
#include "rankint/sweeps.hpp"
#include "rankint/version.hpp"
#include "rankint/wishart.hpp"

namespace rankint {

namespace {

constexpr double kBfTolerance = 0.01;
constexpr double kOstbcTolerance = 0.03;

struct Options {
    std::string config_path;
    std::uint64_t seed = 1;
    std::size_t samples = 1'000'000;
    std::string grid;
    double target = kDefaultTargetOutage;
    bool mc = false;
    std::string out_path;
    std::string format;
    int layers = 0;
    unsigned threads = 0;
    std::string symbols = "unit";
};

struct GridSpec {
    double start, stop, step;
    std::vector<double> points;
    std::string text;
};

GridSpec parse_grid(const std::string& text, const std::string& fallback) {
    const std::string& s = text.empty() ? fallback : text;
    GridSpec g{};
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
        throw ConfigError("bad --grid '" + s + "'; expected A:B:STEP");
    try {
        g.points = make_grid(g.start, g.stop, g.step);
    } catch (const InvalidArgument& ex) {
        throw ConfigError(std::string("bad --grid: ") + ex.what());
    }
    g.text = s;
    return g;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

class Command {
public:
    Command(std::string name, const Options& opt) : name_(std::move(name)), opt_(opt) {
        cfg_ = opt.config_path.empty() ? reference_scenario(OwnMode::Beamforming) : load_config(opt.config_path);
    }

    const ScenarioConfig& cfg() const { return cfg_; }
    const Options& opt() const { return opt_; }

    McOptions mc_options() const {
        McOptions m;
        m.n_samples = opt_.samples;
        m.seed = opt_.seed;
        m.threads = opt_.threads;
        m.symbols = opt_.symbols == "gaussian" ? SymbolKind::Gaussian : SymbolKind::UnitModulus;
        return m;
    }

    Curve curve(const std::string& grid_text) const {
        Curve c;
        c.meta["tool"] = "rankint";
        c.meta["version"] = kVersion;
        c.meta["command"] = name_;
        c.meta["config_hash"] = hex64(config_hash(cfg_));
        c.meta["own_mode"] = std::string(to_string(cfg_.own_mode));
        c.meta["seed"] = opt_.seed;
        c.meta["grid"] = grid_text;
        return c;
    }

    void add_mc_meta(Curve& c, const EmpiricalDistribution& d) const {
        c.meta["samples"] = d.size();
        c.meta["chunk_size"] = d.chunk_size;
        c.meta["rng"] = kRngId;
        c.meta["mc_method"] = d.method;
    }

    static void add_warnings(Curve& c, const std::vector<std::string>& w) {
        if (!w.empty()) c.meta["warning"] = w;
    }

private:
    std::string name_;
    Options opt_;
    ScenarioConfig cfg_;
};

class Sink {
public:
    Sink(const Options& opt, std::ostream& fallback) : out_(&fallback) {
        if (!opt.out_path.empty()) {
            file_.open(opt.out_path);
            if (!file_) throw ConfigError("cannot write '" + opt.out_path + "'");
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

void emit(const Curve& c, const Options& opt, const std::string& default_format, std::ostream& out) {
    const std::string fmt = opt.format.empty() ? default_format : opt.format;
    Sink sink(opt, out);
    if (fmt == "json") {
        write_json(sink.stream(), c);
    } else {
        write_csv(sink.stream(), c);
    }
}

int cmd_pdf(const Options& opt, std::ostream& out) {
    Command cmd("pdf", opt);
    const auto grid = parse_grid(opt.grid, "-10:25:0.5");
    const AnalyticModel model(cmd.cfg());
    Curve c = cmd.curve(grid.text);
    Command::add_warnings(c, model.warnings());
    c.columns = {"gamma_db", "pdf"};
    std::vector<double> mc;
    if (opt.mc) {
        const auto dist = simulate_sinr(cmd.cfg(), cmd.mc_options());
        cmd.add_mc_meta(c, dist);
        std::vector<double> edges;
        for (double g : grid.points) edges.push_back(g - 0.5 * grid.step);
        edges.push_back(grid.points.back() + 0.5 * grid.step);
        mc = histogram_db(dist, edges).density;
        c.columns.push_back("mc_pdf");
    }
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        std::vector<Cell> row{grid.points[i], model.pdf(db_to_linear(grid.points[i]))};
        if (opt.mc) row.emplace_back(mc[i]);
        c.rows.push_back(std::move(row));
    }
    emit(c, opt, "csv", out);
    return exit_code::ok;
}

int cmd_outage(const Options& opt, std::ostream& out) {
    Command cmd("outage", opt);
    const auto grid = parse_grid(opt.grid, "-5:20:0.5");
    const AnalyticModel model(cmd.cfg());
    Curve c = cmd.curve(grid.text);
    Command::add_warnings(c, model.warnings());
    c.columns = {"gamma0_db", "p_out"};
    std::optional<EmpiricalDistribution> dist;
    if (opt.mc) {
        dist = simulate_sinr(cmd.cfg(), cmd.mc_options());
        cmd.add_mc_meta(c, *dist);
        c.columns.insert(c.columns.end(), {"mc_p_out", "mc_std_error"});
    }
    for (double g : grid.points) {
        const double lin = db_to_linear(g);
        std::vector<Cell> row{g, model.outage(lin)};
        if (dist) {
            const auto e = empirical_outage(*dist, lin);
            row.emplace_back(e.p);
            row.emplace_back(e.std_error);
        }
        c.rows.push_back(std::move(row));
    }
    emit(c, opt, "csv", out);
    return exit_code::ok;
}

void gain_rows(Curve& c, const std::string& x_name, const std::vector<GainPoint>& points, int rank) {
    c.meta["rank"] = rank;
    c.columns = {x_name, "gamma0_rank1_db", "gamma0_rankr_db", "gain_db"};
    const bool counts = x_name == "n_interferers";
    for (const auto& p : points) {
        const Cell x = counts ? Cell(std::llround(p.x)) : Cell(p.x);
        c.rows.push_back({x, p.gamma0_rank1_db, p.gamma0_rankr_db, p.gain_db});
    }
}

void check_target(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("--target-outage must lie in (0, 1)");
}

int cmd_gain(const Options& opt, std::ostream& out) {
    Command cmd("gain", opt);
    check_target(opt.target);
    const int rank = designated_rank(cmd.cfg());
    auto g = rank_gain(cmd.cfg(), opt.target);
    g.x = cmd.cfg().interferers.front().inr_db;
    Curve c = cmd.curve("-");
    c.meta["target_outage"] = opt.target;
    gain_rows(c, "inr_db", {g}, rank);
    emit(c, opt, "csv", out);
    return exit_code::ok;
}

int cmd_sweep(const Options& opt, std::ostream& out, const std::string& kind) {
    Command cmd("sweep-" + kind, opt);
    check_target(opt.target);
    const int rank = designated_rank(cmd.cfg());
    std::vector<GainPoint> points;
    std::string x_name;
    GridSpec grid;
    if (kind == "snr") {
        grid = parse_grid(opt.grid, "5:25:5");
        points = sweep_snr(cmd.cfg(), grid.points, opt.target);
        x_name = "snr_db";
    } else if (kind == "inr") {
        grid = parse_grid(opt.grid, "0:15:1");
        points = sweep_inr(cmd.cfg(), grid.points, opt.target);
        x_name = "inr_db";
    } else {
        grid = parse_grid(opt.grid, "1:6:1");
        std::vector<int> counts;
        for (double v : grid.points) {
            if (v < 1.0 || std::abs(v - std::round(v)) > 1e-9)
                throw ConfigError("sweep-n grid must contain positive integers");
            counts.push_back(static_cast<int>(std::lround(v)));
        }
        const double total = cmd.cfg().interferers.front().inr_db;
        points = sweep_num_interferers(cmd.cfg(), counts, total, opt.target);
        x_name = "n_interferers";
    }
    Curve c = cmd.curve(grid.text);
    c.meta["target_outage"] = opt.target;
    if (kind == "n") c.meta["total_inr_db"] = cmd.cfg().interferers.front().inr_db;
    gain_rows(c, x_name, points, rank);
    emit(c, opt, "csv", out);
    return exit_code::ok;
}

int cmd_mc_validate(const Options& opt, std::ostream& out) {
    Command cmd("mc-validate", opt);
    const auto grid = parse_grid(opt.grid, "-5:20:0.5");
    const AnalyticModel model(cmd.cfg());
    const auto dist = simulate_sinr(cmd.cfg(), cmd.mc_options());
    const bool bf = cmd.cfg().own_mode == OwnMode::Beamforming;
    const double tol = bf ? kBfTolerance : kOstbcTolerance;

    Curve c = cmd.curve(grid.text);
    cmd.add_mc_meta(c, dist);
    Command::add_warnings(c, model.warnings());
    c.columns = {"gamma0_db", "p_out", "mc_p_out", "mc_std_error", "delta"};
    double max_delta = 0.0, max_at = grid.points.front(), max_se = 0.0;
    for (double g : grid.points) {
        const double lin = db_to_linear(g);
        const double a = model.outage(lin);
        const auto e = empirical_outage(dist, lin);
        const double d = e.p - a;
        if (std::abs(d) > max_delta) {
            max_delta = std::abs(d);
            max_at = g;
        }
        max_se = std::max(max_se, e.std_error);
        c.rows.push_back({g, a, e.p, e.std_error, d});
    }

    // PDF comparison over 0.5 dB bins; the analytic side is the bin average.
    const auto edges = make_grid(-10.0, 25.0, 0.5);
    const auto hist = histogram_db(dist, edges);
    double sup = 0.0, sup_at = 0.0, peak = 0.0, mode_db = 0.0;
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
        const double lo = db_to_linear(edges[b]);
        const double hi = db_to_linear(edges[b + 1]);
        const double avg = (model.outage(hi) - model.outage(lo)) / (hi - lo);
        const double centre = 0.5 * (edges[b] + edges[b + 1]);
        if (std::abs(avg - hist.density[b]) > sup) {
            sup = std::abs(avg - hist.density[b]);
            sup_at = centre;
        }
        if (avg > peak) {
            peak = avg;
            mode_db = centre;
        }
    }
    const bool insufficient = 3.0 * max_se > tol;
    const bool pass = max_delta <= tol;

    c.meta["tolerance"] = tol;
    c.meta["max_abs_outage_delta"] = max_delta;
    c.meta["max_delta_at_db"] = max_at;
    c.meta["pdf_sup_norm"] = sup;
    c.meta["pdf_sup_norm_at_db"] = sup_at;
    c.meta["analytic_mode_db"] = mode_db;
    c.meta["insufficient_samples"] = insufficient;
    c.meta["pass"] = pass;
    std::vector<std::string> notes;
    if (!bf)
        notes.push_back("ostbc closed form approximates each projection term as exponential; "
                        "PDF mismatch near the mode and the start of the right tail is expected");
    if (insufficient) notes.push_back("sample size too small: 3 standard errors exceed the tolerance");
    if (!notes.empty()) c.meta["note"] = notes;
    emit(c, opt, "json", out);
    return pass ? exit_code::ok : exit_code::validation;
}

int cmd_approx_validate(const Options& opt, std::ostream& out) {
    Command cmd("approx-validate", opt);
    const auto grid = parse_grid(opt.grid, "0:3:0.01");
    if (grid.start != 0.0) throw ConfigError("approx-validate grid must start at 0");
    int n_l = opt.layers;
    if (n_l == 0) {
        n_l = 1;
        for (const auto& it : cmd.cfg().interferers) {
            if (it.technique == Technique::SpatialMultiplexing) {
                n_l = it.layers;
                break;
            }
        }
    }
    if (n_l < 1 || n_l > cmd.cfg().n_t) throw ConfigError("--layers must lie in [1, n_t]");
    const int points = static_cast<int>(grid.points.size()) - 1;
    if (points < 2) throw ConfigError("approx-validate grid needs at least two bins");
    const auto r = compare_chain(cmd.cfg().n_r, cmd.cfg().n_t, n_l, cmd.mc_options(), grid.stop, points);

    Curve c = cmd.curve(grid.text);
    c.meta["samples"] = r.n_samples;
    c.meta["rng"] = kRngId;
    c.meta["n_r"] = r.n_r;
    c.meta["n_t"] = r.n_t;
    c.meta["n_l"] = r.n_l;
    c.meta["mean_exact"] = r.mean_exact;
    c.meta["mean_product"] = r.mean_product;
    c.meta["mean_exp"] = r.mean_exp;
    c.meta["ks_exact_product"] = r.ks_exact_product;
    c.meta["ks_exact_exp"] = r.ks_exact_exp;
    c.meta["ks_product_exp"] = r.ks_product_exp;
    c.meta["l1_exact_product"] = r.l1_exact_product;
    c.meta["l1_exact_exp"] = r.l1_exact_exp;
    c.meta["l1_product_exp"] = r.l1_product_exp;
    c.meta["factor_correlation"] = r.factor_correlation;
    c.columns = {"x", "exact", "meijer_equivalent", "exp_approx"};
    for (std::size_t i = 0; i < r.x.size(); ++i) c.rows.push_back({r.x[i], r.exact[i], r.product[i], r.exp_approx[i]});
    emit(c, opt, "csv", out);
    return exit_code::ok;
}

int cmd_dump_weights(const Options& opt, std::ostream& out) {
    Command cmd("dump-weights", opt);
    const auto table = compute_weights(cmd.cfg().n_r, cmd.cfg().n_t);
    Curve c = cmd.curve("-");
    c.meta["p"] = table.p;
    c.meta["q"] = table.q;
    c.meta["exact_sum_is_one"] = table.exact_sum_is_one;
    c.columns = {"k", "l", "psi", "psi_exact"};
    for (const auto& w : table.weights) c.rows.push_back({(long long)w.k, (long long)w.l, w.value, w.exact});
    emit(c, opt, "csv", out);
    return exit_code::ok;
}

int cmd_dump_xi(const Options& opt, std::ostream& out) {
    Command cmd("dump-xi", opt);
    const AnalyticModel model(cmd.cfg());
    Curve c = cmd.curve("-");
    Command::add_warnings(c, model.warnings());
    c.columns = {"i", "j", "rate", "multiplicity", "xi"};
    if (const auto& mix = model.mixture()) {
        c.meta["conditioning"] = mix->conditioning;
        for (std::size_t i = 0; i < mix->groups.size(); ++i) {
            for (std::size_t j = 0; j < mix->xi[i].size(); ++j)
                c.rows.push_back({(long long)(i + 1), (long long)(j + 1), mix->groups[i].rate,
                                  (long long)mix->groups[i].multiplicity, static_cast<double>(mix->xi[i][j])});
        }
    }
    emit(c, opt, "csv", out);
    return exit_code::ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-form and Monte Carlo SINR/outage analysis under multi-rank MIMO interference", "rankint"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config_path, "Scenario JSON (default: built-in reference, bf mode)");
    app.add_option("--seed", opt.seed, "Monte Carlo seed");
    app.add_option("--samples", opt.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
    app.add_option("--grid", opt.grid, "Grid A:B:STEP (dB, or counts for sweep-n)");
    app.add_option("--target-outage", opt.target, "Outage target for gains");
    app.add_flag("--mc", opt.mc, "Append Monte Carlo columns");
    app.add_option("--out", opt.out_path, "Output file (default: stdout)");
    app.add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--layers", opt.layers, "Interferer rank for approx-validate");
    app.add_option("--threads", opt.threads, "Worker threads (output does not depend on it)");
    app.add_option("--symbols", opt.symbols, "Interferer symbols: unit or gaussian")
        ->check(CLI::IsMember({"unit", "gaussian"}));

    std::map<std::string, std::function<int()>> commands{
        {"pdf", [&] { return cmd_pdf(opt, out); }},
        {"outage", [&] { return cmd_outage(opt, out); }},
        {"gain", [&] { return cmd_gain(opt, out); }},
        {"sweep-snr", [&] { return cmd_sweep(opt, out, "snr"); }},
        {"sweep-inr", [&] { return cmd_sweep(opt, out, "inr"); }},
        {"sweep-n", [&] { return cmd_sweep(opt, out, "n"); }},
        {"mc-validate", [&] { return cmd_mc_validate(opt, out); }},
        {"approx-validate", [&] { return cmd_approx_validate(opt, out); }},
        {"dump-weights", [&] { return cmd_dump_weights(opt, out); }},
        {"dump-xi", [&] { return cmd_dump_xi(opt, out); }},
    };
    const std::map<std::string, std::string> help{
        {"pdf", "SINR density curve"},
        {"outage", "Outage probability curve"},
        {"gain", "Threshold gain of the designated interferer's rank"},
        {"sweep-snr", "Rank gain over SNR"},
        {"sweep-inr", "Rank gain over the designated interferer's INR"},
        {"sweep-n", "Rank gain over the number of equal-power interferers"},
        {"mc-validate", "Closed form against Monte Carlo"},
        {"approx-validate", "Projection-term approximation chain"},
        {"dump-weights", "Eigenvalue density weights"},
        {"dump-xi", "Interference mixture coefficients"},
    };
    for (const auto& [name, text] : help) app.add_subcommand(name, text);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return exit_code::ok;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << '\n';
        return exit_code::config;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        return commands.at(name)();
    } catch (const ConfigError& ex) {
        err << "config error: " << ex.what() << '\n';
        return exit_code::config;
    } catch (const InvalidArgument& ex) {
        err << "invalid input: " << ex.what() << '\n';
        return exit_code::config;
    } catch (const UnsupportedDimension& ex) {
        err << "invalid input: " << ex.what() << '\n';
        return exit_code::config;
    } catch (const NumericError& ex) {
        err << "numeric error: " << ex.what() << '\n';
        return exit_code::numeric;
    } catch (const DegenerateRates& ex) {
        err << "numeric error: " << ex.what() << '\n';
        return exit_code::numeric;
    } catch (const std::exception& ex) {
        err << "internal error: " << ex.what() << '\n';
        return exit_code::internal;
    }
}

}  // namespace rankint

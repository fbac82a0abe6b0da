#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bwp/error.hpp"
#include "bwp/mcsim.hpp"
#include "bwp/model.hpp"
#include "bwp/numeric.hpp"
#include "bwp/optimize.hpp"
#include "records.hpp"

namespace bwp::cli {

namespace {

struct RunConfig {
    NetworkParams params;
    std::string mode = "adaptive-sir";
    int n = 1;
    double b = 1.0;
    double epsilon = 0.01;
    std::string method = "exact";
    unsigned long long seed = 1;
    int realizations = 10000;
    double window_radius = 0.0;
    std::string far_field = "mean";
    int max_slots = 100000;
    double d_max = INFINITY;
    int n_max = 16;
    int grid_points = 64;
    std::string output;
    std::string format = "csv";
    std::string estimate = "all";
    std::string target;
};

struct Output {
    std::vector<SweepRecord> rows;
    std::map<std::string, std::string> meta;
};

class Runner {
public:
    explicit Runner(const RunConfig& cfg) : cfg_(cfg) {}

    NetworkParams params() const { return cfg_.params; }
    Mode mode() const { return parse_mode(cfg_.mode); }
    PartitionScheme scheme() const { return {mode(), cfg_.n}; }
    MdMethod md_method() const { return parse_md_method(cfg_.method); }

    SweepRecord row(const NetworkParams& p, Mode mode, int n, std::string metric, double value,
                    std::string method) const {
        SweepRecord r;
        r.params = p;
        r.mode = mode;
        r.n_subbands = n;
        r.metric = std::move(metric);
        r.value = value;
        r.method = std::move(method);
        return r;
    }
    SweepRecord row(std::string metric, double value, std::string method) const {
        return row(cfg_.params, mode(), cfg_.n, std::move(metric), value, std::move(method));
    }

    Output moment() const {
        const auto m = model::moment(params(), scheme(), cfg_.b);
        auto r = row("moment", m.real(), "closed-form");
        r.b = cfg_.b;
        return {{r}, {}};
    }

    Output meta() const {
        const double v = md_method() == MdMethod::Exact
                             ? model::meta_distribution_exact(params(), scheme(), 1.0 - cfg_.epsilon)
                             : model::meta_distribution_asymptotic(params(), scheme(), cfg_.epsilon);
        auto r = row("meta_distribution", v, cfg_.method);
        r.epsilon = cfg_.epsilon;
        return {{r}, {}};
    }

    Output density() const {
        auto r = row("density_reliable", model::density_reliable(params(), scheme(), cfg_.epsilon, md_method()),
                     cfg_.method);
        r.epsilon = cfg_.epsilon;
        return {{r}, {}};
    }

    Output delay() const {
        return {{row("local_delay", model::local_delay(params(), scheme()).value(), "closed-form"),
                 row("normalized_local_delay", model::normalized_local_delay(params(), scheme()).value(),
                     "closed-form")},
                {}};
    }

    std::vector<SweepRecord> optimum_rows(const NetworkParams& p, Mode mode, int n, double eps,
                                          const DensityOptimum& opt) const {
        const std::string tag(to_string(opt.method));
        const std::string note = opt.diverges() ? "diverges" : "";
        std::vector<SweepRecord> out{
            row(p, mode, n, "n_star", opt.n_star ? double(*opt.n_star) : INFINITY, tag),
            row(p, mode, n, "lambda_star", opt.lambda_star.value_or(INFINITY), tag),
            row(p, mode, n, "s_max", opt.s_max.value_or(INFINITY), tag)};
        for (auto& r : out) {
            r.epsilon = eps;
            r.note = note;
        }
        return out;
    }

    DensityGrid grid() const {
        DensityGrid g;
        g.n_max = cfg_.n_max;
        g.points = cfg_.grid_points;
        return g;
    }

    Output optimize_density() const {
        const auto opt = md_method() == MdMethod::Exact
                             ? optimize::max_density_exact(params(), cfg_.epsilon, mode(), grid())
                             : optimize::max_density_asymptotic(params(), cfg_.epsilon, mode());
        return {optimum_rows(params(), mode(), cfg_.n, cfg_.epsilon, opt), {}};
    }

    std::vector<SweepRecord> delay_optimum_rows(const NetworkParams& p, Mode mode, int n) const {
        const auto opt = optimize::optimal_n_delay(p, mode);
        const std::string tag = "root-search";
        std::vector<SweepRecord> out{row(p, mode, n, "n_star", opt.n_star, tag),
                                     row(p, mode, n, "n_zero", opt.n_zero, tag),
                                     row(p, mode, n, "d_min", opt.d_min, tag)};
        if (opt.bracket) {
            out.push_back(row(p, mode, n, "bracket_lo", opt.bracket->first, tag));
            out.push_back(row(p, mode, n, "bracket_hi", opt.bracket->second, tag));
        }
        return out;
    }

    Output optimize_delay() const { return {delay_optimum_rows(params(), mode(), cfg_.n), {}}; }

    Output tradeoff() const {
        const auto res =
            optimize::delay_constrained_max_density(params(), cfg_.epsilon, cfg_.d_max, mode(), grid());
        auto rows = optimum_rows(params(), mode(), cfg_.n, cfg_.epsilon, res.optimum);
        auto d = row("local_delay", res.delay.value(), std::string(to_string(res.optimum.method)));
        d.epsilon = cfg_.epsilon;
        rows.push_back(d);
        for (auto& r : rows) r.d_max = cfg_.d_max;
        return {rows, {}};
    }

    Output simulate() const {
        SimConfig sim;
        sim.seed = cfg_.seed;
        sim.realizations = cfg_.realizations;
        sim.window_radius = cfg_.window_radius;
        sim.far_field_mean = cfg_.far_field == "mean";
        sim.max_slots = cfg_.max_slots;
        sim.validate();

        auto tagged = [&](std::string metric, const Estimate& e, std::string method) {
            auto r = row(std::move(metric), e.value, std::move(method));
            r.std_error = e.std_error;
            r.seed = cfg_.seed;
            r.realizations = cfg_.realizations;
            r.window_radius = e.window_radius;
            std::vector<std::string> notes{"far_field_bound=" + format_number(e.bias_bound)};
            if (e.divergent_model) notes.emplace_back("DIVERGENT_MODEL");
            if (e.censoring_unreliable) notes.emplace_back("CENSORING_UNRELIABLE");
            if (e.censored_fraction > 0.0) notes.push_back("censored=" + format_number(e.censored_fraction));
            for (std::size_t i = 0; i < notes.size(); ++i) r.note += (i ? ";" : "") + notes[i];
            return r;
        };

        const auto p = params();
        const auto s = scheme();
        const auto wanted = [&](const char* what) { return cfg_.estimate == "all" || cfg_.estimate == what; };
        Output out;
        if (wanted("moment")) {
            auto m = tagged("moment", mcsim::estimate_moment(p, s, cfg_.b, sim), "monte-carlo");
            m.b = cfg_.b;
            out.rows.push_back(m);
        }
        if (wanted("meta")) {
            auto md = tagged("meta_distribution", mcsim::estimate_meta(p, s, cfg_.epsilon, sim), "monte-carlo");
            md.epsilon = cfg_.epsilon;
            out.rows.push_back(md);
        }
        if (wanted("delay")) {
            for (auto method : {DelayMethod::ConditionalMean, DelayMethod::SlotCount}) {
                auto r = tagged("local_delay", mcsim::estimate_local_delay(p, s, sim, method),
                                "monte-carlo/" + std::string(to_string(method)));
                if (method == DelayMethod::SlotCount) r.max_slots = cfg_.max_slots;
                out.rows.push_back(r);
            }
        }
        out.meta["seed"] = std::to_string(cfg_.seed);
        const std::string far = sim.far_field_mean ? "far-field mean added" : "truncated";
        out.meta["window_rule"] = (cfg_.window_radius > 0.0 ? "fixed; " : "bias bound <= 1e-3; ") + far;
        return out;
    }

    Output reproduce() const {
        if (cfg_.target == "fig1") return fig1();
        if (cfg_.target == "fig2") return fig2();
        return table1();
    }

private:
    static NetworkParams fig1_params() { return {0.1, 4.0, 0.1, 1.0}; }
    static NetworkParams fig2_params() { return {1.0, 3.0, 0.25, 1.0}; }
    static constexpr double kFig1Eps = 0.01;

    Output fig1() const {
        constexpr int kLambdas = 40;
        constexpr int kMaxN = 10;
        const NetworkParams base = fig1_params();
        struct Cell {
            NetworkParams p;
            int n;
            double exact = 0.0;
        };
        std::vector<Cell> cells;
        for (int n = 1; n <= kMaxN; ++n)
            for (int i = 1; i <= kLambdas; ++i) {
                NetworkParams p = base;
                p.lambda = 0.005 * i;
                cells.push_back({p, n});
            }
        numeric::parallel_for(cells.size(), [&](std::size_t i) {
            auto& c = cells[i];
            c.exact = model::density_reliable(c.p, {Mode::AdaptiveSir, c.n}, kFig1Eps, MdMethod::Exact);
        });

        Output out;
        for (const auto& c : cells) {
            const PartitionScheme s{Mode::AdaptiveSir, c.n};
            const double asym = model::density_reliable(c.p, s, kFig1Eps, MdMethod::Asymptotic);
            for (auto [v, tag] : {std::pair{c.exact, "exact"}, std::pair{asym, "asymptotic"}}) {
                auto r = row(c.p, s.mode, c.n, "density_reliable", v, tag);
                r.epsilon = kFig1Eps;
                out.rows.push_back(r);
            }
        }
        const auto asym = optimize::max_density_asymptotic(base, kFig1Eps, Mode::AdaptiveSir);
        const auto exact = optimize::max_density_exact(base, kFig1Eps, Mode::AdaptiveSir);
        for (const auto* opt : {&exact, &asym})
            for (auto& r : optimum_rows(base, Mode::AdaptiveSir, 1, kFig1Eps, *opt)) out.rows.push_back(r);
        auto diff = [&](const char* metric, double e, double a) {
            auto r = row(base, Mode::AdaptiveSir, 1, metric, (e - a) / a, "exact-vs-asymptotic");
            r.epsilon = kFig1Eps;
            r.note = "relative difference (exact - asymptotic) / asymptotic";
            out.rows.push_back(r);
        };
        diff("lambda_star_discrepancy", *exact.lambda_star, *asym.lambda_star);
        diff("s_max_discrepancy", *exact.s_max, *asym.s_max);
        out.meta["target"] = "fig1";
        return out;
    }

    Output fig2() const {
        const NetworkParams p = fig2_params();
        Output out;
        for (Mode mode : {Mode::AdaptiveSir, Mode::AdaptiveTime})
            for (int n = 1; n <= 30; ++n)
                out.rows.push_back(row(p, mode, n, "normalized_local_delay",
                                       model::normalized_local_delay(p, {mode, n}).value(), "closed-form"));
        out.meta["target"] = "fig2";
        return out;
    }

    Output table1() const {
        Output out;
        for (Mode mode : {Mode::AdaptiveSir, Mode::AdaptiveTime}) {
            const auto opt = optimize::max_density_asymptotic(fig1_params(), kFig1Eps, mode);
            auto r = optimum_rows(fig1_params(), mode, 1, kFig1Eps, opt).front();
            r.note = std::string("objective=density") + (opt.diverges() ? ";diverges" : "");
            out.rows.push_back(r);
        }
        for (Mode mode : {Mode::AdaptiveSir, Mode::AdaptiveTime})
            for (auto& r : delay_optimum_rows(fig2_params(), mode, 1)) {
                r.note = "objective=delay";
                out.rows.push_back(r);
            }
        out.meta["target"] = "table1";
        return out;
    }

    RunConfig cfg_;
};

void add_options(CLI::App& app, RunConfig& cfg) {
    app.add_option("--lambda", cfg.params.lambda, "transmitter intensity")->capture_default_str();
    app.add_option("--alpha", cfg.params.alpha, "path-loss exponent (> 2)")->capture_default_str();
    app.add_option("--rate", cfg.params.rate, "target data rate R")->capture_default_str();
    app.add_option("--bandwidth", cfg.params.bandwidth, "total bandwidth W")->capture_default_str();
    app.add_option("--mode", cfg.mode, "partitioning approach")
        ->check(CLI::IsMember({"adaptive-sir", "adaptive-time"}))
        ->capture_default_str();
    app.add_option("--n", cfg.n, "number of sub-bands")->capture_default_str();
    app.add_option("--b", cfg.b, "moment order")->capture_default_str();
    app.add_option("--epsilon", cfg.epsilon, "target outage (reliability threshold 1 - epsilon)")
        ->capture_default_str();
    app.add_option("--method", cfg.method, "MD evaluation")
        ->check(CLI::IsMember({"exact", "asymptotic"}))
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "simulation seed")->capture_default_str();
    app.add_option("--realizations", cfg.realizations, "simulation realizations")->capture_default_str();
    app.add_option("--far-field", cfg.far_field, "interferers beyond the window: mean or truncate")
        ->check(CLI::IsMember({"mean", "truncate"}))
        ->capture_default_str();
    app.add_option("--window-radius", cfg.window_radius, "simulation disk radius (0: bias rule)")
        ->capture_default_str();
    app.add_option("--max-slots", cfg.max_slots, "slot cap per realization")->capture_default_str();
    app.add_option("--d-max", cfg.d_max, "local-delay cap for tradeoff");
    app.add_option("--n-max", cfg.n_max, "largest N searched by the density optimizers")->capture_default_str();
    app.add_option("--grid-points", cfg.grid_points, "lambda points per N in the density search")
        ->capture_default_str();
    app.add_option("--estimate", cfg.estimate, "quantities estimated by simulate")
        ->check(CLI::IsMember({"all", "moment", "meta", "delay"}))
        ->capture_default_str();
    app.add_option("--output", cfg.output, "output file (default: standard output)");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Reliability and delay of bandwidth partitioning in Poisson bipolar networks", "bwp"};
    app.set_config("--config", "", "file of `key = value` lines; flags given on the command line win");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    add_options(app, cfg);

    using Handler = Output (Runner::*)() const;
    const std::vector<std::tuple<const char*, const char*, Handler>> commands{
        {"moment", "b-th moment of the conditional success probability", &Runner::moment},
        {"meta", "SIR meta distribution P(P_s > 1 - epsilon)", &Runner::meta},
        {"density", "density of reliable transmissions", &Runner::density},
        {"delay", "local delay and normalized local delay", &Runner::delay},
        {"optimize-density", "maximize the density of reliable transmissions over (N, lambda)",
         &Runner::optimize_density},
        {"optimize-delay", "sub-band count minimizing the local delay", &Runner::optimize_delay},
        {"tradeoff", "density maximum subject to local delay <= d-max", &Runner::tradeoff},
        {"simulate", "Monte Carlo estimates of moment, MD and local delay", &Runner::simulate},
        {"reproduce", "data behind fig1, fig2 or table1", &Runner::reproduce}};
    std::map<const CLI::App*, Handler> handlers;
    for (const auto& [name, help, handler] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        handlers[sub] = handler;
        if (std::string(name) == "reproduce")
            sub->add_option("target", cfg.target, "fig1, fig2 or table1")
                ->required()
                ->check(CLI::IsMember({"fig1", "fig2", "table1"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return kExitUsage;
    }

    try {
        cfg.params.validate();
        PartitionScheme{parse_mode(cfg.mode), cfg.n}.validate();
        if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");

        std::ofstream file;
        if (!cfg.output.empty()) {
            file.open(cfg.output, std::ios::binary);
            if (!file) {
                err << "error: cannot open '" << cfg.output << "' for writing\n";
                return kExitUsage;
            }
        }

        const Runner runner(cfg);
        Output res = (runner.*handlers.at(app.get_subcommands().front()))();
        res.meta["command"] = app.get_subcommands().front()->get_name();

        std::ostringstream buf;
        if (cfg.format == "json")
            write_json(buf, res.meta, res.rows);
        else
            write_csv(buf, res.rows);
        (cfg.output.empty() ? out : file) << buf.str();
        return kExitOk;
    } catch (const DomainError& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return kExitUsage;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << one_line(e.what()) << '\n';
        return kExitInfeasible;
    } catch (const ConvergenceError& e) {
        err << "numerical failure: " << one_line(e.what()) << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "failure: " << one_line(e.what()) << '\n';
        return kExitNumerical;
    }
}

}  // namespace bwp::cli

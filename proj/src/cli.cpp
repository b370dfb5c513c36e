#include "singscat/cli.hpp"
#include "singscat/convergence.hpp"
#include "singscat/error.hpp"
#include "singscat/json_out.hpp"
#include "singscat/junction.hpp"
#include "singscat/mollifier.hpp"
#include "singscat/radial.hpp"
#include "singscat/scatter.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace singscat {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RunConfig {
    double resonance_tol = kDefaultResonanceTol;
    double int_tol = kDefaultIntegratorTol;
    std::string format;  // empty: command default
    std::string out_path;
    bool iv_default = false;
    std::optional<int> iv_a;
    std::optional<double> iv_b;
};

struct PotentialArgs {
    double m = 0.0;
    double c = 0.0;
};

struct EnergyArgs {
    std::optional<double> k;
    std::optional<double> kmin, kmax;
    std::optional<int> ksteps;
    std::string kscale = "lin";
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::UndefinedRegime:
        case ErrorCode::MissingChoice:
        case ErrorCode::NoScatteringState:
            return kExitUndefined;
        case ErrorCode::NoConvergence:
        case ErrorCode::Overflow:
        case ErrorCode::InsufficientData:
        case ErrorCode::BracketError:
            return kExitNumerical;
        case ErrorCode::InvalidArgument:
        case ErrorCode::InvalidExponent:
        case ErrorCode::NonPositiveEnergy:
        case ErrorCode::ChainOrder:
            return kExitUsage;
    }
    return kExitNumerical;
}

json mat_json(const Mat2& m) { return json::array({json::array({m.m11, m.m12}), json::array({m.m21, m.m22})}); }

std::optional<IvChoice> resolve_choice(const RunConfig& cfg) {
    if (!cfg.iv_a && !cfg.iv_b && !cfg.iv_default) return std::nullopt;
    if ((!cfg.iv_a || !cfg.iv_b) && !cfg.iv_default) {
        throw UsageError("--iv-a and --iv-b must be given together (or add --iv-default)");
    }
    return IvChoice(cfg.iv_a.value_or(1), cfg.iv_b.value_or(0.0));
}

bool is_sweep(const EnergyArgs& e) { return e.kmin || e.kmax || e.ksteps; }

std::vector<double> energy_grid(const EnergyArgs& e) {
    if (e.k && is_sweep(e)) throw UsageError("--k cannot be combined with --kmin/--kmax/--ksteps");
    if (e.k) return {*e.k};
    if (!e.kmin || !e.kmax || !e.ksteps) throw UsageError("give --k, or all of --kmin --kmax --ksteps");
    const double lo = *e.kmin, hi = *e.kmax;
    const int n = *e.ksteps;
    if (n < 1 || !(lo <= hi)) throw UsageError("k sweep needs kmin <= kmax and ksteps >= 1");
    if (e.kscale == "log" && !(lo > 0.0)) throw UsageError("log k sweep needs kmin > 0");
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double f = (n == 1) ? 0.0 : static_cast<double>(i) / (n - 1);
        grid[static_cast<std::size_t>(i)] =
            (e.kscale == "log") ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo);
    }
    grid.back() = hi;
    return grid;
}

void add_energy_options(CLI::App* sub, EnergyArgs& e) {
    sub->add_option("--k", e.k, "spectral parameter (single point)");
    sub->add_option("--kmin", e.kmin, "sweep start");
    sub->add_option("--kmax", e.kmax, "sweep end");
    sub->add_option("--ksteps", e.ksteps, "number of sweep points");
    sub->add_option("--kscale", e.kscale, "sweep spacing")->check(CLI::IsMember({"lin", "log"}));
}

void add_potential_options(CLI::App* sub, PotentialArgs& p) {
    sub->add_option("--m", p.m, "exponent of the delta power (m > 0)")->required();
    sub->add_option("--c", p.c, "coupling constant")->required();
}

std::string csv_line(std::initializer_list<std::string> cells) {
    std::string line;
    for (const auto& c : cells) {
        if (!line.empty()) line += ',';
        line += c;
    }
    return line + '\n';
}

std::string fmt(double v) { return format_double(v); }

json row_error_doc(std::size_t row, double k, ErrorCode code) {
    return {{"row", row}, {"k", k}, {"error", std::string(error_tag(code))}};
}

// ---- commands ---------------------------------------------------------------

void cmd_junction(const PotentialArgs& pa, const RunConfig& cfg, std::ostream& sink) {
    const PotentialSpec p{pa.m, pa.c};
    const Regime r = classify_regime(p, cfg.resonance_tol);
    const Mat2 J = junction_matrix(p, resolve_choice(cfg), cfg.resonance_tol);
    json doc;
    doc["regime"] = std::string(regime_tag(r));
    doc["n"] = nullptr;
    if (const auto* res = std::get_if<regime::ResonantSquare>(&r)) doc["n"] = res->n;
    doc["junction"] = mat_json(J);
    doc["det"] = J.det();
    sink << canonical_dump(doc) << '\n';
}

json scatter_json(const ScatteringResult& s) {
    return {{"k", s.k},
            {"re_r", s.r.real()},
            {"im_r", s.r.imag()},
            {"re_t", s.t.real()},
            {"im_t", s.t.imag()},
            {"R", s.reflect_prob},
            {"T", s.transmit_prob},
            {"flux_residual", s.flux_residual}};
}

std::string scatter_csv_row(double k, const std::optional<ScatteringResult>& s) {
    if (!s) return csv_line({fmt(k), "nan", "nan", "nan", "nan", "nan", "nan", "nan"});
    return csv_line({fmt(s->k), fmt(s->r.real()), fmt(s->r.imag()), fmt(s->t.real()), fmt(s->t.imag()),
                     fmt(s->reflect_prob), fmt(s->transmit_prob), fmt(s->flux_residual)});
}

constexpr const char* kScatterHeader = "k,re_r,im_r,re_t,im_t,R,T,flux_residual\n";
constexpr const char* kRadialHeader = "k,a,delta0,sigma0\n";
constexpr const char* kMollifyHeader = "eps,M11,M12,M21,M22,det_err,deviation,flag\n";

void cmd_scatter(const PotentialArgs& pa, const EnergyArgs& ea, const RunConfig& cfg,
                 std::ostream& sink, std::ostream& err) {
    const Mat2 J = junction_matrix({pa.m, pa.c}, resolve_choice(cfg), cfg.resonance_tol);
    const auto grid = energy_grid(ea);

    if (!is_sweep(ea)) {
        const auto s = scattering_amplitudes(J, grid.front());
        if (cfg.format == "csv") {
            sink << kScatterHeader << scatter_csv_row(s.k, s);
        } else {
            sink << canonical_dump(scatter_json(s)) << '\n';
        }
        return;
    }

    const auto rows = transmission_curve(J, grid);
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& row : rows) {
            if (row.result) {
                arr.push_back(scatter_json(*row.result));
            } else {
                arr.push_back({{"k", row.k}, {"error", std::string(error_tag(*row.error))}});
            }
        }
        sink << canonical_dump(arr) << '\n';
    } else {
        sink << kScatterHeader;
        for (const auto& row : rows) sink << scatter_csv_row(row.k, row.result);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].error) err << canonical_dump(row_error_doc(i, rows[i].k, *rows[i].error)) << '\n';
    }
}

void cmd_bound(const PotentialArgs& pa, const RunConfig& cfg, std::ostream& sink) {
    const Mat2 J = junction_matrix({pa.m, pa.c}, resolve_choice(cfg), cfg.resonance_tol);
    const BoundSpectrum spec = bound_states(J);
    json doc;
    if (std::holds_alternative<spectrum::Empty>(spec)) {
        doc["spectrum"] = "empty";
    } else if (std::holds_alternative<spectrum::ContinuumDegenerate>(spec)) {
        doc["spectrum"] = "continuum_degenerate";
    } else {
        json levels = json::array();
        for (const auto& l : std::get<spectrum::Discrete>(spec).levels) {
            levels.push_back({{"kappa", l.kappa}, {"energy", l.energy}});
        }
        doc["spectrum"] = levels;
    }
    sink << canonical_dump(doc) << '\n';
}

void cmd_radial(const PotentialArgs& pa, double a, const EnergyArgs& ea, const RunConfig& cfg,
                std::ostream& sink, std::ostream& err) {
    const ShellPotentialSpec shell{{pa.m, pa.c}, a};
    shell.validate();
    const auto choice = resolve_choice(cfg);
    junction_matrix(shell.base, choice, cfg.resonance_tol);  // surface regime errors up front
    const auto grid = energy_grid(ea);

    auto to_json = [](const RadialResult& r) {
        return json{{"k", r.k}, {"a", r.a}, {"delta0", r.delta0}, {"sigma0", r.sigma0}};
    };

    if (!is_sweep(ea)) {
        const auto r = s_wave_solve(shell, grid.front(), choice, cfg.resonance_tol);
        if (cfg.format == "csv") {
            sink << kRadialHeader << csv_line({fmt(r.k), fmt(r.a), fmt(r.delta0), fmt(r.sigma0)});
        } else {
            sink << canonical_dump(to_json(r)) << '\n';
        }
        return;
    }

    struct Row {
        double k = 0.0;
        std::optional<RadialResult> res;
        std::optional<ErrorCode> error;
    };
    std::vector<Row> rows;
    rows.reserve(grid.size());
    for (double k : grid) {
        Row row{k, std::nullopt, std::nullopt};
        try {
            row.res = s_wave_solve(shell, k, choice, cfg.resonance_tol);
        } catch (const Error& e) {
            row.error = e.code();
        }
        rows.push_back(row);
    }
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& row : rows) {
            arr.push_back(row.res ? to_json(*row.res)
                                  : json{{"k", row.k}, {"a", a}, {"error", std::string(error_tag(*row.error))}});
        }
        sink << canonical_dump(arr) << '\n';
    } else {
        sink << kRadialHeader;
        for (const auto& row : rows) {
            sink << (row.res ? csv_line({fmt(row.k), fmt(a), fmt(row.res->delta0), fmt(row.res->sigma0)})
                             : csv_line({fmt(row.k), fmt(a), "nan", "nan"}));
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].error) err << canonical_dump(row_error_doc(i, rows[i].k, *rows[i].error)) << '\n';
    }
}

struct MollifyArgs {
    std::string shape;
    std::vector<double> eps;
    double k = 1.0;
    std::string reference = "paper";
};

bool cmd_mollify(const PotentialArgs& pa, const MollifyArgs& ma, const RunConfig& cfg, std::ostream& sink,
                 std::ostream& err) {
    if (cfg.format == "json") throw UsageError("mollify writes CSV only");
    verify_shapes();
    const PotentialSpec p{pa.m, pa.c};
    const MollifierShape shape = parse_shape(ma.shape);

    std::optional<Mat2> reference;
    if (ma.reference == "paper") {
        try {
            reference = junction_matrix(p, resolve_choice(cfg), cfg.resonance_tol);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::UndefinedRegime && e.code() != ErrorCode::MissingChoice) throw;
        }
    }

    const auto rows = convergence_sweep(p, shape, ma.eps, ma.k, reference, cfg.int_tol);

    std::size_t ok_rows = 0;
    for (const auto& r : rows) ok_rows += r.ok();

    std::optional<Certification> cert;
    if (ok_rows >= 3) {
        try {
            cert = certify_sweep(rows);
        } catch (const Error&) {
            // metric had fewer than three positive values: no verdict
        }
    }
    const bool divergent = cert && cert->verdict == Verdict::NonConvergent;

    sink << kMollifyHeader;
    for (const auto& r : rows) {
        if (!r.ok()) {
            sink << csv_line({fmt(r.eps), "nan", "nan", "nan", "nan", "nan", "nan", std::string(error_tag(*r.error))});
            continue;
        }
        const Mat2& m = *r.effective;
        sink << csv_line({fmt(r.eps), fmt(m.m11), fmt(m.m12), fmt(m.m21), fmt(m.m22), fmt(r.det_err),
                          fmt(r.deviation), divergent ? "non_convergent" : "ok"});
    }

    if (cert) {
        json summary = {{"slope", cert->fit.slope},
                        {"r2", cert->fit.r2},
                        {"points", cert->fit.points},
                        {"decade_ratio", cert->decade_ratio},
                        {"metric", reference ? "deviation" : "identity_distance"},
                        {"verdict", std::string(verdict_tag(cert->verdict))}};
        err << canonical_dump(summary) << '\n';
    }
    return ok_rows > 0;
}

void cmd_resonance(const std::string& shape_name, int n, std::optional<double> c_lo,
                   std::optional<double> c_hi, std::ostream& sink) {
    verify_shapes();
    if (c_lo.has_value() != c_hi.has_value()) throw UsageError("--c-lo and --c-hi must be given together");
    std::optional<CouplingBracket> bracket;
    if (c_lo) bracket = CouplingBracket{*c_lo, *c_hi};
    const auto res = resonant_search(parse_shape(shape_name), n, bracket);
    sink << canonical_dump(json{{"n", res.n}, {"c_n", res.c}, {"parity", res.parity}}) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and mollified scattering through c * delta^m potentials", "singscat"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

    RunConfig cfg;
    app.add_option("--out", cfg.out_path, "write results to this file instead of standard output");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--resonance-tol", cfg.resonance_tol, "window for matching c = -(n pi)^2")
        ->check(CLI::PositiveNumber);
    app.add_option("--int-tol", cfg.int_tol, "relative tolerance of the cell integrator")
        ->check(CLI::PositiveNumber);
    app.add_flag("--iv-default", cfg.iv_default, "use a=+1, b=0 for unspecified case-IV constants");
    app.add_option("--iv-a", cfg.iv_a, "case-IV constant a (+1 or -1)");
    app.add_option("--iv-b", cfg.iv_b, "case-IV constant b");

    PotentialArgs pot;
    EnergyArgs energy;
    double shell_a = 0.0;
    MollifyArgs moll;
    std::string res_shape;
    int res_n = 1;
    std::optional<double> res_lo, res_hi;

    auto* junction = app.add_subcommand("junction", "regime and junction matrix of (m, c)");
    add_potential_options(junction, pot);

    auto* scatter = app.add_subcommand("scatter", "reflection and transmission amplitudes");
    add_potential_options(scatter, pot);
    add_energy_options(scatter, energy);

    auto* bound = app.add_subcommand("bound", "bound states of the junction");
    add_potential_options(bound, pot);

    auto* radial = app.add_subcommand("radial", "s-wave phase shift of a delta^m shell");
    add_potential_options(radial, pot);
    radial->add_option("--a", shell_a, "shell radius")->required();
    add_energy_options(radial, energy);

    auto* mollify = app.add_subcommand("mollify", "effective junction matrices of mollified potentials");
    add_potential_options(mollify, pot);
    mollify->add_option("--shape", moll.shape, "mollifier shape")
        ->required()
        ->check(CLI::IsMember({"tophat", "triangle", "cosine", "gauss"}));
    mollify->add_option("--eps", moll.eps, "comma separated, strictly decreasing widths")
        ->required()
        ->delimiter(',');
    mollify->add_option("--k", moll.k, "spectral parameter")->required();
    mollify->add_option("--reference", moll.reference, "compare against the exact junction or nothing")
        ->check(CLI::IsMember({"paper", "none"}));

    auto* resonance = app.add_subcommand("resonance", "zero-energy resonant coupling of a mollifier");
    resonance->add_option("--shape", res_shape, "mollifier shape")
        ->required()
        ->check(CLI::IsMember({"tophat", "triangle", "cosine", "gauss"}));
    resonance->add_option("--n", res_n, "resonance index")->required()->check(CLI::NonNegativeNumber);
    resonance->add_option("--c-lo", res_lo, "most negative coupling of the search bracket");
    resonance->add_option("--c-hi", res_hi, "least negative coupling of the search bracket");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ostringstream sink;
    int code = kExitOk;
    try {
        if (junction->parsed()) {
            cmd_junction(pot, cfg, sink);
        } else if (scatter->parsed()) {
            cmd_scatter(pot, energy, cfg, sink, err);
        } else if (bound->parsed()) {
            cmd_bound(pot, cfg, sink);
        } else if (radial->parsed()) {
            cmd_radial(pot, shell_a, energy, cfg, sink, err);
        } else if (mollify->parsed()) {
            if (!cmd_mollify(pot, moll, cfg, sink, err)) code = kExitNumerical;
        } else if (resonance->parsed()) {
            cmd_resonance(res_shape, res_n, res_lo, res_hi, sink);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        sink.str("");
        sink << canonical_dump(json{{"error", std::string(error_tag(e.code()))}, {"message", e.what()}}) << '\n';
        code = exit_code_for(e.code());
    }

    if (cfg.out_path.empty()) {
        out << sink.str();
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << cfg.out_path << '\n';
            return kExitUsage;
        }
        file << sink.str();
    }
    return code;
}

}  // namespace singscat

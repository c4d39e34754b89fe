#include "skewortho/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "skewortho/asymptotics.hpp"
#include "skewortho/checks.hpp"
#include "skewortho/format.hpp"
#include "skewortho/kernel.hpp"
#include "skewortho/parallel.hpp"
#include "skewortho/sampler.hpp"

namespace skewortho {
namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

struct Options {
    std::string weight = "jacobi";
    double a = 0.0;
    double b = 0.0;
    int beta = 1;
    std::string convention = "auto";
    int order = -1;
    int N = 4;
    std::optional<double> x_min, x_max, x, y;
    int points = 101;
    std::string method = "sum";
    std::string format = "csv";
    std::uint64_t seed = 1;
    std::string out;
    std::string sidecar;
    std::string samples;
    long long steps = 100000;
    long long burn_in = -1;
    int bins = 20;
    CheckTolerances tol;
};

// Input problems detected after parsing; reported as usage errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

WeightSpec weight_of(const Options& o) {
    WeightSpec w{parse_weight_kind(o.weight), o.a, o.b};
    if (w.kind != WeightKind::Jacobi) w.b = 0.0;
    if (w.kind == WeightKind::Gaussian) w.a = 0.0;
    w.validate();
    return w;
}

Convention convention_of(const Options& o) {
    if (o.convention == "full") return Convention::FullWeight;
    if (o.convention == "sqrt") return Convention::SqrtWeight;
    return o.beta == 4 ? Convention::SqrtWeight : Convention::FullWeight;
}

std::string convention_name(Convention c) { return c == Convention::SqrtWeight ? "sqrt" : "full"; }

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

nlohmann::ordered_json metadata(const std::string& command, const Options& o, const WeightSpec& w) {
    nlohmann::ordered_json m;
    m["command"] = command;
    m["weight"] = w.name();
    m["a"] = w.a;
    m["b"] = w.b;
    m["beta"] = o.beta;
    m["convention"] = convention_name(convention_of(o));
    m["N"] = o.N;
    m["method"] = o.method;
    m["tool_version"] = SKEWORTHO_VERSION;
    return m;
}

std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

std::string render(const Table& t, const nlohmann::ordered_json& meta, const std::string& format) {
    std::string s;
    if (format == "csv") {
        for (std::size_t c = 0; c < t.columns.size(); ++c) s += (c ? "," : "") + t.columns[c];
        s += '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) s += (c ? "," : "") + format_double(row[c]);
            s += '\n';
        }
        return s;
    }
    // Numbers are written by hand so they carry 17 significant digits.
    s += "{\n  \"metadata\": " + meta.dump() + ",\n  \"columns\": " + nlohmann::json(t.columns).dump() + ",\n  \"data\": {";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        s += (c ? ",\n    " : "\n    ") + nlohmann::json(t.columns[c]).dump() + ": [";
        for (std::size_t r = 0; r < t.rows.size(); ++r) s += (r ? "," : "") + json_number(t.rows[r][c]);
        s += "]";
    }
    s += "\n  }\n}\n";
    return s;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError("cannot open " + o.out + " for writing");
    f << text;
}

// Default grid per command: the oscillatory bulk of the 2N-function kernel,
// pulled in slightly from hard edges.
std::pair<double, double> default_range(const Options& o, const WeightSpec& w, int scale_order) {
    const double n = std::max(1, scale_order);
    switch (w.kind) {
    case WeightKind::Jacobi: return {-0.95, 0.95};
    case WeightKind::Laguerre: {
        const double hi = (o.beta == 4 && convention_of(o) == Convention::SqrtWeight ? 4.0 : 2.0) * n;
        return {0.02 * hi, 0.98 * hi};
    }
    default: {
        const double r = 0.98 * std::sqrt(2.0 * n);
        return {-r, r};
    }
    }
}

std::vector<double> grid(const Options& o, const WeightSpec& w, int scale_order) {
    if (o.x) return {*o.x};
    auto [lo, hi] = default_range(o, w, scale_order);
    if (o.x_min) lo = *o.x_min;
    if (o.x_max) hi = *o.x_max;
    if (!(hi >= lo)) throw UsageError("--x-max must not be below --x-min");
    if (o.points < 1) throw UsageError("--points must be positive");
    std::vector<double> xs(o.points);
    for (int i = 0; i < o.points; ++i) xs[i] = o.points == 1 ? lo : lo + (hi - lo) * i / (o.points - 1);
    return xs;
}

Table fill(const std::vector<std::string>& columns, const std::vector<double>& xs,
           const std::function<std::vector<double>(double)>& row_of) {
    Table t{columns, std::vector<std::vector<double>>(xs.size())};
    parallel_for(xs.size(), [&](std::size_t i) { t.rows[i] = row_of(xs[i]); });
    return t;
}

KernelMethod method_of(const Options& o) { return o.method == "gcd" ? KernelMethod::Gcd : KernelMethod::Sum; }

std::shared_ptr<const SopFamily> kernel_family(const Options& o, const WeightSpec& w) {
    if (o.N < 1) throw OrderRangeError("--N must be at least 1");
    return std::make_shared<SopFamily>(o.beta, w, convention_of(o), 2 * o.N + 4);
}

int cmd_eval(const Options& o, std::ostream& out) {
    const WeightSpec w = weight_of(o);
    if (o.order < 0) throw UsageError("eval needs --order >= 0");
    const SopFamily family(o.beta, w, convention_of(o), std::max(o.order, 1) + 1);
    const Table t = fill({"x", "phi", "psi"}, grid(o, w, o.order), [&](double x) {
        std::vector<double> phi(o.order + 1), psi(o.order + 1);
        family.eval_all(x, o.order + 1, phi.data(), psi.data());
        return std::vector<double>{x, phi[o.order], psi[o.order]};
    });
    auto meta = metadata("eval", o, w);
    meta["order"] = o.order;
    emit(render(t, meta, o.format), o, out);
    return kExitOk;
}

int cmd_kernel(const Options& o, std::ostream& out) {
    const WeightSpec w = weight_of(o);
    if (!o.y) throw UsageError("kernel needs --y");
    const KernelEvaluator ev(kernel_family(o, w), o.N, method_of(o));
    const double y = *o.y;
    const Table t = fill({"x", "y", "S", "D", "I"}, grid(o, w, 2 * o.N), [&](double x) {
        return std::vector<double>{x, y, ev.s_kernel(x, y), ev.d_kernel(x, y), ev.i_kernel(x, y)};
    });
    emit(render(t, metadata("kernel", o, w), o.format), o, out);
    return kExitOk;
}

int cmd_density(const Options& o, std::ostream& out) {
    const WeightSpec w = weight_of(o);
    const KernelEvaluator ev(kernel_family(o, w), o.N, method_of(o));
    const AsymptoticContext ctx{w, o.beta, o.N, 0.15, convention_of(o)};
    const Table t = fill({"x", "S_exact", "S_asymptotic"}, grid(o, w, 2 * o.N), [&](double x) {
        double predicted = nan_value;
        try {
            predicted = predicted_density(ctx, x);
        } catch (const ValidityWindowError&) {
        }
        return std::vector<double>{x, ev.density(x), predicted};
    });
    emit(render(t, metadata("density", o, w), o.format), o, out);
    return kExitOk;
}

int report_checks(const std::vector<CheckResult>& checks, const nlohmann::ordered_json& meta, const Options& o,
                  std::ostream& out, std::ostream& err) {
    std::string text;
    if (o.format == "csv") {
        for (const auto& c : checks)
            text += std::string(c.passed ? "PASS " : "FAIL ") + c.name + " value=" + format_double(c.value) +
                    " tol=" + format_double(c.tolerance) + (c.detail.empty() ? "" : " " + c.detail) + '\n';
    } else {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& c : checks)
            arr.push_back({{"name", c.name}, {"passed", c.passed}, {"value", format_double(c.value)},
                           {"tolerance", format_double(c.tolerance)}, {"detail", c.detail}});
        nlohmann::ordered_json doc{{"metadata", meta}, {"checks", arr}};
        text = doc.dump(2) + '\n';
    }
    emit(text, o, out);
    int status = kExitOk;
    for (const auto& c : checks)
        if (!c.passed) {
            err << "check failed: " << c.name << '\n';
            status = kExitCheckFailed;
        }
    return status;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    const WeightSpec w = weight_of(o);
    return report_checks(verify_suite(o.beta, w, convention_of(o), o.N, o.tol), metadata("verify", o, w), o, out, err);
}

EnsembleSpec ensemble_of(const Options& o) {
    EnsembleSpec spec{o.beta, weight_of(o), 2 * o.N};
    spec.validate();
    return spec;
}

SampleSet run_sampler(const Options& o, const EnsembleSpec& spec) {
    const long long burn = o.burn_in >= 0 ? o.burn_in : o.steps / 10;
    return mcmc_sample(spec, o.steps, burn, o.seed);
}

int cmd_sample(const Options& o, std::ostream& out) {
    const EnsembleSpec spec = ensemble_of(o);
    const SampleSet s = run_sampler(o, spec);
    if (o.format == "json") {
        std::string text = "{\n  \"metadata\": " + metadata("sample", o, spec.weight).dump() + ",\n  \"draws\": [";
        for (std::size_t r = 0; r < s.draws.size(); ++r) {
            text += r ? ",\n    [" : "\n    [";
            for (std::size_t c = 0; c < s.draws[r].size(); ++c) text += (c ? "," : "") + format_double(s.draws[r][c]);
            text += "]";
        }
        text += "\n  ]\n}\n";
        emit(text, o, out);
    } else {
        emit(samples_csv(s), o, out);
    }
    const std::string sidecar = !o.sidecar.empty() ? o.sidecar : (o.out.empty() ? "" : o.out + ".meta");
    if (!sidecar.empty()) write_sidecar(sidecar, s);
    return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
    const EnsembleSpec spec = ensemble_of(o);
    SampleSet s;
    if (!o.samples.empty()) {
        s = SampleSet{spec, read_samples_csv(o.samples), 0, 0, 0.0, o.seed};
        for (auto& d : s.draws) {
            if (int(d.size()) != spec.two_N) throw UsageError("sample file rows do not have 2N coordinates");
            std::sort(d.begin(), d.end());
        }
    } else {
        s = run_sampler(o, spec);
    }
    const KernelEvaluator ev = spec.density_evaluator(method_of(o));
    const DensityComparison r = compare_density(s, ev, o.bins);
    Table t{{"bin_lo", "bin_hi", "observed", "expected", "z"}, {}};
    for (int i = 0; i < o.bins; ++i) t.rows.push_back({r.edges[i], r.edges[i + 1], r.observed[i], r.expected[i], r.z[i]});
    auto meta = metadata("compare", o, spec.weight);
    meta["draws"] = r.draws;
    meta["max_abs_z"] = json_number(r.max_abs_z);
    meta["passed"] = r.passed;
    emit(render(t, meta, o.format), o, out);
    if (!r.passed) {
        err << "check failed: density-comparison (max |z| = " << format_double(r.max_abs_z) << ", draws = " << r.draws
            << ")\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_partition(const Options& o, std::ostream& out) {
    const EnsembleSpec spec = ensemble_of(o);
    const double log_z = log_partition_function(spec);
    const Table t{{"beta", "two_N", "log_Z", "Z"}, {{double(o.beta), double(spec.two_N), log_z, std::exp(log_z)}}};
    auto meta = metadata("partition", o, spec.weight);
    meta["convention"] = "full";  // Z uses the full-weight norms for both beta
    emit(render(t, meta, o.format), o, out);
    return kExitOk;
}

// Errors that mean the request itself was invalid rather than a numerical failure.
bool is_input_error(const Error& e) {
    return dynamic_cast<const ParameterDomainError*>(&e) || dynamic_cast<const OrderRangeError*>(&e) ||
           dynamic_cast<const ConfigurationError*>(&e) || dynamic_cast<const BoundaryError*>(&e) ||
           dynamic_cast<const DegeneratePointError*>(&e) || dynamic_cast<const ValidityWindowError*>(&e);
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--weight", o.weight, "Weight family")
        ->check(CLI::IsMember({"jacobi", "laguerre", "gaussian"}))
        ->capture_default_str();
    sub->add_option("--a", o.a, "First weight parameter")->capture_default_str();
    sub->add_option("--b", o.b, "Second weight parameter (Jacobi)")->capture_default_str();
    sub->add_option("--beta", o.beta, "Symmetry class")->check(CLI::IsMember({1, 4}))->capture_default_str();
    sub->add_option("--convention", o.convention, "beta = 4 normalization: sqrt (w^{1/2} pi), full (w pi), auto")
        ->check(CLI::IsMember({"auto", "full", "sqrt"}))
        ->capture_default_str();
    sub->add_option("--N", o.N, "Half-dimension: 2N functions, or 2N eigenvalues for sample/compare/partition")
        ->capture_default_str();
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--out", o.out, "Write output to this file instead of stdout");
}

void add_grid(CLI::App* sub, Options& o) {
    sub->add_option("--x-min", o.x_min, "Grid start (default: bulk of the family)");
    sub->add_option("--x-max", o.x_max, "Grid end (default: bulk of the family)");
    sub->add_option("--points", o.points, "Grid points")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--x", o.x, "Single point instead of a grid");
}

void add_method(CLI::App* sub, Options& o) {
    sub->add_option("--method", o.method, "Kernel evaluation: direct sum or GCD bracket")
        ->check(CLI::IsMember({"sum", "gcd"}))
        ->capture_default_str();
}

void add_chain(CLI::App* sub, Options& o) {
    sub->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    sub->add_option("--steps", o.steps, "Single-coordinate proposals, burn-in included")->capture_default_str();
    sub->add_option("--burn-in", o.burn_in, "Burn-in proposals (default: steps / 10)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Skew-orthogonal polynomials, random-matrix kernels and ensemble sampling"};
    app.name(args.empty() ? "skewortho" : args[0]);
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", SKEWORTHO_VERSION);

    auto* eval = app.add_subcommand("eval", "Evaluate phi_n and psi_n on a grid");
    add_common(eval, o);
    add_grid(eval, o);
    eval->add_option("--order", o.order, "Order n")->required();

    auto* kernel = app.add_subcommand("kernel", "Evaluate S, D, I at (x, y) over an x grid");
    add_common(kernel, o);
    add_grid(kernel, o);
    add_method(kernel, o);
    kernel->add_option("--y", o.y, "Second argument")->required();

    auto* density = app.add_subcommand("density", "Exact level density against its large-N form");
    add_common(density, o);
    add_grid(density, o);
    add_method(density, o);

    auto* verify = app.add_subcommand("verify", "Run ortho1, antidual, gcd-vs-sum and recursion-residual checks");
    add_common(verify, o);
    verify->add_option("--tol-ortho", o.tol.ortho, "Skew Gram tolerance")->capture_default_str();
    verify->add_option("--tol-band", o.tol.band, "Relative out-of-band tolerance")->capture_default_str();
    verify->add_option("--tol-antidual", o.tol.antidual, "Relative anti-duality tolerance")->capture_default_str();
    verify->add_option("--tol-gcd", o.tol.gcd, "Relative GCD vs sum tolerance")->capture_default_str();
    verify->add_option("--tol-recursion", o.tol.recursion, "Relative recursion residual tolerance")->capture_default_str();

    auto* sample = app.add_subcommand("sample", "Metropolis draws of 2N eigenvalues (CSV plus key=value sidecar)");
    add_common(sample, o);
    add_chain(sample, o);
    sample->add_option("--sidecar", o.sidecar, "Metadata file (default: <out>.meta when --out is given)");

    auto* compare = app.add_subcommand("compare", "Binned sample density against the exact kernel density");
    add_common(compare, o);
    add_chain(compare, o);
    add_method(compare, o);
    compare->add_option("--bins", o.bins, "Equal-mass bins")->check(CLI::Range(2, 10000))->capture_default_str();
    compare->add_option("--samples", o.samples, "Read draws from a sample CSV instead of sampling");

    auto* partition = app.add_subcommand("partition", "log Z = log (2N)! + sum log |g_j|");
    add_common(partition, o);

    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*eval) return cmd_eval(o, out);
        if (*kernel) return cmd_kernel(o, out);
        if (*density) return cmd_density(o, out);
        if (*verify) return cmd_verify(o, out, err);
        if (*sample) return cmd_sample(o, out);
        if (*compare) return cmd_compare(o, out, err);
        if (*partition) return cmd_partition(o, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        if (is_input_error(e)) {
            err << "usage error: " << e.what() << '\n';
            return kExitUsage;
        }
        err << "check failed: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitUsage;
}

}  // namespace skewortho

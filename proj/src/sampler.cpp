#include "skewortho/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <charconv>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "skewortho/format.hpp"
#include "skewortho/parallel.hpp"
#include "skewortho/quadrature.hpp"

namespace skewortho {
namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();
constexpr double target_acceptance = 0.3;
constexpr int sweeps_per_draw = 10;
constexpr int adapt_window = 50;  // proposals per coordinate between step updates

Convention density_convention(int beta) { return beta == 4 ? Convention::SqrtWeight : Convention::FullWeight; }

std::vector<double> initial_configuration(const EnsembleSpec& spec) {
    const int n = spec.two_N;
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k) {
        const double u = (k + 0.5) / n;
        switch (spec.weight.kind) {
        case WeightKind::Jacobi: x[k] = 0.9 * std::cos(std::numbers::pi * u); break;
        case WeightKind::Laguerre: x[k] = 2.0 * (k + 0.5); break;
        case WeightKind::Gaussian: x[k] = std::sqrt(double(n)) * (2 * u - 1); break;
        }
    }
    return x;
}

double initial_step(const WeightSpec& w) {
    switch (w.kind) {
    case WeightKind::Jacobi: return 0.1;
    case WeightKind::Laguerre: return 0.5;
    case WeightKind::Gaussian: return 0.3;
    }
    return 0.1;
}

double uniform01(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

void check_matching(const SampleSet& samples, const KernelEvaluator& ev) {
    const EnsembleSpec& spec = samples.spec;
    const SopFamily& f = ev.family();
    if (f.beta() != spec.beta || f.weight().kind != spec.weight.kind || f.weight().a != spec.weight.a ||
        f.weight().b != spec.weight.b)
        throw ConfigurationError("sample set and kernel evaluator describe different ensembles");
    if (ev.N() * f.density_mass_per_block() != spec.two_N)
        throw ConfigurationError("kernel density mass does not match the number of eigenvalues");
}


// Cumulative one-point mass on a uniform cell grid over the (truncated) support.
struct DensityTable {
    double lo = 0.0, hi = 0.0;
    bool open_lo = false, open_hi = false;  // true when the support extends past lo / hi
    std::vector<double> cdf;
    int cells() const { return int(cdf.size()) - 1; }
    double total() const { return cdf.back(); }
    double cell_start(int c) const { return lo + (hi - lo) * double(c) / cells(); }
    // Inverse CDF with linear interpolation inside a cell.
    double quantile(double mass) const {
        const int c = std::clamp(int(std::upper_bound(cdf.begin(), cdf.end(), mass) - cdf.begin()) - 1, 0, cells() - 1);
        const double m = cdf[c + 1] - cdf[c];
        const double f = m > 0.0 ? std::clamp((mass - cdf[c]) / m, 0.0, 1.0) : 0.5;
        return cell_start(c) + f * (hi - lo) / cells();
    }
};

DensityTable tabulate_density(const KernelEvaluator& ev) {
    const WeightSpec& w = ev.family().weight();
    auto rho = [&](double t) { return ev.density(t); };
    DensityTable tab;
    tab.lo = w.lower();
    tab.hi = w.upper();
    // Infinite ends are cut where the density has fallen 30 orders below its
    // largest value seen.
    auto march = [&](double start, double dir) {
        double t = start, peak = 0.0;
        int quiet = 0;
        for (int i = 0; i < 200000 && quiet < 40; ++i, t += dir * 0.05) {
            const double v = rho(t);
            peak = std::max(peak, v);
            quiet = v < 1e-30 * peak ? quiet + 1 : 0;
        }
        return t;
    };
    tab.open_hi = std::isinf(tab.hi);
    tab.open_lo = std::isinf(tab.lo);
    if (tab.open_hi) tab.hi = march(tab.open_lo ? 0.0 : tab.lo + 1e-3, 1.0);
    if (tab.open_lo) tab.lo = march(0.0, -1.0);

    constexpr int cells = 4000;
    const IntegrationOptions edge = options_for(w, 1.0);
    const QuadratureRule unit = gauss_legendre(12, 0.0, 1.0);
    std::vector<double> mass(cells);
    parallel_for(cells, [&](std::size_t i) {
        const double a = tab.lo + (tab.hi - tab.lo) * double(i) / cells;
        const double b = tab.lo + (tab.hi - tab.lo) * double(i + 1) / cells;
        if ((i == 0 && !tab.open_lo) || (i + 1 == cells && !tab.open_hi)) {
            IntegrationOptions opt;
            if (i == 0) opt.lo_exponent = edge.lo_exponent;
            if (i + 1 == cells) opt.hi_exponent = edge.hi_exponent;
            mass[i] = std::max(0.0, integrate_interval(rho, {a, b}, opt));
            return;
        }
        double m = 0.0;
        for (std::size_t k = 0; k < unit.nodes.size(); ++k) m += unit.weights[k] * rho(a + (b - a) * unit.nodes[k]);
        mass[i] = std::max(0.0, m * (b - a));
    });
    tab.cdf.assign(cells + 1, 0.0);
    for (int i = 0; i < cells; ++i) tab.cdf[i + 1] = tab.cdf[i] + mass[i];
    return tab;
}

DensityComparison compare_with_table(const SampleSet& samples, const DensityTable& tab, int bins) {
    if (bins < 2) throw ConfigurationError("need at least two bins");
    if (samples.draws.empty()) throw ConfigurationError("empty sample set");
    DensityComparison r;
    r.draws = samples.draws.size();
    r.edges.resize(bins + 1);
    r.edges.front() = tab.open_lo ? -std::numeric_limits<double>::infinity() : tab.lo;
    r.edges.back() = tab.open_hi ? std::numeric_limits<double>::infinity() : tab.hi;
    for (int i = 1; i < bins; ++i) r.edges[i] = tab.quantile(tab.total() * i / bins);
    r.observed.assign(bins, 0.0);
    for (const auto& d : samples.draws)
        for (double v : d) {
            const int b = int(std::upper_bound(r.edges.begin() + 1, r.edges.end() - 1, v) - (r.edges.begin() + 1));
            r.observed[b] += 1.0;
        }
    // Equal-mass bins: each expects the same share of points.
    const double e = tab.total() / bins * double(r.draws);
    r.expected.assign(bins, e);
    r.z.resize(bins);
    for (int i = 0; i < bins; ++i) {
        r.z[i] = (r.observed[i] - e) / std::sqrt(e);
        r.max_abs_z = std::max(r.max_abs_z, std::abs(r.z[i]));
    }
    r.passed = r.max_abs_z < kMaxAbsZ && r.draws >= kMinDraws;
    return r;
}

SampleSet sample_from_table(const EnsembleSpec& spec, const DensityTable& tab, std::size_t draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SampleSet out{spec, {}, 0, 0, 1.0, seed};
    out.draws.reserve(draws);
    for (std::size_t d = 0; d < draws; ++d) {
        std::vector<double> pts(spec.two_N);
        for (double& p : pts) p = tab.quantile(uniform01(rng) * tab.total());
        std::sort(pts.begin(), pts.end());
        out.draws.push_back(std::move(pts));
    }
    return out;
}

}  // namespace

void EnsembleSpec::validate() const {
    if (beta != 1 && beta != 4) throw ConfigurationError("beta must be 1 or 4");
    if (two_N < 2 || two_N % 2) throw OrderRangeError("2N must be a positive even count");
    weight.validate();
}

std::shared_ptr<const SopFamily> EnsembleSpec::density_family(int extra_orders) const {
    validate();
    const int functions = beta == 4 ? 2 * two_N : two_N;
    return std::make_shared<SopFamily>(beta, weight, density_convention(beta), functions - 1 + extra_orders);
}

KernelEvaluator EnsembleSpec::density_evaluator(KernelMethod method) const {
    return KernelEvaluator(density_family(), kernel_blocks(), method);
}

double EnsembleSpec::log_weight(double x) const {
    // The kernel family fixes the weight convention; the jpdf uses it directly.
    return SopFamily(beta, weight, density_convention(beta), 1).log_ensemble_weight(x);
}

SampleSet mcmc_sample(const EnsembleSpec& spec, long long steps, long long burn_in, std::uint64_t seed) {
    spec.validate();
    if (spec.two_N > 12) throw OrderRangeError("the sampler is limited to 2N <= 12");
    if (burn_in < 0 || steps <= 0 || steps < 10 * burn_in) throw ConfigurationError("need steps >= 10 * burn_in > 0");

    // Cache the weight: the family is rebuilt otherwise on every call.
    const SopFamily family(spec.beta, spec.weight, density_convention(spec.beta), 1);
    auto lw = [&](double x) { return family.log_ensemble_weight(x); };

    const int n = spec.two_N;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x = initial_configuration(spec);
    std::vector<double> step(n, initial_step(spec.weight));
    std::vector<int> window_accepts(n, 0), window_tries(n, 0);
    const long long thin = static_cast<long long>(n) * sweeps_per_draw;

    SampleSet out{spec, {}, steps, burn_in, 0.0, seed};
    long long accepted = 0, tried = 0;
    for (long long t = 0; t < steps; ++t) {
        const int k = static_cast<int>(t % n);
        const double y = x[k] + step[k] * normal(rng);
        double d = neg_inf;
        if (spec.weight.in_open_support(y)) {
            d = lw(y) - lw(x[k]);
            for (int j = 0; j < n && d > neg_inf; ++j) {
                if (j == k) continue;
                const double gap = std::abs(x[j] - y);
                d = gap == 0.0 ? neg_inf : d + spec.beta * (std::log(gap) - std::log(std::abs(x[j] - x[k])));
            }
        }
        const bool accept = d >= 0.0 || (d > neg_inf && uniform01(rng) < std::exp(d));
        if (accept) x[k] = y;

        if (t < burn_in) {
            window_accepts[k] += accept;
            if (++window_tries[k] == adapt_window) {
                const double rate = double(window_accepts[k]) / adapt_window;
                step[k] *= std::exp(rate - target_acceptance);
                window_accepts[k] = window_tries[k] = 0;
            }
            continue;
        }
        ++tried;
        accepted += accept;
        if ((t - burn_in + 1) % thin == 0) {
            std::vector<double> draw = x;
            std::sort(draw.begin(), draw.end());
            out.draws.push_back(std::move(draw));
        }
    }
    out.acceptance_rate = tried ? double(accepted) / tried : 0.0;
    if (out.acceptance_rate < 0.1 || out.acceptance_rate > 0.7) {
        std::ostringstream msg;
        msg << "acceptance rate " << out.acceptance_rate << " outside [0.1, 0.7] after adaptation; steps:";
        for (double s : step) msg << ' ' << s;
        throw TuningError(msg.str());
    }
    return out;
}

SampleSet mcmc_sample_chains(const EnsembleSpec& spec, long long steps, long long burn_in,
                             const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty()) throw ConfigurationError("need at least one seed");
    std::vector<SampleSet> chains(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) { chains[i] = mcmc_sample(spec, steps, burn_in, seeds[i]); });
    SampleSet merged = chains.front();
    double accepted = chains.front().acceptance_rate;
    for (std::size_t i = 1; i < chains.size(); ++i) {
        merged.draws.insert(merged.draws.end(), chains[i].draws.begin(), chains[i].draws.end());
        accepted += chains[i].acceptance_rate;
    }
    merged.acceptance_rate = accepted / double(chains.size());
    return merged;
}

DensityComparison compare_density(const SampleSet& samples, const KernelEvaluator& ev, int bins) {
    check_matching(samples, ev);
    return compare_with_table(samples, tabulate_density(ev), bins);
}

SampleSet sample_exact_density(const EnsembleSpec& spec, const KernelEvaluator& ev, std::size_t draws, std::uint64_t seed) {
    check_matching(SampleSet{spec, {}, 0, 0, 0.0, seed}, ev);
    return sample_from_table(spec, tabulate_density(ev), draws, seed);
}

double calibration_pass_rate(const EnsembleSpec& spec, const KernelEvaluator& ev, std::size_t draws, int bins,
                             int repetitions, std::uint64_t seed0) {
    check_matching(SampleSet{spec, {}, 0, 0, 0.0, seed0}, ev);
    if (repetitions < 1) throw ConfigurationError("need at least one repetition");
    const DensityTable tab = tabulate_density(ev);
    int passed = 0;
    for (int r = 0; r < repetitions; ++r)
        passed += compare_with_table(sample_from_table(spec, tab, draws, seed0 + r), tab, bins).passed;
    return double(passed) / repetitions;
}

double log_partition_function(const SopFamily& family, int two_N) {
    if (two_N < 2 || two_N % 2) throw OrderRangeError("2N must be a positive even count");
    if (two_N - 1 > family.max_order()) throw OrderRangeError("family is not built to order 2N - 1");
    double log_z = std::lgamma(two_N + 1.0);
    int sign = 1;
    for (int j = 0; j < two_N; ++j) {
        const SignedNorm& g = family.norms()[j];
        sign *= g.sign;
        log_z += g.log_abs;
    }
    if (sign < 0) throw ConventionError("norm signs multiply to a negative partition function");
    return log_z;
}

double log_partition_function(const EnsembleSpec& spec) {
    spec.validate();
    return log_partition_function(SopFamily(spec.beta, spec.weight, Convention::FullWeight, std::max(1, spec.two_N - 1)),
                                  spec.two_N);
}

std::string samples_csv(const SampleSet& samples) {
    std::string s = "index";
    for (int i = 1; i <= samples.spec.two_N; ++i) s += ",x_" + std::to_string(i);
    s += '\n';
    for (std::size_t r = 0; r < samples.draws.size(); ++r) {
        s += std::to_string(r);
        for (double v : samples.draws[r]) s += ',' + format_double(v);
        s += '\n';
    }
    return s;
}

std::string sidecar_text(const SampleSet& samples) {
    std::string s;
    s += "seed=" + std::to_string(samples.seed) + '\n';
    s += "steps=" + std::to_string(samples.steps) + '\n';
    s += "burn_in=" + std::to_string(samples.burn_in) + '\n';
    s += "acceptance_rate=" + format_double(samples.acceptance_rate) + '\n';
    s += "beta=" + std::to_string(samples.spec.beta) + '\n';
    s += "weight=" + samples.spec.weight.name() + '\n';
    s += "a=" + format_double(samples.spec.weight.a) + '\n';
    s += "b=" + format_double(samples.spec.weight.b) + '\n';
    s += "two_N=" + std::to_string(samples.spec.two_N) + '\n';
    s += "draws=" + std::to_string(samples.draws.size()) + '\n';
    return s;
}

namespace {
void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigurationError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw ConfigurationError("failed writing " + path);
}
}  // namespace

void write_samples_csv(const std::string& path, const SampleSet& samples) { write_text(path, samples_csv(samples)); }

void write_sidecar(const std::string& path, const SampleSet& samples) { write_text(path, sidecar_text(samples)); }

std::vector<std::vector<double>> read_samples_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("index", 0) != 0) throw ConfigurationError("missing sample header in " + path);
    std::vector<std::vector<double>> draws;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = line.find(',');
        while (pos != std::string::npos) {
            const std::size_t next = line.find(',', pos + 1);
            const std::string cell = line.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1);
            double v = 0.0;
            auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc()) throw ConfigurationError("bad number '" + cell + "' in " + path);
            row.push_back(v);
            pos = next;
        }
        draws.push_back(std::move(row));
    }
    return draws;
}

}  // namespace skewortho

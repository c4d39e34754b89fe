#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "skewortho/kernel.hpp"
#include "skewortho/sop_family.hpp"
#include "skewortho/weight.hpp"

namespace skewortho {

struct EnsembleSpec {
    int beta = 1;
    WeightSpec weight;
    int two_N = 2;  // number of eigenvalues

    void validate() const;
    // SOP family whose kernel reproduces this ensemble's one-point function:
    // full-weight for beta = 1, sqrt-weight for beta = 4 (2N points need 4N
    // functions there).
    std::shared_ptr<const SopFamily> density_family(int extra_orders = 4) const;
    // Kernel evaluator whose density integrates to two_N.
    KernelEvaluator density_evaluator(KernelMethod method = KernelMethod::Sum) const;
    // The evaluator's N for this ensemble.
    int kernel_blocks() const { return beta == 4 ? two_N : two_N / 2; }
    // log w(x) in the jpdf |Delta|^beta prod w(x_j).
    double log_weight(double x) const;
};

struct SampleSet {
    EnsembleSpec spec;
    std::vector<std::vector<double>> draws;  // each sorted ascending
    long long steps = 0;
    long long burn_in = 0;
    double acceptance_rate = 0.0;
    std::uint64_t seed = 0;
};

// Single-coordinate random-walk Metropolis. `steps` counts single-coordinate
// proposals including the burn-in; draws are recorded every 10 sweeps after it.
SampleSet mcmc_sample(const EnsembleSpec& spec, long long steps, long long burn_in, std::uint64_t seed);

// Independent chains, one per seed, run concurrently and concatenated in seed order.
SampleSet mcmc_sample_chains(const EnsembleSpec& spec, long long steps, long long burn_in,
                             const std::vector<std::uint64_t>& seeds);

struct DensityComparison {
    std::vector<double> edges;  // bins + 1 entries
    std::vector<double> observed;
    std::vector<double> expected;
    std::vector<double> z;
    double max_abs_z = 0.0;
    std::size_t draws = 0;
    bool passed = false;
};

constexpr double kMaxAbsZ = 4.0;
constexpr std::size_t kMinDraws = 1000;

// Point counts in equal-mass bins of the exact kernel density (edges from its
// CDF, outer bins reaching the support ends) with Poisson z-scores. Passes
// when max |z| < 4 with at least 1000 draws.
DensityComparison compare_density(const SampleSet& samples, const KernelEvaluator& ev, int bins = 20);

// I.i.d. draws from the exact normalized one-point density, grouped into
// configurations of two_N points (used to calibrate compare_density).
SampleSet sample_exact_density(const EnsembleSpec& spec, const KernelEvaluator& ev, std::size_t draws, std::uint64_t seed);

// Fraction of seeds (seed0, seed0 + 1, ...) for which compare_density passes
// on exact-density draws.
double calibration_pass_rate(const EnsembleSpec& spec, const KernelEvaluator& ev, std::size_t draws, int bins,
                             int repetitions, std::uint64_t seed0);

// log Z with Z = (2N)! prod_{j < 2N} g_j over the full-weight family norms.
double log_partition_function(const EnsembleSpec& spec);
double log_partition_function(const SopFamily& family, int two_N);

void write_samples_csv(const std::string& path, const SampleSet& samples);
void write_sidecar(const std::string& path, const SampleSet& samples);
std::string samples_csv(const SampleSet& samples);
std::string sidecar_text(const SampleSet& samples);
// Reads draws from a CSV written by write_samples_csv.
std::vector<std::vector<double>> read_samples_csv(const std::string& path);

}  // namespace skewortho

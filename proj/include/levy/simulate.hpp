#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "levy/catalog.hpp"
#include "levy/model.hpp"

namespace levy {

struct SimConfig {
    long n_samples = 200000;
    double time_horizon = 40.0; ///< truncation T of the (0,inf) integral
    double mesh = 0.1;          ///< Riemann partition mesh
    double jump_eps = 1e-3;     ///< small-jump cutoff (Gaussian-compensated)
    std::uint64_t seed = 1;
    double t_max = 5.0; ///< CF comparison grid: t_nodes points on [-t_max, t_max]
    int t_nodes = 101;
    bool parallel = true; ///< chunk-parallel sampling; results identical either way
    bool refine = false;  ///< halve the mesh until the CF distance stabilizes
};

struct SampleBatch {
    std::vector<double> values;
    SimConfig config;
    double mean_jump_count = 0.0;         ///< jumps per sample above the cutoff
    double discarded_small_jump_var = 0.0; ///< per-unit-time variance folded into the Gaussian
    double mesh_used = 0.0;
    int refinements = 0;
};

/// Increment sampler for one driving law, precomputed from its triple:
/// exact for Gaussian and symmetric-stable drivers, compound Poisson with
/// small-jump Gaussian compensation otherwise (inverse-tail quantile
/// tables per direction, atoms by mass).
class LevySampler {
public:
    LevySampler(const DistributionSpec& spec, double jump_eps);

    /// One increment distributed ~ rho^{*dt}. Draw order is fixed, so a
    /// given rng stream yields identical values on any thread.
    double increment(double dt, std::mt19937_64& rng, double* jump_count = nullptr) const;

    double jump_intensity() const { return lambda_total_; }
    double small_jump_var() const { return v_eps_; }

private:
    SamplerKind kind_;
    double shift_ = 0.0;
    double gaussian_sd_ = 0.0; ///< sqrt(gaussian_var + v_eps)
    double alpha_ = 0.0, stable_scale_ = 0.0;
    double lambda_pos_ = 0.0, lambda_neg_ = 0.0, lambda_total_ = 0.0;
    double drift_comp_ = 0.0; ///< ∫_{eps<|x|<=1} x dM, removed per unit time
    double v_eps_ = 0.0;
    GridFunction quantile_pos_; ///< radius as a function of log(tail mass)
    GridFunction quantile_neg_;
    std::vector<Atom> atoms_;  ///< |location| > eps, cumulative-mass sampled
    double atom_mass_ = 0.0;
};

/// Spec-facing wrapper around LevySampler for a single increment.
double sample_levy_increment(const DistributionSpec& rho, double dt, std::mt19937_64& rng);

/// Weight function of the random integral ∫ h(t) dY(t) over (0, t_end].
struct IntegralWeight {
    RealFn h;
    double t_end;
    static IntegralWeight exp_decay(double T) {
        return {[](double t) { return std::exp(-t); }, T};
    }
    static IntegralWeight linear() {
        return {[](double t) { return t; }, 1.0};
    }
};

/// n samples of the Riemann-Stieltjes sum sum_i h(t_i) dY_i on a partition
/// of mesh <= config.mesh, sampled in fixed-size chunks with per-chunk
/// substreams (deterministic for a given seed regardless of thread count).
/// With config.refine, the partition is halved until the distance between
/// the empirical CF and the analytic law stabilizes; NonConvergent if it
/// does not.
SampleBatch random_integral(const IntegralWeight& weight, const DistributionSpec& rho,
                            const SimConfig& config);

/// (1/n) sum_j e^{i t X_j} on the grid; chunk-parallel with a fixed
/// reduction order.
ComplexGridFunction empirical_cf(const std::vector<double>& samples,
                                 const std::vector<double>& t_grid, bool parallel = true);
/// Serial reference of the same chunked reduction, kept for testing the
/// parallel kernel; bit-identical to empirical_cf.
ComplexGridFunction empirical_cf_serial(const std::vector<double>& samples,
                                        const std::vector<double>& t_grid);

/// Analytic exponent of ∫_0^{t_end} h(s) dY_rho(s): t -> ∫ Phi(h(s)t) ds.
LevyExponent random_integral_exponent(const IntegralWeight& weight, const LevyExponent& rho);

struct McVerifyReport {
    double sup_cf_distance = 0.0;
    double tol = 0.03;
    bool pass = false;
    SampleBatch batch;
    std::vector<double> t_grid;
    std::vector<Complex> empirical;
    std::vector<Complex> analytic;
};

/// Monte Carlo side of the factorization identity: simulate
/// X = ∫_0^inf e^{-s} dY_nu(s) + Y_nu(1) and compare the empirical CF with
/// the analytic exponent of I(rho) = Phi_mu + Phi_nu on |t| <= t_max.
McVerifyReport verify_factorization_mc(const DistributionSpec& mu, const SimConfig& config,
                                       double tol = 0.03);

} // namespace levy

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "shockvol/empirics.hpp"
#include "shockvol/model.hpp"
#include "shockvol/nelder_mead.hpp"
#include "shockvol/theory.hpp"

namespace shockvol {

struct LossConfig {
    double t_discount = 40.0;  ///< T in the exponential weights e^{-n/T}
    std::size_t n_corr = 400;
    double weight_c = 0.5;         ///< applied to the sum of the two C terms
    double weight_a = 1.0 / 20.0;  ///< applied to each A(q) term
    double weight_rho = 1.0;       ///< applied to the normalized rho sum
    QuadratureConfig quadrature = QuadratureConfig::for_kernels();

    void validate() const;
    /// w_n = e^{-n/T} / sum_m e^{-m/T} for n = 1..n_corr.
    std::vector<double> rho_weights() const;
};

struct LossBreakdown {
    double c_term = 0.0;
    double a_term = 0.0;
    double rho_term = 0.0;
    double total() const { return c_term + a_term + rho_term; }
};

/// Weighted squared relative errors between observables and theory at `tp`.
/// Throws InvalidParameter when a theoretical C_q or rho(n) is not positive.
LossBreakdown loss(const ObservableSet& obs, const TheoryParams& tp, const LossConfig& cfg = {});

/// Observables that theory predicts exactly at `tp` (on the standard grids).
ObservableSet theoretical_observables(const TheoryParams& tp, const LossConfig& cfg = {},
                                      const ObservableConfig& grid = ObservableConfig::standard());

struct FitOptions {
    SimplexOptions simplex{0.5, 1e-6, 2000};
    /// Starting points (D, lambda, E sigma); E sigma^2 starts at 1.1 (E sigma)^2.
    std::vector<std::array<double, 3>> starts = default_starts();
    /// Restart the simplex from the incumbent until the loss stops improving.
    std::size_t max_polish_rounds = 6;
    bool enforce_moment_constraint = true;
    std::size_t workers = 1;

    static std::vector<std::array<double, 3>> default_starts();
};

struct FitResult {
    TheoryParams params;
    double loss_value;
    LossBreakdown breakdown;
    bool converged;
    std::size_t iterations;
    std::size_t evaluations;
};

/// Minimizes the loss over (D, lambda, E sigma, E sigma^2) by multi-start Nelder-Mead in
/// unconstrained coordinates: logit for 2D, log for lambda and E sigma, and
/// E sigma^2 = (E sigma)^2 (1 + e^u) when the moment constraint is enforced.
FitResult fit(const ObservableSet& obs, const LossConfig& cfg = {}, const FitOptions& opt = {});

struct ParameterRecovery {
    double truth;
    double median;
    double bias;  ///< mean estimate minus truth
    double iqr;
};

struct RoundtripReport {
    std::vector<FitResult> fits;
    ParameterRecovery D, lambda, e_sigma, e_sigma_sq;
};

/// Simulates `n_replicas` series of `years` (250 days each, after a 250-day detrending warm-up),
/// runs the empirical pipeline and the fit on each, and summarizes recovery per parameter.
RoundtripReport roundtrip(const ModelParams& truth, std::size_t years, std::size_t n_replicas, std::uint64_t seed,
                          const LossConfig& cfg = {}, const FitOptions& opt = {});

/// The series a roundtrip replica analyzes: simulated prices e^X, detrended with a 250-day window.
ReturnSeries simulate_return_series(const ModelParams& params, std::size_t years, std::uint64_t seed,
                                    std::uint64_t stream);

}  // namespace shockvol

// Finite-horizon diagnostics for the Chung-type LIL. Time grids are kept in
// log space throughout.
//
// Every grid point is simulated as an independent copy of X(.) by self-similarity.
// The path coupling across T that the almost-sure statements are about is NOT
// reproduced; outputs carry kIidLabel to say so.
#pragma once

#include "stabledev/parallel.hpp"
#include "stabledev/path_sim.hpp"
#include "stabledev/process_model.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace stabledev {

inline constexpr const char* kIidLabel =
    "diagnostic: independent copy of X per grid point, no path coupling across T; a.s. limits are not finitely verifiable";

enum class GridKind { lower, upper };

struct GridSpec {
    GridKind kind = GridKind::upper;
    /// Exponent of the upper grid T_k = exp(k^gamma); must exceed 1.
    double gamma = 2.0;
    long k_min = 1;
    long k_max = 10;
};

/// Smallest k allowed on the lower grid T_k = exp(k (log k)^{-3}).
inline constexpr long kLowerGridMinK = 21;

/// log T_k = k (log k)^{-3} (lower) or k^gamma (upper).
double grid_log_time(GridKind kind, long k, double gamma = 2.0);
std::vector<double> grid_log_times(const GridSpec& spec);
/// T_k itself. Throws when any log T_k exceeds 700.
std::vector<double> grid_times(const GridSpec& spec);

struct Lemma2Ratios {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
};

/// Smallest k for which log log T_k > 0 on the lower grid, needed by the ratios.
inline constexpr long kRatioMinK = 94;

/// The three ratios on the lower grid, evaluated from log T_k only.
Lemma2Ratios lemma2_ratios(long k, double delta, double alpha);

enum class IntegralClass { converges, diverges, inconclusive };
std::string to_string(IntegralClass c);

struct IntegralTestResult {
    IntegralClass classification = IntegralClass::inconclusive;
    std::string evidence;
    /// Block integrals of du / h(e^u)^alpha over u in [2^j, 2^{j+1}] (numeric path only).
    std::vector<double> blocks;
    /// Fitted decay exponent p of the blocks in j (numeric path only).
    double block_decay = 0.0;
};

/// Classifies int^inf dt / (t h(t)^alpha). power_loglog h is decided in closed
/// form; custom h uses block integrals up to log t = log_t_max.
IntegralTestResult integral_test(const ScalingFunction& h, double alpha, double log_t_max = 1e18,
                                 double quadrature_tolerance = 1e-8);

struct ScaledDistanceRecord {
    long k = 0;
    double log_T = 0.0;
    double delta = 0.0;
    double distance = 0.0;
    double running_min = 0.0;
};

/// (log log T)^delta ||X(T.)/(T^{1/alpha} (log log T)^{delta-1/alpha}) - f|| where the
/// unit-horizon path stands for X(T.)/T^{1/alpha}. Needs log T > e and delta in [0,1].
ScaledDistanceRecord scaled_distance(const SimPath& path, double log_T, double delta, double alpha,
                                     const ShiftFunction& f);

/// Y frozen after `ratio`, Z zero before it, Y + Z = X on the grid.
std::pair<SimPath, SimPath> yz_decompose(const SimPath& path, double ratio);

struct LiminfTrace {
    std::vector<ScaledDistanceRecord> records;
    double final_value = 0.0;
    std::string note = kIidLabel;
};

/// Running minimum over records ordered by log T; throws on unordered input.
LiminfTrace liminf_trace(std::vector<ScaledDistanceRecord> records);

/// One fresh path per grid point k (stream k), scaled distance, then the running minimum.
LiminfTrace distance_sweep(const AlphaStableParams& params, const GridSpec& grid, double delta, const ShiftFunction& f,
                           std::size_t n_steps, std::uint64_t seed, const BatchRunner& runner);

} // namespace stabledev

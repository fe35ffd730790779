#pragma once

#include <map>
#include <string>
#include <vector>

#include "levy/model.hpp"

namespace levy {

enum class Verdict { yes, no, undecided };
const char* to_string(Verdict v);
/// Worst-of ordering: yes > undecided > no.
Verdict combine(Verdict a, Verdict b);

struct Witness {
    std::string cls;
    Direction direction = Direction::pos;
    double r_lo = 0.0, r_hi = 0.0;
    double magnitude = 0.0;
};

/// Convergence classification of ∫_{r>1} log^order(1+r) dM by decade
/// chunks: geometric decline bounds the remainder, a harmonic signature
/// (fitted local exponent <= 1.05) or nondecreasing chunks flag divergence,
/// anything in between stays undecided rather than guessed.
struct LogMomentReport {
    Verdict verdict = Verdict::undecided;
    double value = 0.0;           ///< accumulated integral + atom terms
    double remainder_bound = 0.0; ///< geometric bound when verdict == yes
    int witness_decade = -1;      ///< first offending decade when verdict == no
};
LogMomentReport log_moment_report(const SpectralDensityPair& spectral, int order);

struct MembershipReport {
    std::map<std::string, Verdict> verdicts;     ///< ID_log, U, L, Lf, L1, L1f, ...
    std::map<std::string, GridFunction> criteria; ///< tested quantity per class/direction
    std::vector<Witness> witnesses;

    Verdict at(const std::string& cls) const;
};

struct ClassifyOptions {
    int max_n = 2;       ///< deepest L_n / L_n^f level (capped at 4)
    double slack = 1e-9; ///< violations below slack * local scale pass
    double hard = 1e-6;  ///< violations above hard * local scale fail; between -> undecided
};

/// ∫_{r>1} log^order(1+r) dM < inf, decided numerically with divergence
/// detection. order = n+1 gates the L_n chain.
Verdict is_ID_log(const LevyTriple& triple, int order);

/// Verdicts for ID_log, U, L, L^f and L_n / L_n^f up to max_n, from the
/// monotonicity/convexity of the spectral density criteria (shift and
/// Gaussian parts impose no restrictions). Each "no" carries a witness
/// interval.
MembershipReport classify(const LevyTriple& triple, int max_n = 2);
MembershipReport classify(const LevyTriple& triple, const ClassifyOptions& opt);

/// Independent second route to the L^f verdict: r^2 dL_M''(r) nondecreasing
/// per direction (requires a differentiable density).
Verdict check_Lf_via_second_derivative(const LevyTriple& triple);

} // namespace levy

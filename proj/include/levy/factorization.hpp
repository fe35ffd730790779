#pragma once

#include <optional>

#include "levy/exponent_transforms.hpp"
#include "levy/membership.hpp"
#include "levy/model.hpp"

namespace levy {

/// A law carried through the factorization pipeline: triple plus exponent.
struct LawSide {
    LevyTriple triple;
    LevyExponent exponent;
};

/// Numeric certificate of the factorization identity
/// Phi_mu + Phi_nu = Phi_{I(rho)} for mu = I(nu), nu = J(rho).
struct FactorizationCertificate {
    LawSide mu;
    LawSide nu;                      ///< the BDPD, nu = I^-1(mu)
    std::optional<LawSide> rho;      ///< J^-1(nu); absent when nu is not class U
    double identity_residual = 0.0;  ///< sup_t |Phi_mu + Phi_nu - Phi_{I(rho)}|
    double route_disagreement = 0.0; ///< exponent route vs spectral route for nu
    MembershipReport nu_report;      ///< class-U verdict(s) for nu
    Verdict rho_idlog = Verdict::undecided;
    std::vector<double> t_grid;
    double tol = 1e-6;
    bool valid = false; ///< nu in U and residual <= tol
    std::vector<Witness> witnesses;
};

struct FactorizeOptions {
    double tol = 1e-6;
    double t_max = 10.0;
    int t_nodes = 201;
    double route_tol = 1e-5; ///< exponent-vs-spectral disagreement guard
};

/// Factorization pipeline on mu in class L: recover the BDPD nu by both the
/// exponent route (t Phi') and the spectral route (tail differentiation,
/// doubled Gaussian variance, shift correction), cross-check them, decide
/// whether nu is s-selfdecomposable, and if so recover rho and certify the
/// identity residual. Throws NotClassL / RouteDisagreement.
FactorizationCertificate factorize(const LevyTriple& mu, const FactorizeOptions& opt = {});
FactorizationCertificate factorize(const LevyTriple& mu, const LevyExponent& mu_exponent,
                                   const FactorizeOptions& opt = {});

struct IdentityReport {
    double residual_nu_eq_J_rho = 0.0;   ///< sup |Phi_nu - J(Phi_rho)|
    double residual_factorization = 0.0; ///< sup |I(Phi_nu) + Phi_nu - I(Phi_rho)|
    double tol = 1e-6;
    bool pass = false;
};

/// Residuals of the two characteristic-function identities linking nu and
/// rho, reported regardless of magnitude.
IdentityReport verify_identity(const LevyExponent& nu, const LevyExponent& rho, double t_max,
                               double tol);

/// Triple-level inverse of I: spectral tails differentiated, Gaussian
/// variance doubled, shift corrected by the centering term.
LevyTriple invert_I_triple(const LevyTriple& mu);

/// Triple-level inverse of J: variance tripled, spectral inverse with atom
/// emission, shift corrected.
LevyTriple invert_J_triple(const LevyTriple& nu);

} // namespace levy

#include "levy/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "levy/quadrature.hpp"
#include "levy/spectral_transforms.hpp"

namespace levy {

namespace {

// ∫_{|x|>1} sgn(x)/|x| dG, the first-order centering term of the J map.
double j_shift_moment(const SpectralDensityPair& G) {
    double corr = 0.0;
    QuadratureOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_floor = 1e-30;
    if (!G.pos.is_zero)
        corr += integrate_to_infinity([&](double x) { return G.pos(x) / x; }, 1.0, opt).value;
    if (!G.neg.is_zero)
        corr -= integrate_to_infinity([&](double x) { return G.neg(x) / x; }, 1.0, opt).value;
    for (const Atom& a : G.atoms)
        if (std::abs(a.location) > 1.0)
            corr += (a.location > 0 ? 1.0 : -1.0) * a.mass / std::abs(a.location);
    return corr;
}

// Deterministic sup over a fixed grid; points are evaluated in parallel
// into slots, then reduced in index order.
double sup_on_grid(const std::vector<double>& grid, const std::function<double(double)>& f) {
    std::vector<double> vals(grid.size());
    const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i)
        vals[static_cast<std::size_t>(i)] = f(grid[static_cast<std::size_t>(i)]);
    double worst = 0.0;
    for (double v : vals) worst = std::max(worst, v);
    return worst;
}

} // namespace

LevyTriple invert_I_triple(const LevyTriple& mu) {
    LevyTriple nu;
    nu.gaussian_var = 2.0 * mu.gaussian_var;
    auto inv = spectral_invert_I(mu.spectral);
    nu.spectral = inv.spectral;
    // a_mu = a_nu + tail_G(1+) - tail_G(1-); tail_G(r) = r m_M(r)
    const double tp = mu.spectral.pos.is_zero ? 0.0 : mu.spectral.pos(1.0);
    const double tn = mu.spectral.neg.is_zero ? 0.0 : mu.spectral.neg(1.0);
    nu.shift = mu.shift - (tp - tn);
    return nu;
}

LevyTriple invert_J_triple(const LevyTriple& nu) {
    LevyTriple rho;
    rho.gaussian_var = 3.0 * nu.gaussian_var;
    auto inv = spectral_invert_J(nu.spectral);
    rho.spectral = inv.spectral;
    // a_nu = a_rho/2 + (1/2) ∫_{|x|>1} sgn(x)/|x| dG_rho
    rho.shift = 2.0 * nu.shift - j_shift_moment(rho.spectral);
    return rho;
}

FactorizationCertificate factorize(const LevyTriple& mu, const FactorizeOptions& opt) {
    return factorize(mu, lk_exponent(mu), opt);
}

FactorizationCertificate factorize(const LevyTriple& mu, const LevyExponent& mu_exponent,
                                   const FactorizeOptions& opt) {
    FactorizationCertificate cert;
    cert.tol = opt.tol;
    cert.mu = {mu, mu_exponent};
    cert.t_grid = symmetric_t_grid(opt.t_max, opt.t_nodes);

    {
        MembershipReport mu_rep = classify(mu, 0);
        if (mu_rep.at("L") != Verdict::yes) {
            std::ostringstream msg;
            msg << "factorize: input is not class L (verdict " << to_string(mu_rep.at("L"))
                << ")";
            throw NotClassL(msg.str());
        }
    }

    // nu by both routes
    cert.nu.triple = invert_I_triple(mu);
    LevyExponent nu_exp = invert_I(cert.mu.exponent).exponent;
    cert.nu.exponent = nu_exp;
    {
        LevyExponent nu_spec = lk_exponent(cert.nu.triple);
        cert.route_disagreement = sup_on_grid(cert.t_grid, [&](double t) {
            return std::abs(nu_exp(t) - nu_spec(t));
        });
        if (cert.route_disagreement > opt.route_tol) {
            std::ostringstream msg;
            msg << "factorize: exponent and spectral routes to nu differ by "
                << cert.route_disagreement;
            throw RouteDisagreement(msg.str());
        }
    }

    cert.nu_report = classify(cert.nu.triple, 0);
    if (cert.nu_report.at("U") != Verdict::yes) {
        // mu in L \ L^f: certificate records the U-violation witness
        cert.valid = false;
        cert.witnesses = cert.nu_report.witnesses;
        return cert;
    }

    LawSide rho;
    rho.triple = invert_J_triple(cert.nu.triple);
    rho.exponent = invert_J(cert.nu.exponent).exponent;
    cert.rho = rho;
    cert.rho_idlog = is_ID_log(rho.triple, 1);

    LevyExponent i_rho = apply_I(rho.exponent).exponent;
    const LevyExponent mu_exp_local = cert.mu.exponent;
    cert.identity_residual = sup_on_grid(cert.t_grid, [&](double t) {
        return std::abs(mu_exp_local(t) + nu_exp(t) - i_rho(t));
    });
    cert.valid = cert.identity_residual <= opt.tol;
    return cert;
}

IdentityReport verify_identity(const LevyExponent& nu, const LevyExponent& rho, double t_max,
                               double tol) {
    IdentityReport rep;
    rep.tol = tol;
    auto grid = symmetric_t_grid(t_max, 101);
    LevyExponent j_rho = apply_J(rho).exponent;
    LevyExponent i_nu = apply_I(nu).exponent;
    LevyExponent i_rho = apply_I(rho).exponent;
    rep.residual_nu_eq_J_rho =
        sup_on_grid(grid, [&](double t) { return std::abs(nu(t) - j_rho(t)); });
    rep.residual_factorization = sup_on_grid(
        grid, [&](double t) { return std::abs(i_nu(t) + nu(t) - i_rho(t)); });
    rep.pass = rep.residual_nu_eq_J_rho <= tol && rep.residual_factorization <= tol;
    return rep;
}

} // namespace levy

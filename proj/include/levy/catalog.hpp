#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "levy/membership.hpp"
#include "levy/model.hpp"

namespace levy {

enum class SamplerKind { generic, gaussian_exact, stable_cms };

/// A closed-form fixture: exponent, triple, and the class verdicts it is
/// known to satisfy. Exponent and triple are mutually consistent (the
/// Lévy-Khintchine quadrature of the triple reproduces the exponent).
struct DistributionSpec {
    std::string name;
    std::map<std::string, double> params;
    LevyExponent exponent;
    LevyTriple triple;
    std::map<std::string, Verdict> known_classes;
    bool smooth = true; ///< density smooth on (0,inf); piecewise fixtures are not
    SamplerKind sampler = SamplerKind::generic;
    std::string note;
    /// companion closed forms (e.g. the BDPD factor and the product law of
    /// the stochastic-area identity)
    std::vector<std::pair<std::string, LevyExponent>> extra_exponents;

    const LevyExponent* extra(const std::string& key) const;
};

DistributionSpec make_gaussian(double var);
/// Symmetric alpha-stable with exponent -scale|t|^alpha, 0 < alpha < 2
/// (the alpha -> 2 boundary is make_gaussian).
DistributionSpec make_stable(double alpha, double scale);
DistributionSpec make_gamma(double alpha, double lambda);
DistributionSpec make_sym_gamma(double alpha);
/// Bessel law as the convolution gamma(alpha,1) * Pois(alpha*gamma(1,1)).
DistributionSpec make_bessel(double alpha);
/// Law of sum a_k eta_k for i.i.d. Laplace eta (finite list of
/// coefficients; use_first = 0 keeps all).
DistributionSpec make_laplace_series(const std::vector<double>& coeffs,
                                     std::size_t use_first = 0);
/// Conditioned Lévy stochastic-area law: class-L factor tu/sinh(tu), its
/// BDPD factor exp(1 - tu coth tu) and the product, with the exact
/// geometric-sum spectral density.
DistributionSpec make_levy_area(double u);
DistributionSpec make_wenocur();
/// Triple [a, 0, K_{alpha,beta,z}] with density alpha(beta/v - 1) on
/// (0,beta); sign = +1/-1 selects the half-line.
DistributionSpec make_K_measure(double alpha, double beta, int sign);
DistributionSpec make_comp_poisson_exp(double alpha, double lambda);

std::vector<std::string> catalog_names();
/// Build a fixture by catalog name with named parameters (missing ones
/// default); throws ParamOutOfRange for unknown names/params.
DistributionSpec make_by_name(const std::string& name,
                              const std::map<std::string, double>& params);

} // namespace levy

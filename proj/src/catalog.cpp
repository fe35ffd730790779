#include "levy/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "levy/quadrature.hpp"

namespace levy {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ParamOutOfRange(msg);
}

std::map<std::string, Verdict> all_yes() {
    return {{"ID_log", Verdict::yes}, {"U", Verdict::yes},   {"L", Verdict::yes},
            {"Lf", Verdict::yes},     {"L1", Verdict::yes},  {"L1f", Verdict::yes},
            {"L2", Verdict::yes}};
}

std::map<std::string, Verdict> selfdec_not_l1() {
    return {{"ID_log", Verdict::yes}, {"U", Verdict::yes},  {"L", Verdict::yes},
            {"Lf", Verdict::yes},     {"L1", Verdict::no},  {"L1f", Verdict::no},
            {"L2", Verdict::no}};
}

// ∫_0^inf (1-cos v) v^{-1-alpha} dv, the symmetric-stable normalization.
double stable_k(double alpha) {
    if (std::abs(alpha - 1.0) < 1e-6) return M_PI / (2.0 * alpha);
    return std::tgamma(2.0 - alpha) * std::cos(M_PI * alpha / 2.0) /
           (alpha * (1.0 - alpha));
}

// series_scale * sum_{k>=0} E1((start + k step) c); exact geometric-sum
// tails of the Laplace-product densities.
double e1_series_tail(double c, int step, double start, double series_scale) {
    double sum = 0.0;
    for (int k = 0; k < 2000000; ++k) {
        const double arg = (start + k * step) * c;
        if (arg > 700.0) break;
        const double term = expint_e1(arg);
        sum += term;
        if (term < 1e-17 * std::max(sum, 1e-300)) break;
    }
    return series_scale * sum;
}

// ∫_c^inf dy / (y (e^y - 1)): E1 series for c >= 0.01, otherwise the
// Bernoulli expansion of 1/(e^y - 1) integrated over [c, 1/2] plus the
// series from 1/2 (truncation below 1e-9 absolute).
double bose_log_tail(double c) {
    if (c >= 0.01) return e1_series_tail(c, 1, 1.0, 1.0);
    const double b = 0.5;
    auto F = [](double y) {
        const double y2 = y * y;
        return -1.0 / y - 0.5 * std::log(y) + y / 12.0 - y * y2 / 2160.0 +
               y2 * y2 * y / 151200.0;
    };
    return F(b) - F(c) + e1_series_tail(b, 1, 1.0, 1.0);
}

// ∫_c^inf dy / (4 y sinh y): odd-index E1 series for c >= 0.01, otherwise
// the Laurent expansion of 1/sinh y over [c, 1/2] plus the series tail.
double csch_log_tail(double c) {
    if (c >= 0.01) return e1_series_tail(c, 2, 1.0, 0.5);
    const double b = 0.5;
    auto F = [](double y) {
        const double y2 = y * y;
        return 0.25 * (-1.0 / y - y / 6.0 + 7.0 * y * y2 / 1080.0 -
                       31.0 * y2 * y2 * y / 75600.0);
    };
    return F(b) - F(c) + e1_series_tail(b, 2, 1.0, 0.5);
}

} // namespace

const LevyExponent* DistributionSpec::extra(const std::string& key) const {
    for (const auto& [k, e] : extra_exponents)
        if (k == key) return &e;
    return nullptr;
}

DistributionSpec make_gaussian(double var) {
    require(var >= 0.0, "make_gaussian: var must be >= 0");
    DistributionSpec s;
    s.name = "gaussian";
    s.params = {{"var", var}};
    s.exponent.label = "gaussian";
    s.exponent.eval = [var](double t) { return Complex(-0.5 * var * t * t, 0.0); };
    s.triple.gaussian_var = var;
    s.triple.spectral = SpectralDensityPair::zero();
    s.known_classes = all_yes();
    s.sampler = SamplerKind::gaussian_exact;
    s.note = "pure Gaussian; member of every L_n";
    return s;
}

DistributionSpec make_stable(double alpha, double scale) {
    require(alpha > 0.0 && alpha < 2.0,
            "make_stable: need 0 < alpha < 2 (the alpha=2 boundary is make_gaussian)");
    require(scale > 0.0, "make_stable: scale must be > 0");
    const double c = scale / (2.0 * stable_k(alpha));
    DistributionSpec s;
    s.name = "stable";
    s.params = {{"alpha", alpha}, {"scale", scale}};
    s.exponent.label = "stable";
    s.exponent.eval = [alpha, scale](double t) {
        return Complex(-scale * std::pow(std::abs(t), alpha), 0.0);
    };
    TailDensity m;
    m.density = [c, alpha](double r) { return c * std::pow(r, -1.0 - alpha); };
    m.derivative = [c, alpha](double r) {
        return -c * (1.0 + alpha) * std::pow(r, -2.0 - alpha);
    };
    m.tail = [c, alpha](double r) { return c * std::pow(r, -alpha) / alpha; };
    s.triple.spectral.pos = m;
    s.triple.spectral.neg = m;
    s.known_classes = all_yes();
    s.sampler = SamplerKind::stable_cms;
    s.note = "symmetric stable; fixed point of I and J up to scale";
    return s;
}

DistributionSpec make_gamma(double alpha, double lambda) {
    require(alpha > 0.0 && lambda > 0.0, "make_gamma: alpha, lambda must be > 0");
    DistributionSpec s;
    s.name = "gamma";
    s.params = {{"alpha", alpha}, {"lambda", lambda}};
    s.exponent.label = "gamma";
    s.exponent.eval = [alpha, lambda](double t) {
        return -alpha * std::log(Complex(1.0, -t / lambda));
    };
    TailDensity m;
    m.density = [alpha, lambda](double x) { return alpha * std::exp(-lambda * x) / x; };
    m.derivative = [alpha, lambda](double x) {
        return -alpha * std::exp(-lambda * x) * (lambda * x + 1.0) / (x * x);
    };
    m.tail = [alpha, lambda](double x) { return alpha * expint_e1(lambda * x); };
    s.triple.spectral.pos = m;
    s.triple.spectral.neg = TailDensity::zero();
    s.triple.shift = alpha / lambda * (1.0 - std::exp(-lambda));
    s.known_classes = selfdec_not_l1();
    s.note = "selfdecomposable with compound-Poisson-exponential BDRV";
    return s;
}

DistributionSpec make_sym_gamma(double alpha) {
    require(alpha > 0.0, "make_sym_gamma: alpha must be > 0");
    DistributionSpec s;
    s.name = "sym-gamma";
    s.params = {{"alpha", alpha}};
    s.exponent.label = "sym-gamma";
    s.exponent.eval = [alpha](double t) {
        return Complex(-alpha * std::log1p(t * t), 0.0);
    };
    TailDensity m;
    m.density = [alpha](double x) { return alpha * std::exp(-x) / x; };
    m.derivative = [alpha](double x) {
        return -alpha * std::exp(-x) * (x + 1.0) / (x * x);
    };
    m.tail = [alpha](double x) { return alpha * expint_e1(x); };
    s.triple.spectral.pos = m;
    s.triple.spectral.neg = m;
    s.known_classes = selfdec_not_l1();
    s.note = "difference of two independent gamma(alpha,1) variables";
    return s;
}

DistributionSpec make_bessel(double alpha) {
    require(alpha > 0.0, "make_bessel: alpha must be > 0");
    DistributionSpec s;
    s.name = "bessel";
    s.params = {{"alpha", alpha}};
    s.exponent.label = "bessel";
    s.exponent.eval = [alpha](double t) -> Complex {
        const Complex den(1.0, -t);
        return -alpha * std::log(den) + alpha * (1.0 / den - 1.0);
    };
    TailDensity m;
    m.density = [alpha](double x) { return alpha * std::exp(-x) * (1.0 / x + 1.0); };
    m.derivative = [alpha](double x) {
        return -alpha * std::exp(-x) * (1.0 / x + 1.0 + 1.0 / (x * x));
    };
    m.tail = [alpha](double x) { return alpha * (expint_e1(x) + std::exp(-x)); };
    s.triple.spectral.pos = m;
    s.triple.spectral.neg = TailDensity::zero();
    s.triple.shift = alpha * (2.0 - 3.0 * std::exp(-1.0));
    s.known_classes = {{"ID_log", Verdict::yes}, {"U", Verdict::yes}, {"L", Verdict::yes},
                       {"Lf", Verdict::no},      {"L1", Verdict::no}, {"L1f", Verdict::no},
                       {"L2", Verdict::no}};
    s.note = "gamma(alpha,1) * Pois(alpha gamma(1,1)); selfdecomposable but r m(r) "
             "is concave near 0";
    return s;
}

DistributionSpec make_laplace_series(const std::vector<double>& coeffs, std::size_t use_first) {
    std::size_t K = use_first == 0 ? coeffs.size() : std::min(use_first, coeffs.size());
    require(K >= 1, "make_laplace_series: need at least one coefficient");
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        if (!(coeffs[k] > 0.0) || !std::isfinite(coeffs[k]))
            throw DivergentCoefficients("make_laplace_series: coefficients must be positive "
                                        "and finite");
        sum_sq += coeffs[k] * coeffs[k];
    }
    if (!std::isfinite(sum_sq))
        throw DivergentCoefficients("make_laplace_series: sum of squares diverges");
    auto a = std::make_shared<std::vector<double>>(coeffs.begin(),
                                                   coeffs.begin() + static_cast<long>(K));
    DistributionSpec s;
    s.name = "laplace-series";
    s.params = {{"k", static_cast<double>(K)}};
    s.exponent.label = "laplace-series";
    s.exponent.eval = [a](double t) {
        double v = 0.0;
        for (double ak : *a) v -= std::log1p(ak * ak * t * t);
        return Complex(v, 0.0);
    };
    TailDensity m;
    m.density = [a](double x) {
        double v = 0.0;
        for (double ak : *a) v += std::exp(-x / ak);
        return v / x;
    };
    m.derivative = [a](double x) {
        double v = 0.0;
        for (double ak : *a) v += std::exp(-x / ak) * (1.0 / (ak * x) + 1.0 / (x * x));
        return -v;
    };
    m.tail = [a](double x) {
        double v = 0.0;
        for (double ak : *a) v += expint_e1(x / ak);
        return v;
    };
    s.triple.spectral.pos = m;
    s.triple.spectral.neg = m;
    s.known_classes = selfdec_not_l1();
    s.note = "finite sum of scaled i.i.d. Laplace variables; exact for the given "
             "coefficient list";
    return s;
}

DistributionSpec make_levy_area(double u) {
    require(u > 0.0, "make_levy_area: u must be > 0");
    DistributionSpec s;
    s.name = "levy-area";
    s.params = {{"u", u}};
    // class-L factor tu/sinh(tu); removable singularity handled by series
    s.exponent.label = "levy-area-factor";
    s.exponent.eval = [u](double t) -> Complex {
        const double z = t * u;
        if (std::abs(z) < 0.02) {
            // log(sinh z / z) = z^2/6 - z^4/180 + z^6/2835 - ...
            const double z2 = z * z;
            return Complex(-z2 / 6.0 + z2 * z2 / 180.0 - z2 * z2 * z2 / 2835.0, 0.0);
        }
        // log(z/sinh z) computed from |z| (even function), overflow-safe
        const double az = std::abs(z);
        const double log_sinh = az + std::log1p(-std::exp(-2.0 * az)) - std::log(2.0);
        return Complex(std::log(az) - log_sinh, 0.0);
    };
    LevyExponent bdpd;
    bdpd.label = "levy-area-bdpd";
    bdpd.eval = [u](double t) -> Complex {
        const double z = t * u;
        if (std::abs(z) < 0.02) {
            // 1 - z coth z = -z^2/3 + z^4/45 - 2 z^6/945 + ...
            const double z2 = z * z;
            return Complex(-z2 / 3.0 + z2 * z2 / 45.0 - 2.0 * z2 * z2 * z2 / 945.0, 0.0);
        }
        const double az = std::abs(z);
        const double e2 = std::exp(-2.0 * az);
        const double coth = (1.0 + e2) / (1.0 - e2);
        return Complex(1.0 - az * coth, 0.0);
    };
    LevyExponent product;
    product.label = "levy-area-product";
    auto factor_eval = s.exponent.eval;
    auto bdpd_eval = bdpd.eval;
    product.eval = [factor_eval, bdpd_eval](double t) { return factor_eval(t) + bdpd_eval(t); };
    s.extra_exponents.emplace_back("bdpd", bdpd);
    s.extra_exponents.emplace_back("product", product);

    // exact spectral density of the K->infinity Laplace series with
    // a_k = u/(k pi): sum of e^{-k pi x / u}/x is a geometric sum
    TailDensity m;
    m.density = [u](double x) {
        const double z = M_PI * x / u;
        const double em1 = std::expm1(z);
        return std::isfinite(em1) ? 1.0 / (x * em1) : 0.0;
    };
    m.derivative = [u](double x) {
        const double z = M_PI * x / u;
        const double em1 = std::expm1(z);
        if (!std::isfinite(em1)) return 0.0;
        const double dens = 1.0 / (x * em1);
        const double ratio = 1.0 / (-std::expm1(-z)); // e^z/(e^z - 1)
        return -dens * (1.0 / x + (M_PI / u) * ratio);
    };
    m.tail = [u](double r) { return bose_log_tail(M_PI * r / u); };
    s.triple.spectral.pos = m;
    s.triple.spectral.neg = m;
    s.known_classes = {{"ID_log", Verdict::yes},
                       {"U", Verdict::yes},
                       {"L", Verdict::yes},
                       {"Lf", Verdict::yes}};
    s.note = "conditioned stochastic-area law: tu/sinh(tu) factor with BDPD "
             "exp(1 - tu coth tu)";
    return s;
}

DistributionSpec make_wenocur() {
    DistributionSpec s;
    s.name = "wenocur";
    s.exponent.label = "wenocur-factor";
    s.exponent.eval = [](double t) -> Complex {
        const double at = std::abs(t);
        if (at < 0.02) {
            // log cosh t = t^2/2 - t^4/12 + t^6/45 - ...
            const double t2 = at * at;
            return Complex(-0.5 * (t2 / 2.0 - t2 * t2 / 12.0 + t2 * t2 * t2 / 45.0), 0.0);
        }
        // log cosh t = |t| - log 2 + log1p(e^{-2|t|})
        const double log_cosh = at - std::log(2.0) + std::log1p(std::exp(-2.0 * at));
        return Complex(-0.5 * log_cosh, 0.0);
    };
    LevyExponent bdpd;
    bdpd.label = "wenocur-bdpd";
    bdpd.eval = [](double t) { return Complex(-0.5 * t * std::tanh(t), 0.0); };
    LevyExponent product;
    product.label = "wenocur-product";
    auto factor_eval = s.exponent.eval;
    auto bdpd_eval = bdpd.eval;
    product.eval = [factor_eval, bdpd_eval](double t) { return factor_eval(t) + bdpd_eval(t); };
    s.extra_exponents.emplace_back("bdpd", bdpd);
    s.extra_exponents.emplace_back("product", product);

    // (cosh t)^{-1/2} = half the Laplace series with a_k = 2/((2k-1)pi);
    // the geometric sum over odd indices gives 1/(4 x sinh(pi x / 2))
    TailDensity m;
    m.density = [](double x) {
        const double z = M_PI * x / 2.0;
        if (z > 700.0) return 0.0;
        const double sinh_z = std::sinh(z);
        return std::isfinite(sinh_z) ? 1.0 / (4.0 * x * sinh_z) : 0.0;
    };
    m.derivative = [](double x) {
        const double z = M_PI * x / 2.0;
        if (z > 700.0) return 0.0;
        const double dens = 1.0 / (4.0 * x * std::sinh(z));
        const double e2 = std::exp(-2.0 * z);
        const double coth = (1.0 + e2) / (1.0 - e2);
        return -dens * (1.0 / x + (M_PI / 2.0) * coth);
    };
    m.tail = [](double r) { return csch_log_tail(M_PI * r / 2.0); };
    s.triple.spectral.pos = m;
    s.triple.spectral.neg = m;
    s.known_classes = {{"ID_log", Verdict::yes},
                       {"U", Verdict::yes},
                       {"L", Verdict::yes},
                       {"Lf", Verdict::yes}};
    s.note = "Wenocur integral factor (cosh t)^{-1/2} with BDPD exp(-t tanh(t)/2)";
    return s;
}

DistributionSpec make_K_measure(double alpha, double beta, int sign) {
    require(alpha > 0.0 && beta > 0.0, "make_K_measure: alpha, beta must be > 0");
    require(sign == 1 || sign == -1, "make_K_measure: sign must be +1 or -1");
    DistributionSpec s;
    s.name = "k-measure";
    s.params = {{"alpha", alpha}, {"beta", beta}, {"sign", static_cast<double>(sign)}};
    TailDensity m;
    m.density = [alpha, beta](double v) { return v < beta ? alpha * (beta / v - 1.0) : 0.0; };
    m.derivative = [alpha, beta](double v) { return v < beta ? -alpha * beta / (v * v) : 0.0; };
    m.tail = [alpha, beta](double r) {
        return r < beta ? alpha * (beta * std::log(beta / r) - (beta - r)) : 0.0;
    };
    if (sign == 1) {
        s.triple.spectral.pos = m;
        s.triple.spectral.neg = TailDensity::zero();
    } else {
        s.triple.spectral.pos = TailDensity::zero();
        s.triple.spectral.neg = m;
    }
    const double mm = std::min(1.0, beta);
    s.triple.shift = sign * alpha * (beta * mm - mm * mm / 2.0);
    s.exponent = lk_exponent(s.triple);
    s.exponent.label = "k-measure";
    s.smooth = false; // density kink at beta
    s.known_classes = {{"ID_log", Verdict::yes}, {"U", Verdict::yes}, {"L", Verdict::yes},
                       {"Lf", Verdict::yes},     {"L1", Verdict::no}, {"L1f", Verdict::no},
                       {"L2", Verdict::no}};
    s.note = "I(J(c delta_b)) image measure; factorization property by construction";
    return s;
}

DistributionSpec make_comp_poisson_exp(double alpha, double lambda) {
    require(alpha > 0.0 && lambda > 0.0, "make_comp_poisson_exp: alpha, lambda must be > 0");
    DistributionSpec s;
    s.name = "comp-poisson-exp";
    s.params = {{"alpha", alpha}, {"lambda", lambda}};
    s.exponent.label = "comp-poisson-exp";
    s.exponent.eval = [alpha, lambda](double t) -> Complex {
        return alpha * (lambda / Complex(lambda, -t) - 1.0);
    };
    TailDensity g;
    g.density = [alpha, lambda](double x) { return alpha * lambda * std::exp(-lambda * x); };
    g.derivative = [alpha, lambda](double x) {
        return -alpha * lambda * lambda * std::exp(-lambda * x);
    };
    g.tail = [alpha, lambda](double x) { return alpha * std::exp(-lambda * x); };
    s.triple.spectral.pos = g;
    s.triple.spectral.neg = TailDensity::zero();
    s.triple.shift = alpha * ((1.0 - std::exp(-lambda)) / lambda - std::exp(-lambda));
    s.known_classes = {{"ID_log", Verdict::yes}, {"U", Verdict::yes}, {"L", Verdict::no},
                       {"Lf", Verdict::no},      {"L1", Verdict::no}, {"L1f", Verdict::no},
                       {"L2", Verdict::no}};
    s.note = "Pois(alpha gamma(1,lambda)); s-selfdecomposable (s-stable), not class L";
    return s;
}

std::vector<std::string> catalog_names() {
    return {"gaussian",   "stable",    "gamma",     "sym-gamma",        "bessel",
            "laplace-series", "levy-area", "wenocur", "k-measure", "comp-poisson-exp"};
}

DistributionSpec make_by_name(const std::string& name,
                              const std::map<std::string, double>& params) {
    auto get = [&](const char* key, double dflt) {
        auto it = params.find(key);
        return it == params.end() ? dflt : it->second;
    };
    auto known_keys = [&](std::initializer_list<const char*> keys) {
        for (const auto& [k, v] : params) {
            (void)v;
            if (std::find_if(keys.begin(), keys.end(),
                             [&](const char* s) { return k == s; }) == keys.end())
                throw ParamOutOfRange("unknown parameter '" + k + "' for catalog entry '" +
                                      name + "'");
        }
    };
    if (name == "gaussian") {
        known_keys({"var"});
        return make_gaussian(get("var", 1.0));
    }
    if (name == "stable") {
        known_keys({"alpha", "scale"});
        return make_stable(get("alpha", 1.5), get("scale", 1.0));
    }
    if (name == "gamma") {
        known_keys({"alpha", "lambda"});
        return make_gamma(get("alpha", 2.0), get("lambda", 1.0));
    }
    if (name == "sym-gamma") {
        known_keys({"alpha"});
        return make_sym_gamma(get("alpha", 1.0));
    }
    if (name == "bessel") {
        known_keys({"alpha"});
        return make_bessel(get("alpha", 1.0));
    }
    if (name == "laplace-series") {
        known_keys({"u", "k"});
        const double u = get("u", 1.0);
        const int K = static_cast<int>(get("k", 100));
        require(K >= 1 && K <= 2000000, "laplace-series: k out of range");
        require(u > 0.0, "laplace-series: u must be > 0");
        std::vector<double> a(static_cast<std::size_t>(K));
        for (int k = 1; k <= K; ++k) a[static_cast<std::size_t>(k - 1)] = u / (k * M_PI);
        return make_laplace_series(a);
    }
    if (name == "levy-area") {
        known_keys({"u"});
        return make_levy_area(get("u", 1.0));
    }
    if (name == "wenocur") {
        known_keys({});
        return make_wenocur();
    }
    if (name == "k-measure") {
        known_keys({"alpha", "beta", "sign"});
        return make_K_measure(get("alpha", 1.0), get("beta", 1.0),
                              static_cast<int>(get("sign", 1.0)));
    }
    if (name == "comp-poisson-exp") {
        known_keys({"alpha", "lambda"});
        return make_comp_poisson_exp(get("alpha", 1.0), get("lambda", 1.0));
    }
    throw ParamOutOfRange("unknown catalog entry '" + name + "'");
}

} // namespace levy

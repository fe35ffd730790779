#include "levy/membership.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levy/quadrature.hpp"
#include "levy/spectral_transforms.hpp"

namespace levy {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        default: return "undecided";
    }
}

Verdict combine(Verdict a, Verdict b) {
    if (a == Verdict::no || b == Verdict::no) return Verdict::no;
    if (a == Verdict::undecided || b == Verdict::undecided) return Verdict::undecided;
    return Verdict::yes;
}

Verdict MembershipReport::at(const std::string& cls) const {
    auto it = verdicts.find(cls);
    return it == verdicts.end() ? Verdict::undecided : it->second;
}

// ---------------------------------------------------------------------------
// Logarithmic moments
// ---------------------------------------------------------------------------

LogMomentReport log_moment_report(const SpectralDensityPair& spectral, int order) {
    LogMomentReport rep;
    rep.value = 0.0;
    for (const Atom& a : spectral.atoms) {
        const double r = std::abs(a.location);
        if (r > 1.0) rep.value += std::pow(std::log1p(r), order) * a.mass;
    }
    if (spectral.pos.is_zero && spectral.neg.is_zero) {
        rep.verdict = Verdict::yes;
        return rep;
    }

    constexpr int kDecades = 20;
    const double ln10 = std::log(10.0);
    auto integrand = [&](double y) {
        const double r = std::exp(y);
        return std::pow(std::log1p(r), order) * (spectral.pos(r) + spectral.neg(r)) * r;
    };
    std::vector<double> chunk;
    double total = 0.0;
    for (int k = 0; k < kDecades; ++k) {
        QuadratureOptions opt;
        opt.rel_tol = 1e-8;
        opt.abs_floor = std::max(1e-12 * total, 1e-280);
        opt.noise_rel = 1e-8;
        const double c = integrate(integrand, k * ln10, (k + 1) * ln10, opt).value;
        chunk.push_back(std::max(c, 0.0));
        total += chunk.back();
        if (k >= 2 && chunk.back() <= 1e-13 * std::max(total, 1e-280)) {
            rep.verdict = Verdict::yes;
            rep.value += total;
            return rep;
        }
    }
    rep.value += total;

    // geometric decline -> finite with a remainder bound
    double qbar = 0.0;
    for (int k = kDecades - 3; k < kDecades; ++k) {
        if (chunk[static_cast<std::size_t>(k - 1)] <= 0.0) continue;
        qbar = std::max(qbar, chunk[static_cast<std::size_t>(k)] /
                                  chunk[static_cast<std::size_t>(k - 1)]);
    }
    if (qbar > 0.0 && qbar <= 0.9) {
        rep.verdict = Verdict::yes;
        rep.remainder_bound = chunk.back() * qbar / (1.0 - qbar);
        return rep;
    }

    // nondecreasing chunks -> divergent
    bool nondecreasing = true;
    for (int k = kDecades - 3; k < kDecades; ++k)
        if (chunk[static_cast<std::size_t>(k)] <
            chunk[static_cast<std::size_t>(k - 1)] * (1.0 - 1e-9))
            nondecreasing = false;
    if (nondecreasing && chunk.back() > 0.0) {
        rep.verdict = Verdict::no;
        rep.witness_decade = kDecades - 1;
        return rep;
    }

    // harmonic signature: chunk_k ~ c k^-p with p <= 1.05 diverges
    const double ca = chunk[kDecades - 5];
    const double cb = chunk[kDecades - 1];
    if (ca > 0.0 && cb > 0.0) {
        const double p_hat =
            std::log(ca / cb) / std::log(static_cast<double>(kDecades) / (kDecades - 4));
        if (p_hat <= 1.05) {
            rep.verdict = Verdict::no;
            rep.witness_decade = kDecades - 1;
            return rep;
        }
    }
    rep.verdict = Verdict::undecided;
    return rep;
}

Verdict is_ID_log(const LevyTriple& triple, int order) {
    if (order < 1) throw Error("is_ID_log: order must be >= 1");
    return log_moment_report(triple.spectral, order).verdict;
}

// ---------------------------------------------------------------------------
// Class criteria on the atom-free grid
// ---------------------------------------------------------------------------

namespace {

struct CriterionTest {
    Verdict verdict = Verdict::yes;
    Witness witness;
    GridFunction criterion;
};

std::vector<double> atom_free_grid(const SpectralDensityPair& s, Direction d) {
    auto grid = standard_radial_grid();
    if (s.atoms.empty()) return grid;
    std::vector<double> out;
    out.reserve(grid.size());
    for (double r : grid) {
        bool near = false;
        for (const Atom& a : s.atoms) {
            const double loc = d == Direction::pos ? a.location : -a.location;
            if (loc > 0 && std::abs(r - loc) <= 1e-3 * loc) near = true;
        }
        if (!near) out.push_back(r);
    }
    return out;
}

// fn must be nonincreasing along the grid up to slack; violations above
// `hard` (relative) fail, in between stays undecided.
CriterionTest test_nonincreasing(const RealFn& fn, const std::vector<double>& grid,
                                 Direction dir, const std::string& cls, double slack,
                                 double hard) {
    CriterionTest t;
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = fn(grid[i]);
    double worst = 0.0;
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double scale = std::max({std::abs(v[i]), std::abs(v[i + 1]), 1e-300});
        const double viol = (v[i + 1] - v[i]) / scale;
        if (viol > worst) {
            worst = viol;
            worst_i = i;
        }
    }
    t.criterion = GridFunction(grid, v);
    if (worst <= slack) {
        t.verdict = Verdict::yes;
    } else {
        t.verdict = worst >= hard ? Verdict::no : Verdict::undecided;
        t.witness = {cls, dir, grid[worst_i], grid[worst_i + 1], worst};
    }
    return t;
}

// Discrete convexity: each interior value sits at or below the chord of
// its neighbours (up to slack, relative to the local scale).
CriterionTest test_convex(const RealFn& fn, const std::vector<double>& grid, Direction dir,
                          const std::string& cls, double slack, double hard) {
    CriterionTest t;
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = fn(grid[i]);
    double worst = 0.0;
    std::size_t worst_i = 1;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double lam = (grid[i] - grid[i - 1]) / (grid[i + 1] - grid[i - 1]);
        const double chord = (1.0 - lam) * v[i - 1] + lam * v[i + 1];
        const double scale = std::max({std::abs(v[i - 1]), std::abs(v[i]), std::abs(v[i + 1]),
                                       1e-300});
        const double viol = (v[i] - chord) / scale;
        if (viol > worst) {
            worst = viol;
            worst_i = i;
        }
    }
    t.criterion = GridFunction(grid, v);
    if (worst <= slack) {
        t.verdict = Verdict::yes;
    } else {
        t.verdict = worst >= hard ? Verdict::no : Verdict::undecided;
        t.witness = {cls, dir, grid[worst_i - 1], grid[worst_i + 1], worst};
    }
    return t;
}

CriterionTest test_nondecreasing(const RealFn& fn, const std::vector<double>& grid,
                                 Direction dir, const std::string& cls, double slack,
                                 double hard) {
    auto neg = [&fn](double r) { return -fn(r); };
    auto t = test_nonincreasing(neg, grid, dir, cls, slack, hard);
    // re-tabulate with the original sign for the report
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = fn(grid[i]);
    t.criterion = GridFunction(grid, v);
    return t;
}

struct SideTests {
    Verdict verdict = Verdict::yes;
    std::vector<Witness> witnesses;
};

// run `test` over both nonzero tails and combine
template <class F>
SideTests per_direction(const SpectralDensityPair& s, F&& test) {
    SideTests out;
    for (Direction d : {Direction::pos, Direction::neg}) {
        if (s.tail_density(d).is_zero) continue;
        CriterionTest t = test(d);
        out.verdict = combine(out.verdict, t.verdict);
        if (t.verdict != Verdict::yes) out.witnesses.push_back(t.witness);
    }
    return out;
}

Verdict class_l_of_pair(const SpectralDensityPair& s, const ClassifyOptions& opt,
                        std::vector<Witness>* wit, const std::string& cls) {
    if (s.has_atoms()) {
        if (wit)
            wit->push_back({cls, s.atoms.front().location > 0 ? Direction::pos : Direction::neg,
                            std::abs(s.atoms.front().location),
                            std::abs(s.atoms.front().location), s.atoms.front().mass});
        return Verdict::no;
    }
    auto st = per_direction(s, [&](Direction d) {
        const TailDensity& td = s.tail_density(d);
        auto grid = atom_free_grid(s, d);
        return test_nonincreasing([&td](double r) { return r * td(r); }, grid, d, cls, opt.slack,
                                  opt.hard);
    });
    if (wit)
        for (auto& w : st.witnesses) wit->push_back(w);
    return st.verdict;
}

} // namespace

MembershipReport classify(const LevyTriple& triple, int max_n) {
    ClassifyOptions opt;
    opt.max_n = max_n;
    return classify(triple, opt);
}

MembershipReport classify(const LevyTriple& triple, const ClassifyOptions& opt) {
    if (opt.max_n > 4) throw Error("classify: max_n capped at 4 (derivative noise)");
    MembershipReport rep;
    const SpectralDensityPair& s = triple.spectral;

    rep.verdicts["ID_log"] = log_moment_report(s, 1).verdict;

    // class U: density nonincreasing per tail; finite atoms break the
    // U_r-shrinking comparison outright
    if (s.has_atoms()) {
        rep.verdicts["U"] = Verdict::no;
        rep.verdicts["L"] = Verdict::no;
        rep.verdicts["Lf"] = Verdict::no;
        const Atom& a = s.atoms.front();
        rep.witnesses.push_back({"U", a.location > 0 ? Direction::pos : Direction::neg,
                                 std::abs(a.location), std::abs(a.location), a.mass});
        for (int n = 1; n <= opt.max_n; ++n) {
            rep.verdicts["L" + std::to_string(n)] = Verdict::no;
            rep.verdicts["L" + std::to_string(n) + "f"] = Verdict::no;
        }
        return rep;
    }

    auto u = per_direction(s, [&](Direction d) {
        const TailDensity& td = s.tail_density(d);
        auto grid = atom_free_grid(s, d);
        auto t = test_nonincreasing([&td](double r) { return td(r); }, grid, d, "U", opt.slack,
                                    opt.hard);
        return t;
    });
    rep.verdicts["U"] = u.verdict;
    for (auto& w : u.witnesses) rep.witnesses.push_back(w);
    for (Direction d : {Direction::pos, Direction::neg})
        if (!s.tail_density(d).is_zero) {
            auto grid = atom_free_grid(s, d);
            std::vector<double> v(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) v[i] = s.tail_density(d)(grid[i]);
            rep.criteria[std::string("U ") + to_string(d)] = GridFunction(grid, v);
        }

    // class L: r m(r) nonincreasing
    auto l = per_direction(s, [&](Direction d) {
        const TailDensity& td = s.tail_density(d);
        auto grid = atom_free_grid(s, d);
        return test_nonincreasing([&td](double r) { return r * td(r); }, grid, d, "L", opt.slack,
                                  opt.hard);
    });
    rep.verdicts["L"] = l.verdict;
    for (auto& w : l.witnesses) rep.witnesses.push_back(w);

    // factorization property: additionally r m(r) convex
    Verdict lf = rep.verdicts["L"];
    if (lf != Verdict::no) {
        auto c = per_direction(s, [&](Direction d) {
            const TailDensity& td = s.tail_density(d);
            auto grid = atom_free_grid(s, d);
            return test_convex([&td](double r) { return r * td(r); }, grid, d, "Lf", opt.slack,
                               opt.hard);
        });
        lf = combine(lf, c.verdict);
        for (auto& w : c.witnesses) rep.witnesses.push_back(w);
    }
    rep.verdicts["Lf"] = lf;
    for (Direction d : {Direction::pos, Direction::neg})
        if (!s.tail_density(d).is_zero) {
            const TailDensity& td = s.tail_density(d);
            auto grid = atom_free_grid(s, d);
            std::vector<double> v(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) v[i] = grid[i] * td(grid[i]);
            rep.criteria[std::string("L ") + to_string(d)] = GridFunction(grid, v);
        }

    // L_n chain: n-fold I-inverse stays class L at every stage
    SpectralOptions sopt;
    sopt.monotone_slack = 1e-6; // verdicts above already gate the inversion
    {
        Verdict chain = rep.verdicts["L"];
        SpectralDensityPair cur = s;
        for (int n = 1; n <= opt.max_n; ++n) {
            if (chain == Verdict::yes) {
                cur = spectral_invert_I(cur, sopt).spectral;
                chain = combine(chain, class_l_of_pair(cur, opt, &rep.witnesses,
                                                       "L" + std::to_string(n)));
            }
            rep.verdicts["L" + std::to_string(n)] = chain;
        }
    }

    // L_n^f chain: J-inverse first, then the L_n ladder
    if (opt.max_n >= 1) {
        Verdict chain = rep.verdicts["U"];
        if (chain == Verdict::yes) {
            SpectralDensityPair h = spectral_invert_J(s, sopt).spectral;
            chain = class_l_of_pair(h, opt, nullptr, "L0f");
            SpectralDensityPair cur = h;
            for (int n = 1; n <= opt.max_n; ++n) {
                if (chain == Verdict::yes) {
                    cur = spectral_invert_I(cur, sopt).spectral;
                    chain = combine(chain, class_l_of_pair(cur, opt, &rep.witnesses,
                                                           "L" + std::to_string(n) + "f"));
                }
                // interlacing: L_n^f sits below L_n in the class chain
                rep.verdicts["L" + std::to_string(n) + "f"] =
                    combine(chain, rep.verdicts["L" + std::to_string(n)]);
            }
        } else {
            for (int n = 1; n <= opt.max_n; ++n)
                rep.verdicts["L" + std::to_string(n) + "f"] = chain;
        }
    }
    return rep;
}

Verdict check_Lf_via_second_derivative(const LevyTriple& triple) {
    const SpectralDensityPair& s = triple.spectral;
    if (s.has_atoms()) return Verdict::no;
    ClassifyOptions opt;
    auto st = per_direction(s, [&](Direction d) {
        const TailDensity& td = s.tail_density(d);
        auto grid = atom_free_grid(s, d);
        // r^2 d^2 L_M / dr^2 = r^2 m'(r) must be nondecreasing
        return test_nondecreasing([&td](double r) { return r * r * td.deriv(r); }, grid, d,
                                  "Lf-2nd", opt.slack, opt.hard);
    });
    return st.verdict;
}

} // namespace levy

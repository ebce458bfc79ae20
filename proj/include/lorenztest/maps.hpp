#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

namespace lorenztest {

// ---------------------------------------------------------------------------
// Parameter records
// ---------------------------------------------------------------------------

/// Constant-slope map x -> beta*x + alpha (mod 1) on [0,1).
/// Admissible parameters: 1 < beta <= 2, alpha >= 0, alpha + beta <= 2.
struct BetaParams {
    double beta = 2.0;
    double alpha = 0.0;

    bool valid() const {
        return beta > 1.0 && beta <= 2.0 && alpha >= 0.0 && alpha + beta <= 2.0;
    }
};

/// Unique discontinuity of the beta map, x = (1 - alpha) / beta in (0, 1).
inline double beta_discontinuity(const BetaParams& p) {
    return (1.0 - p.alpha) / p.beta;
}

/// Piecewise-linear CNV neuron model. F has three linear pieces with slopes
/// -m0, m1, -m0 joined continuously at the junction points; the voltage map is
/// g(x) = x + F(x) - alpha - beta*H(x - d) with Heaviside H (H(0) = 1).
struct PlCnvParams {
    double m0 = 0.864;
    double m1 = 0.65;
    double a = 0.2;
    double d = 0.4;
    double alpha = 0.0;
    double beta = 0.0;

    bool shape_valid() const { return m0 > 0.0 && m1 > 0.0 && a > 0.0 && a < 1.0; }
};

/// Junction points of the piecewise-linear F: the pieces -m0*x and m1*(x - a)
/// meet at J_min = a*m1/(m0+m1); m1*(x - a) and -m0*(x - 1) meet at
/// J_max = (m0 + a*m1)/(m0+m1). Always 0 < J_min < J_max < 1.
inline std::pair<double, double> plcnv_junction_points(double m0, double m1, double a) {
    double s = m0 + m1;
    return {a * m1 / s, (m0 + a * m1) / s};
}

inline double plcnv_F(const PlCnvParams& p, double x) {
    auto [jmin, jmax] = plcnv_junction_points(p.m0, p.m1, p.a);
    if (x <= jmin) return -p.m0 * x;
    if (x >= jmax) return -p.m0 * (x - 1.0);
    return p.m1 * (x - p.a);
}

/// Cubic CNV neuron model: F(x) = mu*x*(x - a)*(1 - x), same voltage map as
/// the piecewise-linear version.
struct NlCnvParams {
    double mu = 1.0;
    double a = 0.2;
    double d = 0.4;
    double alpha = 0.0;
    double beta = 0.0;

    bool shape_valid() const { return mu > 0.0 && a > 0.0 && a < 1.0; }
};

/// Local minimum and maximum of the cubic F:
/// x = (a + 1 -+ sqrt(a^2 - a + 1)) / 3, with x_min < x_max.
inline std::pair<double, double> nlcnv_critical_points(double a) {
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument("nlcnv_critical_points: a must lie in (0,1)");
    double r = std::sqrt(a * a - a + 1.0);
    return {(a + 1.0 - r) / 3.0, (a + 1.0 + r) / 3.0};
}

inline double nlcnv_F(const NlCnvParams& p, double x) {
    return p.mu * x * (x - p.a) * (1.0 - x);
}

// ---------------------------------------------------------------------------
// CNV voltage map and invariant interval
// ---------------------------------------------------------------------------

/// Raw voltage map g(x) = x + F(x) - alpha - beta*H(x - d). No range clamping;
/// containment in the invariant interval is a separate check.
inline double cnv_g(const PlCnvParams& p, double x) {
    return x + plcnv_F(p, x) - p.alpha - (x >= p.d ? p.beta : 0.0);
}

inline double cnv_g(const NlCnvParams& p, double x) {
    return x + nlcnv_F(p, x) - p.alpha - (x >= p.d ? p.beta : 0.0);
}

/// Endpoints of the candidate invariant interval [b, c):
/// b = g(d) = d + F(d) - alpha - beta (the right limit at the discontinuity)
/// and c = d + F(d) - alpha (the left limit). Always c - b = beta.
inline std::pair<double, double> invariant_interval(const PlCnvParams& p) {
    double t = p.d + plcnv_F(p, p.d);
    return {t - p.alpha - p.beta, t - p.alpha};
}

inline std::pair<double, double> invariant_interval(const NlCnvParams& p) {
    double t = p.d + nlcnv_F(p, p.d);
    return {t - p.alpha - p.beta, t - p.alpha};
}

/// Inverse change of parameters: given the desired invariant interval [b, c),
/// returns (alpha, beta) = (d + F(d) - c, c - b). alpha may come out negative;
/// admissibility is governed solely by check_invariant_conditions.
inline std::pair<double, double> bc_to_alpha_beta(const PlCnvParams& p, double b, double c) {
    if (!(c > b)) throw std::invalid_argument("bc_to_alpha_beta: requires c > b");
    double t = p.d + plcnv_F(p, p.d);
    return {t - c, c - b};
}

inline std::pair<double, double> bc_to_alpha_beta(const NlCnvParams& p, double b, double c) {
    if (!(c > b)) throw std::invalid_argument("bc_to_alpha_beta: requires c > b");
    double t = p.d + nlcnv_F(p, p.d);
    return {t - c, c - b};
}

/// All six conditions for [b, c) to be an invariant interval on which the
/// piecewise-linear voltage map has constant slope 1 + m1:
/// J_min <= b, c <= J_max, b < d, d < c, g(b) >= b, g(c) < c,
/// with g built from the (alpha, beta) induced by (b, c).
inline bool check_invariant_conditions(const PlCnvParams& base, double b, double c) {
    auto [jmin, jmax] = plcnv_junction_points(base.m0, base.m1, base.a);
    if (!(jmin <= b && c <= jmax && b < base.d && base.d < c)) return false;
    PlCnvParams p = base;
    std::tie(p.alpha, p.beta) = bc_to_alpha_beta(base, b, c);
    return cnv_g(p, b) >= b && cnv_g(p, c) < c;
}

/// Cubic-model variant: x_min < b, c < x_max, b < d, d < c, g(b) >= b,
/// g(c) < c. Inside (x_min, x_max) the cubic F is increasing, so the map
/// expands on [b, c).
inline bool check_invariant_conditions(const NlCnvParams& base, double b, double c) {
    auto [xmin, xmax] = nlcnv_critical_points(base.a);
    if (!(xmin < b && c < xmax && b < base.d && base.d < c)) return false;
    NlCnvParams p = base;
    std::tie(p.alpha, p.beta) = bc_to_alpha_beta(base, b, c);
    return cnv_g(p, b) >= b && cnv_g(p, c) < c;
}

// ---------------------------------------------------------------------------
// Built-in example maps on [0, 1)
// ---------------------------------------------------------------------------

namespace detail {

// Four-branch map with flat ends: increasing but not strictly, jump at 9/20.
inline double lorenz_like_formula(double x) {
    if (x <= 0.2) return 0.4;
    if (x < 0.45) return 0.4 + 2.4 * (x - 0.2);
    if (x <= 0.6) return 4.0 * (x - 0.45);
    return 0.6;
}

// Strictly increasing exponential branches, jump at 0.45; the left branch
// climbs from 0.1 to 1 and the right branch from 0 to 0.9.
inline double expanding_formula(double x) {
    constexpr double c = 0.45;
    static const double left_den = std::exp(1.5 * c) - 1.0;
    static const double right_den = std::exp(1.5 * (1.0 - c)) - 1.0;
    if (x < c) return 0.1 + 0.9 * (std::exp(1.5 * x) - 1.0) / left_den;
    return 0.9 * (1.0 - (std::exp(1.5 * (1.0 - x)) - 1.0) / right_den);
}

}  // namespace detail

inline double lorenz_like_map(double x) {
    if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("lorenz_like_map: x outside [0,1)");
    return detail::lorenz_like_formula(x);
}

inline double expanding_example_map(double x) {
    if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("expanding_example_map: x outside [0,1)");
    return detail::expanding_formula(x);
}

// ---------------------------------------------------------------------------
// MapSpec: one interval map ready to iterate
// ---------------------------------------------------------------------------

enum class MapFamily { Beta, PlCnv, NlCnv, LorenzLikeExample, ExpandingExample };

/// A fully specified interval map: family, parameters, half-open domain
/// [domain_lo, domain_hi) and the single discontinuity inside it. Values are
/// immutable after construction and safe to share across threads.
///
/// eval() is right-continuous at the discontinuity (H(0) = 1, f(c) = f(c+))
/// and clamps sub-ulp rounding excursions back into [domain_lo, domain_hi),
/// so iterating eval() never leaves the domain.
struct MapSpec {
    MapFamily family = MapFamily::Beta;
    double domain_lo = 0.0;
    double domain_hi = 1.0;
    double discontinuity = 0.5;

    // Only the active family's record is meaningful.
    BetaParams beta_params{};
    PlCnvParams plcnv_params{};
    NlCnvParams nlcnv_params{};

    /// Map value at x. Precondition: x in [domain_lo, domain_hi); not checked.
    double eval(double x) const {
        switch (family) {
            case MapFamily::Beta: {
                double v;
                if (x >= discontinuity) {
                    v = beta_params.beta * x + beta_params.alpha - 1.0;
                } else {
                    v = beta_params.beta * x + beta_params.alpha;
                    if (v >= 1.0) v -= 1.0;  // mod-1 wrap; maps a rounded 1.0 to 0.0
                }
                return clamp_into_domain(v);
            }
            case MapFamily::PlCnv: {
                const PlCnvParams& p = plcnv_params;
                double F = x <= plcnv_jmin_   ? -p.m0 * x
                           : x >= plcnv_jmax_ ? -p.m0 * (x - 1.0)
                                              : p.m1 * (x - p.a);
                return clamp_into_domain(x + F - p.alpha - (x >= p.d ? p.beta : 0.0));
            }
            case MapFamily::NlCnv: {
                const NlCnvParams& p = nlcnv_params;
                double F = p.mu * x * (x - p.a) * (1.0 - x);
                return clamp_into_domain(x + F - p.alpha - (x >= p.d ? p.beta : 0.0));
            }
            case MapFamily::LorenzLikeExample:
                return clamp_into_domain(detail::lorenz_like_formula(x));
            case MapFamily::ExpandingExample:
                return clamp_into_domain(detail::expanding_formula(x));
        }
        return domain_lo;  // unreachable
    }

    /// Map value for interval-endpoint arithmetic, defined on the closed
    /// domain [domain_lo, domain_hi]. At domain_hi it returns the upper-branch
    /// limit, which may equal domain_hi itself (an onto upper branch).
    double eval_endpoint(double x) const {
        if (x == domain_hi) return upper_branch_limit();
        return eval(x);
    }

    /// lim_{x -> domain_hi^-} f(x), without clamping.
    double upper_branch_limit() const {
        switch (family) {
            case MapFamily::Beta:
                return beta_params.beta + beta_params.alpha - 1.0;
            case MapFamily::PlCnv:
                return cnv_g(plcnv_params, domain_hi);
            case MapFamily::NlCnv:
                return cnv_g(nlcnv_params, domain_hi);
            case MapFamily::LorenzLikeExample:
                return 0.6;
            case MapFamily::ExpandingExample:
                return 0.9;
        }
        return domain_hi;  // unreachable
    }

    /// Greatest lower bound of the slope, where closed-form or cheaply
    /// sampled: beta for beta maps, 1 + min F' (10^4 samples over the domain)
    /// for the CNV families. Advisory only; absent for the example maps.
    std::optional<double> expansion_constant() const {
        switch (family) {
            case MapFamily::Beta:
                return beta_params.beta;
            case MapFamily::PlCnv:
            case MapFamily::NlCnv: {
                constexpr int n = 10000;
                double min_slope = std::numeric_limits<double>::infinity();
                for (int i = 0; i <= n; ++i) {
                    double x = domain_lo + (domain_hi - domain_lo) * i / n;
                    double fp;
                    if (family == MapFamily::PlCnv) {
                        const PlCnvParams& p = plcnv_params;
                        fp = (x <= plcnv_jmin_ || x >= plcnv_jmax_) ? -p.m0 : p.m1;
                    } else {
                        const NlCnvParams& p = nlcnv_params;
                        fp = p.mu * (-3.0 * x * x + 2.0 * (1.0 + p.a) * x - p.a);
                    }
                    min_slope = std::min(min_slope, fp);
                }
                return 1.0 + min_slope;
            }
            default:
                return std::nullopt;
        }
    }

    double plcnv_jmin_ = 0.0;  // cached junctions, set by the factory
    double plcnv_jmax_ = 0.0;

private:
    double clamp_into_domain(double v) const {
        if (v >= domain_hi) return std::nextafter(domain_hi, domain_lo);
        if (v < domain_lo) return domain_lo;
        return v;
    }
};

/// Checked beta-map evaluation on [0,1).
inline double eval_beta(const BetaParams& p, double x) {
    if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("eval_beta: x outside [0,1)");
    MapSpec m;
    m.family = MapFamily::Beta;
    m.beta_params = p;
    m.discontinuity = beta_discontinuity(p);
    return m.eval(x);
}

inline MapSpec make_beta_map(double beta, double alpha) {
    BetaParams p{beta, alpha};
    if (!p.valid())
        throw std::invalid_argument("make_beta_map: parameters outside the admissible triangle");
    MapSpec m;
    m.family = MapFamily::Beta;
    m.beta_params = p;
    m.domain_lo = 0.0;
    m.domain_hi = 1.0;
    m.discontinuity = beta_discontinuity(p);
    return m;
}

/// Piecewise-linear CNV map restricted to the invariant interval [b, c);
/// alpha and beta are derived from (b, c). Structural sanity (b < d < c,
/// positive slopes) is enforced here; the full invariant-interval conditions
/// are a separate, non-throwing check.
inline MapSpec make_plcnv_map(const PlCnvParams& base, double b, double c) {
    if (!base.shape_valid())
        throw std::invalid_argument("make_plcnv_map: requires m0 > 0, m1 > 0, a in (0,1)");
    if (!(b < base.d && base.d < c))
        throw std::invalid_argument("make_plcnv_map: requires b < d < c");
    MapSpec m;
    m.family = MapFamily::PlCnv;
    m.plcnv_params = base;
    std::tie(m.plcnv_params.alpha, m.plcnv_params.beta) = bc_to_alpha_beta(base, b, c);
    m.domain_lo = b;
    m.domain_hi = c;
    m.discontinuity = base.d;
    std::tie(m.plcnv_jmin_, m.plcnv_jmax_) = plcnv_junction_points(base.m0, base.m1, base.a);
    return m;
}

inline MapSpec make_nlcnv_map(const NlCnvParams& base, double b, double c) {
    if (!base.shape_valid())
        throw std::invalid_argument("make_nlcnv_map: requires mu > 0, a in (0,1)");
    if (!(b < base.d && base.d < c))
        throw std::invalid_argument("make_nlcnv_map: requires b < d < c");
    MapSpec m;
    m.family = MapFamily::NlCnv;
    m.nlcnv_params = base;
    std::tie(m.nlcnv_params.alpha, m.nlcnv_params.beta) = bc_to_alpha_beta(base, b, c);
    m.domain_lo = b;
    m.domain_hi = c;
    m.discontinuity = base.d;
    return m;
}

inline MapSpec lorenz_like_example_map() {
    MapSpec m;
    m.family = MapFamily::LorenzLikeExample;
    m.domain_lo = 0.0;
    m.domain_hi = 1.0;
    m.discontinuity = 0.45;
    return m;
}

inline MapSpec expanding_example_map_spec() {
    MapSpec m;
    m.family = MapFamily::ExpandingExample;
    m.domain_lo = 0.0;
    m.domain_hi = 1.0;
    m.discontinuity = 0.45;
    return m;
}

/// F and g dispatched over a CNV MapSpec.
inline double cnv_F(const MapSpec& spec, double x) {
    switch (spec.family) {
        case MapFamily::PlCnv: return plcnv_F(spec.plcnv_params, x);
        case MapFamily::NlCnv: return nlcnv_F(spec.nlcnv_params, x);
        default: throw std::invalid_argument("cnv_F: not a CNV map");
    }
}

inline double cnv_eval(const MapSpec& spec, double x) {
    switch (spec.family) {
        case MapFamily::PlCnv: return cnv_g(spec.plcnv_params, x);
        case MapFamily::NlCnv: return cnv_g(spec.nlcnv_params, x);
        default: throw std::invalid_argument("cnv_eval: not a CNV map");
    }
}

inline std::pair<double, double> invariant_interval(const MapSpec& spec) {
    switch (spec.family) {
        case MapFamily::PlCnv: return invariant_interval(spec.plcnv_params);
        case MapFamily::NlCnv: return invariant_interval(spec.nlcnv_params);
        default: throw std::invalid_argument("invariant_interval: not a CNV map");
    }
}

}  // namespace lorenztest

#include "renvol/foliation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "renvol/errors.hpp"

namespace renvol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kVolumeFlowNodes = 32;

struct NodeData {
    std::vector<double> k1, k2, dA;
};

// Area of the surface flowed to distance s, from seed curvature data.
double flowed_area(const Quadrature& q, const NodeData& d, double s) {
    const double ch = std::cosh(s), sh = std::sinh(s);
    double a = 0.0;
    for (int i = 0; i < q.size(); ++i)
        a += q.w[i] * (ch + sh * d.k1[i]) * (ch + sh * d.k2[i]) * d.dA[i];
    return a;
}

FlowState flow_impl(const Quadrature& q, const NodeData& d, double seed_volume,
                    double base_r, double r) {
    const int n = q.size();
    FlowState f;
    f.r = base_r + r;
    f.nodes = q;
    f.seed_volume = seed_volume;
    f.k1.resize(n);
    f.k2.resize(n);
    f.H.resize(n);
    f.dA.resize(n);

    const double ch = std::cosh(r), sh = std::sinh(r), emr = std::exp(-r);
    GeometricTotals t;
    for (int i = 0; i < n; ++i) {
        const double c1 = ch + sh * d.k1[i];
        const double c2 = ch + sh * d.k2[i];
        if (!(c1 > 0.0) || !(c2 > 0.0))
            throw std::invalid_argument("flow: transport factor vanished (surface not h-convex)");
        const double k1r = (sh + ch * d.k1[i]) / c1;
        const double k2r = (sh + ch * d.k2[i]) / c2;
        // cancellation-free defect: k^r - 1 = (k - 1) e^{-r} / (cosh r + sinh r k)
        const double h_def = 0.5 * ((d.k1[i] - 1.0) * emr / c1 + (d.k2[i] - 1.0) * emr / c2);
        const double dAr = c1 * c2 * d.dA[i];
        f.k1[i] = k1r;
        f.k2[i] = k2r;
        f.H[i] = 0.5 * (k1r + k2r);
        f.dA[i] = dAr;
        const double w = q.w[i] * dAr;
        t.area += w;
        t.int_H_minus_1 += h_def * w;
        t.int_K_int += (-1.0 + k1r * k2r) * w;
    }
    t.int_H = t.int_H_minus_1 + t.area;
    t.euler = t.int_K_int / kTwoPi;

    // enclosed volume: seed volume + quadrature of the swept area in s
    double vol = seed_volume;
    if (r != 0.0) {
        Quadrature sq = gauss_legendre(kVolumeFlowNodes, 0.0, r);
        for (int j = 0; j < sq.size(); ++j) vol += sq.w[j] * flowed_area(q, d, sq.x[j]);
    }
    f.enclosed_volume = vol;
    t.volume = vol;
    f.totals = t;
    return f;
}

NodeData node_data(const RadialSurface& s) {
    NodeData d;
    const int n = s.size();
    d.k1.resize(n);
    d.k2.resize(n);
    d.dA.resize(n);
    for (int i = 0; i < n; ++i) {
        d.k1[i] = s.pointdata()[i].k1;
        d.k2[i] = s.pointdata()[i].k2;
        d.dA[i] = s.pointdata()[i].dA;
    }
    return d;
}

double surface_value(const RadialSurface& s) {
    GeometricTotals t = totals(s);
    return t.int_H - 2.0 * t.volume;
}

// Richardson extrapolation of f(r) = L + C e^{-2r} + D e^{-4r} from samples at
// r0, r0+1, r0+2.
double richardson_e2(double f0, double f1, double f2) {
    const double q1 = std::exp(-2.0);
    const double l01 = (f1 - q1 * f0) / (1.0 - q1);
    const double l12 = (f2 - q1 * f1) / (1.0 - q1);
    const double q2 = std::exp(-4.0);
    return (l12 - q2 * l01) / (1.0 - q2);
}

}  // namespace

FlowState flow(const RadialSurface& surface, double r) {
    if (r < 0.0) throw std::invalid_argument("flow: r must be >= 0");
    if (!(hconvexity_margin(surface) > 0.0))
        throw std::invalid_argument("flow: surface must be horospherically convex");
    return flow_impl(surface.nodes(), node_data(surface), totals(surface).volume, 0.0, r);
}

FlowState flow(const FlowState& state, double r) {
    if (r < 0.0) throw std::invalid_argument("flow: r must be >= 0");
    NodeData d{state.k1, state.k2, state.dA};
    return flow_impl(state.nodes, d, state.enclosed_volume, state.r, r);
}

WInvarianceReport w_invariance_report(const RadialSurface& surface,
                                      const std::vector<double>& r_grid) {
    if (r_grid.empty()) throw std::invalid_argument("w_invariance_report: empty r grid");
    WInvarianceReport rep;
    rep.values.reserve(r_grid.size());
    const double chi = 2.0;
    for (double r : r_grid) {
        FlowState f = flow(surface, r);
        // group vol - area/2 before subtracting the defect integral; both terms
        // grow like e^{2r} and carry the only cancellation
        const double v = (f.enclosed_volume - 0.5 * f.totals.area) -
                         0.5 * f.totals.int_H_minus_1 + r * kPi * chi;
        rep.values.push_back(v);
    }
    double lo = rep.values[0], hi = rep.values[0];
    for (double v : rep.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    rep.max_deviation = hi - lo;
    return rep;
}

HDefectLimit h_defect_limit(const RadialSurface& surface, double r_max) {
    if (!(r_max >= 2.0)) throw std::invalid_argument("h_defect_limit: r_max must be >= 2");
    const double f0 = flow(surface, r_max - 2.0).totals.int_H_minus_1;
    const double f1 = flow(surface, r_max - 1.0).totals.int_H_minus_1;
    const double f2 = flow(surface, r_max).totals.int_H_minus_1;
    return {f2, richardson_e2(f0, f1, f2)};
}

BoundaryMetricArea boundary_metric_area(const RadialSurface& surface) {
    GeometricTotals t = totals(surface);
    BoundaryMetricArea b;
    b.beta = 0.5 * t.area + 0.5 * t.int_H + kPi;
    const double f0 = std::exp(-12.0) * flow(surface, 6.0).totals.area;
    const double f1 = std::exp(-14.0) * flow(surface, 7.0).totals.area;
    const double f2 = std::exp(-16.0) * flow(surface, 8.0).totals.area;
    b.flow_limit = richardson_e2(f0, f1, f2);
    b.deviation = std::abs(b.beta - b.flow_limit);
    return b;
}

VrLimit vr_limit(const RadialSurface& surface, double tolerance) {
    const double chi = 2.0;
    if (!(hconvexity_margin(surface) > 0.0))
        throw std::invalid_argument("vr_limit: surface must be horospherically convex");
    // vol_r - area_r/2 evaluated without the e^{2r} cancellation: integrating
    // the transported area element in closed form and subtracting per node
    // leaves only bounded terms,
    //   (1/4)[(2r - 1 - e^{-2r}) + (e^{-2r} - 1)(k1 + k2) + (1 - 2r - e^{-2r}) k1 k2] dA.
    const GeometricTotals seed = totals(surface);
    const auto& q = surface.nodes();
    auto vol_minus_half_area = [&](double r) {
        const double e = std::exp(-2.0 * r);
        double acc = seed.volume;
        for (int i = 0; i < surface.size(); ++i) {
            const SurfacePointData& p = surface.pointdata()[i];
            acc += 0.25 * q.w[i] * p.dA *
                   ((2.0 * r - 1.0 - e) + (e - 1.0) * (p.k1 + p.k2) +
                    (1.0 - 2.0 * r - e) * p.k1 * p.k2);
        }
        return acc;
    };
    auto estimate = [&](double r) {
        FlowState f = flow(surface, r);
        return vol_minus_half_area(r) +
               kPi * chi * std::log(std::sqrt(2.0 * f.totals.area / (kPi * chi)));
    };
    const double f0 = estimate(6.0), f1 = estimate(7.0), f2 = estimate(8.0);
    const double q1 = std::exp(-2.0);
    const double l01 = (f1 - q1 * f0) / (1.0 - q1);
    const double l12 = (f2 - q1 * f1) / (1.0 - q1);
    const double q2 = std::exp(-4.0);
    VrLimit v;
    v.raw_limit = (l12 - q2 * l01) / (1.0 - q2);
    v.v_r = v.raw_limit - 0.5 * kPi * chi;
    v.tail_spread = std::abs(l12 - l01);
    if (v.tail_spread > tolerance)
        throw NonConvergence("vr_limit: tail estimates spread " + std::to_string(v.tail_spread));
    return v;
}

MinkowskiReport minkowski_report(const RadialSurface& surface) {
    GeometricTotals t = totals(surface);
    MinkowskiReport m;
    m.lhs = t.int_H - 2.0 * t.volume;
    m.rhs_log = kTwoPi * std::log1p((t.int_H + t.area) / kTwoPi);
    const double s = t.area;
    m.rhs_combined =
        2.0 * t.volume +
        kTwoPi * std::log1p(s / kTwoPi + std::sqrt(s * s / (4.0 * kPi * kPi) + s / kPi));
    m.slack_log = m.lhs - m.rhs_log;
    m.slack_combined = t.int_H - m.rhs_combined;
    return m;
}

NestedMonotonicity nested_monotonicity_check(const RadialSurface& inner,
                                             const RadialSurface& outer) {
    if (inner.size() != outer.size())
        throw std::invalid_argument("nested_monotonicity_check: node grids differ");
    for (int i = 0; i < inner.size(); ++i)
        if (inner.radius()[i] > outer.radius()[i] + 1e-12)
            throw std::invalid_argument("nested_monotonicity_check: inner not contained in outer");
    for (const SurfacePointData& p : inner.pointdata())
        if (p.K_int < -1e-12)
            throw std::invalid_argument(
                "nested_monotonicity_check: inner surface has negative intrinsic curvature");
    NestedMonotonicity nm{surface_value(inner), surface_value(outer)};
    if (nm.inner_value > nm.outer_value + 1e-9)
        throw std::runtime_error("nested_monotonicity_check: monotonicity violated");
    return nm;
}

}  // namespace renvol

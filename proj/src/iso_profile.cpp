#include "renvol/iso_profile.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "renvol/errors.hpp"

namespace renvol {

namespace {

constexpr double kPi = std::numbers::pi;

// derivative of the Lagrange interpolant through (xs, fs) at x
double lagrange_deriv3(double x, const double xs[3], const double fs[3]) {
    const double d0 = (2.0 * x - xs[1] - xs[2]) / ((xs[0] - xs[1]) * (xs[0] - xs[2]));
    const double d1 = (2.0 * x - xs[0] - xs[2]) / ((xs[1] - xs[0]) * (xs[1] - xs[2]));
    const double d2 = (2.0 * x - xs[0] - xs[1]) / ((xs[2] - xs[0]) * (xs[2] - xs[1]));
    return fs[0] * d0 + fs[1] * d1 + fs[2] * d2;
}

// value at x = 0 of the parabola through three (x, f) pairs
double extrapolate_to_zero3(const double xs[3], const double fs[3]) {
    const double l0 = xs[1] * xs[2] / ((xs[0] - xs[1]) * (xs[0] - xs[2]));
    const double l1 = xs[0] * xs[2] / ((xs[1] - xs[0]) * (xs[1] - xs[2]));
    const double l2 = xs[0] * xs[1] / ((xs[2] - xs[0]) * (xs[2] - xs[1]));
    return fs[0] * l0 + fs[1] * l1 + fs[2] * l2;
}

}  // namespace

void IsoProfile::validate() const {
    if (V_.size() < 2) throw std::invalid_argument("IsoProfile: need at least two samples");
    if (chi_ >= 0) throw std::invalid_argument("IsoProfile: chi_boundary must be negative");
    if (core_volume_ < 0.0) throw std::invalid_argument("IsoProfile: core volume must be >= 0");
    for (size_t i = 0; i < V_.size(); ++i) {
        if (!(I_[i] > 0.0)) throw std::invalid_argument("IsoProfile: I must be positive");
        if (i > 0) {
            if (!(V_[i] > V_[i - 1]))
                throw std::invalid_argument("IsoProfile: V must be strictly increasing");
            if (I_[i] < I_[i - 1] - 1e-12 * std::abs(I_[i]))
                throw std::invalid_argument("IsoProfile: I must be non-decreasing");
        }
    }
}

IsoProfile IsoProfile::from_samples(std::vector<double> V, std::vector<double> I,
                                    int chi_boundary, double core_volume) {
    IsoProfile p;
    p.V_ = std::move(V);
    p.I_ = std::move(I);
    p.chi_ = chi_boundary;
    p.core_volume_ = core_volume;
    const int n = p.size();
    if (n < 3) throw std::invalid_argument("IsoProfile::from_samples: need >= 3 samples");
    p.dIp_.resize(n);
    p.dIm_.resize(n);
    for (int i = 0; i < n; ++i) {
        if (i + 2 < n) {
            const double xs[3] = {p.V_[i], p.V_[i + 1], p.V_[i + 2]};
            const double fs[3] = {p.I_[i], p.I_[i + 1], p.I_[i + 2]};
            p.dIp_[i] = lagrange_deriv3(p.V_[i], xs, fs);
        } else {
            p.dIp_[i] = (p.I_[n - 1] - p.I_[n - 2]) / (p.V_[n - 1] - p.V_[n - 2]);
        }
        if (i - 2 >= 0) {
            const double xs[3] = {p.V_[i - 2], p.V_[i - 1], p.V_[i]};
            const double fs[3] = {p.I_[i - 2], p.I_[i - 1], p.I_[i]};
            p.dIm_[i] = lagrange_deriv3(p.V_[i], xs, fs);
        } else {
            p.dIm_[i] = (p.I_[1] - p.I_[0]) / (p.V_[1] - p.V_[0]);
        }
    }
    p.validate();
    return p;
}

IsoProfile IsoProfile::with_derivatives(std::vector<double> V, std::vector<double> I,
                                        std::vector<double> dI_plus,
                                        std::vector<double> dI_minus, int chi_boundary,
                                        double core_volume) {
    IsoProfile p;
    p.V_ = std::move(V);
    p.I_ = std::move(I);
    p.dIp_ = std::move(dI_plus);
    p.dIm_ = std::move(dI_minus);
    p.chi_ = chi_boundary;
    p.core_volume_ = core_volume;
    if (p.dIp_.size() != p.V_.size() || p.dIm_.size() != p.V_.size())
        throw std::invalid_argument("IsoProfile: derivative array size mismatch");
    p.validate();
    return p;
}

IsoProfile fuchsian_profile(int chi_surface, const std::vector<double>& V_grid) {
    if (chi_surface > -2)
        throw std::invalid_argument("fuchsian_profile: chi_surface must be <= -2");
    if (V_grid.empty() || V_grid.front() < 0.0)
        throw std::invalid_argument("fuchsian_profile: V grid must start at V >= 0");
    const double A0 = -2.0 * kPi * chi_surface;

    std::vector<double> I(V_grid.size()), dI(V_grid.size());
    for (size_t k = 0; k < V_grid.size(); ++k) {
        const double V = V_grid[k];
        // invert V = A0 (r + sinh(2r)/2) by Newton
        double r = 0.5 * std::asinh(2.0 * V / A0);
        for (int it = 0; it < 60; ++it) {
            const double f = A0 * (r + 0.5 * std::sinh(2.0 * r)) - V;
            const double fp = A0 * (1.0 + std::cosh(2.0 * r));
            const double dr = f / fp;
            r -= dr;
            if (std::abs(dr) < 1e-15 * (1.0 + std::abs(r))) break;
        }
        if (r < 0.0) r = 0.0;
        const double ch = std::cosh(r);
        I[k] = 2.0 * A0 * ch * ch;
        dI[k] = 2.0 * std::tanh(r);  // dI/dV along the equidistant family
    }
    return IsoProfile::with_derivatives(std::vector<double>(V_grid), std::move(I),
                                        std::vector<double>(dI), std::vector<double>(dI),
                                        2 * chi_surface, 0.0);
}

HawkingTrace hawking_mass(const IsoProfile& profile) {
    HawkingTrace t;
    const int n = profile.size();
    t.V = profile.V();
    t.m_H.resize(n);
    for (int i = 0; i < n; ++i) {
        const double I = profile.I()[i];
        const double Ip = profile.dI_plus()[i];
        t.m_H[i] = std::sqrt(I) *
                   (2.0 * kPi * profile.chi_boundary() + I - 0.25 * Ip * Ip * I);
    }
    t.monotone_ok = true;
    t.sign_ok = true;
    for (int i = 0; i < n; ++i) {
        if (t.m_H[i] > 1e-8) t.sign_ok = false;
        if (i > 0 && t.m_H[i] < t.m_H[i - 1] - 1e-6) t.monotone_ok = false;
    }
    return t;
}

VrFromProfile vr_from_profile(const IsoProfile& profile, double tolerance) {
    const int n = profile.size();
    if (n < 3) throw std::invalid_argument("vr_from_profile: need >= 3 samples");
    const double chi = profile.chi_boundary();
    auto estimate = [&](int k) {
        const double V = profile.V()[k], I = profile.I()[k];
        return V + profile.core_volume() - 0.5 * I +
               kPi * chi * std::log(std::sqrt(2.0 * I / (kPi * std::abs(chi))));
    };
    // the estimates expand in powers of 1/I with no logarithmic corrections,
    // so extrapolate polynomially in that variable; the spread compares the
    // parabolas through the last two sample windows
    if (n < 4) throw std::invalid_argument("vr_from_profile: need >= 4 samples");
    double xs[3], fs[3], xs_prev[3], fs_prev[3];
    for (int j = 0; j < 3; ++j) {
        xs[j] = 1.0 / profile.I()[n - 3 + j];
        fs[j] = estimate(n - 3 + j);
        xs_prev[j] = 1.0 / profile.I()[n - 4 + j];
        fs_prev[j] = estimate(n - 4 + j);
    }
    const double L3 = extrapolate_to_zero3(xs, fs);
    const double L3_prev = extrapolate_to_zero3(xs_prev, fs_prev);
    VrFromProfile r;
    r.raw_limit = L3;
    r.v_r = L3 - 0.5 * kPi * chi;
    r.tail_spread = std::abs(L3 - L3_prev);
    if (r.tail_spread > tolerance)
        throw NonConvergence("vr_from_profile: tail spread " + std::to_string(r.tail_spread));
    return r;
}

double profile_difference(const IsoProfile& profile_tg, const IsoProfile& profile_m) {
    const int n = profile_tg.size();
    if (profile_m.size() != n)
        throw std::invalid_argument("profile_difference: sample counts differ");
    if (profile_tg.chi_boundary() != profile_m.chi_boundary())
        throw std::invalid_argument("profile_difference: boundary Euler characteristics differ");
    for (int i = 0; i < n; ++i)
        if (std::abs(profile_tg.V()[i] - profile_m.V()[i]) >
            1e-9 * (1.0 + std::abs(profile_tg.V()[i])))
            throw std::invalid_argument("profile_difference: profiles not on a common V grid");

    if (n < 4) throw std::invalid_argument("profile_difference: need >= 4 samples");
    double xs[3], fs[3], xs_prev[3], fs_prev[3];
    for (int j = 0; j < 3; ++j) {
        xs[j] = 1.0 / profile_tg.I()[n - 3 + j];
        fs[j] = 0.5 * (profile_tg.I()[n - 3 + j] - profile_m.I()[n - 3 + j]);
        xs_prev[j] = 1.0 / profile_tg.I()[n - 4 + j];
        fs_prev[j] = 0.5 * (profile_tg.I()[n - 4 + j] - profile_m.I()[n - 4 + j]);
    }
    const double La = extrapolate_to_zero3(xs_prev, fs_prev);
    const double Lb = extrapolate_to_zero3(xs, fs);
    if (std::abs(Lb - La) > 1e-4)
        throw NonConvergence("profile_difference: tails not converged");

    // corollary consistency: difference of renormalized volumes, cores removed
    const VrFromProfile vm = vr_from_profile(profile_m);
    const VrFromProfile vtg = vr_from_profile(profile_tg);
    const double via_vr = (vm.v_r - profile_m.core_volume()) -
                          (vtg.v_r - profile_tg.core_volume());
    if (std::abs(Lb - via_vr) > 1e-4)
        throw NonConvergence("profile_difference: disagrees with vr_from_profile route");
    return Lb;
}

double brane_value(double area, double volume, double H) {
    if (!(H > 0.0 && H < 1.0))
        throw std::invalid_argument("brane_value: H must lie in (0, 1)");
    return volume - area / (2.0 * H);
}

ProfileChecks foliation_profile_checks(const IsoProfile& profile) {
    const int n = profile.size();
    if (n < 3) throw std::invalid_argument("foliation_profile_checks: need >= 3 samples");
    ProfileChecks c{};
    // smallest sampled V beyond which I' > I/V holds for every later sample
    int star = n;
    for (int i = n - 1; i >= 0; --i) {
        const double V = profile.V()[i];
        if (V <= 0.0) break;
        if (profile.dI_plus()[i] > profile.I()[i] / V)
            star = i;
        else
            break;
    }
    c.inequality_ok = star < n;
    c.V_star = c.inequality_ok ? profile.V()[star] : std::numeric_limits<double>::infinity();
    c.last_ratio = profile.I()[n - 1] / profile.V()[n - 1];

    // lim I/V by a three-point fit against {1, log V / V, 1/V}
    const double V1 = profile.V()[n - 3], V2 = profile.V()[n - 2], V3 = profile.V()[n - 1];
    const double f1 = profile.I()[n - 3] / V1, f2 = profile.I()[n - 2] / V2,
                 f3 = profile.I()[n - 1] / V3;
    const double a1 = std::log(V1) / V1, a2 = std::log(V2) / V2, a3 = std::log(V3) / V3;
    const double b1 = 1.0 / V1, b2 = 1.0 / V2, b3 = 1.0 / V3;
    const double det = a2 * b3 - a3 * b2 - (a1 * b3 - a3 * b1) + (a1 * b2 - a2 * b1);
    if (det == 0.0) throw NonConvergence("foliation_profile_checks: degenerate tail fit");
    c.ratio_limit = (f1 * (a2 * b3 - a3 * b2) - f2 * (a1 * b3 - a3 * b1) +
                     f3 * (a1 * b2 - a2 * b1)) /
                    det;
    c.ratio_ok = std::abs(c.ratio_limit - 2.0) < 1e-4;
    return c;
}

void export_profile_csv(const IsoProfile& p, std::ostream& out) {
    nlohmann::json h;
    h["chi_boundary"] = p.chi_boundary();
    h["core_volume"] = p.core_volume();
    out << "# " << h.dump() << "\n";
    out << "V,I\n";
    out.precision(17);
    for (int i = 0; i < p.size(); ++i) out << p.V()[i] << "," << p.I()[i] << "\n";
}

void export_profile_csv(const IsoProfile& p, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("export_profile_csv: cannot open " + path);
    export_profile_csv(p, f);
}

IsoProfile import_profile_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw std::runtime_error("import_profile_csv: missing JSON header");
    nlohmann::json h = nlohmann::json::parse(line.substr(2));
    std::getline(in, line);  // column names
    std::vector<double> V, I;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string v_s, i_s;
        if (!std::getline(row, v_s, ',') || !std::getline(row, i_s, ','))
            throw std::runtime_error("import_profile_csv: malformed row");
        V.push_back(std::stod(v_s));
        I.push_back(std::stod(i_s));
    }
    return IsoProfile::from_samples(std::move(V), std::move(I),
                                    h.at("chi_boundary").get<int>(),
                                    h.at("core_volume").get<double>());
}

IsoProfile import_profile_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("import_profile_csv: cannot open " + path);
    return import_profile_csv(f);
}

void export_hawking_csv(const HawkingTrace& t, std::ostream& out) {
    out << "V,m_H\n";
    out.precision(17);
    for (size_t i = 0; i < t.V.size(); ++i) out << t.V[i] << "," << t.m_H[i] << "\n";
}

void export_hawking_csv(const HawkingTrace& t, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("export_hawking_csv: cannot open " + path);
    export_hawking_csv(t, f);
}

}  // namespace renvol

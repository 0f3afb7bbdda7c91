#include "renvol/sphere_harmonics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace renvol {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
}

SphCoeffs::SphCoeffs(int L_) : L(L_) {
    const int n = (L + 1) * (L + 2) / 2;
    a.assign(n, 0.0);
    b.assign(n, 0.0);
}

SphereHarmonics::SphereHarmonics(int L, int n_theta, int n_phi)
    : L_(L), n_theta_(n_theta), n_phi_(n_phi) {
    if (L < 0) throw std::invalid_argument("SphereHarmonics: L must be >= 0");
    if (n_theta < L + 1 || n_phi < 2 * L + 1)
        throw std::invalid_argument("SphereHarmonics: grid too small for exact transforms");
    nodes_ = gauss_legendre(n_theta);
    theta_.resize(n_theta);
    for (int i = 0; i < n_theta; ++i) theta_[i] = std::acos(nodes_.x[i]);
    phi_weight_ = 2.0 * kPi / n_phi;

    const int nb = (L + 1) * (L + 2) / 2;
    plm_.resize(static_cast<size_t>(n_theta) * nb);
    for (int i = 0; i < n_theta; ++i) fill_plm_row(nodes_.x[i], &plm_[static_cast<size_t>(i) * nb]);

    cos_mphi_.resize(static_cast<size_t>(L + 1) * n_phi);
    sin_mphi_.resize(static_cast<size_t>(L + 1) * n_phi);
    for (int m = 0; m <= L; ++m)
        for (int j = 0; j < n_phi; ++j) {
            cos_mphi_[static_cast<size_t>(m) * n_phi + j] = std::cos(m * phi(j));
            sin_mphi_[static_cast<size_t>(m) * n_phi + j] = std::sin(m * phi(j));
        }
}

// Fully normalized associated Legendre functions: with Y_lm = plm * e^{i m phi},
// int |Y_lm|^2 dOmega = 1. Stable three-term recurrences, no factorials.
void SphereHarmonics::fill_plm_row(double x, double* row) const {
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    row[SphCoeffs::index(0, 0)] = 1.0 / std::sqrt(4.0 * kPi);
    for (int m = 1; m <= L_; ++m)
        row[SphCoeffs::index(m, m)] =
            std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * row[SphCoeffs::index(m - 1, m - 1)];
    for (int m = 0; m < L_; ++m)
        row[SphCoeffs::index(m + 1, m)] =
            std::sqrt(2.0 * m + 3.0) * x * row[SphCoeffs::index(m, m)];
    for (int m = 0; m <= L_; ++m)
        for (int l = m + 2; l <= L_; ++l) {
            const double al = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
            const double bl = std::sqrt((double(l - 1) * (l - 1) - double(m) * m) /
                                        (4.0 * double(l - 1) * (l - 1) - 1.0));
            row[SphCoeffs::index(l, m)] =
                al * (x * row[SphCoeffs::index(l - 1, m)] - bl * row[SphCoeffs::index(l - 2, m)]);
        }
}

SphCoeffs SphereHarmonics::analyze(const std::vector<double>& grid) const {
    if (static_cast<int>(grid.size()) != grid_size())
        throw std::invalid_argument("SphereHarmonics::analyze: grid size mismatch");
    SphCoeffs c(L_);
    const int nb = (L_ + 1) * (L_ + 2) / 2;
    // longitude transform first
    std::vector<double> gc(static_cast<size_t>(n_theta_) * (L_ + 1), 0.0);
    std::vector<double> gs(static_cast<size_t>(n_theta_) * (L_ + 1), 0.0);
    for (int i = 0; i < n_theta_; ++i) {
        const double* frow = &grid[static_cast<size_t>(i) * n_phi_];
        for (int m = 0; m <= L_; ++m) {
            const double* cm = &cos_mphi_[static_cast<size_t>(m) * n_phi_];
            const double* sm = &sin_mphi_[static_cast<size_t>(m) * n_phi_];
            double sc = 0.0, ss = 0.0;
            for (int j = 0; j < n_phi_; ++j) {
                sc += frow[j] * cm[j];
                ss += frow[j] * sm[j];
            }
            gc[static_cast<size_t>(i) * (L_ + 1) + m] = sc * phi_weight_;
            gs[static_cast<size_t>(i) * (L_ + 1) + m] = ss * phi_weight_;
        }
    }
    for (int i = 0; i < n_theta_; ++i) {
        const double w = nodes_.w[i];
        const double* prow = &plm_[static_cast<size_t>(i) * nb];
        for (int l = 0; l <= L_; ++l)
            for (int m = 0; m <= l; ++m) {
                const double p = prow[SphCoeffs::index(l, m)];
                if (m == 0) {
                    c.ca(l, 0) += w * p * gc[static_cast<size_t>(i) * (L_ + 1)];
                } else {
                    c.ca(l, m) += w * kSqrt2 * p * gc[static_cast<size_t>(i) * (L_ + 1) + m];
                    c.cb(l, m) += w * kSqrt2 * p * gs[static_cast<size_t>(i) * (L_ + 1) + m];
                }
            }
    }
    return c;
}

std::vector<double> SphereHarmonics::synthesize(const SphCoeffs& c) const {
    if (c.L != L_) throw std::invalid_argument("SphereHarmonics::synthesize: L mismatch");
    const int nb = (L_ + 1) * (L_ + 2) / 2;
    std::vector<double> grid(grid_size(), 0.0);
    for (int i = 0; i < n_theta_; ++i) {
        const double* prow = &plm_[static_cast<size_t>(i) * nb];
        // collapse degree sums per order m
        std::vector<double> fc(L_ + 1, 0.0), fs(L_ + 1, 0.0);
        for (int l = 0; l <= L_; ++l)
            for (int m = 0; m <= l; ++m) {
                const double p = prow[SphCoeffs::index(l, m)];
                if (m == 0) {
                    fc[0] += c.ca(l, 0) * p;
                } else {
                    fc[m] += c.ca(l, m) * kSqrt2 * p;
                    fs[m] += c.cb(l, m) * kSqrt2 * p;
                }
            }
        double* frow = &grid[static_cast<size_t>(i) * n_phi_];
        for (int j = 0; j < n_phi_; ++j) {
            double v = fc[0];
            for (int m = 1; m <= L_; ++m)
                v += fc[m] * cos_mphi_[static_cast<size_t>(m) * n_phi_ + j] +
                     fs[m] * sin_mphi_[static_cast<size_t>(m) * n_phi_ + j];
            frow[j] = v;
        }
    }
    return grid;
}

std::vector<double> SphereHarmonics::synthesize_laplacian(const SphCoeffs& c) const {
    SphCoeffs lc = c;
    for (int l = 0; l <= L_; ++l) {
        const double eig = -double(l) * (l + 1.0);
        for (int m = 0; m <= l; ++m) {
            lc.ca(l, m) *= eig;
            lc.cb(l, m) *= eig;
        }
    }
    return synthesize(lc);
}

double SphereHarmonics::eval(const SphCoeffs& c, double theta, double phi) const {
    const int nb = (L_ + 1) * (L_ + 2) / 2;
    std::vector<double> row(nb);
    fill_plm_row(std::cos(theta), row.data());
    double v = 0.0;
    for (int l = 0; l <= L_; ++l)
        for (int m = 0; m <= l; ++m) {
            const double p = row[SphCoeffs::index(l, m)];
            if (m == 0)
                v += c.ca(l, 0) * p;
            else
                v += kSqrt2 * p *
                     (c.ca(l, m) * std::cos(m * phi) + c.cb(l, m) * std::sin(m * phi));
        }
    return v;
}

double SphereHarmonics::integrate(const std::vector<double>& grid) const {
    if (static_cast<int>(grid.size()) != grid_size())
        throw std::invalid_argument("SphereHarmonics::integrate: grid size mismatch");
    double s = 0.0;
    for (int i = 0; i < n_theta_; ++i) {
        double row = 0.0;
        for (int j = 0; j < n_phi_; ++j) row += grid[static_cast<size_t>(i) * n_phi_ + j];
        s += nodes_.w[i] * row;
    }
    return s * phi_weight_;
}

std::shared_ptr<const SphereHarmonics> SphereHarmonics::get(int L, int n_theta, int n_phi) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::weak_ptr<const SphereHarmonics>> cache;
    std::scoped_lock lock(mu);
    auto key = std::make_tuple(L, n_theta, n_phi);
    if (auto it = cache.find(key); it != cache.end())
        if (auto sp = it->second.lock()) return sp;
    auto sp = std::make_shared<const SphereHarmonics>(L, n_theta, n_phi);
    cache[key] = sp;
    return sp;
}

double dirichlet_energy(const SphCoeffs& c) {
    double e = 0.0;
    for (int l = 1; l <= c.L; ++l) {
        const double eig = double(l) * (l + 1.0);
        for (int m = 0; m <= l; ++m)
            e += eig * (c.ca(l, m) * c.ca(l, m) + c.cb(l, m) * c.cb(l, m));
    }
    return e;
}

double mean_integral(const SphCoeffs& c) { return std::sqrt(4.0 * kPi) * c.a[0]; }

}  // namespace renvol

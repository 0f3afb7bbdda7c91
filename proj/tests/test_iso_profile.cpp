#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "renvol/errors.hpp"
#include "renvol/iso_profile.hpp"

using namespace renvol;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> geometric_grid(double vmin, double vmax, int n, bool with_zero = true) {
    std::vector<double> g;
    if (with_zero) g.push_back(0.0);
    for (int i = 0; i < n; ++i) g.push_back(vmin * std::pow(vmax / vmin, double(i) / (n - 1)));
    return g;
}

IsoProfile shifted_fuchsian(double eps, double vmax = 1e4) {
    IsoProfile f = fuchsian_profile(-2, geometric_grid(1.0, vmax, 48));
    std::vector<double> I = f.I();
    for (double& v : I) v -= 2.0 * eps;
    return IsoProfile::with_derivatives(f.V(), std::move(I), f.dI_plus(), f.dI_minus(),
                                        f.chi_boundary(), f.core_volume());
}

}  // namespace

TEST_CASE("fuchsian profile closed forms") {
    IsoProfile p = fuchsian_profile(-2, geometric_grid(1.0, 1e4, 48));
    const double A0 = 4.0 * kPi;
    SUBCASE("I(0) counts both sheets of the degenerate core") {
        CHECK(p.I()[0] == doctest::Approx(2.0 * A0).epsilon(1e-12));
        CHECK(p.V()[0] == 0.0);
    }
    SUBCASE("hawking identity 2 pi chi + I - (1/4) I'^2 I = 0 per sample") {
        for (int i = 0; i < p.size(); ++i) {
            const double I = p.I()[i], Ip = p.dI_plus()[i];
            CHECK(std::abs(2.0 * kPi * p.chi_boundary() + I - 0.25 * Ip * Ip * I) < 1e-9);
        }
    }
    SUBCASE("derivative estimates equal 2 tanh r along the family") {
        for (int i = 1; i < p.size(); ++i) {
            // recover r from I = 2 A0 cosh^2 r
            const double r = std::acosh(std::sqrt(p.I()[i] / (2.0 * A0)));
            CHECK(std::abs(p.dI_plus()[i] - 2.0 * std::tanh(r)) < 1e-8);
            CHECK(p.dI_plus()[i] == p.dI_minus()[i]);
        }
    }
    SUBCASE("derivative estimates match finite differences of the closed form") {
        for (double V : {10.0, 100.0, 5000.0}) {
            const double h = 1e-3 * V;
            IsoProfile local = fuchsian_profile(-2, {V - h, V, V + h});
            const double fd = (local.I()[2] - local.I()[0]) / (2.0 * h);
            // central differences carry an O(h^2 I''') truncation error
            CHECK(std::abs(fd - local.dI_plus()[1]) < 1e-6);
        }
    }
    SUBCASE("profiles are monotone with positive I") {
        for (int i = 1; i < p.size(); ++i) {
            CHECK(p.I()[i] >= p.I()[i - 1]);
            CHECK(p.I()[i] > 0.0);
        }
    }
}

TEST_CASE("hawking mass") {
    SUBCASE("fuchsian profiles have vanishing hawking mass") {
        for (int chi_s : {-2, -4, -6}) {
            HawkingTrace t = hawking_mass(fuchsian_profile(chi_s, geometric_grid(1.0, 1e4, 48)));
            for (double m : t.m_H) CHECK(std::abs(m) < 1e-8);
            CHECK(t.monotone_ok);
            CHECK(t.sign_ok);
        }
    }
    SUBCASE("0.95-scaled toy profile: negative in the near-core range") {
        // the scaled profile is only sub-Fuchsian while I'^2 stays below
        // 4 (1 - 0.95) / (1 - 0.95^3); for genus 2 that bounds V by ~20
        IsoProfile f = fuchsian_profile(-2, geometric_grid(0.5, 15.0, 32));
        std::vector<double> I = f.I(), dIp = f.dI_plus(), dIm = f.dI_minus();
        for (auto* v : {&I})
            for (double& x : *v) x *= 0.95;
        for (auto* v : {&dIp, &dIm})
            for (double& x : *v) x *= 0.95;
        IsoProfile scaled = IsoProfile::with_derivatives(f.V(), std::move(I), std::move(dIp),
                                                         std::move(dIm), f.chi_boundary(),
                                                         f.core_volume());
        HawkingTrace t = hawking_mass(scaled);
        for (double m : t.m_H) CHECK(m < 0.0);
    }
    SUBCASE("constant-deficit profile: negative, non-decreasing everywhere") {
        HawkingTrace t = hawking_mass(shifted_fuchsian(1.0));
        CHECK(t.sign_ok);
        CHECK(t.monotone_ok);
        for (double m : t.m_H) CHECK(m < 0.0);
        for (size_t i = 1; i < t.m_H.size(); ++i) CHECK(t.m_H[i] >= t.m_H[i - 1] - 1e-9);
        // matches -2 eps sech^2(r) sqrt(I - 2 eps) against the closed form
        IsoProfile f = fuchsian_profile(-2, geometric_grid(1.0, 1e4, 48));
        for (int i = 0; i < f.size(); ++i) {
            const double sech2 = 1.0 - 0.25 * f.dI_plus()[i] * f.dI_plus()[i];
            const double want = -2.0 * sech2 * std::sqrt(f.I()[i] - 2.0);
            CHECK(t.m_H[i] == doctest::Approx(want).epsilon(1e-9));
        }
    }
    SUBCASE("downward kink in I' makes the hawking mass jump up") {
        IsoProfile f = fuchsian_profile(-2, geometric_grid(1.0, 1e3, 41));
        const int k = 20;
        std::vector<double> I = f.I();
        const double slope = 0.5 * f.dI_plus()[k];
        for (int i = k + 1; i < f.size(); ++i) I[i] = I[k] + slope * (f.V()[i] - f.V()[k]);
        IsoProfile kinked = IsoProfile::from_samples(f.V(), std::move(I), f.chi_boundary(),
                                                     f.core_volume());
        // sandwich: I'_+ < I'_- at the kink
        CHECK(kinked.dI_plus()[k] < kinked.dI_minus()[k] - 1e-6);
        const double Ik = kinked.I()[k];
        auto m_of = [&](double Ip) {
            return std::sqrt(Ik) * (2.0 * kPi * kinked.chi_boundary() + Ik - 0.25 * Ip * Ip * Ik);
        };
        CHECK(m_of(kinked.dI_plus()[k]) > m_of(kinked.dI_minus()[k]) + 1e-6);
    }
}

TEST_CASE("renormalized volume from profile asymptotics") {
    SUBCASE("fuchsian: raw limit is (pi/2) chi and v_r = 0") {
        VrFromProfile v = vr_from_profile(fuchsian_profile(-2, geometric_grid(1.0, 1e4, 48)));
        CHECK(std::abs(v.raw_limit + 2.0 * kPi) < 1e-4);
        CHECK(std::abs(v.v_r) < 1e-4);
    }
    SUBCASE("v_r = 0 for every genus") {
        for (int chi_s : {-2, -4, -8}) {
            VrFromProfile v =
                vr_from_profile(fuchsian_profile(chi_s, geometric_grid(1.0, 1e4, 48)));
            CHECK(std::abs(v.v_r) < 1e-4);
        }
    }
    SUBCASE("deterministic") {
        IsoProfile p = fuchsian_profile(-2, geometric_grid(1.0, 1e4, 48));
        CHECK(vr_from_profile(p).raw_limit == vr_from_profile(p).raw_limit);
    }
}

TEST_CASE("profile difference") {
    IsoProfile f = fuchsian_profile(-2, geometric_grid(1.0, 1e4, 48));
    SUBCASE("identical profiles") {
        CHECK(std::abs(profile_difference(f, f)) < 1e-12);
    }
    SUBCASE("constant deficit gives half the deficit") {
        IsoProfile m = shifted_fuchsian(0.5);
        CHECK(profile_difference(f, m) == doctest::Approx(0.5).epsilon(1e-6));
        // antisymmetry under swapping
        CHECK(profile_difference(m, f) == doctest::Approx(-0.5).epsilon(1e-6));
    }
    SUBCASE("cross-check against the vr route holds internally") {
        // would throw NonConvergence if the two routes disagreed beyond 1e-4
        CHECK_NOTHROW(profile_difference(f, shifted_fuchsian(2.0)));
    }
}

TEST_CASE("brane action") {
    CHECK_THROWS_AS(brane_value(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(brane_value(1.0, 1.0, 1.0), std::invalid_argument);
    CHECK(brane_value(2.0, 5.0, 0.5) == doctest::Approx(5.0 - 2.0).epsilon(1e-15));

    const double A0 = 4.0 * kPi;
    auto area = [&](double r) { return 2.0 * A0 * std::cosh(r) * std::cosh(r); };
    auto vol = [&](double r) { return A0 * (r + 0.5 * std::sinh(2.0 * r)); };
    SUBCASE("criticality of the CMC leaf at tanh r = H") {
        for (double H : {0.3, 0.6, 0.9}) {
            // dF/dr = area(r) (1 - tanh(r)/H); bisect for the root
            auto dF = [&](double r) { return area(r) * (1.0 - std::tanh(r) / H); };
            double lo = 1e-8, hi = 10.0;
            REQUIRE(dF(lo) > 0.0);
            REQUIRE(dF(hi) < 0.0);
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (dF(mid) > 0.0 ? lo : hi) = mid;
            }
            CHECK(std::abs(0.5 * (lo + hi) - std::atanh(H)) < 1e-10);
        }
    }
    SUBCASE("the critical leaf maximizes the brane action along the family") {
        const double H = 0.6;
        const double rc = std::atanh(H);
        const double fc = brane_value(area(rc), vol(rc), H);
        for (double dr : {-0.3, -0.05, 0.05, 0.3}) {
            CHECK(brane_value(area(rc + dr), vol(rc + dr), H) < fc);
        }
        // second difference negative
        const double h = 1e-3;
        const double second = brane_value(area(rc + h), vol(rc + h), H) - 2.0 * fc +
                              brane_value(area(rc - h), vol(rc - h), H);
        CHECK(second < 0.0);
    }
    SUBCASE("H -> 1 limit of the formula") {
        const double r = 1.0;
        CHECK(brane_value(area(r), vol(r), 1.0 - 1e-12) ==
              doctest::Approx(vol(r) - 0.5 * area(r)).epsilon(1e-9));
    }
}

TEST_CASE("foliation profile checks") {
    IsoProfile p = fuchsian_profile(-2, geometric_grid(10.0, 1e4, 48, false));
    ProfileChecks c = foliation_profile_checks(p);
    CHECK(c.inequality_ok);
    CHECK(c.V_star < 100.0);
    CHECK(c.ratio_ok);
    CHECK(std::abs(c.ratio_limit - 2.0) < 1e-4);
    // direct last-sample ratio approaches 2 from below, at logarithmic rate
    CHECK(c.last_ratio < 2.0);
    CHECK(c.last_ratio > 1.98);
    // the inequality genuinely fails at small volumes
    IsoProfile small = fuchsian_profile(-2, geometric_grid(0.1, 20.0, 24, false));
    int violations = 0;
    for (int i = 0; i < small.size(); ++i)
        if (small.dI_plus()[i] <= small.I()[i] / small.V()[i]) ++violations;
    CHECK(violations > 0);
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(fuchsian_profile(-1, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(IsoProfile::from_samples({0.0, 1.0, 0.5}, {1.0, 2.0, 3.0}, -4, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(IsoProfile::from_samples({0.0, 1.0, 2.0}, {2.0, 1.0, 3.0}, -4, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(IsoProfile::from_samples({0.0, 1.0, 2.0}, {1.0, 2.0, 3.0}, 2, 0.0),
                    std::invalid_argument);
}

TEST_CASE("profile csv round trip") {
    IsoProfile p = fuchsian_profile(-4, geometric_grid(1.0, 100.0, 12));
    std::stringstream ss;
    export_profile_csv(p, ss);
    IsoProfile back = import_profile_csv(ss);
    REQUIRE(back.size() == p.size());
    CHECK(back.chi_boundary() == p.chi_boundary());
    CHECK(back.core_volume() == p.core_volume());
    for (int i = 0; i < p.size(); ++i) {
        CHECK(back.V()[i] == doctest::Approx(p.V()[i]).epsilon(1e-14));
        CHECK(back.I()[i] == doctest::Approx(p.I()[i]).epsilon(1e-14));
    }
}

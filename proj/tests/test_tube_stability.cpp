#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "renvol/tube_stability.hpp"

using namespace renvol;

namespace {

constexpr double kPi = std::numbers::pi;

// second-order oracle refined once: eliminates the h^2 error term
std::vector<double> fd_refined(const TubeSpec& spec, int grid_n, int n_max, int count) {
    std::vector<double> coarse = jacobi_eigenvalues_fd(spec, grid_n / 2, n_max, count);
    std::vector<double> fine = jacobi_eigenvalues_fd(spec, grid_n, n_max, count);
    std::vector<double> out(fine.size());
    for (size_t i = 0; i < fine.size(); ++i) out[i] = fine[i] + (fine[i] - coarse[i]) / 3.0;
    return out;
}

}  // namespace

TEST_CASE("constant mode eigenvalue") {
    // lambda_1 = 1 - a^2 - 1/(a^2+1); at a = 1 this is -1/2
    TubeSpec spec(1.0, kPi, TubeBC::Neumann);
    std::vector<double> eigs = jacobi_eigenvalues(spec, 4, 2);
    CHECK(eigs.front() == doctest::Approx(-0.5).epsilon(1e-14));
    for (double a : {0.2, 0.7, 1.5, 6.0}) {
        std::vector<double> e = jacobi_eigenvalues(TubeSpec(a, 2.0, TubeBC::Neumann), 4, 2);
        CHECK(e.front() < 0.0);
        CHECK(e.front() == doctest::Approx(1.0 - a * a - 1.0 / (a * a + 1.0)).epsilon(1e-13));
    }
}

TEST_CASE("threshold modes vanish exactly") {
    SUBCASE("neumann at a = pi / lambda") {
        for (double lambda : {1.0, kPi, 5.0}) {
            const double a = kPi / lambda;
            std::vector<double> eigs = jacobi_eigenvalues(TubeSpec(a, lambda, TubeBC::Neumann), 3, 2);
            double closest = 1e300;
            for (double e : eigs) closest = std::min(closest, std::abs(e));
            CHECK(closest < 1e-12);
        }
    }
    SUBCASE("periodic at a = 2 pi / lambda") {
        for (double lambda : {2.0, 2.0 * kPi, 9.0}) {
            const double a = 2.0 * kPi / lambda;
            std::vector<double> eigs =
                jacobi_eigenvalues(TubeSpec(a, lambda, TubeBC::Periodic), 3, 2);
            double closest = 1e300;
            for (double e : eigs) closest = std::min(closest, std::abs(e));
            CHECK(closest < 1e-12);
        }
    }
}

TEST_CASE("second eigenvalue changes sign exactly at the threshold") {
    for (auto bc : {TubeBC::Neumann, TubeBC::Periodic}) {
        const double lambda = 2.5;
        StabilityThreshold th = stability_threshold(lambda, bc);
        auto second_lowest = [&](double a) {
            std::vector<double> eigs = jacobi_eigenvalues(TubeSpec(a, lambda, bc), 4, 3);
            // skip the constant mode, which is always negative
            return eigs[1];
        };
        CHECK(second_lowest(th.a_max * (1.0 - 1e-6)) > 0.0);
        CHECK(second_lowest(th.a_max * (1.0 + 1e-6)) < 0.0);
    }
}

TEST_CASE("angular modes contribute positive eigenvalues") {
    // eigenvalue(0, n) = a^2 (n^2 - 1) + a^2/(a^2+1) > 0 for n >= 1
    for (double a : {0.3, 1.0, 2.0}) {
        for (int n = 1; n <= 3; ++n) {
            const double pot = a * a + 1.0 / (a * a + 1.0) - 1.0;
            CHECK(a * a * n * n - pot > 0.0);
        }
    }
}

TEST_CASE("finite-difference oracle agrees with the analytic spectrum") {
    for (auto bc : {TubeBC::Neumann, TubeBC::Periodic}) {
        TubeSpec spec(1.0, kPi, bc);
        std::vector<double> analytic = jacobi_eigenvalues(spec, 6, 2);
        analytic.resize(10);
        std::vector<double> fd = fd_refined(spec, bc == TubeBC::Neumann ? 2048 : 768, 2, 10);
        for (int i = 0; i < 10; ++i) CHECK(std::abs(fd[i] - analytic[i]) < 1e-6);
    }
}

TEST_CASE("oracle recovers the constant mode to machine precision") {
    TubeSpec spec(0.8, 2.0, TubeBC::Neumann);
    std::vector<double> fd = jacobi_eigenvalues_fd(spec, 256, 0, 4);
    const double want = 1.0 - 0.64 - 1.0 / 1.64;
    CHECK(std::abs(fd.front() - want) < 1e-10);
}

TEST_CASE("oracle error scales as grid_n^-2") {
    TubeSpec spec(1.0, kPi, TubeBC::Neumann);
    std::vector<double> all = jacobi_eigenvalues(spec, 4, 1);
    // keep only the n = 0 radial tower: eigenvalues 0.5 m^2 - 0.5
    std::vector<double> exact;
    for (int m = 0; m <= 3; ++m) exact.push_back(0.5 * m * m - 0.5);
    (void)all;
    auto err = [&](int n) {
        std::vector<double> fd = jacobi_eigenvalues_fd(spec, n, 0, 4);
        double e = 0.0;
        for (int i = 0; i < 4; ++i) e = std::max(e, std::abs(fd[i] - exact[i]));
        return e;
    };
    const double e1 = err(256), e2 = err(512);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("fd oracle agreement on an (a, bc) sweep") {
    for (double a : {0.6, 1.0, 1.9}) {
        for (auto bc : {TubeBC::Neumann, TubeBC::Periodic}) {
            TubeSpec spec(a, 2.2, bc);
            std::vector<double> analytic = jacobi_eigenvalues(spec, 6, 2);
            analytic.resize(6);
            std::vector<double> fd = fd_refined(spec, bc == TubeBC::Neumann ? 1024 : 512, 2, 6);
            for (int i = 0; i < 6; ++i) CHECK(std::abs(fd[i] - analytic[i]) < 1e-6);
        }
    }
}

TEST_CASE("stability thresholds") {
    SUBCASE("neumann at lambda = pi") {
        StabilityThreshold th = stability_threshold(kPi, TubeBC::Neumann);
        CHECK(th.a_max == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(th.R_min == doctest::Approx(std::log(1.0 + std::numbers::sqrt2)).epsilon(1e-15));
        CHECK(th.R_min == doctest::Approx(0.881374).epsilon(1e-6));
    }
    SUBCASE("R_min matches log(d/pi + sqrt(d^2/pi^2 + 1))") {
        for (double d : {0.5, 2.0, kPi, 11.0}) {
            StabilityThreshold th = stability_threshold(d, TubeBC::Neumann);
            CHECK(th.R_min ==
                  doctest::Approx(std::log(d / kPi + std::sqrt(d * d / (kPi * kPi) + 1.0)))
                      .epsilon(1e-14));
            // same identity through asinh
            CHECK(th.R_min == doctest::Approx(std::asinh(1.0 / th.a_max)).epsilon(1e-14));
        }
    }
    SUBCASE("periodic at lambda = 2 pi") {
        CHECK(stability_threshold(2.0 * kPi, TubeBC::Periodic).a_max ==
              doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(stability_threshold(0.0, TubeBC::Neumann), std::invalid_argument);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(TubeSpec(0.0, 1.0, TubeBC::Neumann), std::invalid_argument);
    CHECK_THROWS_AS(TubeSpec(1.0, -1.0, TubeBC::Neumann), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_eigenvalues_fd(TubeSpec(1.0, 1.0, TubeBC::Neumann), 32),
                    std::invalid_argument);
}

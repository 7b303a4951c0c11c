#include <doctest.h>

#include <cmath>

#include "fpc/harmonic.hpp"
#include "support.hpp"

using namespace fpc;

TEST_SUITE_BEGIN("harmonic");

TEST_CASE("h_eval fields from moments") {
    const Measure td = make_dirac_mixture({2.0, 4.0}, {1.0, 1.0});
    const HarmonicEval e = h_eval(td, 0.0, 0.0);
    CHECK(e.h == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e.h_z == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(e.h_zz == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(e.h_t == doctest::Approx(-10.0).epsilon(1e-14));

    // single atom at 2: h = e^{2z - 2t}
    const Measure sd = make_dirac_mixture({2.0}, {1.0});
    CHECK(h_eval(sd, 1.0, 1.0).h == doctest::Approx(1.0).epsilon(1e-14));

    const Measure seg = make_lebesgue(1.0, 2.0);
    const HarmonicEval s = h_eval(seg, 0.0, 0.0);
    CHECK(s.h == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.h_z == doctest::Approx(1.5).epsilon(1e-13));
}

TEST_CASE("h_eval positivity and sign structure") {
    for (const Measure& m : {make_dirac_mixture({2.0, 4.0}, {1.0, 1.0}),
                             make_lebesgue(1.0, 2.0), make_lebesgue(0.0, 2.0)}) {
        for (double z : {-3.0, 0.0, 2.0}) {
            for (double t : {0.0, 1.0, 7.0}) {
                const HarmonicEval e = h_eval(m, z, t);
                CHECK(e.h > 0.0);
                CHECK(e.h_z > 0.0);
                CHECK(e.h_zz > 0.0);
                CHECK(e.h_zzz > 0.0);
                CHECK(e.h_t < 0.0);
                CHECK(e.h_t + 0.5 * e.h_zz == 0.0);
            }
        }
    }
}

TEST_CASE("inverse round trip across a wide grid") {
    for (const Measure& m : {make_dirac_mixture({2.0}, {1.0}),
                             make_dirac_mixture({2.0, 4.0}, {1.0, 1.0}),
                             make_lebesgue(1.0, 2.0)}) {
        for (double t : {0.0, 1.0, 10.0, 100.0}) {
            for (double x = 1e-3; x <= 1.0000001e6; x *= 31.6227766016838) {
                const InverseEval inv = h_inverse(m, x, t);
                const double back = std::exp(log_h(m, inv.z, t));
                CHECK(std::abs(back - x) / x <= 1e-10);
            }
        }
    }
}

TEST_CASE("two-dirac inverse matches the printed closed form") {
    const Measure td = make_dirac_mixture({2.0, 4.0}, {1.0, 1.0});
    CHECK(h_inverse(td, 2.0, 0.0).z == doctest::Approx(0.0).epsilon(1e-12));
    for (double t : {0.0, 0.5, 3.0, 20.0, 80.0}) {
        for (double x : {0.05, 1.0, 2.0, 50.0, 1e4}) {
            const double want = oracle::two_dirac_h_inv(x, t);
            const double got = h_inverse(td, x, t).z;
            CHECK(got == doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("single-atom inverse is the explicit log formula") {
    const Measure sd = make_dirac_mixture({2.0}, {1.0});
    for (double t : {0.0, 1.0, 25.0}) {
        for (double x : {0.1, 1.0, 7.0}) {
            const double want = 0.5 * std::log(x) + t; // (1-gamma) ln x + t/(2(1-gamma))
            CHECK(h_inverse(sd, x, t).z == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("inverse is strictly increasing in x") {
    const Measure seg = make_lebesgue(1.0, 2.0);
    double prev = -1e300;
    for (double x = 0.01; x < 1e5; x *= 3.7) {
        const double z = h_inverse(seg, x, 2.0).z;
        CHECK(z > prev);
        prev = z;
    }
}

TEST_CASE("z_t respects the support bounds and decays in t") {
    for (const Measure& m : {make_dirac_mixture({2.0, 4.0}, {1.0, 1.0}),
                             make_lebesgue(1.0, 2.0), make_lebesgue(0.0, 2.0)}) {
        const SupportInfo si = support(m);
        double prev = 1e300;
        for (double t : {0.5, 1.0, 2.0, 5.0, 20.0, 100.0}) {
            const InverseEval inv = h_inverse(m, 1.5, t);
            CHECK(inv.z_t >= 0.5 * si.a - 1e-12);
            CHECK(inv.z_t <= 0.5 * si.b + 1e-12);
            CHECK(inv.z_t < prev); // h_tt^{(-1)} < 0
            prev = inv.z_t;
        }
    }
}

TEST_CASE("analytic z_t agrees with a finite difference of the inverse") {
    for (const Measure& m :
         {make_dirac_mixture({2.0, 4.0}, {1.0, 1.0}), make_lebesgue(1.0, 2.0)}) {
        for (double t : {0.5, 2.0, 10.0}) {
            for (double x : {0.5, 1.0, 4.0}) {
                const double dt = 1e-4 * std::max(1.0, t);
                const double zp = h_inverse(m, x, t + dt).z;
                const double zm = h_inverse(m, x, t - dt).z;
                const double fd = (zp - zm) / (2.0 * dt);
                CHECK(h_inverse(m, x, t).z_t == doctest::Approx(fd).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("inverse-path absolute monotonicity (forces r convexity)") {
    for (const Measure& m :
         {make_dirac_mixture({2.0, 4.0}, {1.0, 1.0}), make_lebesgue(1.0, 2.0)}) {
        for (double x : {0.3, 1.0, 10.0, 1e3}) {
            for (double t : {0.0, 1.0, 10.0}) {
                const double z = h_inverse(m, x, t).z;
                const double l1 = log_exp_moment(m, z, t, 1);
                const double l2 = log_exp_moment(m, z, t, 2);
                const double l3 = log_exp_moment(m, z, t, 3);
                CHECK(l3 + l1 > 2.0 * l2); // h_zzz h_z > h_zz^2
            }
        }
    }
}

TEST_CASE("heat residual small by pure finite differences") {
    const Measure td = make_dirac_mixture({2.0, 4.0}, {1.0, 1.0});
    CHECK(std::abs(heat_residual(td, 0.5, 1.0, 1e-4, 1e-4)) < 1e-5);

    const Measure sd = make_dirac_mixture({2.0}, {1.0});
    for (double z : {-1.0, 0.0, 1.0}) {
        for (double t : {0.5, 1.0, 3.0}) {
            CHECK(std::abs(heat_residual(sd, z, t)) < 1e-6);
        }
    }

    const Measure seg = make_lebesgue(1.0, 2.0);
    CHECK(std::abs(heat_residual(seg, 1.0, 1.0, 1e-4, 1e-4)) < 1e-5);
}

TEST_CASE("inverse failure and bad input reporting") {
    const Measure td = make_dirac_mixture({2.0, 4.0}, {1.0, 1.0});
    CHECK_THROWS_AS(h_inverse(td, -1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(h_inverse(td, 0.0, 0.0), ValidationError);
    CHECK_THROWS_AS(heat_residual(td, 0.0, 1e-6, 1e-4, 1e-4), ValidationError);
}

TEST_SUITE_END();

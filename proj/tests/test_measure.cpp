#include <doctest.h>

#include <cmath>
#include <random>

#include "fpc/measure.hpp"
#include "support.hpp"

using namespace fpc;

TEST_SUITE_BEGIN("measure");

TEST_CASE("dirac mixture validation") {
    CHECK_THROWS_AS(make_dirac_mixture({2.0, 1.0}, {1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(make_dirac_mixture({2.0}, {1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(make_dirac_mixture({-1.0}, {1.0}), ValidationError);
    CHECK_THROWS_AS(make_dirac_mixture({2.0}, {0.0}), ValidationError);
    CHECK_THROWS_AS(make_dirac_mixture({}, {}), ValidationError);
    CHECK_NOTHROW(make_dirac_mixture({2.0, 4.0}, {1.0, 1.0}));
}

TEST_CASE("lebesgue validation and support") {
    CHECK_THROWS_AS(make_lebesgue(2.0, 1.0), ValidationError);
    CHECK_THROWS_AS(make_lebesgue(-0.5, 1.0), ValidationError);

    const Measure seg = make_lebesgue(1.0, 2.0);
    const SupportInfo si = support(seg);
    CHECK(si.a == 1.0);
    CHECK(si.b == 2.0);
    CHECK(si.mass_at_b == 0.0);
    CHECK(si.gamma == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(si.total_mass == doctest::Approx(1.0));
    CHECK_FALSE(si.a_is_open_zero);

    const Measure zero = make_lebesgue(0.0, 2.0);
    CHECK(support(zero).a_is_open_zero);
    CHECK(support(zero).a == 0.0);
}

TEST_CASE("dirac support data") {
    const Measure m = make_dirac_mixture({2.0, 4.0}, {1.0, 1.0});
    const SupportInfo si = support(m);
    CHECK(si.a == 2.0);
    CHECK(si.b == 4.0);
    CHECK(si.mass_at_b == 1.0);
    CHECK(si.gamma == doctest::Approx(0.75).epsilon(1e-15));

    const Measure single = make_dirac_mixture({2.0}, {1.0});
    CHECK(support(single).a == 2.0);
    CHECK(support(single).b == 2.0);
    CHECK(support(single).gamma == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("dirac moments at z=0, t=0 are weighted power sums") {
    const Measure m = make_dirac_mixture({2.0, 4.0}, {1.0, 1.0});
    CHECK(exp_moment(m, 0.0, 0.0, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(exp_moment(m, 0.0, 0.0, 1) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(exp_moment(m, 0.0, 0.0, 2) == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(exp_moment(m, 0.0, 0.0, 3) == doctest::Approx(72.0).epsilon(1e-14));
}

TEST_CASE("lebesgue [1,2] k=0 moment at z=1, t=0 equals e^2 - e") {
    const Measure seg = make_lebesgue(1.0, 2.0);
    // Independent oracle first; the literal closed form e^2 - e is frozen below.
    const double by_oracle = oracle::riemann_segment_moment(1.0, 2.0, 1.0, 0.0, 0);
    const double frozen = 4.670774270471604; // e^2 - e
    CHECK(by_oracle == doctest::Approx(frozen).epsilon(1e-10));
    CHECK(exp_moment(seg, 1.0, 0.0, 0) == doctest::Approx(frozen).epsilon(1e-13));
}

TEST_CASE("lebesgue closed form vs Riemann oracle across regimes") {
    const Measure seg = make_lebesgue(1.0, 2.0);
    for (double z : {-8.0, -1.0, -1e-3, 0.0, 1e-3, 0.5, 3.0, 12.0}) {
        for (double t : {0.0, 0.05, 1.0, 4.0, 25.0}) {
            for (int k : {0, 1, 2, 3, 4}) {
                const double want = oracle::riemann_segment_moment(1.0, 2.0, z, t, k);
                const double got = exp_moment(seg, z, t, k);
                CAPTURE(z);
                CAPTURE(t);
                CAPTURE(k);
                CHECK(got == doctest::Approx(want).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("zero-a segment moments match the oracle") {
    const Measure seg = make_lebesgue(0.0, 2.0);
    for (double z : {-5.0, 0.0, 2.0}) {
        for (double t : {0.0, 1.0, 9.0}) {
            for (int k : {0, 1, 2}) {
                const double want = oracle::riemann_segment_moment(0.0, 2.0, z, t, k);
                CHECK(exp_moment(seg, z, t, k) == doctest::Approx(want).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("far-mode segment moments stay accurate (quadrature route)") {
    const Measure seg = make_lebesgue(0.0, 2.0);
    // mode z/t far left/right of the support; binomial recombination would
    // lose many digits here
    for (double z : {-80.0, 200.0}) {
        for (int k : {1, 2, 3, 4}) {
            const double want = oracle::riemann_segment_moment(0.0, 2.0, z, 1.0, k, 4000000);
            CHECK(exp_moment(seg, z, 1.0, k) == doctest::Approx(want).epsilon(1e-8));
        }
    }
}

TEST_CASE("tabulated density reproduces the flat segment") {
    // density == 1 sampled on a grid must agree with the analytic segment
    const Measure seg = make_lebesgue(1.0, 2.0);
    const Measure tab = make_tabulated(1.0, 2.0, std::vector<double>(33, 1.0));
    for (double z : {-2.0, 0.0, 1.5, 6.0}) {
        for (double t : {0.0, 0.7, 5.0}) {
            for (int k : {0, 1, 2}) {
                CHECK(exp_moment(tab, z, t, k) ==
                      doctest::Approx(exp_moment(seg, z, t, k)).epsilon(1e-10));
            }
        }
    }
    CHECK(support(tab).total_mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tabulated density: sharp peak at large t stays integrable") {
    const Measure tab = make_tabulated(1.0, 2.0, std::vector<double>(65, 1.0));
    const Measure seg = make_lebesgue(1.0, 2.0);
    // t large concentrates everything near the left edge; the windowed panels
    // must still resolve it
    const double z = 0.5 * 1.0 * 4000.0 + 2.0; // mode near 0.5
    CHECK(log_exp_moment(tab, z, 4000.0, 0) ==
          doctest::Approx(log_exp_moment(seg, z, 4000.0, 0)).epsilon(1e-9));
}

TEST_CASE("log-space and direct summation agree for dirac mixtures") {
    const Measure m = make_dirac_mixture({0.5, 2.0, 4.0}, {0.3, 1.0, 2.5});
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> uz(-30.0, 30.0), ut(0.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double z = uz(gen), t = ut(gen);
        for (int k : {0, 1, 2}) {
            double direct = 0.0;
            for (auto [y, w] : {std::pair{0.5, 0.3}, {2.0, 1.0}, {4.0, 2.5}})
                direct += w * std::pow(y, k) * std::exp(y * z - 0.5 * y * y * t);
            CHECK(exp_moment(m, z, t, k) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("moments are positive and strictly increasing in z") {
    const auto measures = {make_dirac_mixture({2.0, 4.0}, {1.0, 1.0}), make_lebesgue(1.0, 2.0),
                           make_lebesgue(0.0, 2.0)};
    for (const Measure& m : measures) {
        for (int k : {0, 1, 2}) {
            double prev = 0.0;
            bool first = true;
            for (double z = -6.0; z <= 6.0; z += 0.37) {
                const double v = exp_moment(m, z, 2.0, k);
                CHECK(v > 0.0);
                if (!first) CHECK(v > prev);
                prev = v;
                first = false;
            }
        }
    }
}

TEST_CASE("absolute monotonicity: m_{k+1} m_{k-1} > m_k^2 off the degenerate case") {
    for (const Measure& m :
         {make_dirac_mixture({2.0, 4.0}, {1.0, 1.0}), make_lebesgue(1.0, 2.0)}) {
        for (double z : {-2.0, 0.0, 1.0, 3.0}) {
            for (double t : {0.0, 1.0, 10.0}) {
                for (int k : {1, 2, 3}) {
                    const double lo = log_exp_moment(m, z, t, k - 1);
                    const double mid = log_exp_moment(m, z, t, k);
                    const double hi = log_exp_moment(m, z, t, k + 1);
                    CHECK(hi + lo > 2.0 * mid);
                }
            }
        }
    }
    // single atom: equality, not strict inequality
    const Measure single = make_dirac_mixture({2.0}, {1.0});
    const double lo = log_exp_moment(single, 1.0, 1.0, 0);
    const double mid = log_exp_moment(single, 1.0, 1.0, 1);
    const double hi = log_exp_moment(single, 1.0, 1.0, 2);
    CHECK(hi + lo - 2.0 * mid == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("range errors carry the offending point") {
    const Measure m = make_dirac_mixture({2.0, 4.0}, {1.0, 1.0});
    CHECK_THROWS_AS(exp_moment(m, 1e6, 0.0, 0), RangeError);
    try {
        exp_moment(m, 1e6, 0.0, 0);
    } catch (const RangeError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("1e+06") != std::string::npos);
    }
    CHECK(log_exp_moment(m, 1e6, 0.0, 0) == doctest::Approx(4e6).epsilon(1e-10));
}

TEST_CASE("tail moments and interval masses") {
    const Measure m = make_dirac_mixture({2.0, 4.0}, {1.0, 1.5});
    CHECK(m.mass_between(2.0, 4.0) == doctest::Approx(2.5));
    CHECK(m.mass_between(3.0, 4.0) == doctest::Approx(1.5));
    CHECK(m.mass_between(3.0, 3.5) == 0.0);
    CHECK(std::exp(m.log_moment_tail(0.0, 0.0, 0, 3.0)) == doctest::Approx(1.5));

    const Measure seg = make_lebesgue(1.0, 2.0);
    CHECK(seg.mass_between(1.25, 1.5) == doctest::Approx(0.25));
    const double tail = std::exp(seg.log_moment_tail(1.0, 0.0, 0, 1.5));
    CHECK(tail == doctest::Approx(oracle::riemann_segment_moment(1.5, 2.0, 1.0, 0.0, 0))
                      .epsilon(1e-9));
}

TEST_CASE("invalid moment arguments") {
    const Measure m = make_lebesgue(1.0, 2.0);
    CHECK_THROWS_AS(exp_moment(m, 0.0, -1.0, 0), ValidationError);
    CHECK_THROWS_AS(exp_moment(m, 0.0, 0.0, 5), ValidationError);
    CHECK_THROWS_AS(exp_moment(m, 0.0, 0.0, -1), ValidationError);
}

TEST_SUITE_END();

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "rscc/errors.hpp"
#include "rscc/transition_op.hpp"

using namespace rscc;

namespace {
bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
} // namespace

TEST_CASE("test functions extend continuously to the poles") {
    const auto bump = TestFunction::radial_bump(0.2, 0.5);
    CHECK(bump({SpherePoint::at(0.0), StatePoint::real(0.5)}) == 0.0);
    CHECK(bump({SpherePoint::infinity(), StatePoint::real(0.5)}) == 0.0);
    CHECK(bump({SpherePoint::at(std::exp(0.2)), StatePoint::real(0.5)}) == 1.0);

    const auto clip = TestFunction::clipped_log(-4.0, 4.0);
    CHECK(clip({SpherePoint::at(0.0), StatePoint::real(0.5)}) == -4.0);
    CHECK(clip({SpherePoint::infinity(), StatePoint::real(0.5)}) == 4.0);
    CHECK(close(clip({SpherePoint::at(std::exp(1.5)), StatePoint::real(0.5)}), 1.5));
    CHECK(clip({SpherePoint::at(1e30), StatePoint::real(0.5)}) == 4.0);

    CHECK(TestFunction::one()({SpherePoint::at(3.0), StatePoint::real(0.1)}) == 1.0);
    CHECK(TestFunction::state_coord()({SpherePoint::at(3.0), StatePoint::real(0.1)}) == 0.1);
}

TEST_CASE("zero steps is evaluation, one step is the exact average") {
    const auto spec = builtin_scenario("jump-annulus");
    const auto phi = TestFunction::clipped_log(-4.0, 4.0);
    const ProductPoint p{SpherePoint::at(1.2, 0.3), StatePoint::ladder(1)};

    CHECK(close(iterate_M(spec, phi, p, 0), phi(p)));

    // hand-rolled single step: both indices at 1/1 carry mass 1/2; the second
    // index splits over its two maps
    const cplx z{1.2, 0.3};
    const cplx z2 = z * z;
    const auto w2 = update_state(spec, StatePoint::ladder(1), 1);
    const double byHand =
        0.5 * phi({SpherePoint::at(z2), StatePoint::ladder(2)}) +
        0.5 * (0.5 * phi({SpherePoint::at(z2), w2}) + 0.5 * phi({SpherePoint::at(0.5 * z2), w2}));
    CHECK(close(apply_M(spec, phi, p), byHand));
    CHECK(close(iterate_M(spec, phi, p, 1), byHand));
}

TEST_CASE("state coordinate is a martingale for the reinforcement chain") {
    // E[w'] = (1-w)(1-a)w + w((1-a)w + a) = w exactly, so every iterate returns w
    for (double alpha : {0.25, 0.5, 0.8}) {
        ScenarioParams params;
        params.alpha = alpha;
        const auto spec = builtin_scenario("reinforcement", params);
        const auto phi = TestFunction::state_coord();
        for (double w0 : {0.1, 0.37, 0.5, 0.93}) {
            const ProductPoint p{SpherePoint::at(1.0), StatePoint::real(w0)};
            for (int n : {1, 3, 7})
                CHECK(close(iterate_M(spec, phi, p, n), w0));
        }
    }
}

TEST_CASE("branch recursion matches the explicit word sum") {
    const std::vector<TestFunction> phis = {
        TestFunction::one(), TestFunction::state_coord(),
        TestFunction::radial_bump(0.3, 0.4), TestFunction::clipped_log(-4.0, 4.0)};
    const std::vector<std::string> names = {"jump-annulus", "reinforcement", "gdms-demo"};
    for (const auto& name : names) {
        const auto spec = builtin_scenario(name);
        const ProductPoint p{SpherePoint::at(1.2, 0.3), spec.initial};
        for (const auto& phi : phis)
            for (int n = 0; n <= 6; ++n) {
                const double a = iterate_M(spec, phi, p, n);
                const double b = word_sum_oracle(spec, phi, p, n);
                CHECK_MESSAGE(close(a, b, 1e-12),
                              name << " " << phi.name() << " n=" << n << ": " << a << " vs " << b);
            }
    }
}

TEST_CASE("averaging never exceeds the sup of the observable") {
    const auto spec = builtin_scenario("jump-annulus");
    const auto bump = TestFunction::radial_bump(0.2, 0.5); // sup 1
    const ProductPoint p{SpherePoint::at(1.1, -0.2), StatePoint::ladder(1)};
    for (int n = 0; n <= 8; ++n) {
        const double v = iterate_M(spec, bump, p, n);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
    }
    CHECK(close(iterate_M(spec, TestFunction::one(), p, 8), 1.0));
}

TEST_CASE("branch caps trip on exponential blowup") {
    const auto spec = builtin_scenario("reinforcement"); // two live branches per step
    const auto phi = TestFunction::one();
    const ProductPoint p{SpherePoint::at(1.0), StatePoint::real(0.5)};
    CHECK_THROWS_AS(iterate_M(spec, phi, p, 30, 10), resource_error);
    CHECK_THROWS_AS(word_sum_oracle(spec, phi, p, 30, 10), resource_error);
}

TEST_CASE("monte carlo estimates are deterministic and calibrated") {
    const auto spec = builtin_scenario("jump-annulus");
    const auto phi = TestFunction::clipped_log(-4.0, 4.0);
    const ProductPoint p{SpherePoint::at(1.2, 0.3), StatePoint::ladder(1)};

    const auto a = mc_estimate_M(spec, phi, p, 4, 20000, 11);
    const auto b = mc_estimate_M(spec, phi, p, 4, 20000, 11);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
    CHECK(a.samples == 20000);

    const auto c = mc_estimate_M(spec, phi, p, 4, 20000, 12);
    CHECK(a.mean != c.mean); // a different seed draws different words

    // worker split must not change the draw
    const auto d = mc_estimate_M(spec, phi, p, 4, 20000, 11, 3);
    CHECK(a.mean == d.mean);

    const double exact = iterate_M(spec, phi, p, 4);
    CHECK(std::abs(a.mean - exact) <= 4.0 * a.stderr_);

    // a constant observable has zero variance
    const auto one = mc_estimate_M(spec, TestFunction::one(), p, 4, 100, 5);
    CHECK(one.mean == 1.0);
    CHECK(one.stderr_ == 0.0);
}

TEST_CASE("equicontinuity diagnostic shapes and monotone envelope") {
    const auto spec = builtin_scenario("jump-annulus");
    const auto phi = TestFunction::clipped_log(-4.0, 4.0);
    const ProductPoint p{SpherePoint::at(0.2), StatePoint::ladder(1)}; // deep in the basin
    const std::vector<double> radii = {1e-1, 1e-2, 1e-3};

    const auto diag = equicontinuity_diagnostic(spec, phi, p, radii, 5);
    REQUIRE(diag.radii == radii);
    REQUIRE(diag.osc.size() == radii.size());
    for (std::size_t r = 0; r < radii.size(); ++r) {
        REQUIRE(diag.osc[r].size() == 6u);
        double worst = 0.0;
        for (double v : diag.osc[r]) {
            CHECK(v >= 0.0);
            worst = std::max(worst, v);
        }
        CHECK(close(diag.supOverN[r], worst));
    }

    // interior point of the basin: oscillation collapses with the probe radius
    CHECK(diag.supOverN.back() < diag.supOverN.front());
    CHECK(diag.supOverN.back() < 0.05);
}

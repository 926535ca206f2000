#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "rscc/analysis.hpp"
#include "rscc/scenario.hpp"

using namespace rscc;

namespace {
constexpr double kLog2 = 0.6931471805599453;
} // namespace

TEST_CASE("climbing the ladder jumps onto the accumulation circle") {
    const auto spec = builtin_scenario("jump-annulus");
    const auto rep = detect_jump(spec, StatePoint::ladder(1), Drive::forced({0}), 50);

    CHECK(rep.verdict == JumpReport::Verdict::JumpDetected);
    REQUIRE(rep.steps.size() == 51);
    for (const auto& step : rep.steps)
        CHECK(step.cert.verdict == KernelCertificate::Verdict::EmptyAtDepth);
    CHECK(rep.converged);
    REQUIRE(rep.limit.has_value());
    CHECK(*rep.limit == StatePoint::ladder(0));
    REQUIRE(rep.limitCert.has_value());
    CHECK(rep.limitCert->verdict == KernelCertificate::Verdict::ExactNonempty);
    CHECK(std::abs(rep.limitCert->set.min()) <= 1e-9);
}

TEST_CASE("reinforcement pushed to the edge jumps, the truncated chain does not") {
    const auto re = builtin_scenario("reinforcement");
    const auto rep = detect_jump(re, StatePoint::real(0.5), Drive::forced({1}), 60);
    CHECK(rep.verdict == JumpReport::Verdict::JumpDetected);
    // the walk stops as soon as the tail is Cauchy, well before the horizon and
    // before rounding would land the state exactly on the endpoint
    CHECK(rep.steps.size() < 62);
    CHECK(rep.converged);
    CHECK(*rep.limit == StatePoint::real(1.0));
    CHECK(rep.limitCert->verdict == KernelCertificate::Verdict::ExactNonempty);
    CHECK(std::abs(rep.limitCert->set.max() - kLog2) <= 1e-9);

    const auto trunc = builtin_scenario("reinforcement-trunc");
    const auto rep2 = detect_jump(trunc, StatePoint::real(0.5), Drive::forced({1}), 200);
    CHECK(rep2.verdict == JumpReport::Verdict::NoJumpWithinHorizon);
    CHECK(rep2.converged);
    CHECK(std::abs(rep2.limit->value - 0.99) <= 1e-6);
    CHECK(rep2.limitCert->verdict == KernelCertificate::Verdict::EmptyAtDepth);
}

TEST_CASE("jump detection degrades gracefully off the happy path") {
    // a discrete state space rules the phenomenon out wholesale
    const auto gd = builtin_scenario("gdms-demo");
    const auto rep = detect_jump(gd, gd.initial, Drive::sampled(3), 30);
    CHECK(rep.verdict == JumpReport::Verdict::NoJumpWithinHorizon);
    CHECK(!rep.note.empty());

    // no radial classes declared: nothing to certify
    const auto fat = builtin_scenario("fattening");
    const auto na = detect_jump(fat, StatePoint::ladder(1), Drive::forced({0}), 10);
    CHECK(na.verdict == JumpReport::Verdict::NotApplicable);

    const auto spec = builtin_scenario("jump-annulus");
    CHECK_THROWS_AS(detect_jump(spec, StatePoint::ladder(1), Drive::forced({0}), 0),
                    std::invalid_argument);
    // the absorbing point only admits the second index
    CHECK_THROWS_AS(detect_jump(spec, parse_state(spec, "2"), Drive::forced({0}), 10),
                    std::invalid_argument);
}

TEST_CASE("the jump verdict is stable in the certificate depth") {
    const auto spec = builtin_scenario("jump-annulus");
    for (int depth : {2, 3, 4}) {
        const auto rep = detect_jump(spec, StatePoint::ladder(1), Drive::forced({0}), 50, depth);
        CHECK(rep.verdict == JumpReport::Verdict::JumpDetected);
    }
}

TEST_CASE("discrete topology check") {
    CHECK(no_jump_discrete_check(builtin_scenario("gdms-demo")));
    CHECK(no_jump_discrete_check(builtin_scenario("frozen-square")));
    CHECK(!no_jump_discrete_check(builtin_scenario("jump-annulus")));
    CHECK(!no_jump_discrete_check(builtin_scenario("reinforcement")));
}

TEST_CASE("the ladder with its absorbing states is reducible, with a witness") {
    const auto spec = builtin_scenario("jump-annulus");
    const std::vector<StatePoint> states = {StatePoint::ladder(1), StatePoint::ladder(2),
                                            parse_state(spec, "2"), StatePoint::ladder(0)};
    const auto rep = check_irreducible(spec, states, 50);
    CHECK(!rep.irreducible);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->first == parse_state(spec, "2"));
    CHECK(rep.witness->second == StatePoint::ladder(0));
}

TEST_CASE("a quantized truncated reinforcement chain is irreducible") {
    const auto spec = builtin_scenario("reinforcement-trunc");
    std::vector<StatePoint> grid;
    // exact endpoints: accumulating 0.98/20 overshoots 0.99 by one ulp
    for (int i = 0; i <= 20; ++i)
        grid.push_back(StatePoint::real(i == 0 ? 0.01
                                        : i == 20 ? 0.99
                                                  : 0.01 + 0.98 * (i / 20.0)));
    const auto rep = check_irreducible(spec, grid, 200, 0.025);
    CHECK(rep.irreducible);
    CHECK(!rep.witness.has_value());

    CHECK_THROWS_AS(check_irreducible(spec, {StatePoint::real(0.5)}, 10), std::invalid_argument);
    CHECK_THROWS_AS(
        check_irreducible(spec, {StatePoint::real(0.5), StatePoint::real(0.5 + 1e-14)}, 10),
        std::invalid_argument);
}

TEST_CASE("emptiness propagates across the quantized grid") {
    const auto spec = builtin_scenario("reinforcement-trunc");
    std::vector<StatePoint> grid;
    for (int i = 0; i <= 20; ++i)
        grid.push_back(StatePoint::real(i == 0 ? 0.01
                                        : i == 20 ? 0.99
                                                  : 0.01 + 0.98 * (i / 20.0)));
    const auto rep = propagation_check(spec, grid, 2);
    CHECK(rep.holds);
    CHECK(!rep.vacuous);
    REQUIRE(rep.certs.size() == grid.size());
    for (const auto& c : rep.certs)
        CHECK(c.verdict == KernelCertificate::Verdict::EmptyAtDepth);
}

TEST_CASE("propagation on a branching two-vertex graph system") {
    const MapDistribution pair{{MapSpec::monomial(1.0, 2), MapSpec::monomial(0.5, 2)}, {0.5, 0.5}};
    const auto spec = embed_gdms(2, {{0, 1, 1.0, pair}, {1, 0, 1.0, pair}});
    const auto rep =
        propagation_check(spec, {parse_state(spec, "1"), parse_state(spec, "2")}, 3);
    CHECK(rep.holds);
    CHECK(!rep.vacuous);
}

TEST_CASE("propagation is vacuous when no kernel ever empties") {
    // one vertex, one index, two maps with the same fixed point: the kernel
    // superset never shrinks to nothing and never certifies exact either
    const MapDistribution both{{MapSpec::monomial(1.0, 2), MapSpec::monomial(1.0, 3)}, {0.5, 0.5}};
    const auto spec = embed_gdms(1, {{0, 0, 1.0, both}});
    const auto rep = propagation_check(spec, {parse_state(spec, "1")}, 4);
    CHECK(rep.vacuous);
    CHECK(rep.holds); // no emptiness to spread means no counterexample either
    REQUIRE(rep.certs.size() == 1);
    CHECK(rep.certs[0].verdict == KernelCertificate::Verdict::UnknownSuperset);
    CHECK(rep.certs[0].set.contains(0.0, 1e-9));
}

TEST_CASE("fattening contrast: raw distances stay infinite, thickened ones vanish") {
    const auto trace = fattening_experiment(0.1, 80, 0, 0.1);
    CHECK(trace.eps == 0.1);
    REQUIRE(trace.rows.size() == 81);
    for (const auto& row : trace.rows)
        CHECK(std::isinf(row.distUnfattened));

    // once the state is inside the eps-ball of the accumulation point, the
    // thickened set admits the kernel point 0, so the thickened distance is
    // just the fiber height, which keeps halving toward zero from then on
    std::size_t entry = trace.rows.size();
    for (std::size_t k = 0; k < trace.rows.size(); ++k) {
        const auto& row = trace.rows[k];
        if (entry == trace.rows.size() && std::isfinite(row.distThickened)) entry = k;
        if (k < entry)
            CHECK(std::isinf(row.distThickened));
        else
            CHECK(row.distThickened == row.y);
    }
    REQUIRE(entry < trace.rows.size());
    CHECK(entry == 10); // forced climb reaches 1/11 < eps at step ten
    CHECK(trace.rows.back().distThickened < 1e-20);

    // the all-first-index event mass: prod (1 - 2^-n) over the climb
    CHECK(std::abs(trace.eventProbability - 0.2887880950866024) <= 1e-6);

    CHECK_THROWS_AS(fattening_experiment(0.0, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(fattening_experiment(0.1, 10, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(fattening_experiment(0.1, 0, 0), std::invalid_argument);
}

TEST_CASE("one skew-product step is compatible with the path radius") {
    const auto spec = builtin_scenario("jump-annulus");
    const auto path = sample_path_with_maps(spec, parse_state(spec, "2"), 46, 9);
    const SpherePoint y = SpherePoint::at(1.3, 0.4);

    const auto res = skew_step(spec, path, y);
    CHECK(res.shifted.maps.size() == 45);
    CHECK(res.shifted.word.size() == 45);
    CHECK(res.shifted.states.size() == 46);
    CHECK(res.image == apply_map(path.maps[0], y));
    REQUIRE(res.radialResidual.has_value());
    CHECK(*res.radialResidual <= 1e-9);

    PathSample bare;
    CHECK_THROWS_AS(skew_step(spec, bare, y), std::invalid_argument);
}

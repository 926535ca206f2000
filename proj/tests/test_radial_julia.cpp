#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "rscc/errors.hpp"
#include "rscc/radial_julia.hpp"
#include "rscc/scenario.hpp"

using namespace rscc;

namespace {
constexpr double kLog2 = 0.6931471805599453;
const MapSpec f = MapSpec::monomial(1.0, 2);
const MapSpec g = MapSpec::monomial(0.5, 2);

bool is_interval(const RadialSet& s, double lo, double hi, double tol) {
    return s.size() == 1 && std::abs(s.min() - lo) <= tol && std::abs(s.max() - hi) <= tol;
}
} // namespace

TEST_CASE("singleton semigroups settle on the branch fixed point") {
    const auto jf = semigroup_julia_radial({f});
    CHECK(is_interval(jf, 0.0, 0.0, 1e-9));
    const auto jg = semigroup_julia_radial({g});
    CHECK(is_interval(jg, kLog2, kLog2, 1e-9));
}

TEST_CASE("the pair fills the annulus between its fixed points") {
    const auto j = semigroup_julia_radial({f, g});
    CHECK(is_interval(j, 0.0, kLog2, 1e-9));

    // adding generators only grows the attractor
    const auto jf = semigroup_julia_radial({f});
    for (const auto& p : jf.parts()) {
        CHECK(j.contains(p.lo, 1e-9));
        CHECK(j.contains(p.hi, 1e-9));
    }
}

TEST_CASE("separated inverse branches leave gaps") {
    // s/3 and (s+log2)/2 push [0,log2] into disjoint pieces, so the interval
    // count doubles every pass; resolve the dust coarsely
    const MapSpec cube = MapSpec::monomial(1.0, 3);
    const double tol = 1e-4;
    const auto j = semigroup_julia_radial({cube, g}, tol);
    CHECK(j.size() >= 2);
    CHECK(std::abs(j.min() - 0.0) <= 1e-12);  // the extreme fixed points never move
    CHECK(std::abs(j.max() - kLog2) <= 1e-12);

    // backward invariance: J equals the union of its inverse branch images
    const auto back = set_union(affine_image(inverse_log_action(cube), j),
                                affine_image(inverse_log_action(g), j));
    CHECK(radial_hausdorff(j, back) <= 2.0 * tol);

    // at the default tolerance the same system overruns the interval cap, and
    // says so instead of grinding
    CHECK_THROWS_AS(semigroup_julia_radial({cube, g}), resource_error);
}

TEST_CASE("exact one-step preimages of the annulus") {
    const auto annulus = RadialSet::interval(0.0, kLog2);

    const auto pf = radial_preimage(f, annulus);
    REQUIRE(pf.size() == 1);
    CHECK(std::abs(std::exp(pf.min()) - 1.0) <= 1e-12);
    CHECK(std::abs(std::exp(pf.max()) - std::sqrt(2.0)) <= 1e-12);

    const auto pg = radial_preimage(g, annulus);
    REQUIRE(pg.size() == 1);
    CHECK(std::abs(std::exp(pg.min()) - std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(std::exp(pg.max()) - 2.0) <= 1e-12);

    const auto pff = radial_preimage(compose_monomials(f, f), annulus);
    REQUIRE(pff.size() == 1);
    CHECK(std::abs(std::exp(pff.min()) - 1.0) <= 1e-12);
    CHECK(std::abs(std::exp(pff.max()) - std::pow(2.0, 0.25)) <= 1e-12);
}

TEST_CASE("statewise sets of the halving ladder") {
    const auto spec = builtin_scenario("jump-annulus");
    const auto sets = statewise_julia_radial(spec);
    REQUIRE(sets.size() == 3);

    CHECK(is_interval(sets.at("Ladder"), 0.0, kLog2, 1e-8));
    CHECK(is_interval(sets.at("Two"), 0.0, kLog2, 1e-8));
    CHECK(sets.at("Zero").contains(0.0, 1e-8));
    CHECK(sets.at("Zero").measure() <= 1e-8);

    // each class set is the union of inverse images of its successors
    const auto& decl = *spec.radial;
    for (std::size_t v = 0; v < decl.names.size(); ++v) {
        RadialSet back = RadialSet::empty();
        for (const auto& e : decl.edges[v]) {
            const auto& m = spec.tau[e.index].maps[e.mapIdx];
            back = set_union(back,
                             affine_image(inverse_log_action(m), sets.at(decl.names[e.succ])));
        }
        CHECK(radial_hausdorff(sets.at(decl.names[v]), back) <= 2e-9);
    }
}

TEST_CASE("graph-directed demo agrees with naive simultaneous iteration") {
    const auto spec = builtin_scenario("gdms-demo");
    const auto sets = statewise_julia_radial(spec);
    REQUIRE(sets.count("1") == 1);
    REQUIRE(sets.count("2") == 1);

    // iterate C1 <- inv_f(C2), C2 <- inv_f(C1) u inv_g(C1) from a generous seed
    RadialSet c1 = RadialSet::interval(-10.0, 10.0);
    RadialSet c2 = c1;
    for (int k = 0; k < 120; ++k) {
        const RadialSet n1 = affine_image(inverse_log_action(f), c2);
        const RadialSet n2 = set_union(affine_image(inverse_log_action(f), c1),
                                       affine_image(inverse_log_action(g), c1));
        c1 = n1;
        c2 = n2;
    }
    CHECK(radial_hausdorff(sets.at("1"), c1) <= 5e-9);
    CHECK(radial_hausdorff(sets.at("2"), c2) <= 5e-9);
    CHECK(sets.at("1").size() >= 2); // the alternation splits both vertex sets
}

TEST_CASE("kernel certificates on the halving ladder") {
    const auto spec = builtin_scenario("jump-annulus");

    const auto c1 = kernel_julia_depth(spec, StatePoint::ladder(1), 2);
    CHECK(c1.verdict == KernelCertificate::Verdict::EmptyAtDepth);
    CHECK(c1.depth == 2);
    CHECK(c1.set.is_empty());

    const auto c2 = kernel_julia_depth(spec, parse_state(spec, "2"), 2);
    CHECK(c2.verdict == KernelCertificate::Verdict::EmptyAtDepth);
    CHECK(c2.depth == 2);

    // probing deeper still reports the least emptiness depth
    const auto c4 = kernel_julia_depth(spec, parse_state(spec, "2"), 4);
    CHECK(c4.verdict == KernelCertificate::Verdict::EmptyAtDepth);
    CHECK(c4.depth == 2);

    // the accumulation state repeats one map forever: kernel is its Julia circle
    const auto c0 = kernel_julia_depth(spec, StatePoint::ladder(0), 2);
    CHECK(c0.verdict == KernelCertificate::Verdict::ExactNonempty);
    CHECK(is_interval(c0.set, 0.0, 0.0, 1e-12));
}

TEST_CASE("kernel certificates at deterministic versus branching states") {
    const auto frozen = builtin_scenario("frozen-square");
    const auto cf = kernel_julia_depth(frozen, frozen.initial, 3);
    CHECK(cf.verdict == KernelCertificate::Verdict::ExactNonempty);
    CHECK(is_interval(cf.set, 0.0, 0.0, 1e-12));

    const auto re = builtin_scenario("reinforcement");
    const auto mid = kernel_julia_depth(re, StatePoint::real(0.5), 4);
    CHECK(mid.verdict == KernelCertificate::Verdict::EmptyAtDepth);
    CHECK(mid.depth == 2);

    // endpoints freeze onto one branch each: circles of radius 1 and 2
    const auto lo = kernel_julia_depth(re, StatePoint::real(0.0), 3);
    CHECK(lo.verdict == KernelCertificate::Verdict::ExactNonempty);
    CHECK(is_interval(lo.set, 0.0, 0.0, 1e-12));
    const auto hi = kernel_julia_depth(re, StatePoint::real(1.0), 3);
    CHECK(hi.verdict == KernelCertificate::Verdict::ExactNonempty);
    CHECK(is_interval(hi.set, kLog2, kLog2, 1e-12));

    // exact kernels are forward invariant under their cycle map
    CHECK(radial_hausdorff(affine_image(log_radius_action(g), hi.set), hi.set) <= 1e-9);
    CHECK(radial_hausdorff(affine_image(log_radius_action(f), lo.set), lo.set) <= 1e-9);
}

TEST_CASE("path circle radii for the classic words") {
    const auto allG = path_julia_radius([](int) { return g; }, 60);
    CHECK(std::abs(allG.t - kLog2) <= 1e-12);

    const auto allF = path_julia_radius([](int) { return f; }, 60);
    CHECK(allF.t == 0.0);

    const auto alt = path_julia_radius([](int k) { return k % 2 == 0 ? g : f; }, 80);
    CHECK(std::abs(alt.t - 2.0 / 3.0 * kLog2) <= 1e-12);
    CHECK(std::abs(alt.t - 0.46209812037329684) <= 1e-12);

    const auto gThenF = path_julia_radius([](int k) { return k == 0 ? g : f; }, 60);
    CHECK(std::abs(gThenF.t - kLog2 / 2.0) <= 1e-12);
}

TEST_CASE("path radius tail bound is honest") {
    const auto shallow = path_julia_radius([](int k) { return k % 3 == 0 ? g : f; }, 40);
    const auto deep = path_julia_radius([](int k) { return k % 3 == 0 ? g : f; }, 60);
    CHECK(std::abs(shallow.t - deep.t) <= shallow.errorBound);
    CHECK(deep.errorBound < shallow.errorBound);
}

TEST_CASE("sampled path circles stay inside the semigroup annulus") {
    const auto spec = builtin_scenario("jump-annulus");
    for (int i = 0; i < 100; ++i) {
        const auto path = sample_path_with_maps(spec, StatePoint::ladder(1), 40, 300 + i);
        const auto pr = path_julia_radius([&](int k) { return path.maps[k]; }, 40);
        CHECK(pr.t >= -1e-9);
        CHECK(pr.t <= kLog2 + 1e-9);
    }
}

#include "rscc/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <thread>

#include "rscc/analysis.hpp"
#include "rscc/grid_julia.hpp"
#include "rscc/io.hpp"
#include "rscc/parallel.hpp"
#include "rscc/radial_julia.hpp"
#include "rscc/transition_op.hpp"

namespace rscc {
namespace {

constexpr double kLog2 = 0.6931471805599453;

// first failure wins; on success the detail slot carries a summary
struct Check {
    bool ok = true;
    std::string detail;
    void req(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
    void summary(const std::string& text) {
        if (ok) detail = text;
    }
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

int battery_workers() {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    return env_workers(hw > 0 ? hw : 1);
}

// ---- 1: the two-map annulus, exactly ----------------------------------------

CriterionResult annulus_reproduction() {
    Check c;
    const std::vector<MapSpec> maps{MapSpec::monomial({1.0, 0.0}, 2),
                                    MapSpec::monomial({0.5, 0.0}, 2)};
    RadialSet ann;
    double best = 1e9;
    for (int rep = 0; rep < 3; ++rep) { // best of three, timers are noisy
        const auto t0 = std::chrono::steady_clock::now();
        ann = semigroup_julia_radial(maps, 1e-9);
        best = std::min(best, ms_since(t0));
    }
    c.req(ann.size() == 1, "expected a single log-radius interval");
    if (ann.size() == 1) {
        c.req(std::abs(ann.min() - 0.0) <= 1e-8, "lower endpoint off: " + fmt_double(ann.min()));
        c.req(std::abs(ann.max() - kLog2) <= 1e-8, "upper endpoint off: " + fmt_double(ann.max()));
    }
    c.req(best < 1.0, "slower than 1 ms: " + fmt_double(best) + " ms");
    c.summary("s=[" + fmt_double(ann.min()) + ", " + fmt_double(ann.max()) + "] " +
              pretty_radii(ann) + ", " + fmt_double(best) + " ms");
    return {1, "annulus-reproduction", c.ok, c.detail};
}

// ---- 2: preimage endpoints to 1e-12 ------------------------------------------

CriterionResult preimage_algebra() {
    Check c;
    const MapSpec f = MapSpec::monomial({1.0, 0.0}, 2);
    const MapSpec g = MapSpec::monomial({0.5, 0.0}, 2);
    const RadialSet ann = RadialSet::interval(0.0, kLog2);

    auto expect = [&](const RadialSet& got, double lo, double hi, const char* what) {
        c.req(got.size() == 1, std::string(what) + ": not a single interval");
        if (got.size() != 1) return;
        c.req(std::abs(got.min() - lo) <= 1e-12 && std::abs(got.max() - hi) <= 1e-12,
              std::string(what) + ": got [" + fmt_double(got.min()) + ", " +
                  fmt_double(got.max()) + "]");
    };
    expect(radial_preimage(f, ann), 0.0, kLog2 / 2, "f^-1(annulus)");           // [1, sqrt 2]
    expect(radial_preimage(g, ann), kLog2 / 2, kLog2, "g^-1(annulus)");         // [sqrt 2, 2]
    expect(radial_preimage(f, RadialSet::interval(0.0, kLog2 / 2)), 0.0, kLog2 / 4,
           "f^-1(f^-1(annulus))");                                              // [1, 2^(1/4)]
    c.summary("three preimage interval pairs exact to 1e-12");
    return {2, "preimage-algebra", c.ok, c.detail};
}

// ---- 3: kernel certificates on the halving ladder -----------------------------

CriterionResult kernel_emptiness() {
    Check c;
    const ScenarioSpec ja = builtin_scenario("jump-annulus");
    const auto at2 = kernel_julia_depth(ja, parse_state(ja, "2"), 2);
    c.req(at2.verdict == KernelCertificate::Verdict::EmptyAtDepth,
          std::string("state 2: ") + to_string(at2.verdict));
    c.req(at2.depth == 2, "state 2: emptiness depth " + std::to_string(at2.depth));

    const auto at0 = kernel_julia_depth(ja, parse_state(ja, "0"), 2);
    c.req(at0.verdict == KernelCertificate::Verdict::ExactNonempty,
          std::string("state 0: ") + to_string(at0.verdict));
    if (at0.verdict == KernelCertificate::Verdict::ExactNonempty) {
        c.req(!at0.set.is_empty() && std::abs(std::exp(at0.set.min()) - 1.0) <= 1e-12 &&
                  std::abs(std::exp(at0.set.max()) - 1.0) <= 1e-12,
              "state 0: kernel is not the unit circle");
    }
    c.summary("state 2 EmptyAtDepth(2), state 0 ExactNonempty(unit circle)");
    return {3, "kernel-emptiness", c.ok, c.detail};
}

// ---- 4: jump verdicts across the builtin family ------------------------------

CriterionResult jump_detection() {
    Check c;
    const ScenarioSpec ja = builtin_scenario("jump-annulus");
    const auto a = detect_jump(ja, StatePoint::ladder(1), Drive::forced({0}), 50);
    c.req(a.verdict == JumpReport::Verdict::JumpDetected,
          std::string("jump-annulus: ") + to_string(a.verdict) + " (" + a.note + ")");
    c.req(a.limit && *a.limit == StatePoint::ladder(0), "jump-annulus: wrong limit state");

    const ScenarioSpec re = builtin_scenario("reinforcement");
    const auto b = detect_jump(re, StatePoint::real(0.5), Drive::forced({1}), 60);
    c.req(b.verdict == JumpReport::Verdict::JumpDetected,
          std::string("reinforcement: ") + to_string(b.verdict) + " (" + b.note + ")");
    c.req(b.limit && *b.limit == StatePoint::real(1.0), "reinforcement: wrong limit state");

    const ScenarioSpec rt = builtin_scenario("reinforcement-trunc");
    const auto d = detect_jump(rt, StatePoint::real(0.5), Drive::forced({1}), 200);
    c.req(d.verdict == JumpReport::Verdict::NoJumpWithinHorizon,
          std::string("reinforcement-trunc forced: ") + to_string(d.verdict));
    const auto e = detect_jump(rt, StatePoint::real(0.5), Drive::sampled(7), 200);
    c.req(e.verdict == JumpReport::Verdict::NoJumpWithinHorizon,
          std::string("reinforcement-trunc sampled: ") + to_string(e.verdict));

    int discreteChecked = 0;
    for (const auto& name : builtin_scenario_names()) {
        const ScenarioSpec spec = builtin_scenario(name);
        if (spec.space.kind != StateSpace::Kind::Discrete) continue;
        ++discreteChecked;
        const auto r = detect_jump(spec, spec.initial, Drive::sampled(3), 30);
        c.req(r.verdict == JumpReport::Verdict::NoJumpWithinHorizon,
              name + ": discrete scenario got " + to_string(r.verdict));
    }
    c.req(discreteChecked >= 2, "expected at least two discrete builtins");
    c.summary("ladder and reinforcement jumps detected, truncation and " +
              std::to_string(discreteChecked) + " discrete scenarios excluded");
    return {4, "jump-detection", c.ok, c.detail};
}

// ---- 5: operator identities ---------------------------------------------------

CriterionResult operator_identities() {
    Check c;
    const std::vector<TestFunction> phis{TestFunction::one(), TestFunction::state_coord(),
                                         TestFunction::radial_bump(0.0, 1.0),
                                         TestFunction::clipped_log(-4.0, 4.0)};
    struct Case {
        ScenarioSpec spec;
        ProductPoint p;
    };
    const std::vector<Case> cases{
        {builtin_scenario("jump-annulus"), {SpherePoint::at(1.2, 0.3), StatePoint::ladder(1)}},
        {builtin_scenario("reinforcement"), {SpherePoint::at(1.2, 0.3), StatePoint::real(0.5)}},
    };

    double maxDualGap = 0.0;
    for (const auto& cs : cases)
        for (const auto& phi : phis)
            for (int n = 1; n <= 6; ++n) {
                const double a = iterate_M(cs.spec, phi, cs.p, n);
                const double b = word_sum_oracle(cs.spec, phi, cs.p, n);
                maxDualGap = std::max(maxDualGap, std::abs(a - b));
            }
    c.req(maxDualGap <= 1e-12, "iterate vs word-sum gap " + fmt_double(maxDualGap));

    double worstZ = 0.0;
    for (const auto& cs : cases)
        for (const auto& phi : phis) {
            const double exact = iterate_M(cs.spec, phi, cs.p, 4);
            const auto mc = mc_estimate_M(cs.spec, phi, cs.p, 4, 100000, 11, battery_workers());
            const double gap = std::abs(mc.mean - exact);
            if (mc.stderr_ == 0.0) {
                c.req(gap <= 1e-12, std::string(phi.name()) + ": zero spread but gap " +
                                        fmt_double(gap));
            } else {
                worstZ = std::max(worstZ, gap / mc.stderr_);
            }
        }
    c.req(worstZ <= 4.0, "monte carlo z-score " + fmt_double(worstZ));

    const ScenarioSpec re = builtin_scenario("reinforcement");
    double maxMart = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double p = (i + 0.5) / 20.0;
        const ProductPoint pp{SpherePoint::at(1.0), StatePoint::real(p)};
        maxMart = std::max(maxMart,
                           std::abs(apply_M(re, TestFunction::state_coord(), pp) - p));
    }
    c.req(maxMart <= 1e-12, "martingale defect " + fmt_double(maxMart));

    c.summary("dual-route gap " + fmt_double(maxDualGap) + ", worst mc z " + fmt_double(worstZ) +
              ", martingale defect " + fmt_double(maxMart));
    return {5, "operator-identities", c.ok, c.detail};
}

// ---- 6: cooperation vs frozen oscillation ------------------------------------

CriterionResult cooperation_signature() {
    Check c;
    const std::vector<double> radii{1e-1, 1e-2, 1e-3, 1e-4};
    const TestFunction phi = TestFunction::radial_bump(0.0, 1.0);
    const double range = 1.0; // bump spans (0, 1] on the sphere

    const ScenarioSpec coop = builtin_scenario("reinforcement-trunc");
    const std::vector<SpherePoint> probes{
        SpherePoint::at(1.0),
        SpherePoint::at(1.25 * std::cos(0.35), 1.25 * std::sin(0.35)),
        SpherePoint::at(0.8),
    };
    double coopWorstAtMilli = 0.0;
    for (const auto& y : probes) {
        const auto diag =
            equicontinuity_diagnostic(coop, phi, {y, StatePoint::real(0.5)}, radii, 8);
        for (std::size_t r = 0; r + 1 < radii.size(); ++r)
            c.req(diag.supOverN[r] + 1e-12 >= diag.supOverN[r + 1],
                  "cooperative oscillation not nonincreasing in delta");
        coopWorstAtMilli = std::max(coopWorstAtMilli, diag.supOverN[2]);
        c.req(diag.supOverN[2] < 0.05,
              "cooperative oscillation at delta 1e-3 is " + fmt_double(diag.supOverN[2]));
    }

    // one frozen map has no cooperation to lean on: on its Julia circle the
    // oscillation must persist at every probed scale (deeper level budget, since
    // a finite-n diagnostic needs 2^n * delta to reach the clip)
    const ScenarioSpec frozen = builtin_scenario("frozen-square");
    const auto diagF = equicontinuity_diagnostic(
        frozen, phi, {SpherePoint::at(1.0), frozen.initial}, radii, 18);
    double frozenFloor = 1e9;
    for (double s : diagF.supOverN) frozenFloor = std::min(frozenFloor, s);
    c.req(frozenFloor >= 0.25 * range,
          "frozen oscillation floor " + fmt_double(frozenFloor) + " below " +
              fmt_double(0.25 * range));

    c.summary("cooperative sup at 1e-3 = " + fmt_double(coopWorstAtMilli) +
              ", frozen floor = " + fmt_double(frozenFloor));
    return {6, "cooperation-signature", c.ok, c.detail};
}

// ---- 7: sampled path circles thin out with resolution -------------------------

CriterionResult pathwise_measure_zero() {
    Check c;
    const ScenarioSpec ja = builtin_scenario("jump-annulus");
    const StatePoint w2 = parse_state(ja, "2");
    const int workers = battery_workers();

    auto mean_measure = [&](int res) {
        GridWindow win{-2.5, 2.5, -2.5, 2.5, res};
        GridParams par;
        par.maxDepth = 40;
        par.workers = workers;
        double total = 0.0;
        for (int i = 0; i < 20; ++i) {
            const auto path = sample_path_with_maps(ja, w2, 40, 1000 + i);
            const auto grid = estimate_path_julia_grid(path, win, par);
            total += pixel_measure(grid, PixelLabel::JuliaCandidate);
        }
        return total / 20.0;
    };

    const double m128 = mean_measure(128);
    const double m512 = mean_measure(512);
    c.req(m512 < m128, "candidate fraction did not shrink: " + fmt_double(m128) + " -> " +
                           fmt_double(m512));
    c.req(m512 <= 8.0 / 512.0,
          "candidate fraction at 512 is " + fmt_double(m512) + " > " + fmt_double(8.0 / 512.0));
    c.summary("mean candidate fraction " + fmt_double(m128) + " at 128 -> " + fmt_double(m512) +
              " at 512 (cap " + fmt_double(8.0 / 512.0) + ")");
    return {7, "pathwise-measure-zero", c.ok, c.detail};
}

// ---- 8: the fattening trace ---------------------------------------------------

CriterionResult fattening_counterexample() {
    Check c;
    const double eps = 0.1, y0 = 0.1;
    const auto trace = fattening_experiment(eps, 80, 0, y0, true);
    c.req(!trace.rows.empty(), "empty trace");

    bool allRawInf = true;
    bool thickenedOk = true;
    int firstInside = -1;
    for (const auto& r : trace.rows) {
        allRawInf = allRawInf && std::isinf(r.distUnfattened);
        if (1.0 / (r.k + 1) < eps) {
            if (firstInside < 0) firstInside = r.k;
            thickenedOk =
                thickenedOk && r.distThickened <= std::ldexp(y0, -r.k) * (1.0 + 1e-12);
        }
    }
    c.req(allRawInf, "raw kernel distance became finite somewhere");
    c.req(firstInside >= 0, "trace never entered the eps-ball of the accumulation state");
    c.req(thickenedOk, "thickened distance exceeded 2^-k * y0 inside the eps-ball");
    c.req(std::abs(trace.eventProbability - 0.2887881) <= 1e-6,
          "event probability " + fmt_double(trace.eventProbability));
    c.summary("raw distance infinite on all " + std::to_string(trace.rows.size()) +
              " rows, thickened decays from k=" + std::to_string(firstInside) +
              ", event probability " + fmt_double(trace.eventProbability));
    return {8, "fattening-counterexample", c.ok, c.detail};
}

// ---- 9: series vs orbit-boundedness bisection ---------------------------------

// brute-force oracle: the path Julia circle is the boundedness threshold of the
// forward log-radius orbit, found by bisection with no reference to the series
double orbit_threshold(const std::vector<MapSpec>& period, int steps) {
    auto bounded = [&](double s) {
        for (int j = 0; j < steps; ++j) {
            const auto& m = period[j % period.size()];
            s = s * m.d + std::log(std::abs(m.c));
            if (s > 60.0) return false;
            if (s < -60.0) return true;
        }
        return true;
    };
    double lo = -2.0, hi = 2.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (bounded(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

CriterionResult path_radius_oracle() {
    Check c;
    const ScenarioSpec ja = builtin_scenario("jump-annulus");
    const StatePoint w2 = parse_state(ja, "2");
    const int period = 7;

    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto path = sample_path_with_maps(ja, w2, period, 2000 + i);
        const auto series =
            path_julia_radius([&](int k) { return path.maps[k % period]; }, 40);
        const double oracle = orbit_threshold(path.maps, 300);
        worst = std::max(worst, std::abs(series.t - oracle));
    }
    c.req(worst <= 1e-9, "worst series-vs-bisection gap " + fmt_double(worst));
    c.summary("worst gap over 100 periodic words: " + fmt_double(worst));
    return {9, "path-radius-oracle", c.ok, c.detail};
}

// ---- 10: byte-identical artifacts across worker counts ------------------------

CriterionResult determinism(const std::map<std::string, std::string>& bundle1) {
    Check c;
    const auto again = report_artifacts(1);
    const auto wide = report_artifacts(4);
    c.req(bundle1 == again, "repeated single-worker runs differ");
    c.req(bundle1 == wide, "1-worker and 4-worker artifacts differ");
    std::size_t bytes = 0;
    for (const auto& [name, data] : bundle1) bytes += data.size();
    c.summary(std::to_string(bundle1.size()) + " files, " + std::to_string(bytes) +
              " bytes, stable across reruns and worker counts");
    return {10, "determinism", c.ok, c.detail};
}

} // namespace

std::map<std::string, std::string> report_artifacts(int workers) {
    std::map<std::string, std::string> files;
    const ScenarioSpec ja = builtin_scenario("jump-annulus");

    files["julia-radial.csv"] = radial_classes_csv(
        statewise_julia_radial(ja), {{"scenario", ja.name}, {"seed", "0"}, {"tol", "1e-9"}});

    for (const char* state : {"2", "0"}) {
        json j;
        j["meta"] = meta_json(ja.name, 0, {{"state", state}, {"depth", "2"}});
        j["kernel"] = to_json(kernel_julia_depth(ja, parse_state(ja, state), 2));
        files[std::string("kernel-state") + state + ".json"] = j.dump(2) + "\n";
    }

    {
        const auto report = detect_jump(ja, StatePoint::ladder(1), Drive::forced({0}), 50);
        const std::map<std::string, std::string> meta{
            {"scenario", ja.name}, {"seed", "0"}, {"drive", "forced-x1"}, {"horizon", "50"}};
        files["jump.csv"] = jump_csv(report, meta);
        json j;
        j["meta"] = meta_json(ja.name, 0, {{"drive", "forced-x1"}, {"horizon", "50"}});
        j["report"] = to_json(report);
        files["jump.json"] = j.dump(2) + "\n";
    }

    {
        const auto trace = fattening_experiment(0.1, 80, 0, 0.1, true);
        const std::map<std::string, std::string> meta{
            {"scenario", "fattening"}, {"seed", "0"}, {"eps", "0.1"}, {"y0", "0.1"}};
        files["fattening.csv"] = fattening_csv(trace, meta);
        json j;
        j["meta"] = meta_json("fattening", 0, {{"eps", "0.1"}, {"y0", "0.1"}});
        j["trace"] = to_json(trace);
        files["fattening.json"] = j.dump(2) + "\n";
    }

    {
        const auto path = sample_path_with_maps(ja, parse_state(ja, "2"), 40, 1);
        GridWindow win{-2.5, 2.5, -2.5, 2.5, 128};
        GridParams par;
        par.maxDepth = 40;
        par.workers = workers;
        const auto grid = estimate_path_julia_grid(path, win, par);
        files["grid-path.ppm"] =
            render_ppm(grid, "heat", "scenario=jump-annulus seed=1 res=128 depth=40");
        files["grid-profile.csv"] = radial_profile_csv(
            radial_profile(grid, PixelLabel::JuliaCandidate, 32),
            {{"scenario", ja.name}, {"seed", "1"}, {"res", "128"}, {"label", "julia-candidate"}});
    }

    {
        const ScenarioSpec coop = builtin_scenario("reinforcement-trunc");
        const auto diag = equicontinuity_diagnostic(
            coop, TestFunction::radial_bump(0.0, 1.0),
            {SpherePoint::at(1.0), StatePoint::real(0.5)}, {1e-1, 1e-2, 1e-3, 1e-4}, 8);
        files["equicontinuity.csv"] = equicontinuity_csv(
            diag, {{"scenario", coop.name}, {"seed", "0"}, {"phi", "radial-bump"}});
    }

    {
        CsvWriter csv({{"scenario", ja.name}, {"seed", "0"}, {"phi", "radial-bump"}});
        csv.header({"n", "iterate", "word_sum"});
        const ProductPoint p{SpherePoint::at(1.2, 0.3), StatePoint::ladder(1)};
        const TestFunction phi = TestFunction::radial_bump(0.0, 1.0);
        for (int n = 1; n <= 4; ++n)
            csv.row({std::to_string(n), fmt_double(iterate_M(ja, phi, p, n)),
                     fmt_double(word_sum_oracle(ja, phi, p, n))});
        files["operator.csv"] = csv.str();
    }

    return files;
}

std::vector<CriterionResult> run_acceptance(const std::string& outDir) {
    std::vector<CriterionResult> results;
    results.push_back(annulus_reproduction());
    results.push_back(preimage_algebra());
    results.push_back(kernel_emptiness());
    results.push_back(jump_detection());
    results.push_back(operator_identities());
    results.push_back(cooperation_signature());
    results.push_back(pathwise_measure_zero());
    results.push_back(fattening_counterexample());

    const auto bundle = report_artifacts(1);
    results.push_back(path_radius_oracle());
    results.push_back(determinism(bundle));

    if (!outDir.empty()) {
        std::filesystem::create_directories(outDir);
        for (const auto& [name, data] : bundle)
            write_file((std::filesystem::path(outDir) / name).string(), data);
        write_file((std::filesystem::path(outDir) / "acceptance.txt").string(),
                   format_acceptance(results));
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

std::string format_acceptance(const std::vector<CriterionResult>& results) {
    std::string out;
    for (const auto& r : results) {
        out += r.pass ? "PASS" : "FAIL";
        out += " ";
        if (r.id < 10) out += " ";
        out += std::to_string(r.id) + " " + r.name;
        if (!r.detail.empty()) out += "  (" + r.detail + ")";
        out += "\n";
    }
    return out;
}

} // namespace rscc

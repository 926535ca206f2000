// command line front end: scenario simulation, radial and grid Julia sets,
// kernel certificates, operator iteration, jump detection and the release
// report. exit codes: 0 ok, 2 bad arguments, 3 resource cap, 4 failed report.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "rscc/acceptance.hpp"
#include "rscc/analysis.hpp"
#include "rscc/config.hpp"
#include "rscc/errors.hpp"
#include "rscc/grid_julia.hpp"
#include "rscc/io.hpp"
#include "rscc/parallel.hpp"
#include "rscc/radial_julia.hpp"
#include "rscc/transition_op.hpp"

namespace {

using namespace rscc;
namespace fs = std::filesystem;

struct Common {
    std::string scenario = "jump-annulus";
    std::string state;
    std::uint64_t seed = 0;
    std::string out;
    double alpha = 0.5;
    double eps = 0.01;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--scenario", c.scenario, "builtin name or scenario file path");
    cmd->add_option("--state", c.state, "start state (default: the scenario's initial state)");
    cmd->add_option("--seed", c.seed, "rng seed");
    cmd->add_option("--out", c.out, "output file or directory (default: stdout)");
    cmd->add_option("--alpha", c.alpha, "reinforcement mixing weight for builtins");
    cmd->add_option("--eps", c.eps, "truncation margin / fattening radius for builtins");
}

ScenarioSpec resolve_scenario(const Common& c) {
    const auto names = builtin_scenario_names();
    for (const auto& n : names)
        if (n == c.scenario) {
            ScenarioParams params;
            params.alpha = c.alpha;
            params.eps = c.eps;
            return builtin_scenario(n, params);
        }
    return load_scenario_file(c.scenario);
}

StatePoint resolve_state(const ScenarioSpec& spec, const Common& c) {
    return c.state.empty() ? spec.initial : parse_state(spec, c.state);
}

int default_workers() {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    return env_workers(hw > 0 ? hw : 1);
}

void emit(const Common& c, const std::string& bytes, const std::string& defaultName) {
    if (c.out.empty()) {
        std::cout << bytes;
        return;
    }
    fs::path target(c.out);
    if (fs::is_directory(target) || !target.has_extension()) {
        fs::create_directories(target);
        target /= defaultName;
    }
    write_file(target.string(), bytes);
    std::cerr << "wrote " << target.string() << "\n";
}

std::map<std::string, std::string> base_meta(const ScenarioSpec& spec, const Common& c) {
    return {{"scenario", spec.name}, {"seed", std::to_string(c.seed)}};
}

GridWindow parse_window(const std::string& text, int res) {
    GridWindow win;
    win.res = res;
    if (text.empty()) return win;
    double v[4];
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3]) != 4)
        throw std::invalid_argument("--window wants reMin,reMax,imMin,imMax");
    win.reMin = v[0];
    win.reMax = v[1];
    win.imMin = v[2];
    win.imMax = v[3];
    if (!(win.reMin < win.reMax) || !(win.imMin < win.imMax))
        throw std::invalid_argument("--window bounds are not ordered");
    return win;
}

SpherePoint parse_fiber_point(const std::string& text) {
    if (text == "inf") return SpherePoint::infinity();
    double re = 0.0, im = 0.0;
    const int got = std::sscanf(text.c_str(), "%lf,%lf", &re, &im);
    if (got < 1) throw std::invalid_argument("--y wants re[,im] or inf");
    return SpherePoint::at(re, im);
}

TestFunction parse_phi(const std::string& name, double s0, double sigma) {
    if (name == "one") return TestFunction::one();
    if (name == "state") return TestFunction::state_coord();
    if (name == "bump") return TestFunction::radial_bump(s0, sigma);
    if (name == "cliplog") return TestFunction::clipped_log(-4.0, 4.0);
    throw std::invalid_argument("--phi wants one|state|bump|cliplog");
}

Drive parse_drive(const ScenarioSpec& spec, const std::string& forced, std::uint64_t seed) {
    if (forced.empty()) return Drive::sampled(seed);
    std::vector<int> pattern;
    std::string token;
    std::istringstream in(forced);
    while (std::getline(in, token, ',')) {
        auto it = std::find(spec.indexNames.begin(), spec.indexNames.end(), token);
        if (it == spec.indexNames.end())
            throw std::invalid_argument("--forced names unknown index '" + token + "'");
        pattern.push_back(static_cast<int>(it - spec.indexNames.begin()));
    }
    if (pattern.empty()) throw std::invalid_argument("--forced pattern is empty");
    return Drive::forced(pattern);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random semigroup dynamics: exact radial Julia sets, kernel certificates,\n"
                 "grid estimates, transition-operator iteration and jump detection"};
    app.require_subcommand(1);

    // simulate ------------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "sample the driving chain as csv");
    Common simC;
    int simSteps = 20;
    bool simPaths = false;
    add_common(simulate, simC);
    simulate->add_option("--steps", simSteps, "number of steps");
    simulate->add_flag("--paths", simPaths, "also draw one map per step");

    // words ---------------------------------------------------------------
    auto* words = app.add_subcommand("words", "admissible words with cylinder mass");
    Common wordC;
    int wordSteps = 4;
    double wordMin = 0.0;
    add_common(words, wordC);
    words->add_option("--steps", wordSteps, "word length");
    words->add_option("--min-prob", wordMin, "drop words at or below this mass");

    // julia-radial ----------------------------------------------------------
    auto* radial = app.add_subcommand("julia-radial",
                                      "statewise radial Julia sets per declared class, csv");
    Common radC;
    add_common(radial, radC);

    // julia-grid / render ---------------------------------------------------
    Common gridC, renderC;
    std::string gridWindow, renderWindow;
    int gridRes = 256, renderRes = 256;
    int gridDepth = 40, renderDepth = 40;
    int gridSamples = 20, renderSamples = 20;
    std::string renderPalette = "heat";
    auto* grid = app.add_subcommand("julia-grid",
                                    "pixel classification of the statewise Julia set");
    add_common(grid, gridC);
    grid->add_option("--window", gridWindow, "reMin,reMax,imMin,imMax");
    grid->add_option("--res", gridRes, "pixels per side");
    grid->add_option("--depth", gridDepth, "iteration depth per sampled path");
    grid->add_option("--samples", gridSamples, "sampled map paths per pixel");
    auto* render = app.add_subcommand("render", "render the classification grid to a ppm image");
    add_common(render, renderC);
    render->add_option("--window", renderWindow, "reMin,reMax,imMin,imMax");
    render->add_option("--res", renderRes, "pixels per side");
    render->add_option("--depth", renderDepth, "iteration depth per sampled path");
    render->add_option("--samples", renderSamples, "sampled map paths per pixel");
    render->add_option("--palette", renderPalette, "bw or heat");

    // kernel ----------------------------------------------------------------
    auto* kernel = app.add_subcommand("kernel", "depth-bounded kernel certificate, json");
    Common kerC;
    int kerDepth = 2;
    add_common(kernel, kerC);
    kernel->add_option("--depth", kerDepth, "certificate depth");

    // operator ----------------------------------------------------------------
    auto* op = app.add_subcommand("operator", "transition-operator values and diagnostics, csv");
    Common opC;
    std::string opMode = "iterate", opPhi = "bump", opY = "1.2,0.3";
    int opN = 4;
    std::int64_t opSamples = 100000;
    double opS0 = 0.0, opSigma = 1.0;
    add_common(op, opC);
    op->add_option("--mode", opMode, "iterate|oracle|mc|diagnostic");
    op->add_option("--phi", opPhi, "one|state|bump|cliplog");
    op->add_option("--n", opN, "iteration depth");
    op->add_option("--samples", opSamples, "monte carlo sample count");
    op->add_option("--y", opY, "fiber point re[,im] or inf");
    op->add_option("--s0", opS0, "bump center in log radius");
    op->add_option("--sigma", opSigma, "bump width in log radius");

    // jump ----------------------------------------------------------------
    auto* jump = app.add_subcommand("jump", "emptiness-jump detection along a drive, json");
    Common jmpC;
    std::string jmpForced;
    int jmpHorizon = 50, jmpDepth = 2;
    add_common(jump, jmpC);
    jump->add_option("--forced", jmpForced, "comma list of index names, cycled; default samples");
    jump->add_option("--horizon", jmpHorizon, "maximum trajectory length");
    jump->add_option("--depth", jmpDepth, "kernel certificate depth");

    // irreducible ------------------------------------------------------------
    auto* irr = app.add_subcommand("irreducible",
                                   "reachability check on a finite set of states, json");
    Common irrC;
    std::string irrStates;
    int irrDepth = 50;
    add_common(irr, irrC);
    irr->add_option("--states", irrStates, "comma list of state literals")->required();
    irr->add_option("--depth", irrDepth, "reachability depth");

    // fattening ----------------------------------------------------------------
    auto* fat = app.add_subcommand("fattening", "kernel-approach trace on the halving ladder");
    Common fatC;
    int fatHorizon = 80;
    double fatY0 = 0.1;
    bool fatSampled = false;
    add_common(fat, fatC);
    fat->add_option("--horizon", fatHorizon, "trajectory length");
    fat->add_option("--y0", fatY0, "starting fiber point in (0, 1/8)");
    fat->add_flag("--sampled", fatSampled, "sample the drive instead of forcing x1");

    // report ----------------------------------------------------------------
    auto* report = app.add_subcommand("report", "run the release checks and write artifacts");
    std::string reportOut = "report-out";
    report->add_option("--out", reportOut, "artifact directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) {
            const auto spec = resolve_scenario(simC);
            const auto w0 = resolve_state(spec, simC);
            auto meta = base_meta(spec, simC);
            meta["steps"] = std::to_string(simSteps);
            if (simPaths) {
                const auto sample = sample_path_with_maps(spec, w0, simSteps, simC.seed);
                meta["log_prob"] = fmt_double(sample.logProb);
                emit(simC, path_csv(spec, sample, meta), "simulate.csv");
            } else {
                const auto sample = sample_chain(spec, w0, simSteps, simC.seed);
                meta["log_prob"] = fmt_double(sample.logProb);
                emit(simC, chain_csv(spec, sample, meta), "simulate.csv");
            }
        } else if (words->parsed()) {
            const auto spec = resolve_scenario(wordC);
            const auto w0 = resolve_state(spec, wordC);
            const auto all = admissible_words(spec, w0, wordSteps, wordMin);
            std::string out = "# scenario=" + spec.name + " state=" + to_string(w0) +
                              " steps=" + std::to_string(wordSteps) + "\n";
            for (const auto& word : all) {
                std::string line;
                for (int x : word) {
                    if (!line.empty()) line += ' ';
                    line += spec.indexNames[x];
                }
                out += line + " : " + fmt_double(cylinder_prob(spec, w0, word)) + "\n";
            }
            emit(wordC, out, "words.txt");
        } else if (radial->parsed()) {
            const auto spec = resolve_scenario(radC);
            const auto classes = statewise_julia_radial(spec);
            emit(radC, radial_classes_csv(classes, base_meta(spec, radC)), "julia-radial.csv");
        } else if (grid->parsed() || render->parsed()) {
            const Common& c = grid->parsed() ? gridC : renderC;
            const auto spec = resolve_scenario(c);
            const auto w0 = resolve_state(spec, c);
            GridWindow win = parse_window(grid->parsed() ? gridWindow : renderWindow,
                                          grid->parsed() ? gridRes : renderRes);
            GridParams par;
            par.maxDepth = grid->parsed() ? gridDepth : renderDepth;
            par.wordSamples = grid->parsed() ? gridSamples : renderSamples;
            par.seed = c.seed;
            par.workers = default_workers();
            const auto g = estimate_julia_grid(spec, w0, win, par);
            const std::string comment = "scenario=" + spec.name +
                                        " seed=" + std::to_string(c.seed) +
                                        " res=" + std::to_string(win.res) +
                                        " depth=" + std::to_string(par.maxDepth);
            if (render->parsed()) {
                Common withDefault = c;
                if (withDefault.out.empty()) withDefault.out = "julia.ppm";
                emit(withDefault, render_ppm(g, renderPalette, comment), "julia.ppm");
            } else {
                auto meta = base_meta(spec, c);
                meta["res"] = std::to_string(win.res);
                meta["depth"] = std::to_string(par.maxDepth);
                for (auto label : {PixelLabel::FatouAttracting, PixelLabel::FatouEscaping,
                                   PixelLabel::JuliaCandidate, PixelLabel::Unknown})
                    meta[std::string("frac_") + to_string(label)] =
                        fmt_double(pixel_measure(g, label));
                emit(c, radial_profile_csv(radial_profile(g, PixelLabel::JuliaCandidate, 32),
                                           meta),
                     "julia-grid.csv");
            }
        } else if (kernel->parsed()) {
            const auto spec = resolve_scenario(kerC);
            const auto w0 = resolve_state(spec, kerC);
            const auto cert = kernel_julia_depth(spec, w0, kerDepth);
            json j;
            j["meta"] = meta_json(spec.name, kerC.seed,
                                  {{"state", to_string(w0)}, {"depth", std::to_string(kerDepth)}});
            j["kernel"] = to_json(cert);
            emit(kerC, j.dump(2) + "\n", "kernel.json");
        } else if (op->parsed()) {
            const auto spec = resolve_scenario(opC);
            const ProductPoint p{parse_fiber_point(opY), resolve_state(spec, opC)};
            const TestFunction phi = parse_phi(opPhi, opS0, opSigma);
            auto meta = base_meta(spec, opC);
            meta["phi"] = phi.name();
            meta["y"] = opY;
            meta["state"] = to_string(p.w);
            meta["mode"] = opMode;
            if (opMode == "iterate") {
                CsvWriter csv(meta);
                csv.header({"n", "value"});
                for (int n = 0; n <= opN; ++n)
                    csv.row({std::to_string(n), fmt_double(iterate_M(spec, phi, p, n))});
                emit(opC, csv.str(), "operator.csv");
            } else if (opMode == "oracle") {
                CsvWriter csv(meta);
                csv.header({"n", "iterate", "word_sum"});
                for (int n = 0; n <= opN; ++n)
                    csv.row({std::to_string(n), fmt_double(iterate_M(spec, phi, p, n)),
                             fmt_double(word_sum_oracle(spec, phi, p, n))});
                emit(opC, csv.str(), "operator.csv");
            } else if (opMode == "mc") {
                const auto est =
                    mc_estimate_M(spec, phi, p, opN, opSamples, opC.seed, default_workers());
                CsvWriter csv(meta);
                csv.header({"n", "mean", "stderr", "samples"});
                csv.row({std::to_string(opN), fmt_double(est.mean), fmt_double(est.stderr_),
                         std::to_string(est.samples)});
                emit(opC, csv.str(), "operator.csv");
            } else if (opMode == "diagnostic") {
                const auto diag = equicontinuity_diagnostic(
                    spec, phi, p, {1e-1, 1e-2, 1e-3, 1e-4}, opN > 0 ? opN : 8);
                emit(opC, equicontinuity_csv(diag, meta), "operator.csv");
            } else {
                throw std::invalid_argument("--mode wants iterate|oracle|mc|diagnostic");
            }
        } else if (jump->parsed()) {
            const auto spec = resolve_scenario(jmpC);
            const auto w0 = resolve_state(spec, jmpC);
            const auto drive = parse_drive(spec, jmpForced, jmpC.seed);
            const auto rep = detect_jump(spec, w0, drive, jmpHorizon, jmpDepth);
            json j;
            j["meta"] = meta_json(spec.name, jmpC.seed,
                                  {{"state", to_string(w0)},
                                   {"drive", jmpForced.empty() ? "sampled" : jmpForced},
                                   {"horizon", std::to_string(jmpHorizon)},
                                   {"depth", std::to_string(jmpDepth)}});
            j["report"] = to_json(rep);
            emit(jmpC, j.dump(2) + "\n", "jump.json");
        } else if (irr->parsed()) {
            const auto spec = resolve_scenario(irrC);
            std::vector<StatePoint> states;
            std::istringstream in(irrStates);
            std::string token;
            while (std::getline(in, token, ',')) states.push_back(parse_state(spec, token));
            const auto rep = check_irreducible(spec, states, irrDepth);
            json j;
            j["meta"] = meta_json(spec.name, irrC.seed,
                                  {{"states", irrStates}, {"depth", std::to_string(irrDepth)}});
            j["result"] = to_json(rep);
            emit(irrC, j.dump(2) + "\n", "irreducible.json");
        } else if (fat->parsed()) {
            const auto trace =
                fattening_experiment(fatC.eps, fatHorizon, fatC.seed, fatY0, !fatSampled);
            const std::map<std::string, std::string> meta{
                {"scenario", "fattening"},
                {"seed", std::to_string(fatC.seed)},
                {"eps", fmt_double(fatC.eps)},
                {"y0", fmt_double(fatY0)},
                {"drive", fatSampled ? "sampled" : "forced-x1"}};
            emit(fatC, fattening_csv(trace, meta), "fattening.csv");
        } else if (report->parsed()) {
            const auto results = run_acceptance(reportOut);
            std::cout << format_acceptance(results);
            if (!all_passed(results)) return 4;
        }
    } catch (const resource_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include "rscc/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rscc {
namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

double num(const std::string& s, int line) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) fail(line, "trailing junk in number '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        fail(line, "expected a number, got '" + s + "'");
    } catch (const std::out_of_range&) {
        fail(line, "number out of range: '" + s + "'");
    }
}

bool flag(const std::string& s, int line) {
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    fail(line, "expected true/false, got '" + s + "'");
}

struct Entry {
    std::string key, value;
    int line;
};
struct Section {
    std::string name;
    std::vector<Entry> entries;
    int line;
};

int index_id(const std::vector<std::string>& names, const std::string& tok, int line) {
    auto it = std::find(names.begin(), names.end(), tok);
    if (it == names.end()) fail(line, "unknown index '" + tok + "'");
    return static_cast<int>(it - names.begin());
}

int class_id(const std::vector<std::string>& names, const std::string& tok, int line) {
    auto it = std::find(names.begin(), names.end(), tok);
    if (it == names.end()) fail(line, "unknown radial class '" + tok + "'");
    return static_cast<int>(it - names.begin());
}

// edge literal: <index>:<mapIdx> -> <class>, mapIdx optional (defaults to 0)
RadialClassDecl::Edge parse_edge(const std::string& text, const std::vector<std::string>& indexNames,
                                 const std::vector<std::string>& classNames, int line) {
    auto arrow = text.find("->");
    if (arrow == std::string::npos) fail(line, "class edge needs '->': '" + text + "'");
    std::string lhs = trim(text.substr(0, arrow));
    std::string rhs = trim(text.substr(arrow + 2));
    RadialClassDecl::Edge e{};
    auto colon = lhs.find(':');
    if (colon == std::string::npos) {
        e.index = index_id(indexNames, lhs, line);
        e.mapIdx = 0;
    } else {
        e.index = index_id(indexNames, trim(lhs.substr(0, colon)), line);
        e.mapIdx = static_cast<int>(num(trim(lhs.substr(colon + 1)), line));
    }
    e.succ = class_id(classNames, rhs, line);
    return e;
}

} // namespace

ScenarioSpec parse_scenario_config(std::istream& in) {
    std::vector<Section> sections;
    std::string raw;
    int lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineNo, "unterminated section header");
            sections.push_back({trim(line.substr(1, line.size() - 2)), {}, lineNo});
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineNo, "expected key = value");
        if (sections.empty()) fail(lineNo, "key outside any section");
        sections.back().entries.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineNo});
    }

    auto find_section = [&](const std::string& name) -> const Section* {
        for (const auto& s : sections)
            if (s.name == name) return &s;
        return nullptr;
    };
    auto get = [&](const Section& s, const std::string& key) -> const Entry* {
        for (const auto& e : s.entries)
            if (e.key == key) return &e;
        return nullptr;
    };
    auto require = [&](const Section& s, const std::string& key) -> const Entry& {
        const Entry* e = get(s, key);
        if (!e) fail(s.line, "[" + s.name + "] is missing '" + key + "'");
        return *e;
    };

    ScenarioSpec spec;

    const Section* sc = find_section("scenario");
    if (!sc) throw std::invalid_argument("config: missing [scenario] section");
    spec.name = require(*sc, "name").value;
    if (const Entry* e = get(*sc, "fiber")) {
        if (e->value == "sphere") spec.fiber = ScenarioSpec::Fiber::Sphere;
        else if (e->value == "interval") spec.fiber = ScenarioSpec::Fiber::Interval;
        else fail(e->line, "fiber must be sphere or interval");
    }
    if (const Entry* e = get(*sc, "fiber-lo")) spec.fiberLo = num(e->value, e->line);
    if (const Entry* e = get(*sc, "fiber-hi")) spec.fiberHi = num(e->value, e->line);

    const Section* st = find_section("state");
    if (!st) throw std::invalid_argument("config: missing [state] section");
    {
        const Entry& k = require(*st, "kind");
        if (k.value == "ladder") spec.space.kind = StateSpace::Kind::Ladder;
        else if (k.value == "discrete") spec.space.kind = StateSpace::Kind::Discrete;
        else if (k.value == "interval") spec.space.kind = StateSpace::Kind::RealInterval;
        else fail(k.line, "state kind must be ladder, discrete or interval");
        if (const Entry* e = get(*st, "lo")) spec.space.lo = num(e->value, e->line);
        if (const Entry* e = get(*st, "hi")) spec.space.hi = num(e->value, e->line);
        if (const Entry* e = get(*st, "labels")) spec.space.labels = split_ws(e->value);
        if (const Entry* e = get(*st, "extra-label")) {
            spec.space.hasExtra = true;
            spec.space.extraLabel = e->value;
            spec.space.extraValue = num(require(*st, "extra-value").value, e->line);
        }
    }

    const Section* ix = find_section("indices");
    if (!ix) throw std::invalid_argument("config: missing [indices] section");
    spec.indexNames = split_ws(require(*ix, "names").value);
    if (spec.indexNames.empty()) fail(ix->line, "indices names is empty");

    const Section* up = find_section("update");
    if (!up) throw std::invalid_argument("config: missing [update] section");
    {
        const Entry& f = require(*up, "family");
        if (f.value == "ladder") spec.update.family = UpdateRule::Family::Ladder;
        else if (f.value == "clamp-affine") spec.update.family = UpdateRule::Family::ClampAffine;
        else if (f.value == "table") spec.update.family = UpdateRule::Family::Table;
        else if (f.value == "feedback") spec.update.family = UpdateRule::Family::FeedbackTheta;
        else fail(f.line, "update family must be ladder, clamp-affine, table or feedback");
        if (const Entry* e = get(*up, "x2-to-extra")) spec.update.ladderX2ToExtra = flag(e->value, e->line);
        if (const Entry* e = get(*up, "alpha")) spec.update.alpha = num(e->value, e->line);
        if (const Entry* e = get(*up, "lo")) spec.update.lo = num(e->value, e->line);
        if (const Entry* e = get(*up, "hi")) spec.update.hi = num(e->value, e->line);
        for (const auto& e : up->entries) {
            if (e.key != "move") continue;
            auto toks = split_ws(e.value); // <state-label> <index> <state-label>
            if (toks.size() != 3) fail(e.line, "move wants '<state> <index> <state>'");
            spec.update.table[{toks[0], index_id(spec.indexNames, toks[1], e.line)}] = toks[2];
        }
    }

    const Section* tr = find_section("transition");
    if (!tr) throw std::invalid_argument("config: missing [transition] section");
    {
        const Entry& f = require(*tr, "family");
        if (f.value == "ladder-exp") spec.transition.family = TransitionRule::Family::LadderExp;
        else if (f.value == "linear-prob") spec.transition.family = TransitionRule::Family::LinearProb;
        else if (f.value == "table") spec.transition.family = TransitionRule::Family::Table;
        else if (f.value == "theta") spec.transition.family = TransitionRule::Family::Theta;
        else fail(f.line, "transition family must be ladder-exp, linear-prob, table or theta");
        if (const Entry* e = get(*tr, "inverse-exponent")) spec.transition.inverseExponent = flag(e->value, e->line);
        if (const Entry* e = get(*tr, "theta")) {
            if (e->value == "constant") spec.transition.theta = TransitionRule::Theta::Constant;
            else if (e->value == "affine") spec.transition.theta = TransitionRule::Theta::Affine;
            else if (e->value == "bump") spec.transition.theta = TransitionRule::Theta::Bump;
            else fail(e->line, "theta must be constant, affine or bump");
        }
        if (const Entry* e = get(*tr, "theta-a")) spec.transition.thetaA = num(e->value, e->line);
        if (const Entry* e = get(*tr, "theta-b")) spec.transition.thetaB = num(e->value, e->line);
        if (const Entry* e = get(*tr, "theta-c")) spec.transition.thetaC = num(e->value, e->line);
        if (const Entry* e = get(*tr, "theta-s")) spec.transition.thetaS = num(e->value, e->line);
        for (const auto& e : tr->entries) {
            if (e.key != "row") continue;
            auto toks = split_ws(e.value); // <state-label> <p0> <p1> ...
            if (toks.size() != spec.indexNames.size() + 1)
                fail(e.line, "row wants a label plus one probability per index");
            std::vector<double> row;
            for (size_t i = 1; i < toks.size(); ++i) row.push_back(num(toks[i], e.line));
            spec.transition.rows[toks[0]] = row;
        }
    }

    spec.tau.resize(spec.indexNames.size());
    for (size_t i = 0; i < spec.indexNames.size(); ++i) {
        const Section* ts = find_section("tau." + spec.indexNames[i]);
        if (!ts) throw std::invalid_argument("config: missing [tau." + spec.indexNames[i] + "] section");
        for (const auto& e : ts->entries) {
            if (e.key != "map") fail(e.line, "tau sections only take 'map = <weight> <mapspec>'");
            auto sp = e.value.find_first_of(" \t");
            if (sp == std::string::npos) fail(e.line, "map wants '<weight> <mapspec>'");
            double w = num(e.value.substr(0, sp), e.line);
            MapSpec m;
            try {
                m = parse_map(trim(e.value.substr(sp)));
            } catch (const std::exception& ex) {
                fail(e.line, ex.what());
            }
            spec.tau[i].maps.push_back(m);
            spec.tau[i].weights.push_back(w);
        }
        if (spec.tau[i].maps.empty()) fail(ts->line, "tau." + spec.indexNames[i] + " has no maps");
    }

    if (const Section* rc = find_section("radial-classes")) {
        RadialClassDecl decl;
        decl.names = split_ws(require(*rc, "names").value);
        if (decl.names.empty()) fail(rc->line, "radial-classes names is empty");
        decl.edges.resize(decl.names.size());
        auto assign = [&](const char* key, int& slot) {
            if (const Entry* e = get(*rc, key)) slot = class_id(decl.names, e->value, e->line);
        };
        assign("assign-ladder", decl.ladderClass);
        assign("assign-zero", decl.zeroClass);
        assign("assign-extra", decl.extraClass);
        assign("assign-lo", decl.loClass);
        assign("assign-hi", decl.hiClass);
        assign("assign-interior", decl.interiorClass);
        for (const auto& e : rc->entries) {
            if (e.key == "assign") {
                auto toks = split_ws(e.value); // <label> <class>
                if (toks.size() != 2) fail(e.line, "assign wants '<label> <class>'");
                decl.discreteClass[toks[0]] = class_id(decl.names, toks[1], e.line);
            } else if (e.key == "class") {
                auto colon = e.value.find(':');
                if (colon == std::string::npos) fail(e.line, "class wants '<name> : <edges>'");
                int cid = class_id(decl.names, trim(e.value.substr(0, colon)), e.line);
                std::string rest = e.value.substr(colon + 1);
                size_t pos = 0;
                while (pos <= rest.size()) {
                    auto semi = rest.find(';', pos);
                    std::string chunk = trim(semi == std::string::npos ? rest.substr(pos)
                                                                       : rest.substr(pos, semi - pos));
                    if (!chunk.empty())
                        decl.edges[cid].push_back(parse_edge(chunk, spec.indexNames, decl.names, e.line));
                    if (semi == std::string::npos) break;
                    pos = semi + 1;
                }
            }
        }
        spec.radial = decl;
    }

    const Entry* init = get(*sc, "initial");
    if (!init) fail(sc->line, "[scenario] is missing 'initial'");
    spec.initial = parse_state(spec, init->value);

    spec.validate();
    return spec;
}

ScenarioSpec load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
    return parse_scenario_config(in);
}

} // namespace rscc

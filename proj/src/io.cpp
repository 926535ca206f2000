#include "rscc/io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace rscc {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        out += ch;
        if (ch == '"') out += '"';
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(const std::map<std::string, std::string>& meta) {
    out_ = "#";
    for (const auto& [k, v] : meta) out_ += " " + k + "=" + v;
    out_ += "\n";
}

void CsvWriter::header(const std::vector<std::string>& cols) {
    cols_ = cols.size();
    row(cols);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cols_ != 0 && cells.size() != cols_)
        throw std::logic_error("csv row width does not match the header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ += ',';
        out_ += csv_escape(cells[i]);
    }
    out_ += "\n";
}

std::string pretty_radii(const RadialSet& s) {
    if (s.is_empty()) return "radii: (empty)";
    std::string out = "radii:";
    bool first = true;
    for (const auto& part : s.parts()) {
        out += first ? " " : " \xE2\x88\xAA ";
        first = false;
        out += "[" + fmt_double(std::exp(part.lo)) + ", " + fmt_double(std::exp(part.hi)) + "]";
    }
    return out;
}

json meta_json(const std::string& scenario, std::uint64_t seed,
               const std::map<std::string, std::string>& params) {
    json j;
    j["scenario"] = scenario;
    j["seed"] = seed;
    j["params"] = params;
    return j;
}

json to_json(const RadialSet& s) {
    json intervals = json::array();
    for (const auto& part : s.parts()) intervals.push_back({part.lo, part.hi});
    json j;
    j["empty"] = s.is_empty();
    j["sIntervals"] = intervals;
    j["radii"] = pretty_radii(s);
    return j;
}

const char* to_string(KernelCertificate::Verdict v) {
    switch (v) {
        case KernelCertificate::Verdict::EmptyAtDepth: return "EmptyAtDepth";
        case KernelCertificate::Verdict::ExactNonempty: return "ExactNonempty";
        case KernelCertificate::Verdict::UnknownSuperset: return "UnknownSuperset";
    }
    return "?";
}

const char* to_string(JumpReport::Verdict v) {
    switch (v) {
        case JumpReport::Verdict::JumpDetected: return "JumpDetected";
        case JumpReport::Verdict::NoJumpWithinHorizon: return "NoJumpWithinHorizon";
        case JumpReport::Verdict::NotApplicable: return "NotApplicable";
    }
    return "?";
}

json to_json(const KernelCertificate& cert) {
    json j;
    j["verdict"] = to_string(cert.verdict);
    j["depth"] = cert.depth;
    j["set"] = to_json(cert.set);
    return j;
}

json to_json(const JumpReport& report) {
    json traj = json::array();
    for (const auto& step : report.steps) {
        json s;
        s["step"] = step.k;
        s["state"] = to_string(step.w);
        s["kernel"] = to_json(step.cert);
        traj.push_back(s);
    }
    json j;
    j["verdict"] = to_string(report.verdict);
    j["trajectory"] = traj;
    j["converged"] = report.converged;
    j["limitState"] = report.limit ? json(to_string(*report.limit)) : json(nullptr);
    j["limitVerdict"] = report.limitCert ? to_json(*report.limitCert) : json(nullptr);
    j["note"] = report.note;
    return j;
}

namespace {
// json has no infinity; distances that can be infinite travel as strings
json num_or_inf(double v) {
    if (std::isfinite(v)) return v;
    return fmt_double(v);
}
} // namespace

json to_json(const FatteningTrace& trace) {
    json steps = json::array();
    for (const auto& r : trace.rows) {
        json s;
        s["k"] = r.k;
        s["w"] = to_string(r.w);
        s["y"] = r.y;
        s["distUnfattened"] = num_or_inf(r.distUnfattened);
        s["distThickened"] = num_or_inf(r.distThickened);
        steps.push_back(s);
    }
    json j;
    j["eps"] = trace.eps;
    j["y0"] = trace.y0;
    j["forcedFirstIndex"] = trace.forcedFirstIndex;
    j["steps"] = steps;
    j["eventProbability"] = trace.eventProbability;
    return j;
}

json to_json(const IrreducibilityReport& report) {
    json j;
    j["irreducible"] = report.irreducible;
    if (report.witness) {
        json w;
        w["source"] = to_string(report.witness->first);
        w["target"] = to_string(report.witness->second);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

std::string jump_csv(const JumpReport& report, const std::map<std::string, std::string>& meta) {
    CsvWriter csv(meta);
    csv.header({"step", "state", "verdict", "depth", "s_intervals"});
    for (const auto& step : report.steps) {
        std::string parts;
        for (const auto& p : step.cert.set.parts()) {
            if (!parts.empty()) parts += ' ';
            parts += "[" + fmt_double(p.lo) + " " + fmt_double(p.hi) + "]";
        }
        csv.row({std::to_string(step.k), to_string(step.w), to_string(step.cert.verdict),
                 std::to_string(step.cert.depth), parts});
    }
    return csv.str();
}

std::string fattening_csv(const FatteningTrace& trace,
                          const std::map<std::string, std::string>& meta) {
    CsvWriter csv(meta);
    csv.header({"k", "w", "y", "distUnfattened", "distThickened"});
    for (const auto& r : trace.rows)
        csv.row({std::to_string(r.k), to_string(r.w), fmt_double(r.y),
                 fmt_double(r.distUnfattened), fmt_double(r.distThickened)});
    return csv.str();
}

std::string radial_classes_csv(const std::map<std::string, RadialSet>& classes,
                               const std::map<std::string, std::string>& meta) {
    CsvWriter csv(meta);
    csv.header({"class", "s_lo", "s_hi", "r_lo", "r_hi"});
    for (const auto& [name, set] : classes) {
        if (set.is_empty()) {
            csv.row({name, "", "", "", ""});
            continue;
        }
        for (const auto& p : set.parts())
            csv.row({name, fmt_double(p.lo), fmt_double(p.hi), fmt_double(std::exp(p.lo)),
                     fmt_double(std::exp(p.hi))});
    }
    return csv.str();
}

std::string radial_profile_csv(const std::vector<std::pair<double, double>>& profile,
                               const std::map<std::string, std::string>& meta) {
    CsvWriter csv(meta);
    csv.header({"radius", "julia_fraction"});
    for (const auto& [radius, fraction] : profile)
        csv.row({fmt_double(radius), fmt_double(fraction)});
    return csv.str();
}

std::string equicontinuity_csv(const EquiDiagnostic& diag,
                               const std::map<std::string, std::string>& meta) {
    CsvWriter csv(meta);
    csv.header({"delta", "n", "osc"});
    for (std::size_t r = 0; r < diag.radii.size(); ++r)
        for (std::size_t n = 0; n < diag.osc[r].size(); ++n)
            csv.row({fmt_double(diag.radii[r]), std::to_string(n), fmt_double(diag.osc[r][n])});
    return csv.str();
}

std::string chain_csv(const ScenarioSpec& spec, const ChainSample& sample,
                      const std::map<std::string, std::string>& meta) {
    CsvWriter csv(meta);
    csv.header({"step", "index", "state"});
    csv.row({"0", "", to_string(sample.states[0])});
    for (std::size_t k = 0; k < sample.word.size(); ++k)
        csv.row({std::to_string(k + 1), spec.indexNames[sample.word[k]],
                 to_string(sample.states[k + 1])});
    return csv.str();
}

std::string path_csv(const ScenarioSpec& spec, const PathSample& sample,
                     const std::map<std::string, std::string>& meta) {
    CsvWriter csv(meta);
    csv.header({"step", "index", "map", "state"});
    csv.row({"0", "", "", to_string(sample.states[0])});
    for (std::size_t k = 0; k < sample.word.size(); ++k)
        csv.row({std::to_string(k + 1), spec.indexNames[sample.word[k]],
                 to_string(sample.maps[k]), to_string(sample.states[k + 1])});
    return csv.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write: " + path);
}

} // namespace rscc

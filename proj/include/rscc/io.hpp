#pragma once
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "analysis.hpp"
#include "grid_julia.hpp"
#include "numfmt.hpp"
#include "radial_julia.hpp"
#include "transition_op.hpp"

namespace rscc {

using json = nlohmann::json; // object keys come out lexicographic, which we rely on

// csv tables open with one '# key=value ...' metadata line, then an RFC-4180
// header row. every writer embeds scenario, seed and parameters through `meta`.
class CsvWriter {
public:
    explicit CsvWriter(const std::map<std::string, std::string>& meta);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<std::string>& cells);
    const std::string& str() const { return out_; }

private:
    std::string out_;
    std::size_t cols_ = 0;
};

std::string csv_escape(const std::string& field);

// `radii: [1, 2]` style, exponentiated endpoints; csv reports carry raw s-intervals
std::string pretty_radii(const RadialSet& s);

json meta_json(const std::string& scenario, std::uint64_t seed,
               const std::map<std::string, std::string>& params);

json to_json(const RadialSet& s);
json to_json(const KernelCertificate& cert);
json to_json(const JumpReport& report);
json to_json(const FatteningTrace& trace);
json to_json(const IrreducibilityReport& report);

const char* to_string(KernelCertificate::Verdict v);
const char* to_string(JumpReport::Verdict v);

std::string jump_csv(const JumpReport& report, const std::map<std::string, std::string>& meta);
std::string fattening_csv(const FatteningTrace& trace,
                          const std::map<std::string, std::string>& meta);
std::string radial_classes_csv(const std::map<std::string, RadialSet>& classes,
                               const std::map<std::string, std::string>& meta);
std::string radial_profile_csv(const std::vector<std::pair<double, double>>& profile,
                               const std::map<std::string, std::string>& meta);
std::string equicontinuity_csv(const EquiDiagnostic& diag,
                               const std::map<std::string, std::string>& meta);
std::string chain_csv(const ScenarioSpec& spec, const ChainSample& sample,
                      const std::map<std::string, std::string>& meta);
std::string path_csv(const ScenarioSpec& spec, const PathSample& sample,
                     const std::map<std::string, std::string>& meta);

void write_file(const std::string& path, const std::string& bytes); // binary-safe

} // namespace rscc

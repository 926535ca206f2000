#pragma once
#include <istream>
#include <string>

#include "scenario.hpp"

namespace rscc {

// scenario description files: utf-8 text, '#' comments, bracketed sections with
// key = value lines. sections: [scenario], [state], [indices], [update],
// [transition], [tau.<index>], [radial-classes]. see the README for the grammar
// and doc/scenario-example.conf for a worked file.
ScenarioSpec parse_scenario_config(std::istream& in);
ScenarioSpec load_scenario_file(const std::string& path);

} // namespace rscc

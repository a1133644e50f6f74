#pragma once

#include <iosfwd>
#include <string>

#include "dipp/signal_model.hpp"

namespace dipp {

/// Plain-text scenario dump; the layout is described in docs/formats.md.
/// Reals are written with 17 significant digits so a round trip is exact.
void write_scenario(std::ostream& out, const Scenario& s);
Scenario read_scenario(std::istream& in);

void save_scenario(const std::string& path, const Scenario& s);
Scenario load_scenario(const std::string& path);

}  // namespace dipp

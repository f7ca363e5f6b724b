#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rlkit {

/// Runs the command line given argv-style arguments (without the program
/// name). Exit codes: 0 the property holds or the command succeeded;
/// 1 the property is refuted; 2 usage or format error; 3 internal
/// consistency error (a cross-check that must hold has failed).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rlkit

#pragma once

#include <iosfwd>
#include <string>

#include "tcqed/entanglement.hpp"
#include "tcqed/fock.hpp"

namespace tcqed::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Field recipe: a preset name (vacuum, single-photon, bell1-m30, bell1-m40,
/// werner, even-coherent(a), odd-coherent(a), coherent(a), fock(n)), an
/// explicit list "n:re,im;n:re,im" (normalized), or "@path" to a field JSON
/// file. Throws HeadroomError when the top two levels are not empty.
FieldState parse_field(const std::string& recipe, Index dim);

/// The reference state a preset is meant to reach; bell2 for anything else.
TargetState default_target(const std::string& recipe);

/// Real number, optionally written with pi: "0.5", "pi", "-pi/2", "3pi/2", "1/3".
double parse_real(const std::string& text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tcqed::cli

#pragma once

// Command dispatch for the ellsurf tool: analyze, verify, catalog, report.

#include <ostream>
#include <string>
#include <vector>

#include "ellsurf/verify.hpp"

namespace ellsurf {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,
  kExitUnsupported = 3,
  kExitCheckFailed = 4,
};

/// Maps a library error to the exit status of its failure class.
int exit_code_for(ErrorKind kind);

/// "FIELD:PLACE:DELTA[:ORBIT]", e.g. "c_v:inf:+1" or "r_i:[0, 1]:1:2". Throws ParseError, BadField.
Mutation parse_mutation(const FieldCtx& ctx, std::string_view spec);

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ellsurf

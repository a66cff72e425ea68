#pragma once

// In-process CLI driver.  The binary's main() is a thin wrapper around
// run_cli so tests can exercise every subcommand without spawning processes.
//
// Subcommands:
//   freq check | freq basis
//   series abscissa | series abschnitt
//   group norm | group besicovitch
//   kernel perron | kernel bounds
//   maximal carleson | maximal smax | maximal ratio
//   helson simulate
//
// Every run writes a JSON report (--out, default report.json) and optionally
// a CSV table (--csv).  Configuration may come from flags or a JSON file
// (--config): explicit flags win over config values, which win over
// defaults.  The master seed resolves as
//   --seed flag  >  DLAB_SEED environment variable  >  config file  >  default.
//
// Exit codes: 0 all asserted checks pass; 1 an asserted check failed (or a
// requested accuracy could not be certified); 2 unusable configuration.

#include <cstdint>
#include <string>
#include <vector>

#include "dlab/common.hpp"

namespace dlab {

// args excludes the program name, e.g. {"freq", "check", "--freq", "log(n)"}.
int run_cli(const std::vector<std::string>& args);

// Coefficient rules shared by the subcommands:
//   "n^<e>"                  a_n = n^e           (e.g. "n^-0.75"; "n^-0" = all ones)
//   "random-gaussian(<s>)"   a_n = s*(g1 + i g2) with independent standard
//                            normals per index, split off kStreamCoefficients
//   "file:<path>"            one term per line: "re" or "re im", '#' comments;
//                            short files are zero-padded, long ones truncated
std::vector<cplx> parse_coefficients(const std::string& rule, std::size_t count,
                                     std::uint64_t seed);

}  // namespace dlab

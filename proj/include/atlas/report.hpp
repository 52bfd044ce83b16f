#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "atlas/rootdata.hpp"

namespace atlas::report {

using rootdata::GenDesc;
using rootdata::RootSequence;
using rootdata::RTProfile;

inline constexpr const char* kSchema = "coideal-atlas/1";

struct RunConfig {
  int n = 3;
  std::string format = "text";  // json | csv | text
  int bound = 6;
  int threads = 0;
  bool multiparameter = false;
  bool unicode = false;
  std::string out;  // empty: stdout
};

// Compact one-line rendering of the bracketed piecewise word: single letters
// print bare ("x_2"), continuous runs ascending inside brackets ("[x_1x_2]"),
// several pieces concatenated highest-first inside one outer bracket
// ("[x_3[x_1x_2]]", "[x_3x_2x_1]").
std::string compact_bracket_str(const GenDesc& g);

// The reduced coideal generating set: one candidate (k, theta~_k, T_k) per
// nonzero theta_k, dropping every candidate that already occurs among the
// sub-bracket descriptors of another candidate.
std::vector<GenDesc> coideal_generators(const RTProfile& p);

// Exit codes: 0 success / verification passed, 1 verification or pair
// rejection, 2 usage error.
int cmd_borel(const RunConfig& cfg, std::ostream& os, std::ostream& err);
int cmd_tableau(const RunConfig& cfg, std::ostream& os, std::ostream& err);
int cmd_count(const RunConfig& cfg, const std::string& which, std::ostream& os,
              std::ostream& err);
int cmd_verify(const RunConfig& cfg, const std::string& suite, std::ostream& os,
               std::ostream& err);
int cmd_pair(const RunConfig& cfg, const std::vector<int>& theta_plus,
             const std::vector<int>& theta_minus, bool symbolic,
             std::ostream& os, std::ostream& err);

}  // namespace atlas::report

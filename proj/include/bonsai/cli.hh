#pragma once

// Command-line front end.  Parses flags into a run plan, drives the
// realizability / nonrealizability checks over a growing-k schedule
// (optionally racing the two), and prints exactly one of REALIZABLE /
// UNREALIZABLE / UNKNOWN on standard output.  Exit codes: 10 realizable,
// 20 unrealizable, 0 unknown, 2 usage or input errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace bonsai {

// initial >= 1, growth > 1; yields initial, ceil(prev * growth), ...,
// capped at max (strictly increasing).
std::vector<int> k_schedule(int initial, double growth, int max);

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

} // namespace bonsai

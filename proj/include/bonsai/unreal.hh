#pragma once

// Nonrealizability via output shifting.  The transform delays outputs one
// transition so the input player moves first, and swaps the players' roles;
// a positive backward-realizability answer on the shifted automaton means
// the input player wins.
//
// Each constructed state is a pair (base state, pending output): the output
// owed from the previous step.  A transition (p, x, q) is split into slices
// (pending ∧ i) where i is the exact input projection of one pure-output
// cofactor of the remaining label; choosing the maximal such slice keeps the
// number of (state, pending) pairs small.  The variable universe is kept;
// only the automaton's game-role partition is swapped, so labels remain
// comparable with the source automaton's.

#include <optional>
#include <vector>

#include "bonsai/automaton.hh"
#include "bonsai/solver.hh"

namespace bonsai {

struct shifted_state {
  uint32_t base;
  bool_fn pending; // over the source automaton's outputs, never false
};

// For tests: per processed (state, edge), the (input slice, remaining label)
// sequence the while-loop produced.  The slices conjoined with their
// remainders reconstruct the edge label.
struct shift_cover_record {
  uint32_t shifted_src;
  uint32_t edge;
  std::vector<std::pair<bool_fn, bool_fn>> picks;
};

struct shift_result {
  automaton aut;
  std::vector<shifted_state> origin; // indexed by shifted state
  std::vector<shift_cover_record> cover; // only when recording was requested
};

shift_result shift_outputs(const automaton& aut, bool record_cover = false);

// solve() on the shifted automaton for the negated specification.
std::optional<bool> check_unreal(const automaton& neg_aut, const solve_config& cfg);

} // namespace bonsai

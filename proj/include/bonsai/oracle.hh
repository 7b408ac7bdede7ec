#pragma once

// Brute-force reference implementations, for testing only.  The safe-set
// computation represents the current set as one flag per point of the full
// grid [-1,k]^Q and applies the controllable-predecessor step for every pure
// input literally, with no antichains, terminal IOs, or boolean states.
// Labels are evaluated by walking decision-diagram nodes directly; none of
// the solver/downset/actions machinery is used.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "bonsai/automaton.hh"

namespace bonsai {

// Whether the backward fixed point over [-1,k]^Q keeps a vector with a
// nonnegative entry for the initial state.  Throws limit_error when
// (k+2)^|Q| exceeds 10^6.
bool oracle_solve(const automaton& aut, int k);

// The io-action pair sets of all pure IOs.  Throws limit_error when
// |I|+|O| > 8.
std::set<std::vector<std::pair<uint32_t, uint32_t>>>
oracle_pure_ioacts(const automaton& aut);

} // namespace bonsai

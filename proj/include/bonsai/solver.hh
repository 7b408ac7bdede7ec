#pragma once

// The backward fixed-point solver.  Starting from the downward closure of
// the all-k vector, input-actions are applied through the controllable
// predecessor until a full pass changes nothing; the answer is whether the
// final set keeps a vector mapping the initial state to a nonnegative value.
//
// bwd of a vector under one io-action takes, per state, the minimum over the
// action's pairs of the successor value minus the Büchi decrement; a state
// with no compatible pair gets k, the ceiling.
//
// One solve run is single-threaded.  Independent runs may execute
// concurrently only on disjoint automaton/engine instances; a cancellation
// token is polled once per cpre application.

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "bonsai/actions.hh"
#include "bonsai/automaton.hh"
#include "bonsai/downset.hh"

namespace bonsai {

enum class picker_kind : uint8_t {
  round_robin,          // cycle the actions; stop after a changeless pass
  critical,             // look for an element some action strictly drops,
                        // preferring recently successful actions
  critical_rand_partial, // ... scanning with a partially shuffled order
  critical_rand_full,    // ... scanning with a fully shuffled order
};

struct solve_config {
  int k = 1;
  vec_storage vec = vec_storage::lanes;
  downset_backend ds = downset_backend::kdtree;
  bool boolean_split = true;
  input_mode inputs = input_mode::refined;
  bool precompute = true; // off: io-action pair tables fill on first use
  picker_kind picker = picker_kind::critical;
  uint64_t seed = 0;
  uint64_t step_budget = 1'000'000; // cpre applications; exceeding aborts
  bool run_preprocess = false;      // reserved hook, identity either way
  std::ostream* trace = nullptr;
  const std::atomic<bool>* cancel = nullptr;
};

struct solve_stats {
  uint64_t cpre_applications = 0;
  size_t final_antichain = 0;
  size_t input_actions = 0;
  size_t io_actions = 0;
};

struct solve_result {
  // Realizable / not realizable; empty when the run was aborted (budget or
  // cancellation), which is never an answer.
  std::optional<bool> verdict;
  std::optional<downset> fixpoint;
  solve_stats stats;
};

// One backward step of a single vector under one io-action.
state_vector bwd_point(const state_vector& v, const io_action& a);

// Downward-closed backward image of S under one io-action.
downset bwd(const downset& s, const io_action& a);

// S intersected with the union of the bwd images under the input-action's
// io-actions.
downset cpre(const downset& s, const input_action& ia);

solve_result solve_detailed(const automaton& aut, const solve_config& cfg);
std::optional<bool> solve(const automaton& aut, const solve_config& cfg);

// Input-action selection.  next() returns an index into the action list or
// nothing once the fixed point is certified; feedback() reports whether the
// applied step changed the set.
class input_picker {
 public:
  input_picker(picker_kind kind, size_t n_actions, uint64_t seed);

  std::optional<size_t> next(const downset& s, std::span<const input_action> e);
  void feedback(bool changed);

 private:
  bool drops(const state_vector& v, const input_action& ia) const;
  std::vector<size_t> scan_order();

  picker_kind kind_;
  size_t n_;
  size_t cursor_ = 0;
  size_t since_change_ = 0;
  bool certifying_;
  size_t last_pick_ = 0;
  uint64_t step_ = 0;
  std::vector<uint64_t> last_success_;
  std::mt19937_64 rng_;
};

} // namespace bonsai

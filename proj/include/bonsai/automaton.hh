#pragma once

// The Büchi automaton model: formula-labeled transitions over a partitioned
// input/output variable set, plus the structural analyses the solver's
// setup phase relies on (SCCs, bounded states, the boolean/counted state
// split) and HOA v1 text ingestion/emission.
//
// Supported HOA subset: headers `HOA: v1`, `States:`, `Start:` (single),
// `AP:`, `Acceptance: 1 Inf(0)` (or `acc-name: Buchi`), `controllable-AP:`
// (SYNTCOMP convention: indices of output propositions), body with bracketed
// boolean labels over AP indices (&, |, !, t, f, parentheses).  Acceptance
// marks may sit on states or on edges; an edge mark makes the destination
// state Büchi.  False-labeled edges are dropped with a diagnostic.
//
// Automata are immutable after construction and may be shared read-only,
// but label operations go through the (mutable) engine, so concurrent
// solver runs must each own a private automaton + engine.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bonsai/bool_engine.hh"

namespace bonsai {

struct transition {
  uint32_t src;
  uint32_t dst;
  bool_fn label;
};

class automaton {
 public:
  automaton(std::shared_ptr<bool_engine> engine, uint32_t n_states,
            uint32_t initial, std::vector<transition> transitions,
            std::vector<uint32_t> buchi, std::vector<var_id> inputs,
            std::vector<var_id> outputs);

  uint32_t n_states() const { return n_states_; }
  uint32_t initial() const { return initial_; }
  std::span<const transition> transitions() const { return transitions_; }
  std::span<const uint32_t> out_edges(uint32_t state) const;
  bool is_buchi(uint32_t state) const { return buchi_mask_[state]; }
  std::span<const uint32_t> buchi_states() const { return buchi_; }
  // Game-role variable partition.  After an output shift these lists are
  // swapped relative to the variables' declared kinds.
  std::span<const var_id> inputs() const { return inputs_; }
  std::span<const var_id> outputs() const { return outputs_; }
  const std::shared_ptr<bool_engine>& engine_ptr() const { return engine_; }
  bool_engine& engine() const { return *engine_; }

 private:
  std::shared_ptr<bool_engine> engine_;
  uint32_t n_states_;
  uint32_t initial_;
  std::vector<transition> transitions_;
  std::vector<std::vector<uint32_t>> out_;
  std::vector<uint32_t> buchi_;
  std::vector<uint8_t> buchi_mask_;
  std::vector<var_id> inputs_;
  std::vector<var_id> outputs_;
};

struct hoa_options {
  // Output proposition names; overrides (or supplies) controllable-AP.
  std::optional<std::vector<std::string>> outputs_override;
  std::ostream* diagnostics = nullptr; // dropped-edge warnings etc.
};

automaton parse_hoa(std::istream& in, const hoa_options& opts = {});
automaton parse_hoa_string(const std::string& text, const hoa_options& opts = {});
void print_hoa(std::ostream& out, const automaton& aut,
               std::span<const std::string> state_comments = {});

struct scc_info {
  std::vector<std::vector<uint32_t>> components; // partition of Q
  std::vector<uint8_t> nontrivial;               // >= 2 states or a self-loop
  std::vector<uint32_t> component_of;            // state -> component index
};

scc_info sccs(const automaton& aut);

// States that no Büchi state inside a nontrivial SCC reaches (a Büchi state
// reaches itself).  Sorted.
std::vector<uint32_t> bounded_states(const automaton& aut);

enum class split_mode : uint8_t { none, bounded };

struct state_split {
  std::vector<uint8_t> is_boolean; // indexed by state
  std::vector<uint32_t> boolean_states() const;
  std::vector<uint32_t> counted_states() const;
};

// mode::bounded marks the bounded non-Büchi states boolean.  Büchi states
// keep integer slots even when bounded: a one-bit slot cannot absorb the
// decrement charged when such a state is crossed, and the counted region
// never reads boolean slots, so this split computes values whose signs agree
// with an all-integer run at every k.
state_split split_boolean(const automaton& aut, split_mode mode);

// Hook for useless-state removal ahead of the main loop.  The surely-losing
// heuristic is not implemented; this is the identity transform.
automaton preprocess(const automaton& aut, bool remove_surely_losing = false);

} // namespace bonsai

#pragma once

// Actions abstract exactly the automaton information the backward steps
// need.  An io-action records, for one terminal IO x, the transition pairs
// (p, q) whose label is compatible with x, with a decrement flag for Büchi
// destinations.  An input-action groups the io-actions of the terminal IOs
// compatible with one terminal input.
//
// Terminal IOs/inputs are computed by partition refinement: starting from
// {true}, each label x splits every compatible class y into x∧y and ¬x∧y.
// The result covers every pure IO's io-action while staying no larger than
// the set of pure IOs, and is often much smaller.
//
// Pair tables can be materialized while the refinement scans the edges
// (precompute on), recomputed per terminal IO (plain construction), or
// deferred to first use (lazy).  A lazy io_action fills its table on first
// access; an action set is therefore owned by a single solver run.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bonsai/automaton.hh"

namespace bonsai {

// Transition pairs grouped by source state (CSR layout).
struct pair_table {
  std::vector<uint32_t> row_start;                  // n_states + 1 entries
  std::vector<std::pair<uint32_t, uint8_t>> cells;  // (dst, dec)

  std::span<const std::pair<uint32_t, uint8_t>> row(uint32_t src) const {
    return {cells.data() + row_start[src], cells.data() + row_start[src + 1]};
  }
  friend bool operator==(const pair_table&, const pair_table&) = default;
};

class io_action {
 public:
  static io_action eager(const automaton& aut, bool_fn label);
  static io_action carried(bool_fn label, pair_table table);
  static io_action deferred(const automaton& aut, bool_fn label);

  bool_fn label() const { return label_; }
  bool materialized() const { return table_.has_value(); }
  const pair_table& pairs() const;

 private:
  io_action(bool_fn label, const automaton* src) : label_(label), src_(src) {}
  bool_fn label_;
  const automaton* src_; // for deferred materialization; not owned
  mutable std::optional<pair_table> table_;
};

struct input_action {
  bool_fn input;
  std::vector<io_action> ios;
};

enum class input_mode : uint8_t { pure, refined };

// The io-action of one IO; x must not be the constant false.
io_action ioact(const automaton& aut, bool_fn x);

// Partition refinement over `labels`, starting from {true}.
std::vector<bool_fn> sufficient_terminal_ios(bool_engine& eng,
                                             std::span<const bool_fn> labels);

// Input-actions with pair tables recomputed per terminal IO.
std::vector<input_action> sufficient_inputs(const automaton& aut, input_mode mode);

// Input-actions with pair tables carried through the refinement's edge scan
// (lazy = false) or deferred to first use (lazy = true).
std::vector<input_action> precompute_actions(const automaton& aut, input_mode mode,
                                             bool lazy = false);

} // namespace bonsai

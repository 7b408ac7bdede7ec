#pragma once

// Boolean functions over a declared universe of named input/output variables.
// Functions are hash-consed reduced ordered decision diagrams: semantically
// equal functions have equal node ids, so equality and set membership are
// O(1).  The variable order is the declaration order, and all inputs must be
// declared before any output.
//
// An engine instance is confined to one solver run; values from different
// engines must never be mixed.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bonsai/errors.hh"

namespace bonsai {

enum class var_kind : uint8_t { input, output };

struct var_id {
  uint32_t index = UINT32_MAX;

  bool valid() const { return index != UINT32_MAX; }
  friend bool operator==(var_id a, var_id b) { return a.index == b.index; }
  friend auto operator<=>(var_id a, var_id b) { return a.index <=> b.index; }
};

// A handle to a canonical boolean function owned by some engine.
struct bool_fn {
  uint32_t id = UINT32_MAX;

  bool valid() const { return id != UINT32_MAX; }
  friend bool operator==(bool_fn a, bool_fn b) { return a.id == b.id; }
  friend auto operator<=>(bool_fn a, bool_fn b) { return a.id <=> b.id; }
};

// A conjunction of literals covering a specific variable subset.  A cube over
// all of I∪O is a pure IO; over all of I, a pure input.
class cube {
 public:
  cube() = default;
  explicit cube(std::vector<std::pair<var_id, bool>> literals);

  std::optional<bool> value(var_id v) const;
  const std::vector<std::pair<var_id, bool>>& literals() const { return lits_; }
  size_t size() const { return lits_.size(); }

  friend bool operator==(const cube& a, const cube& b) { return a.lits_ == b.lits_; }

 private:
  std::vector<std::pair<var_id, bool>> lits_; // sorted by variable order
};

class bool_engine {
 public:
  bool_engine();

  // Declaration order fixes the global variable order; inputs first.
  var_id declare(std::string name, var_kind kind);
  var_id find(std::string_view name) const; // invalid id when absent

  size_t var_count() const { return vars_.size(); }
  const std::string& name(var_id v) const;
  var_kind kind(var_id v) const;
  std::vector<var_id> inputs() const;
  std::vector<var_id> outputs() const;

  bool_fn tt() const { return bool_fn{1}; }
  bool_fn ff() const { return bool_fn{0}; }
  bool_fn mk_const(bool b) const { return b ? tt() : ff(); }
  bool_fn mk_var(var_id v);
  bool_fn lit(var_id v, bool positive);
  bool_fn cube_fn(const cube& c);

  bool_fn conj(bool_fn f, bool_fn g);
  bool_fn disj(bool_fn f, bool_fn g);
  bool_fn neg(bool_fn f);

  bool compatible(bool_fn f, bool_fn g) { return conj(f, g) != ff(); }

  // Existential projection: the result mentions no variable of `vars`.
  bool_fn exists(bool_fn f, std::span<const var_id> vars);

  // Least satisfying branch (false < true in variable order) over `vars`,
  // compatible with f.  f must not be the constant false.
  cube some_pure(bool_fn f, std::span<const var_id> vars);

  // All cubes over `vars` compatible with f, in lexicographic order.
  std::vector<cube> enumerate_pure(bool_fn f, std::span<const var_id> vars);
  void for_each_pure(bool_fn f, std::span<const var_id> vars,
                     const std::function<void(const cube&)>& fn);

  // Sum-of-products rendering; `t` and `f` for the constants.
  std::string to_string(bool_fn f) const;
  // Same, but variables rendered through `namer` (used for HOA output).
  std::string to_string(bool_fn f,
                        const std::function<std::string(var_id)>& namer) const;

  // Raw node access, for independent evaluators and debugging.
  bool is_const(bool_fn f) const { return f.id <= 1; }
  var_id node_var(bool_fn f) const;
  bool_fn node_lo(bool_fn f) const;
  bool_fn node_hi(bool_fn f) const;

  size_t node_count() const { return nodes_.size(); }

 private:
  struct node {
    uint32_t var;
    uint32_t lo;
    uint32_t hi;
  };
  struct node_key_hash {
    size_t operator()(const std::array<uint32_t, 3>& k) const;
  };
  struct pair_hash {
    size_t operator()(const std::pair<uint32_t, uint32_t>& p) const;
  };
  struct quant_hash {
    size_t operator()(const std::pair<uint32_t, uint64_t>& p) const;
  };

  uint32_t mk_node(uint32_t var, uint32_t lo, uint32_t hi);
  uint32_t and_rec(uint32_t a, uint32_t b);
  uint32_t or_rec(uint32_t a, uint32_t b);
  uint32_t neg_rec(uint32_t a);
  uint32_t exists_rec(uint32_t a, uint64_t mask);
  uint32_t restrict_rec(uint32_t a, uint32_t var, bool val);
  uint32_t level(uint32_t a) const { return nodes_[a].var; }
  void check_fn(bool_fn f) const;
  uint64_t var_mask(std::span<const var_id> vars) const;

  struct var_info {
    std::string name;
    var_kind kind;
  };
  std::vector<var_info> vars_;
  bool output_seen_ = false;
  std::vector<node> nodes_;
  std::unordered_map<std::array<uint32_t, 3>, uint32_t, node_key_hash> unique_;
  std::unordered_map<std::pair<uint32_t, uint32_t>, uint32_t, pair_hash> and_cache_;
  std::unordered_map<std::pair<uint32_t, uint32_t>, uint32_t, pair_hash> or_cache_;
  std::unordered_map<uint32_t, uint32_t> neg_cache_;
  std::unordered_map<std::pair<uint32_t, uint64_t>, uint32_t, quant_hash> exists_cache_;
  std::unordered_map<std::array<uint32_t, 3>, uint32_t, node_key_hash> restrict_cache_;
};

} // namespace bonsai

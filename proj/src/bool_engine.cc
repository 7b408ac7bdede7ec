#include "bonsai/bool_engine.hh"

#include <algorithm>
#include <cassert>

namespace bonsai {

namespace {

constexpr uint32_t k_false = 0;
constexpr uint32_t k_true = 1;
constexpr uint32_t k_term_level = UINT32_MAX;

uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

} // namespace

size_t bool_engine::node_key_hash::operator()(const std::array<uint32_t, 3>& k) const {
  return mix(mix(k[0], k[1]), k[2]);
}

size_t bool_engine::pair_hash::operator()(const std::pair<uint32_t, uint32_t>& p) const {
  return mix(p.first, p.second);
}

size_t bool_engine::quant_hash::operator()(const std::pair<uint32_t, uint64_t>& p) const {
  return mix(p.first, p.second);
}

cube::cube(std::vector<std::pair<var_id, bool>> literals) : lits_(std::move(literals)) {
  std::sort(lits_.begin(), lits_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

std::optional<bool> cube::value(var_id v) const {
  for (const auto& [w, b] : lits_)
    if (w == v) return b;
  return std::nullopt;
}

bool_engine::bool_engine() {
  nodes_.push_back({k_term_level, k_false, k_false});
  nodes_.push_back({k_term_level, k_true, k_true});
}

var_id bool_engine::declare(std::string name, var_kind kind) {
  if (vars_.size() >= 64)
    throw limit_error("too many variables (at most 64 supported)");
  if (find(name).valid())
    throw usage_error("variable already declared: " + name);
  if (kind == var_kind::output)
    output_seen_ = true;
  else if (output_seen_)
    throw usage_error("inputs must be declared before outputs: " + name);
  vars_.push_back({std::move(name), kind});
  return var_id{static_cast<uint32_t>(vars_.size() - 1)};
}

var_id bool_engine::find(std::string_view name) const {
  for (uint32_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return var_id{i};
  return var_id{};
}

const std::string& bool_engine::name(var_id v) const {
  if (!v.valid() || v.index >= vars_.size())
    throw usage_error("undeclared variable");
  return vars_[v.index].name;
}

var_kind bool_engine::kind(var_id v) const {
  if (!v.valid() || v.index >= vars_.size())
    throw usage_error("undeclared variable");
  return vars_[v.index].kind;
}

std::vector<var_id> bool_engine::inputs() const {
  std::vector<var_id> out;
  for (uint32_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].kind == var_kind::input) out.push_back(var_id{i});
  return out;
}

std::vector<var_id> bool_engine::outputs() const {
  std::vector<var_id> out;
  for (uint32_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].kind == var_kind::output) out.push_back(var_id{i});
  return out;
}

uint32_t bool_engine::mk_node(uint32_t var, uint32_t lo, uint32_t hi) {
  if (lo == hi) return lo;
  std::array<uint32_t, 3> key{var, lo, hi};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  nodes_.push_back({var, lo, hi});
  uint32_t id = static_cast<uint32_t>(nodes_.size() - 1);
  unique_.emplace(key, id);
  return id;
}

bool_fn bool_engine::mk_var(var_id v) {
  if (!v.valid() || v.index >= vars_.size())
    throw usage_error("undeclared variable");
  return bool_fn{mk_node(v.index, k_false, k_true)};
}

bool_fn bool_engine::lit(var_id v, bool positive) {
  if (!v.valid() || v.index >= vars_.size())
    throw usage_error("undeclared variable");
  return positive ? bool_fn{mk_node(v.index, k_false, k_true)}
                  : bool_fn{mk_node(v.index, k_true, k_false)};
}

bool_fn bool_engine::cube_fn(const cube& c) {
  bool_fn acc = tt();
  for (auto it = c.literals().rbegin(); it != c.literals().rend(); ++it)
    acc = conj(acc, lit(it->first, it->second));
  return acc;
}

void bool_engine::check_fn(bool_fn f) const {
  if (!f.valid() || f.id >= nodes_.size())
    throw usage_error("invalid function handle");
}

uint32_t bool_engine::and_rec(uint32_t a, uint32_t b) {
  if (a == b) return a;
  if (a == k_false || b == k_false) return k_false;
  if (a == k_true) return b;
  if (b == k_true) return a;
  if (a > b) std::swap(a, b);
  auto key = std::make_pair(a, b);
  auto it = and_cache_.find(key);
  if (it != and_cache_.end()) return it->second;
  uint32_t va = level(a), vb = level(b);
  uint32_t v = std::min(va, vb);
  uint32_t a0 = va == v ? nodes_[a].lo : a, a1 = va == v ? nodes_[a].hi : a;
  uint32_t b0 = vb == v ? nodes_[b].lo : b, b1 = vb == v ? nodes_[b].hi : b;
  uint32_t r = mk_node(v, and_rec(a0, b0), and_rec(a1, b1));
  and_cache_.emplace(key, r);
  return r;
}

uint32_t bool_engine::or_rec(uint32_t a, uint32_t b) {
  if (a == b) return a;
  if (a == k_true || b == k_true) return k_true;
  if (a == k_false) return b;
  if (b == k_false) return a;
  if (a > b) std::swap(a, b);
  auto key = std::make_pair(a, b);
  auto it = or_cache_.find(key);
  if (it != or_cache_.end()) return it->second;
  uint32_t va = level(a), vb = level(b);
  uint32_t v = std::min(va, vb);
  uint32_t a0 = va == v ? nodes_[a].lo : a, a1 = va == v ? nodes_[a].hi : a;
  uint32_t b0 = vb == v ? nodes_[b].lo : b, b1 = vb == v ? nodes_[b].hi : b;
  uint32_t r = mk_node(v, or_rec(a0, b0), or_rec(a1, b1));
  or_cache_.emplace(key, r);
  return r;
}

uint32_t bool_engine::neg_rec(uint32_t a) {
  if (a == k_false) return k_true;
  if (a == k_true) return k_false;
  auto it = neg_cache_.find(a);
  if (it != neg_cache_.end()) return it->second;
  uint32_t r = mk_node(level(a), neg_rec(nodes_[a].lo), neg_rec(nodes_[a].hi));
  neg_cache_.emplace(a, r);
  return r;
}

bool_fn bool_engine::conj(bool_fn f, bool_fn g) {
  check_fn(f);
  check_fn(g);
  return bool_fn{and_rec(f.id, g.id)};
}

bool_fn bool_engine::disj(bool_fn f, bool_fn g) {
  check_fn(f);
  check_fn(g);
  return bool_fn{or_rec(f.id, g.id)};
}

bool_fn bool_engine::neg(bool_fn f) {
  check_fn(f);
  return bool_fn{neg_rec(f.id)};
}

uint64_t bool_engine::var_mask(std::span<const var_id> vars) const {
  uint64_t mask = 0;
  for (var_id v : vars) {
    if (!v.valid() || v.index >= vars_.size())
      throw usage_error("undeclared variable");
    mask |= 1ull << v.index;
  }
  return mask;
}

uint32_t bool_engine::exists_rec(uint32_t a, uint64_t mask) {
  if (a <= k_true || mask == 0) return a;
  auto key = std::make_pair(a, mask);
  auto it = exists_cache_.find(key);
  if (it != exists_cache_.end()) return it->second;
  uint32_t v = level(a);
  uint64_t below = (v >= 63) ? 0 : (mask >> (v + 1)) << (v + 1);
  uint32_t r;
  if (mask & (1ull << v))
    r = or_rec(exists_rec(nodes_[a].lo, below), exists_rec(nodes_[a].hi, below));
  else
    r = mk_node(v, exists_rec(nodes_[a].lo, below), exists_rec(nodes_[a].hi, below));
  exists_cache_.emplace(key, r);
  return r;
}

bool_fn bool_engine::exists(bool_fn f, std::span<const var_id> vars) {
  check_fn(f);
  return bool_fn{exists_rec(f.id, var_mask(vars))};
}

uint32_t bool_engine::restrict_rec(uint32_t a, uint32_t var, bool val) {
  if (a <= k_true || level(a) > var) return a;
  if (level(a) == var) return val ? nodes_[a].hi : nodes_[a].lo;
  std::array<uint32_t, 3> key{a, var, static_cast<uint32_t>(val)};
  auto it = restrict_cache_.find(key);
  if (it != restrict_cache_.end()) return it->second;
  uint32_t r = mk_node(level(a), restrict_rec(nodes_[a].lo, var, val),
                       restrict_rec(nodes_[a].hi, var, val));
  restrict_cache_.emplace(key, r);
  return r;
}

cube bool_engine::some_pure(bool_fn f, std::span<const var_id> vars) {
  check_fn(f);
  if (f == ff())
    throw usage_error("some_pure: no cube exists for the constant false");
  std::vector<var_id> order(vars.begin(), vars.end());
  std::sort(order.begin(), order.end());
  std::vector<std::pair<var_id, bool>> lits;
  uint32_t g = f.id;
  for (var_id v : order) {
    if (!v.valid() || v.index >= vars_.size())
      throw usage_error("undeclared variable");
    uint32_t g0 = restrict_rec(g, v.index, false);
    if (g0 != k_false) {
      lits.emplace_back(v, false);
      g = g0;
    } else {
      lits.emplace_back(v, true);
      g = restrict_rec(g, v.index, true);
    }
  }
  assert(g != k_false);
  return cube(std::move(lits));
}

void bool_engine::for_each_pure(bool_fn f, std::span<const var_id> vars,
                                const std::function<void(const cube&)>& fn) {
  check_fn(f);
  std::vector<var_id> order(vars.begin(), vars.end());
  std::sort(order.begin(), order.end());
  std::vector<std::pair<var_id, bool>> lits(order.size(), {var_id{}, false});
  auto rec = [&](auto&& self, size_t idx, uint32_t g) -> void {
    if (g == k_false) return;
    if (idx == order.size()) {
      fn(cube(lits));
      return;
    }
    var_id v = order[idx];
    lits[idx] = {v, false};
    self(self, idx + 1, restrict_rec(g, v.index, false));
    lits[idx] = {v, true};
    self(self, idx + 1, restrict_rec(g, v.index, true));
  };
  for (var_id v : order)
    if (!v.valid() || v.index >= vars_.size())
      throw usage_error("undeclared variable");
  rec(rec, 0, f.id);
}

std::vector<cube> bool_engine::enumerate_pure(bool_fn f, std::span<const var_id> vars) {
  std::vector<cube> out;
  for_each_pure(f, vars, [&](const cube& c) { out.push_back(c); });
  return out;
}

std::string bool_engine::to_string(bool_fn f) const {
  return to_string(f, [this](var_id v) { return vars_[v.index].name; });
}

std::string bool_engine::to_string(
    bool_fn f, const std::function<std::string(var_id)>& namer) const {
  check_fn(f);
  if (f.id == k_false) return "f";
  if (f.id == k_true) return "t";
  std::string out;
  std::vector<std::pair<uint32_t, bool>> path;
  auto rec = [&](auto&& self, uint32_t a) -> void {
    if (a == k_false) return;
    if (a == k_true) {
      if (!out.empty()) out += '|';
      for (size_t i = 0; i < path.size(); ++i) {
        if (i) out += '&';
        if (!path[i].second) out += '!';
        out += namer(var_id{path[i].first});
      }
      return;
    }
    path.emplace_back(level(a), false);
    self(self, nodes_[a].lo);
    path.back().second = true;
    self(self, nodes_[a].hi);
    path.pop_back();
  };
  rec(rec, f.id);
  return out;
}

var_id bool_engine::node_var(bool_fn f) const {
  check_fn(f);
  if (is_const(f)) throw usage_error("node_var on a constant");
  return var_id{nodes_[f.id].var};
}

bool_fn bool_engine::node_lo(bool_fn f) const {
  check_fn(f);
  if (is_const(f)) throw usage_error("node_lo on a constant");
  return bool_fn{nodes_[f.id].lo};
}

bool_fn bool_engine::node_hi(bool_fn f) const {
  check_fn(f);
  if (is_const(f)) throw usage_error("node_hi on a constant");
  return bool_fn{nodes_[f.id].hi};
}

} // namespace bonsai

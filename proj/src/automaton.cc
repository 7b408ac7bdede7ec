#include "bonsai/automaton.hh"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace bonsai {

automaton::automaton(std::shared_ptr<bool_engine> engine, uint32_t n_states,
                     uint32_t initial, std::vector<transition> transitions,
                     std::vector<uint32_t> buchi, std::vector<var_id> inputs,
                     std::vector<var_id> outputs)
  : engine_(std::move(engine)), n_states_(n_states), initial_(initial),
    transitions_(std::move(transitions)), buchi_(std::move(buchi)),
    inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  if (initial_ >= n_states_)
    throw usage_error("initial state out of range");
  buchi_mask_.assign(n_states_, 0);
  for (uint32_t q : buchi_) {
    if (q >= n_states_)
      throw usage_error("Büchi state out of range");
    buchi_mask_[q] = 1;
  }
  std::sort(buchi_.begin(), buchi_.end());
  buchi_.erase(std::unique(buchi_.begin(), buchi_.end()), buchi_.end());
  out_.resize(n_states_);
  for (uint32_t i = 0; i < transitions_.size(); ++i) {
    const transition& t = transitions_[i];
    if (t.src >= n_states_ || t.dst >= n_states_)
      throw usage_error("transition endpoint out of range");
    if (t.label == engine_->ff())
      throw usage_error("false-labeled transition");
    out_[t.src].push_back(i);
  }
}

std::span<const uint32_t> automaton::out_edges(uint32_t state) const {
  return out_[state];
}

scc_info sccs(const automaton& aut) {
  uint32_t n = aut.n_states();
  scc_info info;
  info.component_of.assign(n, UINT32_MAX);

  // Iterative Tarjan.
  std::vector<uint32_t> index(n, UINT32_MAX), lowlink(n, 0);
  std::vector<uint8_t> on_stack(n, 0), self_loop(n, 0);
  for (const auto& t : aut.transitions())
    if (t.src == t.dst) self_loop[t.src] = 1;
  std::vector<uint32_t> stack;
  uint32_t next_index = 0;

  struct frame {
    uint32_t state;
    size_t edge;
  };
  std::vector<frame> call;

  for (uint32_t root = 0; root < n; ++root) {
    if (index[root] != UINT32_MAX) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      frame& f = call.back();
      auto edges = aut.out_edges(f.state);
      if (f.edge < edges.size()) {
        uint32_t succ = aut.transitions()[edges[f.edge]].dst;
        ++f.edge;
        if (index[succ] == UINT32_MAX) {
          index[succ] = lowlink[succ] = next_index++;
          stack.push_back(succ);
          on_stack[succ] = 1;
          call.push_back({succ, 0});
        } else if (on_stack[succ]) {
          lowlink[f.state] = std::min(lowlink[f.state], index[succ]);
        }
      } else {
        uint32_t v = f.state;
        call.pop_back();
        if (!call.empty())
          lowlink[call.back().state] = std::min(lowlink[call.back().state], lowlink[v]);
        if (lowlink[v] == index[v]) {
          std::vector<uint32_t> comp;
          for (;;) {
            uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          uint32_t id = static_cast<uint32_t>(info.components.size());
          for (uint32_t w : comp) info.component_of[w] = id;
          bool nontrivial = comp.size() >= 2 || self_loop[comp[0]];
          info.components.push_back(std::move(comp));
          info.nontrivial.push_back(nontrivial ? 1 : 0);
        }
      }
    }
  }
  return info;
}

std::vector<uint32_t> bounded_states(const automaton& aut) {
  scc_info info = sccs(aut);
  uint32_t n = aut.n_states();
  std::vector<uint8_t> reached(n, 0);
  std::vector<uint32_t> work;
  for (uint32_t q : aut.buchi_states())
    if (info.nontrivial[info.component_of[q]]) {
      reached[q] = 1;
      work.push_back(q);
    }
  while (!work.empty()) {
    uint32_t p = work.back();
    work.pop_back();
    for (uint32_t e : aut.out_edges(p)) {
      uint32_t q = aut.transitions()[e].dst;
      if (!reached[q]) {
        reached[q] = 1;
        work.push_back(q);
      }
    }
  }
  std::vector<uint32_t> out;
  for (uint32_t q = 0; q < n; ++q)
    if (!reached[q]) out.push_back(q);
  return out;
}

std::vector<uint32_t> state_split::boolean_states() const {
  std::vector<uint32_t> out;
  for (uint32_t q = 0; q < is_boolean.size(); ++q)
    if (is_boolean[q]) out.push_back(q);
  return out;
}

std::vector<uint32_t> state_split::counted_states() const {
  std::vector<uint32_t> out;
  for (uint32_t q = 0; q < is_boolean.size(); ++q)
    if (!is_boolean[q]) out.push_back(q);
  return out;
}

state_split split_boolean(const automaton& aut, split_mode mode) {
  state_split split;
  split.is_boolean.assign(aut.n_states(), 0);
  if (mode == split_mode::bounded)
    for (uint32_t q : bounded_states(aut))
      if (!aut.is_buchi(q)) split.is_boolean[q] = 1;
  return split;
}

automaton preprocess(const automaton& aut, bool remove_surely_losing) {
  (void)remove_surely_losing; // reserved
  return aut;
}

void print_hoa(std::ostream& out, const automaton& aut,
               std::span<const std::string> state_comments) {
  bool_engine& eng = aut.engine();
  std::vector<var_id> aps(aut.inputs().begin(), aut.inputs().end());
  size_t n_in = aps.size();
  aps.insert(aps.end(), aut.outputs().begin(), aut.outputs().end());

  auto ap_index = [&](var_id v) -> std::string {
    for (size_t i = 0; i < aps.size(); ++i)
      if (aps[i] == v) return std::to_string(i);
    throw usage_error("label mentions a variable outside the automaton's alphabet");
  };

  out << "HOA: v1\n";
  out << "States: " << aut.n_states() << "\n";
  out << "Start: " << aut.initial() << "\n";
  out << "AP: " << aps.size();
  for (var_id v : aps) out << " \"" << eng.name(v) << "\"";
  out << "\n";
  out << "controllable-AP:";
  for (size_t i = n_in; i < aps.size(); ++i) out << " " << i;
  out << "\n";
  out << "acc-name: Buchi\n";
  out << "Acceptance: 1 Inf(0)\n";
  out << "--BODY--\n";
  for (uint32_t q = 0; q < aut.n_states(); ++q) {
    if (q < state_comments.size() && !state_comments[q].empty())
      out << "/* " << state_comments[q] << " */\n";
    out << "State: " << q;
    if (aut.is_buchi(q)) out << " {0}";
    out << "\n";
    for (uint32_t e : aut.out_edges(q)) {
      const transition& t = aut.transitions()[e];
      out << "[" << eng.to_string(t.label, ap_index) << "] " << t.dst << "\n";
    }
  }
  out << "--END--\n";
}

} // namespace bonsai

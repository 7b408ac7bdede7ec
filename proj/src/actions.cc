#include "bonsai/actions.hh"

#include <algorithm>
#include <cassert>

namespace bonsai {

namespace {

pair_table table_from_edges(const automaton& aut, std::span<const uint32_t> edges) {
  std::vector<std::tuple<uint32_t, uint32_t, uint8_t>> raw;
  raw.reserve(edges.size());
  for (uint32_t e : edges) {
    const transition& t = aut.transitions()[e];
    raw.emplace_back(t.src, t.dst, aut.is_buchi(t.dst) ? 1 : 0);
  }
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  pair_table table;
  table.row_start.assign(aut.n_states() + 1, 0);
  for (const auto& [p, q, d] : raw)
    ++table.row_start[p + 1];
  for (uint32_t s = 0; s < aut.n_states(); ++s)
    table.row_start[s + 1] += table.row_start[s];
  table.cells.reserve(raw.size());
  for (const auto& [p, q, d] : raw)
    table.cells.emplace_back(q, d);
  return table;
}

pair_table compute_table(const automaton& aut, bool_fn x) {
  std::vector<uint32_t> compat;
  bool_engine& eng = aut.engine();
  for (uint32_t e = 0; e < aut.transitions().size(); ++e)
    if (eng.compatible(x, aut.transitions()[e].label))
      compat.push_back(e);
  return table_from_edges(aut, compat);
}

// Refinement classes with the compatible-edge list carried along; splitting a
// class only ever filters its parent's list.
struct carried_class {
  bool_fn fn;
  std::vector<uint32_t> edges;
};

std::vector<carried_class> refine_with_edges(const automaton& aut) {
  bool_engine& eng = aut.engine();
  std::vector<carried_class> classes;
  {
    std::vector<uint32_t> all(aut.transitions().size());
    for (uint32_t e = 0; e < all.size(); ++e) all[e] = e;
    classes.push_back({eng.tt(), std::move(all)});
  }
  auto filter = [&](const std::vector<uint32_t>& parent, bool_fn f) {
    std::vector<uint32_t> out;
    for (uint32_t e : parent)
      if (eng.compatible(f, aut.transitions()[e].label))
        out.push_back(e);
    return out;
  };
  for (const transition& t : aut.transitions()) {
    bool_fn x = t.label;
    for (size_t j = 0; j < classes.size(); ++j) {
      bool_fn y = classes[j].fn;
      bool_fn xy = eng.conj(x, y);
      if (xy == eng.ff()) continue;
      bool_fn nxy = eng.conj(eng.neg(x), y);
      std::vector<uint32_t> parent = std::move(classes[j].edges);
      classes[j] = {xy, filter(parent, xy)};
      if (nxy != eng.ff())
        classes.push_back({nxy, filter(parent, nxy)});
    }
  }
  return classes;
}

// Drop io-actions whose pair set duplicates an earlier one.
void dedup_ios(std::vector<io_action>& ios) {
  std::vector<io_action> out;
  for (auto& a : ios) {
    bool dup = false;
    for (const auto& b : out)
      if (a.pairs() == b.pairs()) { dup = true; break; }
    if (!dup) out.push_back(std::move(a));
  }
  ios = std::move(out);
}

enum class build_kind { eager, carried, lazy };

std::vector<input_action> build_actions(const automaton& aut, input_mode mode,
                                        build_kind kind) {
  bool_engine& eng = aut.engine();
  std::vector<input_action> result;

  if (mode == input_mode::pure) {
    std::vector<var_id> ins(aut.inputs().begin(), aut.inputs().end());
    std::vector<var_id> outs(aut.outputs().begin(), aut.outputs().end());
    for (const cube& ci : eng.enumerate_pure(eng.tt(), ins)) {
      input_action ia;
      ia.input = eng.cube_fn(ci);
      for (const cube& co : eng.enumerate_pure(eng.tt(), outs)) {
        bool_fn x = eng.conj(ia.input, eng.cube_fn(co));
        if (kind == build_kind::lazy)
          ia.ios.push_back(io_action::deferred(aut, x));
        else
          ia.ios.push_back(io_action::eager(aut, x));
      }
      result.push_back(std::move(ia));
    }
    return result;
  }

  // Terminal IOs, with pair tables when the build kind wants them now.
  std::vector<bool_fn> terminal_ios;
  std::vector<io_action> io_pool;
  if (kind == build_kind::carried) {
    for (auto& cls : refine_with_edges(aut)) {
      terminal_ios.push_back(cls.fn);
      io_pool.push_back(io_action::carried(cls.fn, table_from_edges(aut, cls.edges)));
    }
  } else {
    std::vector<bool_fn> labels;
    for (const transition& t : aut.transitions()) labels.push_back(t.label);
    terminal_ios = sufficient_terminal_ios(eng, labels);
    for (bool_fn x : terminal_ios)
      io_pool.push_back(kind == build_kind::lazy ? io_action::deferred(aut, x)
                                                 : io_action::eager(aut, x));
  }

  // Terminal inputs from the output-projected terminal IOs.
  std::vector<var_id> outs(aut.outputs().begin(), aut.outputs().end());
  std::vector<bool_fn> projections;
  projections.reserve(terminal_ios.size());
  for (bool_fn x : terminal_ios)
    projections.push_back(eng.exists(x, outs));
  std::vector<bool_fn> terminal_inputs = sufficient_terminal_ios(eng, projections);

  for (bool_fn in : terminal_inputs) {
    input_action ia;
    ia.input = in;
    for (size_t i = 0; i < terminal_ios.size(); ++i)
      if (eng.compatible(terminal_ios[i], in))
        ia.ios.push_back(io_pool[i]);
    if (kind != build_kind::lazy)
      dedup_ios(ia.ios);
    result.push_back(std::move(ia));
  }
  return result;
}

} // namespace

io_action io_action::eager(const automaton& aut, bool_fn label) {
  io_action a(label, nullptr);
  a.table_ = compute_table(aut, label);
  return a;
}

io_action io_action::carried(bool_fn label, pair_table table) {
  io_action a(label, nullptr);
  a.table_ = std::move(table);
  return a;
}

io_action io_action::deferred(const automaton& aut, bool_fn label) {
  return io_action(label, &aut);
}

const pair_table& io_action::pairs() const {
  if (!table_.has_value()) {
    assert(src_ != nullptr);
    table_ = compute_table(*src_, label_);
  }
  return *table_;
}

io_action ioact(const automaton& aut, bool_fn x) {
  if (x == aut.engine().ff())
    throw usage_error("ioact of the constant false");
  return io_action::eager(aut, x);
}

std::vector<bool_fn> sufficient_terminal_ios(bool_engine& eng,
                                             std::span<const bool_fn> labels) {
  std::vector<bool_fn> p{eng.tt()};
  for (bool_fn x : labels) {
    for (size_t j = 0; j < p.size(); ++j) {
      bool_fn y = p[j];
      bool_fn xy = eng.conj(x, y);
      if (xy == eng.ff()) continue;
      p[j] = xy;
      bool_fn nxy = eng.conj(eng.neg(x), y);
      if (nxy != eng.ff()) p.push_back(nxy);
    }
  }
  return p;
}

std::vector<input_action> sufficient_inputs(const automaton& aut, input_mode mode) {
  return build_actions(aut, mode, build_kind::eager);
}

std::vector<input_action> precompute_actions(const automaton& aut, input_mode mode,
                                             bool lazy) {
  return build_actions(aut, mode, lazy ? build_kind::lazy : build_kind::carried);
}

} // namespace bonsai

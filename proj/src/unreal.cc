#include "bonsai/unreal.hh"

#include <cassert>
#include <deque>
#include <map>

namespace bonsai {

shift_result shift_outputs(const automaton& aut, bool record_cover) {
  bool_engine& eng = aut.engine();
  std::vector<var_id> ins(aut.inputs().begin(), aut.inputs().end());
  std::vector<var_id> outs(aut.outputs().begin(), aut.outputs().end());

  std::vector<shifted_state> origin;
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> index; // (base, pending id)
  std::vector<transition> transitions;
  std::vector<shift_cover_record> cover;
  std::deque<uint32_t> work;

  auto intern = [&](uint32_t base, bool_fn pending) -> uint32_t {
    assert(pending != eng.ff());
    auto key = std::make_pair(base, pending.id);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(origin.size());
    index.emplace(key, id);
    origin.push_back({base, pending});
    work.push_back(id);
    return id;
  };

  intern(aut.initial(), eng.tt());
  std::vector<uint8_t> processed;

  while (!work.empty()) {
    uint32_t s = work.front();
    work.pop_front();
    if (s >= processed.size()) processed.resize(s + 1, 0);
    assert(!processed[s] && "shifted state processed twice");
    processed[s] = 1;
    const auto [p, pending] = origin[s];
    for (uint32_t e : aut.out_edges(p)) {
      const transition& t = aut.transitions()[e];
      shift_cover_record rec{s, e, {}};
      bool_fn y = t.label;
      while (y != eng.ff()) {
        // One pure-output cofactor of y, and the exact inputs under which
        // that cofactor is everything y still requires.
        cube opure = eng.some_pure(y, outs);
        bool_fn ofn = eng.cube_fn(opure);
        bool_fn islice = eng.exists(eng.conj(y, ofn), outs);
        bool_fn owed = eng.exists(eng.conj(islice, y), ins);
        uint32_t dst = intern(t.dst, owed);
        bool_fn label = eng.conj(pending, islice);
        assert(label != eng.ff());
        transitions.push_back({s, dst, label});
        if (record_cover) rec.picks.emplace_back(islice, y);
        y = eng.conj(y, eng.neg(islice));
      }
      if (record_cover) cover.push_back(std::move(rec));
    }
  }

  std::vector<uint32_t> buchi;
  for (uint32_t s = 0; s < origin.size(); ++s)
    if (aut.is_buchi(origin[s].base)) buchi.push_back(s);

  // Role swap: the source outputs are the shifted game's inputs.
  automaton shifted(aut.engine_ptr(), static_cast<uint32_t>(origin.size()), 0,
                    std::move(transitions), std::move(buchi),
                    std::vector<var_id>(outs.begin(), outs.end()),
                    std::vector<var_id>(ins.begin(), ins.end()));
  return {std::move(shifted), std::move(origin), std::move(cover)};
}

std::optional<bool> check_unreal(const automaton& neg_aut, const solve_config& cfg) {
  shift_result shifted = shift_outputs(neg_aut);
  return solve(shifted.aut, cfg);
}

} // namespace bonsai

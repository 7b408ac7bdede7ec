#include "bonsai/solver.hh"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <ostream>

namespace bonsai {

state_vector bwd_point(const state_vector& v, const io_action& a) {
  const vector_shape& shape = *v.shape();
  const pair_table& table = a.pairs();
  const int k = shape.k();
  std::vector<int> out(shape.n_states(), k); // empty minimum is the ceiling
  for (uint32_t p = 0; p < shape.n_states(); ++p) {
    int best = k;
    for (const auto& [q, dec] : table.row(p)) {
      int val = v.value(q);
      if (dec) val = val == -1 ? -1 : val - 1;
      best = std::min(best, val);
    }
    out[p] = best;
  }
  return state_vector::from_states(v.shape(), out);
}

downset bwd(const downset& s, const io_action& a) {
  std::vector<state_vector> images;
  for (const state_vector& m : s.max_elements())
    images.push_back(bwd_point(m, a));
  return downset::closure_of(s.backend(), s.shape(), std::move(images));
}

downset cpre(const downset& s, const input_action& ia) {
  std::vector<state_vector> images;
  std::vector<state_vector> maxs = s.max_elements();
  images.reserve(maxs.size() * ia.ios.size());
  for (const io_action& a : ia.ios)
    for (const state_vector& m : maxs)
      images.push_back(bwd_point(m, a));
  downset u = downset::closure_of(s.backend(), s.shape(), std::move(images));
  return s.intersect_with(u);
}

input_picker::input_picker(picker_kind kind, size_t n_actions, uint64_t seed)
  : kind_(kind), n_(n_actions), certifying_(kind == picker_kind::round_robin),
    last_success_(n_actions, 0), rng_(seed) {}

bool input_picker::drops(const state_vector& v, const input_action& ia) const {
  for (const io_action& a : ia.ios)
    if (bwd_point(v, a).dominates(v)) return false;
  return true;
}

std::vector<size_t> input_picker::scan_order() {
  std::vector<size_t> order(n_);
  std::iota(order.begin(), order.end(), 0);
  switch (kind_) {
    case picker_kind::critical:
      // Recently successful actions first.
      std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return last_success_[a] > last_success_[b];
      });
      break;
    case picker_kind::critical_rand_partial:
      std::shuffle(order.begin(), order.begin() + (n_ + 1) / 2, rng_);
      break;
    case picker_kind::critical_rand_full:
      std::shuffle(order.begin(), order.end(), rng_);
      break;
    case picker_kind::round_robin:
      break;
  }
  return order;
}

std::optional<size_t> input_picker::next(const downset& s,
                                         std::span<const input_action> e) {
  assert(e.size() == n_);
  if (n_ == 0) return std::nullopt;
  if (!certifying_) {
    std::vector<state_vector> maxs = s.max_elements();
    for (size_t idx : scan_order()) {
      for (const state_vector& v : maxs) {
        if (drops(v, e[idx])) {
          last_pick_ = idx;
          return idx;
        }
      }
    }
    // No certificate found; certify the fixed point with a full pass.
    certifying_ = true;
    since_change_ = 0;
  }
  if (since_change_ >= n_) return std::nullopt;
  last_pick_ = cursor_;
  cursor_ = (cursor_ + 1) % n_;
  return last_pick_;
}

void input_picker::feedback(bool changed) {
  ++step_;
  if (changed) {
    last_success_[last_pick_] = step_;
    since_change_ = 0;
    if (kind_ != picker_kind::round_robin && certifying_)
      certifying_ = false;
  } else {
    if (kind_ != picker_kind::round_robin && !certifying_) {
      // A missed certificate; fall back to certification, resuming the
      // cycle right after the miss.
      certifying_ = true;
      cursor_ = (last_pick_ + 1) % n_;
      since_change_ = 1;
    } else {
      ++since_change_;
    }
  }
}

solve_result solve_detailed(const automaton& aut, const solve_config& cfg) {
  if (cfg.k < 1) throw usage_error("solve requires k >= 1");

  const automaton a = cfg.run_preprocess ? preprocess(aut, true) : aut;
  state_split split = split_boolean(a, cfg.boolean_split ? split_mode::bounded
                                                         : split_mode::none);
  shape_ptr shape = vector_shape::create(a.n_states(), cfg.k, cfg.vec,
                                         split.is_boolean);
  downset s = downset::from_vector(cfg.ds, state_vector::top(shape));

  std::vector<input_action> actions =
      precompute_actions(a, cfg.inputs, /*lazy=*/!cfg.precompute);

  solve_result result;
  result.stats.input_actions = actions.size();
  for (const input_action& ia : actions)
    result.stats.io_actions += ia.ios.size();

  input_picker picker(cfg.picker, actions.size(), cfg.seed);
  bool_engine& eng = a.engine();
  for (;;) {
    if (cfg.cancel && cfg.cancel->load(std::memory_order_relaxed))
      return result; // aborted: no verdict
    std::optional<size_t> idx = picker.next(s, actions);
    if (!idx.has_value()) break;
    if (result.stats.cpre_applications >= cfg.step_budget)
      return result; // aborted: budget exhausted
    ++result.stats.cpre_applications;
    downset next = cpre(s, actions[*idx]);
    bool changed = !next.equal(s);
    if (cfg.trace)
      *cfg.trace << "iter=" << result.stats.cpre_applications
                 << " input=" << eng.to_string(actions[*idx].input)
                 << " antichain=" << next.antichain_size()
                 << " changed=" << (changed ? 1 : 0) << "\n";
    picker.feedback(changed);
    s = std::move(next);
  }

  // The minimal witness: initial state at 0, everything else at the floor.
  std::vector<int> w(a.n_states(), -1);
  w[a.initial()] = 0;
  bool verdict = s.contains(state_vector::from_states(shape, w));
  result.stats.final_antichain = s.antichain_size();
  result.verdict = verdict;
  result.fixpoint = std::move(s);
  return result;
}

std::optional<bool> solve(const automaton& aut, const solve_config& cfg) {
  return solve_detailed(aut, cfg).verdict;
}

} // namespace bonsai

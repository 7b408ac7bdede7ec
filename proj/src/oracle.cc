#include "bonsai/oracle.hh"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace bonsai {

namespace {

// Evaluate a label under a full variable assignment by following diagram
// nodes; independent of the engine's operation layer.
bool eval_label(const bool_engine& eng, bool_fn f, uint64_t assignment) {
  while (!eng.is_const(f)) {
    var_id v = eng.node_var(f);
    f = (assignment >> v.index) & 1 ? eng.node_hi(f) : eng.node_lo(f);
  }
  return f == eng.tt();
}

struct grid {
  uint32_t n;
  int k;
  uint64_t size; // (k+2)^n

  uint64_t encode(const std::vector<int>& v) const {
    uint64_t idx = 0;
    for (uint32_t q = 0; q < n; ++q)
      idx = idx * (k + 2) + static_cast<uint64_t>(v[q] + 1);
    return idx;
  }
  void decode(uint64_t idx, std::vector<int>& v) const {
    for (uint32_t q = n; q-- > 0;) {
      v[q] = static_cast<int>(idx % (k + 2)) - 1;
      idx /= (k + 2);
    }
  }
};

} // namespace

bool oracle_solve(const automaton& aut, int k) {
  const uint32_t n = aut.n_states();
  if (k < 1) throw usage_error("oracle_solve requires k >= 1");
  double points = std::pow(double(k) + 2.0, double(n));
  if (points > 1e6) throw limit_error("oracle-too-big");

  grid g{n, k, 1};
  for (uint32_t q = 0; q < n; ++q) g.size *= static_cast<uint64_t>(k + 2);

  const bool_engine& eng = aut.engine();
  const size_t n_in = aut.inputs().size();
  const size_t n_out = aut.outputs().size();
  const uint64_t in_count = 1ull << n_in;
  const uint64_t out_count = 1ull << n_out;

  // Per pure IO, per state: the compatible successor list.
  auto assignment_of = [&](uint64_t in_bits, uint64_t out_bits) {
    uint64_t a = 0;
    for (size_t i = 0; i < n_in; ++i)
      if ((in_bits >> i) & 1) a |= 1ull << aut.inputs()[i].index;
    for (size_t o = 0; o < n_out; ++o)
      if ((out_bits >> o) & 1) a |= 1ull << aut.outputs()[o].index;
    return a;
  };
  std::vector<std::vector<std::vector<std::pair<uint32_t, int>>>> succs(
      in_count * out_count,
      std::vector<std::vector<std::pair<uint32_t, int>>>(n));
  for (uint64_t ib = 0; ib < in_count; ++ib)
    for (uint64_t ob = 0; ob < out_count; ++ob) {
      uint64_t a = assignment_of(ib, ob);
      auto& per_state = succs[ib * out_count + ob];
      for (const transition& t : aut.transitions())
        if (eval_label(eng, t.label, a))
          per_state[t.src].emplace_back(t.dst, aut.is_buchi(t.dst) ? 1 : 0);
    }

  std::vector<uint8_t> safe(g.size, 1);
  std::vector<int> v(n), img(n);

  auto close_down = [&](std::vector<uint8_t>& set) {
    // A set is downward closed iff closed under single-coordinate
    // decrements; one descending pass per coordinate closes it.
    uint64_t stride = 1;
    for (uint32_t q = n; q-- > 0;) {
      for (uint64_t idx = g.size; idx-- > 0;) {
        uint64_t digit = (idx / stride) % (k + 2);
        if (digit + 1 < static_cast<uint64_t>(k + 2))
          set[idx] = static_cast<uint8_t>(set[idx] | set[idx + stride]);
      }
      stride *= (k + 2);
    }
  };

  bool changed_any = true;
  while (changed_any) {
    changed_any = false;
    for (uint64_t ib = 0; ib < in_count; ++ib) {
      // Union over compatible pure IOs of the backward images of the
      // current set, then closed downward and intersected with it.
      std::vector<uint8_t> image(g.size, 0);
      for (uint64_t ob = 0; ob < out_count; ++ob) {
        const auto& per_state = succs[ib * out_count + ob];
        for (uint64_t idx = 0; idx < g.size; ++idx) {
          if (!safe[idx]) continue;
          g.decode(idx, v);
          for (uint32_t p = 0; p < n; ++p) {
            int best = k;
            for (const auto& [q, dec] : per_state[p]) {
              int val = v[q] - dec;
              if (val < -1) val = -1;
              best = std::min(best, val);
            }
            img[p] = best;
          }
          image[g.encode(img)] = 1;
        }
      }
      close_down(image);
      for (uint64_t idx = 0; idx < g.size; ++idx) {
        uint8_t next = static_cast<uint8_t>(safe[idx] & image[idx]);
        if (next != safe[idx]) {
          safe[idx] = next;
          changed_any = true;
        }
      }
    }
  }

  for (uint64_t idx = 0; idx < g.size; ++idx) {
    if (!safe[idx]) continue;
    g.decode(idx, v);
    if (v[aut.initial()] >= 0) return true;
  }
  return false;
}

std::set<std::vector<std::pair<uint32_t, uint32_t>>>
oracle_pure_ioacts(const automaton& aut) {
  const size_t n_vars = aut.inputs().size() + aut.outputs().size();
  if (n_vars > 8) throw limit_error("oracle_pure_ioacts: too many variables");
  const bool_engine& eng = aut.engine();
  std::vector<var_id> vars(aut.inputs().begin(), aut.inputs().end());
  vars.insert(vars.end(), aut.outputs().begin(), aut.outputs().end());

  std::set<std::vector<std::pair<uint32_t, uint32_t>>> out;
  for (uint64_t bits = 0; bits < (1ull << n_vars); ++bits) {
    uint64_t a = 0;
    for (size_t i = 0; i < n_vars; ++i)
      if ((bits >> i) & 1) a |= 1ull << vars[i].index;
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (const transition& t : aut.transitions())
      if (eval_label(eng, t.label, a))
        pairs.emplace_back(t.src, t.dst);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    out.insert(std::move(pairs));
  }
  return out;
}

} // namespace bonsai

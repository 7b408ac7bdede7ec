#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "bonsai/downset.hh"

using namespace bonsai;

namespace {

const std::vector<downset_backend> all_backends{
    downset_backend::antichain, downset_backend::full, downset_backend::kdtree,
    downset_backend::bins};

state_vector mk(const shape_ptr& s, std::vector<int> vals) {
  return state_vector::from_states(s, vals);
}

bool incomparable_antichain(const downset& d) {
  auto ms = d.max_elements();
  for (size_t a = 0; a < ms.size(); ++a)
    for (size_t b = 0; b < ms.size(); ++b)
      if (a != b && ms[a].dominates(ms[b])) return false;
  return true;
}

} // namespace

TEST_CASE("closure of a single vector") {
  auto s = vector_shape::create(2, 2, vec_storage::plain);
  for (auto be : all_backends) {
    auto d = downset::from_vector(be, mk(s, {2, 1}));
    CHECK(d.contains(mk(s, {0, 1})));
    CHECK_FALSE(d.contains(mk(s, {0, 2})));
    CHECK(d.max_elements().size() == 1);
    CHECK(d.max_elements()[0].same_values(mk(s, {2, 1})));
  }
}

TEST_CASE("safe top contains the bottom vector") {
  auto s = vector_shape::create(3, 2, vec_storage::lanes);
  for (auto be : all_backends) {
    auto d = downset::from_vector(be, state_vector::top(s));
    CHECK(d.contains(state_vector::bottom(s)));
    downset empty(be, s);
    CHECK_FALSE(empty.contains(state_vector::bottom(s)));
    CHECK(empty.is_empty());
  }
}

TEST_CASE("insert keeps the dominating antichain") {
  auto s = vector_shape::create(2, 3, vec_storage::plain);
  for (auto be : all_backends) {
    auto d = downset::from_vector(be, mk(s, {2, 1}));
    CHECK(d.insert(mk(s, {1, 2})));
    CHECK(d.antichain_size() == 2);
    CHECK_FALSE(d.insert(mk(s, {1, 1}))); // dominated: no change
    CHECK(d.antichain_size() == 2);
    CHECK(d.insert(mk(s, {3, 3}))); // dominates everything
    CHECK(d.max_elements().size() == 1);
    CHECK(incomparable_antichain(d));
  }
}

TEST_CASE("containment needs a single dominating element") {
  auto s = vector_shape::create(2, 2, vec_storage::plain);
  for (auto be : all_backends) {
    downset d(be, s);
    d.insert(mk(s, {2, 1}));
    d.insert(mk(s, {1, 2}));
    CHECK_FALSE(d.contains(mk(s, {2, 2})));
    CHECK(d.contains(mk(s, {1, 2})));
  }
}

TEST_CASE("union and intersection") {
  auto s = vector_shape::create(2, 2, vec_storage::plain);
  for (auto be : all_backends) {
    auto a = downset::from_vector(be, mk(s, {2, 1}));
    auto b = downset::from_vector(be, mk(s, {1, 2}));
    auto u = a.union_with(b);
    CHECK(u.antichain_size() == 2);
    CHECK(u.contains(mk(s, {2, 1})));
    CHECK(u.contains(mk(s, {1, 2})));

    auto i = a.intersect_with(b);
    CHECK(i.max_elements().size() == 1);
    CHECK(i.max_elements()[0].same_values(mk(s, {1, 1})));
    // Membership agrees with the definition over the whole grid.
    for (int x = -1; x <= 2; ++x)
      for (int y = -1; y <= 2; ++y)
        CHECK(i.contains(mk(s, {x, y}))
              == (a.contains(mk(s, {x, y})) && b.contains(mk(s, {x, y}))));

    auto top = downset::from_vector(be, state_vector::top(s));
    CHECK(a.intersect_with(top).equal(a));
  }
}

TEST_CASE("equality is semantic, across backends too") {
  auto s = vector_shape::create(2, 2, vec_storage::plain);
  auto full = downset(downset_backend::full, s);
  auto anti = downset(downset_backend::antichain, s);
  for (auto* d : {&full, &anti}) {
    d->insert(mk(s, {1, 1}));
    d->insert(mk(s, {0, 0}));
    d->insert(mk(s, {2, 0}));
  }
  CHECK(full.equal(anti));
  CHECK(anti.equal(full));
  CHECK(full.dump() == anti.dump());

  auto a = downset::from_vector(downset_backend::antichain, mk(s, {1, 1}));
  auto b = downset::from_vector(downset_backend::antichain, mk(s, {1, 1}));
  b.insert(mk(s, {0, 0}));
  CHECK(a.equal(b));
}

TEST_CASE("random cross-backend equivalence with a grid reference") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 120; ++round) {
    uint32_t n = 2 + rng() % 2; // 2..3 dims
    int k = 1 + static_cast<int>(rng() % 2);
    auto s = vector_shape::create(n, k, vec_storage::plain);
    std::vector<downset> sets;
    for (auto be : all_backends) sets.emplace_back(be, s);
    // Explicit reference over the grid.
    auto idx_of = [&](const std::vector<int>& v) {
      size_t idx = 0;
      for (uint32_t q = 0; q < n; ++q) idx = idx * (k + 2) + (v[q] + 1);
      return idx;
    };
    size_t grid = 1;
    for (uint32_t q = 0; q < n; ++q) grid *= (k + 2);
    std::vector<uint8_t> ref(grid, 0);

    auto rand_vals = [&] {
      std::vector<int> vals(n);
      for (auto& v : vals) v = static_cast<int>(rng() % (k + 2)) - 1;
      return vals;
    };

    for (int op = 0; op < 12; ++op) {
      auto vals = rand_vals();
      int kind = rng() % 3;
      if (kind == 0) {
        std::vector<bool> changed;
        for (auto& d : sets) changed.push_back(d.insert(mk(s, vals)));
        for (bool c : changed) CHECK(c == changed[0]);
        // reference: mark the down-cone
        std::vector<int> w(n);
        for (size_t g = 0; g < grid; ++g) {
          size_t rem = g;
          bool below = true;
          for (uint32_t q = n; q-- > 0;) {
            w[q] = static_cast<int>(rem % (k + 2)) - 1;
            rem /= (k + 2);
          }
          for (uint32_t q = 0; q < n; ++q)
            if (w[q] > vals[q]) below = false;
          if (below) ref[g] = 1;
        }
      } else if (kind == 1) {
        bool expect = ref[idx_of(vals)];
        for (auto& d : sets) CHECK(d.contains(mk(s, vals)) == expect);
      } else {
        for (auto& d : sets) CHECK(incomparable_antichain(d));
      }
    }
    for (size_t a = 0; a < sets.size(); ++a)
      for (size_t b = a + 1; b < sets.size(); ++b) {
        CHECK(sets[a].equal(sets[b]));
        CHECK(sets[a].dump() == sets[b].dump());
      }
  }
}

TEST_CASE("intersection laws hold under membership sampling") {
  std::mt19937_64 rng(31);
  auto s = vector_shape::create(3, 2, vec_storage::lanes);
  auto rand_set = [&](downset_backend be) {
    downset d(be, s);
    int m = 1 + rng() % 4;
    for (int e = 0; e < m; ++e) {
      std::vector<int> vals(3);
      for (auto& v : vals) v = static_cast<int>(rng() % 4) - 1;
      d.insert(state_vector::from_states(s, vals));
    }
    return d;
  };
  for (int round = 0; round < 60; ++round) {
    auto a = rand_set(downset_backend::kdtree);
    auto b = rand_set(downset_backend::kdtree);
    auto c = rand_set(downset_backend::kdtree);
    CHECK(a.intersect_with(b).equal(b.intersect_with(a)));
    CHECK(a.union_with(b).equal(b.union_with(a)));
    CHECK(a.intersect_with(a).equal(a));
    CHECK(a.union_with(a).equal(a));
    CHECK(a.intersect_with(b.intersect_with(c))
              .equal(a.intersect_with(b).intersect_with(c)));
    CHECK(a.union_with(b.union_with(c)).equal(a.union_with(b).union_with(c)));
    // intersect(a,b) ⊆ a ⊆ union(a,b)
    for (const auto& m : a.intersect_with(b).max_elements()) CHECK(a.contains(m));
    for (const auto& m : a.max_elements()) CHECK(a.union_with(b).contains(m));
  }
}

TEST_CASE("downward closure: members dominate members") {
  std::mt19937_64 rng(41);
  auto s = vector_shape::create(4, 3, vec_storage::plain);
  downset d(downset_backend::bins, s);
  for (int e = 0; e < 8; ++e) {
    std::vector<int> vals(4);
    for (auto& v : vals) v = static_cast<int>(rng() % 5) - 1;
    d.insert(state_vector::from_states(s, vals));
  }
  for (int probe = 0; probe < 200; ++probe) {
    std::vector<int> vals(4);
    for (auto& v : vals) v = static_cast<int>(rng() % 5) - 1;
    auto v = state_vector::from_states(s, vals);
    if (!d.contains(v)) continue;
    std::vector<int> lower = vals;
    for (auto& x : lower)
      if (x > -1 && rng() % 2) --x;
    CHECK(d.contains(state_vector::from_states(s, lower)));
  }
}

#include "bonsai/downset.hh"

#include <algorithm>
#include <cassert>
#include <map>

namespace bonsai {

namespace {

// Keep only maximal elements, preserving first-occurrence order and dropping
// duplicates.
std::vector<state_vector> filter_antichain(std::vector<state_vector> vs) {
  std::vector<state_vector> out;
  for (auto& v : vs) {
    bool dominated = false;
    for (const auto& m : out)
      if (m.dominates(v)) { dominated = true; break; }
    if (dominated) continue;
    std::erase_if(out, [&](const state_vector& m) { return v.dominates(m); });
    out.push_back(std::move(v));
  }
  return out;
}

bool lex_less(const state_vector& a, const state_vector& b) {
  uint32_t n = a.shape()->n_states();
  for (uint32_t q = 0; q < n; ++q) {
    int x = a.value(q), y = b.value(q);
    if (x != y) return x < y;
  }
  return false;
}

} // namespace

struct downset::impl {
  virtual ~impl() = default;
  virtual std::unique_ptr<impl> clone() const = 0;
  virtual bool contains(const state_vector& v) const = 0;
  virtual bool insert(state_vector v) = 0;
  virtual std::vector<state_vector> max_elements() const = 0;
  virtual void assign_antichain(std::vector<state_vector> antichain) = 0;
  virtual size_t antichain_size() const = 0;
  virtual bool empty() const = 0;
};

namespace {

struct antichain_impl final : downset::impl {
  std::vector<state_vector> elems;

  std::unique_ptr<impl> clone() const override {
    return std::make_unique<antichain_impl>(*this);
  }
  bool contains(const state_vector& v) const override {
    for (const auto& m : elems)
      if (m.dominates(v)) return true;
    return false;
  }
  bool insert(state_vector v) override {
    if (contains(v)) return false;
    std::erase_if(elems, [&](const state_vector& m) { return v.dominates(m); });
    elems.push_back(std::move(v));
    return true;
  }
  std::vector<state_vector> max_elements() const override { return elems; }
  void assign_antichain(std::vector<state_vector> antichain) override {
    elems = std::move(antichain);
  }
  size_t antichain_size() const override { return elems.size(); }
  bool empty() const override { return elems.empty(); }
};

struct full_impl final : downset::impl {
  std::vector<state_vector> store;
  size_t last_antichain = 1;

  std::unique_ptr<impl> clone() const override {
    return std::make_unique<full_impl>(*this);
  }
  bool contains(const state_vector& v) const override {
    for (const auto& m : store)
      if (m.dominates(v)) return true;
    return false;
  }
  bool insert(state_vector v) override {
    if (contains(v)) return false;
    store.push_back(std::move(v));
    if (store.size() > 4 * std::max<size_t>(last_antichain, 1))
      compact();
    return true;
  }
  void compact() {
    store = filter_antichain(std::move(store));
    last_antichain = store.size();
  }
  std::vector<state_vector> max_elements() const override {
    return filter_antichain(store);
  }
  void assign_antichain(std::vector<state_vector> antichain) override {
    store = std::move(antichain);
    last_antichain = store.size();
  }
  size_t antichain_size() const override { return max_elements().size(); }
  bool empty() const override { return store.empty(); }
};

struct kdtree_impl final : downset::impl {
  struct node {
    uint32_t begin, end;       // range in order[]
    int32_t left = -1, right = -1;
    std::unique_ptr<state_vector> upper; // componentwise max over the range
  };

  std::vector<state_vector> elems;
  mutable std::vector<uint32_t> order;
  mutable std::vector<node> nodes;
  mutable bool dirty = true;

  kdtree_impl() = default;
  kdtree_impl(const kdtree_impl& o) : elems(o.elems) {}
  std::unique_ptr<impl> clone() const override {
    return std::make_unique<kdtree_impl>(*this);
  }

  static constexpr uint32_t leaf_size = 4;

  void build() const {
    order.resize(elems.size());
    for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    nodes.clear();
    if (!elems.empty())
      build_range(0, static_cast<uint32_t>(elems.size()), 0);
    dirty = false;
  }

  int32_t build_range(uint32_t begin, uint32_t end, uint32_t depth) const {
    node nd;
    nd.begin = begin;
    nd.end = end;
    state_vector up = elems[order[begin]];
    for (uint32_t i = begin + 1; i < end; ++i)
      up = up.join(elems[order[i]]);
    nd.upper = std::make_unique<state_vector>(std::move(up));
    int32_t id = static_cast<int32_t>(nodes.size());
    nodes.push_back(std::move(nd));
    if (end - begin > leaf_size) {
      uint32_t n_states = elems[0].shape()->n_states();
      uint32_t dim = depth % n_states;
      uint32_t mid = begin + (end - begin) / 2;
      std::nth_element(order.begin() + begin, order.begin() + mid,
                       order.begin() + end, [&](uint32_t a, uint32_t b) {
                         return elems[a].value(dim) < elems[b].value(dim);
                       });
      int32_t l = build_range(begin, mid, depth + 1);
      int32_t r = build_range(mid, end, depth + 1);
      nodes[id].left = l;
      nodes[id].right = r;
    }
    return id;
  }

  bool query(int32_t id, const state_vector& v) const {
    const node& nd = nodes[id];
    if (!nd.upper->dominates(v)) return false;
    if (nd.left < 0) {
      for (uint32_t i = nd.begin; i < nd.end; ++i)
        if (elems[order[i]].dominates(v)) return true;
      return false;
    }
    return query(nd.left, v) || query(nd.right, v);
  }

  bool contains(const state_vector& v) const override {
    if (elems.empty()) return false;
    if (dirty) build();
    return query(0, v);
  }
  bool insert(state_vector v) override {
    if (contains(v)) return false;
    std::erase_if(elems, [&](const state_vector& m) { return v.dominates(m); });
    elems.push_back(std::move(v));
    dirty = true;
    return true;
  }
  std::vector<state_vector> max_elements() const override { return elems; }
  void assign_antichain(std::vector<state_vector> antichain) override {
    elems = std::move(antichain);
    dirty = true;
  }
  size_t antichain_size() const override { return elems.size(); }
  bool empty() const override { return elems.empty(); }
};

struct bins_impl final : downset::impl {
  std::map<int32_t, std::vector<state_vector>> bins;

  std::unique_ptr<impl> clone() const override {
    return std::make_unique<bins_impl>(*this);
  }
  bool contains(const state_vector& v) const override {
    // A dominating element scores at least as high as v.
    for (auto it = bins.lower_bound(v.score()); it != bins.end(); ++it)
      for (const auto& m : it->second)
        if (m.dominates(v)) return true;
    return false;
  }
  bool insert(state_vector v) override {
    if (contains(v)) return false;
    int32_t sc = v.score();
    for (auto it = bins.begin(); it != bins.end() && it->first <= sc;) {
      std::erase_if(it->second,
                    [&](const state_vector& m) { return v.dominates(m); });
      if (it->second.empty())
        it = bins.erase(it);
      else
        ++it;
    }
    bins[sc].push_back(std::move(v));
    return true;
  }
  std::vector<state_vector> max_elements() const override {
    std::vector<state_vector> out;
    for (const auto& [sc, vs] : bins)
      out.insert(out.end(), vs.begin(), vs.end());
    return out;
  }
  void assign_antichain(std::vector<state_vector> antichain) override {
    bins.clear();
    for (auto& v : antichain) {
      int32_t sc = v.score();
      bins[sc].push_back(std::move(v));
    }
  }
  size_t antichain_size() const override {
    size_t n = 0;
    for (const auto& [sc, vs] : bins) n += vs.size();
    return n;
  }
  bool empty() const override { return bins.empty(); }
};

std::unique_ptr<downset::impl> make_impl(downset_backend b) {
  switch (b) {
    case downset_backend::antichain: return std::make_unique<antichain_impl>();
    case downset_backend::full: return std::make_unique<full_impl>();
    case downset_backend::kdtree: return std::make_unique<kdtree_impl>();
    case downset_backend::bins: return std::make_unique<bins_impl>();
  }
  throw usage_error("unknown downset backend");
}

} // namespace

downset::downset(downset_backend backend, shape_ptr shape)
  : backend_(backend), shape_(std::move(shape)), impl_(make_impl(backend)) {}

downset downset::from_vector(downset_backend backend, state_vector v) {
  downset d(backend, v.shape());
  d.impl_->assign_antichain({std::move(v)});
  return d;
}

downset downset::closure_of(downset_backend backend, shape_ptr shape,
                            std::vector<state_vector> vs) {
  downset d(backend, std::move(shape));
  d.impl_->assign_antichain(filter_antichain(std::move(vs)));
  return d;
}

downset::downset(const downset& o)
  : backend_(o.backend_), shape_(o.shape_), impl_(o.impl_->clone()) {}

downset::downset(downset&&) noexcept = default;

downset& downset::operator=(const downset& o) {
  if (this == &o) return *this;
  backend_ = o.backend_;
  shape_ = o.shape_;
  impl_ = o.impl_->clone();
  return *this;
}

downset& downset::operator=(downset&&) noexcept = default;

downset::~downset() = default;

bool downset::insert(state_vector v) {
  if (!v.shape()->compatible_with(*shape_))
    throw usage_error("downset insert: vector shape mismatch");
  return impl_->insert(std::move(v));
}

bool downset::contains(const state_vector& v) const {
  if (!v.shape()->compatible_with(*shape_))
    throw usage_error("downset contains: vector shape mismatch");
  return impl_->contains(v);
}

downset downset::union_with(const downset& other) const {
  if (!other.shape_->compatible_with(*shape_))
    throw usage_error("downset union: shape mismatch");
  std::vector<state_vector> all = impl_->max_elements();
  std::vector<state_vector> theirs = other.impl_->max_elements();
  all.insert(all.end(), std::make_move_iterator(theirs.begin()),
             std::make_move_iterator(theirs.end()));
  downset d(backend_, shape_);
  d.impl_->assign_antichain(filter_antichain(std::move(all)));
  return d;
}

downset downset::intersect_with(const downset& other) const {
  if (!other.shape_->compatible_with(*shape_))
    throw usage_error("downset intersect: shape mismatch");
  std::vector<state_vector> mine = impl_->max_elements();
  std::vector<state_vector> theirs = other.impl_->max_elements();
  std::vector<state_vector> meets;
  meets.reserve(mine.size() * theirs.size());
  for (const auto& a : mine)
    for (const auto& b : theirs)
      meets.push_back(a.meet(b));
  downset d(backend_, shape_);
  d.impl_->assign_antichain(filter_antichain(std::move(meets)));
  return d;
}

bool downset::equal(const downset& other) const {
  for (const auto& m : impl_->max_elements())
    if (!other.contains(m)) return false;
  for (const auto& m : other.impl_->max_elements())
    if (!contains(m)) return false;
  return true;
}

std::vector<state_vector> downset::max_elements() const {
  return impl_->max_elements();
}

size_t downset::antichain_size() const { return impl_->antichain_size(); }

bool downset::is_empty() const { return impl_->empty(); }

std::string downset::dump() const {
  auto vs = impl_->max_elements();
  std::sort(vs.begin(), vs.end(), lex_less);
  std::string out;
  for (const auto& v : vs) {
    out += v.to_string();
    out += '\n';
  }
  return out;
}

} // namespace bonsai

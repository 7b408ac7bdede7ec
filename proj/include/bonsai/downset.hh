#pragma once

// Downward-closed sets of state vectors, represented by their dominating
// antichain (or, for the full-set backend, by every inserted vector with
// domination filtering deferred).  Four interchangeable backends:
//
//   antichain  - vector of pairwise-incomparable elements;
//   full       - keeps every inserted vector, compacts to the antichain
//                when the store grows past 4x its last-known size;
//   kdtree     - antichain indexed by a k-d tree (median split on successive
//                dimensions); membership queries prune subtrees whose
//                componentwise maximum does not dominate the query; the tree
//                is rebuilt lazily after mutations;
//   bins       - antichain binned by vector score; membership only probes
//                bins with score >= the query's, insertion evicts only from
//                bins with score <= the new element's.
//
// All backends are semantically equal after identical operation sequences.
// A downset is owned by one solver run; no concurrent mutation.

#include <memory>
#include <string>
#include <vector>

#include "bonsai/valuation.hh"

namespace bonsai {

enum class downset_backend : uint8_t { antichain, full, kdtree, bins };

class downset {
 public:
  downset(downset_backend backend, shape_ptr shape); // the empty set
  static downset from_vector(downset_backend backend, state_vector v);
  static downset closure_of(downset_backend backend, shape_ptr shape,
                            std::vector<state_vector> vs);

  downset(const downset&);
  downset(downset&&) noexcept;
  downset& operator=(const downset&);
  downset& operator=(downset&&) noexcept;
  ~downset();

  // Adds the downward closure of v; returns whether the set changed.
  bool insert(state_vector v);
  // True iff some stored element dominates v.
  bool contains(const state_vector& v) const;

  downset union_with(const downset& other) const;
  downset intersect_with(const downset& other) const;
  bool equal(const downset& other) const;

  std::vector<state_vector> max_elements() const;
  size_t antichain_size() const;
  bool is_empty() const;

  // One vector per line, sorted lexicographically; stable across backends.
  std::string dump() const;

  downset_backend backend() const { return backend_; }
  const shape_ptr& shape() const { return shape_; }

  struct impl; // backend interface, defined in downset.cc

 private:
  downset_backend backend_;
  shape_ptr shape_;
  std::unique_ptr<impl> impl_;
};

} // namespace bonsai

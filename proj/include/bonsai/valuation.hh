#pragma once

// Fixed-length valuations of automaton states.  Counted states hold an
// integer in [-1, k]; boolean states hold one bit meaning "value >= 0".
// Decrement saturates at -1 and no value ever exceeds k.
//
// Two interchangeable storages back the counted part:
//   - plain: one int16 per counted state, scalar loops;
//   - lanes: 8- or 16-bit lanes (picked so k+2 fits), padded to a whole
//     number of 32-byte blocks and processed with branch-free loops.  Small
//     vectors live in a fixed inline buffer (BONSAI_FIXED_LANES lanes);
//     larger ones fall back to heap storage.
// Combined with the optional boolean-bit part this yields the four vector
// flavors; all of them compute identical results.
//
// Vectors are immutable values.  Debug form: (v0,v1,...|b0b1...).

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bonsai/errors.hh"

#ifndef BONSAI_FIXED_LANES
#define BONSAI_FIXED_LANES 128
#endif

namespace bonsai {

enum class vec_storage : uint8_t { plain, lanes };

class vector_shape;
using shape_ptr = std::shared_ptr<const vector_shape>;

class vector_shape {
 public:
  // boolean_mask is indexed by state; empty means all states counted.
  static shape_ptr create(uint32_t n_states, int k, vec_storage storage,
                          std::span<const uint8_t> boolean_mask = {});

  uint32_t n_states() const { return n_states_; }
  uint32_t n_counted() const { return n_counted_; }
  uint32_t n_bits() const { return n_bits_; }
  int k() const { return k_; }
  vec_storage storage() const { return storage_; }
  // >= 0: counted slot; < 0: boolean bit index is ~slot.
  int32_t slot(uint32_t state) const { return slots_[state]; }
  bool wide_lanes() const { return wide_; }     // int16 lanes (else int8)
  uint32_t padded() const { return padded_; }   // counted entries incl. padding
  uint32_t payload_bytes() const;
  uint32_t bit_words() const { return (n_bits_ + 63) / 64; }

  bool compatible_with(const vector_shape& o) const;

 private:
  friend class state_vector;
  uint32_t n_states_ = 0, n_counted_ = 0, n_bits_ = 0, padded_ = 0;
  int k_ = 0;
  vec_storage storage_ = vec_storage::plain;
  bool wide_ = true;
  std::vector<int32_t> slots_;
};

class state_vector {
 public:
  state_vector(const state_vector&);
  state_vector(state_vector&&) noexcept;
  state_vector& operator=(const state_vector&);
  state_vector& operator=(state_vector&&) noexcept;
  ~state_vector();

  // All counted entries = value (must be in [-1, k]); bits set iff value >= 0.
  static state_vector filled(shape_ptr shape, int value);
  static state_vector top(shape_ptr shape);     // all-k, bits set
  static state_vector bottom(shape_ptr shape);  // all -1, bits clear
  // One value per state; counted entries must be in [-1, k], boolean states
  // store value >= 0.
  static state_vector from_states(shape_ptr shape, std::span<const int> by_state);

  const shape_ptr& shape() const { return shape_; }
  // Value of a state: counted entry, or 0 / -1 for a boolean state's bit.
  int value(uint32_t state) const;

  bool dominates(const state_vector& other) const;
  state_vector meet(const state_vector& other) const;
  state_vector join(const state_vector& other) const; // componentwise max
  // Entry q becomes max(v_q - mask_q, -1); a masked boolean bit is cleared.
  state_vector dec_if(std::span<const uint8_t> mask_by_state) const;
  int32_t score() const { return score_; }

  std::string to_string() const;
  // Value equality; the two vectors may use different storages.
  bool same_values(const state_vector& other) const;

 private:
  explicit state_vector(shape_ptr shape);
  void alloc();
  const std::byte* payload() const;
  std::byte* payload();
  int read_slot(uint32_t slot) const;
  void write_slot(uint32_t slot, int v);
  bool bit(uint32_t idx) const;
  void set_bit(uint32_t idx, bool b);
  void recompute_score();
  void check_same_shape(const state_vector& other) const;

  static constexpr size_t k_inline_bytes = 2 * size_t(BONSAI_FIXED_LANES);

  shape_ptr shape_;
  alignas(32) std::byte inline_[k_inline_bytes];
  std::unique_ptr<std::byte[]> heap_;
  std::vector<uint64_t> bits_;
  int32_t score_ = 0;
};

} // namespace bonsai

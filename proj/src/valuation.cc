#include "bonsai/valuation.hh"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstring>

namespace bonsai {

namespace {

constexpr uint32_t k_block_bytes = 32;

template <typename T>
bool dominates_scalar(const T* a, const T* b, uint32_t n) {
  for (uint32_t i = 0; i < n; ++i)
    if (a[i] < b[i]) return false;
  return true;
}

// Branch-free full-width scan; padding entries are equal on both sides.
template <typename T>
bool dominates_lanes(const T* a, const T* b, uint32_t n) {
  T acc = 0;
  for (uint32_t i = 0; i < n; ++i)
    acc |= static_cast<T>(a[i] < b[i]);
  return acc == 0;
}

template <typename T>
void min_lanes(const T* a, const T* b, T* out, uint32_t n) {
  for (uint32_t i = 0; i < n; ++i)
    out[i] = std::min(a[i], b[i]);
}

template <typename T>
void max_lanes(const T* a, const T* b, T* out, uint32_t n) {
  for (uint32_t i = 0; i < n; ++i)
    out[i] = std::max(a[i], b[i]);
}

template <typename T>
void dec_lanes(const T* a, const T* m, T* out, uint32_t n) {
  for (uint32_t i = 0; i < n; ++i)
    out[i] = std::max(static_cast<T>(a[i] - m[i]), static_cast<T>(-1));
}

template <typename T>
int32_t sum_lanes(const T* a, uint32_t n) {
  int32_t s = 0;
  for (uint32_t i = 0; i < n; ++i)
    s += a[i];
  return s;
}

} // namespace

shape_ptr vector_shape::create(uint32_t n_states, int k, vec_storage storage,
                               std::span<const uint8_t> boolean_mask) {
  if (k < 0)
    throw usage_error("vector shape requires k >= 0");
  if (k > 32000)
    throw usage_error("k too large for 16-bit lanes");
  if (!boolean_mask.empty() && boolean_mask.size() != n_states)
    throw usage_error("boolean mask size does not match state count");
  auto s = std::make_shared<vector_shape>();
  s->n_states_ = n_states;
  s->k_ = k;
  s->storage_ = storage;
  s->wide_ = storage == vec_storage::plain || k > 120;
  s->slots_.resize(n_states);
  for (uint32_t q = 0; q < n_states; ++q) {
    bool boolean = !boolean_mask.empty() && boolean_mask[q];
    if (boolean)
      s->slots_[q] = ~static_cast<int32_t>(s->n_bits_++);
    else
      s->slots_[q] = static_cast<int32_t>(s->n_counted_++);
  }
  if (storage == vec_storage::lanes) {
    uint32_t per_block = k_block_bytes / (s->wide_ ? 2 : 1);
    s->padded_ = (s->n_counted_ + per_block - 1) / per_block * per_block;
    if (s->padded_ == 0) s->padded_ = per_block;
  } else {
    s->padded_ = s->n_counted_;
  }
  return s;
}

uint32_t vector_shape::payload_bytes() const {
  return padded_ * (wide_ ? 2 : 1);
}

bool vector_shape::compatible_with(const vector_shape& o) const {
  return n_states_ == o.n_states_ && k_ == o.k_ && storage_ == o.storage_
         && wide_ == o.wide_ && slots_ == o.slots_;
}

state_vector::state_vector(shape_ptr shape) : shape_(std::move(shape)) {
  alloc();
}

void state_vector::alloc() {
  size_t bytes = shape_->payload_bytes();
  if (bytes > k_inline_bytes)
    heap_ = std::make_unique<std::byte[]>(bytes);
  std::memset(payload(), 0, bytes);
  bits_.assign(shape_->bit_words(), 0);
}

state_vector::~state_vector() = default;

state_vector::state_vector(const state_vector& o)
  : shape_(o.shape_), bits_(o.bits_), score_(o.score_) {
  size_t bytes = shape_->payload_bytes();
  if (bytes > k_inline_bytes)
    heap_ = std::make_unique<std::byte[]>(bytes);
  std::memcpy(payload(), o.payload(), bytes);
}

state_vector::state_vector(state_vector&& o) noexcept
  : shape_(std::move(o.shape_)), heap_(std::move(o.heap_)),
    bits_(std::move(o.bits_)), score_(o.score_) {
  if (!heap_)
    std::memcpy(inline_, o.inline_, k_inline_bytes);
}

state_vector& state_vector::operator=(const state_vector& o) {
  if (this == &o) return *this;
  state_vector tmp(o);
  *this = std::move(tmp);
  return *this;
}

state_vector& state_vector::operator=(state_vector&& o) noexcept {
  shape_ = std::move(o.shape_);
  heap_ = std::move(o.heap_);
  bits_ = std::move(o.bits_);
  score_ = o.score_;
  if (!heap_)
    std::memcpy(inline_, o.inline_, k_inline_bytes);
  return *this;
}

const std::byte* state_vector::payload() const {
  return heap_ ? heap_.get() : inline_;
}

std::byte* state_vector::payload() {
  return heap_ ? heap_.get() : inline_;
}

int state_vector::read_slot(uint32_t slot) const {
  if (shape_->wide_lanes())
    return reinterpret_cast<const int16_t*>(payload())[slot];
  return reinterpret_cast<const int8_t*>(payload())[slot];
}

void state_vector::write_slot(uint32_t slot, int v) {
  if (shape_->wide_lanes())
    reinterpret_cast<int16_t*>(payload())[slot] = static_cast<int16_t>(v);
  else
    reinterpret_cast<int8_t*>(payload())[slot] = static_cast<int8_t>(v);
}

bool state_vector::bit(uint32_t idx) const {
  return (bits_[idx / 64] >> (idx % 64)) & 1;
}

void state_vector::set_bit(uint32_t idx, bool b) {
  if (b)
    bits_[idx / 64] |= 1ull << (idx % 64);
  else
    bits_[idx / 64] &= ~(1ull << (idx % 64));
}

void state_vector::recompute_score() {
  int32_t s;
  if (shape_->wide_lanes())
    s = sum_lanes(reinterpret_cast<const int16_t*>(payload()), shape_->padded());
  else
    s = sum_lanes(reinterpret_cast<const int8_t*>(payload()), shape_->padded());
  for (uint64_t w : bits_)
    s += std::popcount(w);
  score_ = s;
}

state_vector state_vector::filled(shape_ptr shape, int value) {
  if (value < -1 || value > shape->k())
    throw usage_error("vector entry out of [-1, k]");
  state_vector v(std::move(shape));
  for (uint32_t s = 0; s < v.shape_->n_counted(); ++s)
    v.write_slot(s, value);
  if (value >= 0)
    for (uint32_t b = 0; b < v.shape_->n_bits(); ++b)
      v.set_bit(b, true);
  v.recompute_score();
  return v;
}

state_vector state_vector::top(shape_ptr shape) {
  int k = shape->k();
  return filled(std::move(shape), k);
}

state_vector state_vector::bottom(shape_ptr shape) {
  return filled(std::move(shape), -1);
}

state_vector state_vector::from_states(shape_ptr shape, std::span<const int> by_state) {
  if (by_state.size() != shape->n_states())
    throw usage_error("from_states: wrong number of entries");
  state_vector v(std::move(shape));
  for (uint32_t q = 0; q < v.shape_->n_states(); ++q) {
    int32_t slot = v.shape_->slot(q);
    int val = by_state[q];
    if (val < -1 || val > v.shape_->k())
      throw usage_error("vector entry out of [-1, k]");
    if (slot >= 0)
      v.write_slot(static_cast<uint32_t>(slot), val);
    else
      v.set_bit(static_cast<uint32_t>(~slot), val >= 0);
  }
  v.recompute_score();
  return v;
}

int state_vector::value(uint32_t state) const {
  int32_t slot = shape_->slot(state);
  if (slot >= 0) return read_slot(static_cast<uint32_t>(slot));
  return bit(static_cast<uint32_t>(~slot)) ? 0 : -1;
}

void state_vector::check_same_shape(const state_vector& o) const {
  if (shape_ != o.shape_ && !shape_->compatible_with(*o.shape_))
    throw usage_error("vector shape mismatch");
}

bool state_vector::dominates(const state_vector& o) const {
  check_same_shape(o);
  for (size_t w = 0; w < bits_.size(); ++w)
    if (o.bits_[w] & ~bits_[w]) return false;
  if (shape_->storage() == vec_storage::plain) {
    return dominates_scalar(reinterpret_cast<const int16_t*>(payload()),
                            reinterpret_cast<const int16_t*>(o.payload()),
                            shape_->n_counted());
  }
  if (shape_->wide_lanes())
    return dominates_lanes(reinterpret_cast<const int16_t*>(payload()),
                           reinterpret_cast<const int16_t*>(o.payload()),
                           shape_->padded());
  return dominates_lanes(reinterpret_cast<const int8_t*>(payload()),
                         reinterpret_cast<const int8_t*>(o.payload()),
                         shape_->padded());
}

state_vector state_vector::meet(const state_vector& o) const {
  check_same_shape(o);
  state_vector out(shape_);
  if (shape_->wide_lanes())
    min_lanes(reinterpret_cast<const int16_t*>(payload()),
              reinterpret_cast<const int16_t*>(o.payload()),
              reinterpret_cast<int16_t*>(out.payload()), shape_->padded());
  else
    min_lanes(reinterpret_cast<const int8_t*>(payload()),
              reinterpret_cast<const int8_t*>(o.payload()),
              reinterpret_cast<int8_t*>(out.payload()), shape_->padded());
  for (size_t w = 0; w < bits_.size(); ++w)
    out.bits_[w] = bits_[w] & o.bits_[w];
  out.recompute_score();
  return out;
}

state_vector state_vector::join(const state_vector& o) const {
  check_same_shape(o);
  state_vector out(shape_);
  if (shape_->wide_lanes())
    max_lanes(reinterpret_cast<const int16_t*>(payload()),
              reinterpret_cast<const int16_t*>(o.payload()),
              reinterpret_cast<int16_t*>(out.payload()), shape_->padded());
  else
    max_lanes(reinterpret_cast<const int8_t*>(payload()),
              reinterpret_cast<const int8_t*>(o.payload()),
              reinterpret_cast<int8_t*>(out.payload()), shape_->padded());
  for (size_t w = 0; w < bits_.size(); ++w)
    out.bits_[w] = bits_[w] | o.bits_[w];
  out.recompute_score();
  return out;
}

state_vector state_vector::dec_if(std::span<const uint8_t> mask_by_state) const {
  if (mask_by_state.size() != shape_->n_states())
    throw usage_error("dec_if: wrong mask size");
  state_vector out(*this);
  // Slot-mapped mask; padding entries stay zero.
  if (shape_->wide_lanes()) {
    std::vector<int16_t> m(shape_->padded(), 0);
    for (uint32_t q = 0; q < shape_->n_states(); ++q)
      if (shape_->slot(q) >= 0) m[shape_->slot(q)] = mask_by_state[q] ? 1 : 0;
    dec_lanes(reinterpret_cast<const int16_t*>(payload()), m.data(),
              reinterpret_cast<int16_t*>(out.payload()), shape_->padded());
  } else {
    std::vector<int8_t> m(shape_->padded(), 0);
    for (uint32_t q = 0; q < shape_->n_states(); ++q)
      if (shape_->slot(q) >= 0) m[shape_->slot(q)] = mask_by_state[q] ? 1 : 0;
    dec_lanes(reinterpret_cast<const int8_t*>(payload()), m.data(),
              reinterpret_cast<int8_t*>(out.payload()), shape_->padded());
  }
  for (uint32_t q = 0; q < shape_->n_states(); ++q) {
    int32_t slot = shape_->slot(q);
    if (slot < 0 && mask_by_state[q])
      out.set_bit(static_cast<uint32_t>(~slot), false);
  }
  out.recompute_score();
  return out;
}

std::string state_vector::to_string() const {
  std::string s = "(";
  for (uint32_t i = 0; i < shape_->n_counted(); ++i) {
    if (i) s += ',';
    s += std::to_string(read_slot(i));
  }
  if (shape_->n_bits() > 0) {
    s += '|';
    for (uint32_t b = 0; b < shape_->n_bits(); ++b)
      s += bit(b) ? '1' : '0';
  }
  s += ')';
  return s;
}

bool state_vector::same_values(const state_vector& o) const {
  if (shape_->n_states() != o.shape_->n_states()) return false;
  for (uint32_t q = 0; q < shape_->n_states(); ++q)
    if (value(q) != o.value(q)) return false;
  return true;
}

} // namespace bonsai

#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sg {

// Integer partition: non-increasing sequence of positive parts. Zero parts
// are never stored; code that needs a fixed length pads with zeros on demand
// via part_or_zero(). Immutable value type with structural equality, usable
// as a map key.
class Partition {
 public:
  Partition() = default;

  // Validates non-increasing order; trailing zeros are dropped. Throws
  // std::invalid_argument on an increasing step or an interior zero.
  explicit Partition(std::vector<unsigned> parts);

  // Text form "4,2,2". The empty partition is "" or "0". Rejects order
  // violations and malformed numbers with a diagnostic.
  static Partition parse(std::string_view text);

  const std::vector<unsigned>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  unsigned long weight() const;

  // 1-based part access padded with zeros: part_or_zero(n) = lambda_n.
  unsigned part_or_zero(std::size_t n) const {
    return (n >= 1 && n <= parts_.size()) ? parts_[n - 1] : 0u;
  }

  // lambda'_j = #{k : lambda_k >= j}; an involution preserving weight.
  Partition conjugate() const;

  // True iff every stored part is even (vacuously true when empty).
  bool is_even() const;

  // Every part multiplied by 2.
  Partition doubled() const;

  // "4,2,2"; the empty partition prints as "0".
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a,
                                          const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<unsigned> parts_;
};

// All partitions with weight <= max_weight, length <= max_length and parts
// <= max_part, each exactly once, in decreasing lexicographic order (a
// longer partition precedes its proper prefixes). The empty partition is
// always last.
std::vector<Partition> enumerate_partitions(unsigned max_weight,
                                            unsigned max_length,
                                            unsigned max_part);

// The hook partitions (k, 1^{n-k}) of n with signs (-1)^{n-k}, k = n..1.
std::vector<std::pair<Partition, int>> hook_partitions(unsigned n);

}  // namespace sg

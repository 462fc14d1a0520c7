#include "sg/partition.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace sg {

Partition::Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] == 0)
      throw std::invalid_argument("partition has an interior zero part");
    if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
      throw std::invalid_argument("partition parts must be non-increasing");
  }
}

Partition Partition::parse(std::string_view text) {
  if (text.empty() || text == "0") return Partition{};
  std::vector<unsigned> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    unsigned value = 0;
    auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw std::invalid_argument("bad partition part \"" + std::string(tok) +
                                  "\" in \"" + std::string(text) + "\"");
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  try {
    return Partition(std::move(parts));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("partition \"" + std::string(text) +
                                "\" is not non-increasing positive parts");
  }
}

unsigned long Partition::weight() const {
  return std::accumulate(parts_.begin(), parts_.end(), 0ul);
}

Partition Partition::conjugate() const {
  if (parts_.empty()) return Partition{};
  std::vector<unsigned> conj(parts_[0], 0);
  for (unsigned j = 1; j <= parts_[0]; ++j) {
    unsigned count = 0;
    for (unsigned p : parts_)
      if (p >= j) ++count;
    conj[j - 1] = count;
  }
  return Partition(std::move(conj));
}

bool Partition::is_even() const {
  for (unsigned p : parts_)
    if (p % 2 != 0) return false;
  return true;
}

Partition Partition::doubled() const {
  std::vector<unsigned> parts = parts_;
  for (unsigned& p : parts) p *= 2;
  return Partition(std::move(parts));
}

std::string Partition::to_string() const {
  if (parts_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s;
}

namespace {

void enumerate_rec(unsigned max_weight, unsigned max_length, unsigned max_part,
                   std::vector<unsigned>& prefix,
                   std::vector<Partition>& out) {
  if (max_length > 0) {
    unsigned top = std::min(max_part, max_weight);
    for (unsigned p = top; p >= 1; --p) {
      prefix.push_back(p);
      enumerate_rec(max_weight - p, max_length - 1, p, prefix, out);
      prefix.pop_back();
    }
  }
  out.push_back(Partition(std::vector<unsigned>(prefix)));
}

}  // namespace

std::vector<Partition> enumerate_partitions(unsigned max_weight,
                                            unsigned max_length,
                                            unsigned max_part) {
  std::vector<Partition> out;
  std::vector<unsigned> prefix;
  enumerate_rec(max_weight, max_length, max_part, prefix, out);
  return out;
}

std::vector<std::pair<Partition, int>> hook_partitions(unsigned n) {
  if (n < 1) throw std::invalid_argument("hook_partitions needs n >= 1");
  std::vector<std::pair<Partition, int>> out;
  for (unsigned k = n; k >= 1; --k) {
    std::vector<unsigned> parts{k};
    parts.insert(parts.end(), n - k, 1u);
    int sign = ((n - k) % 2 == 0) ? +1 : -1;
    out.emplace_back(Partition(std::move(parts)), sign);
  }
  return out;
}

}  // namespace sg

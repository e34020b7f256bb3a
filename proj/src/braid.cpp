#include "braid.hpp"

#include <numeric>

namespace ptk::braid {

bool StrandPermutation::is_identity() const {
  for (int p = 1; p <= size; ++p)
    if (image[static_cast<size_t>(p) - 1] != p) return false;
  return true;
}

BraidWord expand_group_letter(int t, int n) {
  if (n < 2) throw std::invalid_argument("expand_group_letter: need n >= 2");
  if (t < 1 || t > n - 1)
    throw std::invalid_argument("expand_group_letter: group index " + std::to_string(t) +
                                " out of range for n=" + std::to_string(n));
  BraidWord w;
  w.strand_count = 3 * n;
  const int k = 3 * t;
  for (int idx : {k, k - 1, k + 1, k - 2, k, k + 2, k - 1, k + 1, k})
    w.letters.push_back({idx, +1});
  return w;
}

BraidWord expand(const GroupBlockWord& w) {
  BraidWord out;
  out.strand_count = 3 * w.group_count;
  for (int t : w.letters) {
    BraidWord piece = expand_group_letter(t, w.group_count);
    out.letters.insert(out.letters.end(), piece.letters.begin(), piece.letters.end());
  }
  return out;
}

GroupBlockWord half_twist_sequence(int n) {
  if (n < 2) throw std::invalid_argument("half_twist_sequence: need n >= 2");
  GroupBlockWord w;
  w.group_count = n;
  for (int top = n - 1; top >= 1; --top)
    for (int t = 1; t <= top; ++t) w.letters.push_back(t);
  return w;
}

StrandPermutation identity_permutation(int size) {
  StrandPermutation p;
  p.size = size;
  p.image.resize(static_cast<size_t>(size));
  std::iota(p.image.begin(), p.image.end(), 1);
  return p;
}

namespace {

// Simulates the geometric braid top to bottom: content[pos] is the strand
// currently at that position.
StrandPermutation simulate(int size, const std::vector<int>& swap_positions) {
  std::vector<int> content(static_cast<size_t>(size));
  std::iota(content.begin(), content.end(), 1);
  for (int k : swap_positions) std::swap(content[static_cast<size_t>(k) - 1], content[static_cast<size_t>(k)]);
  StrandPermutation p;
  p.size = size;
  p.image.resize(static_cast<size_t>(size));
  for (int pos = 1; pos <= size; ++pos) p.image[static_cast<size_t>(content[static_cast<size_t>(pos) - 1]) - 1] = pos;
  return p;
}

}  // namespace

StrandPermutation induced_strand_permutation(const BraidWord& w) {
  std::vector<int> swaps;
  swaps.reserve(w.letters.size());
  for (const auto& l : w.letters) {
    if (l.index < 1 || l.index >= w.strand_count)
      throw std::invalid_argument("braid letter index out of range");
    swaps.push_back(l.index);
  }
  return simulate(w.strand_count, swaps);
}

StrandPermutation induced_group_permutation(const GroupBlockWord& w) {
  for (int t : w.letters)
    if (t < 1 || t >= w.group_count) throw std::invalid_argument("group letter out of range");
  return simulate(w.group_count, w.letters);
}

}  // namespace ptk::braid

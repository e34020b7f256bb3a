#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptk::braid {

// A word in the Artin generators of the braid group on `strand_count`
// strands.  Words are kept unreduced; no free cancellation is performed.
struct BraidLetter {
  int index = 1;  // generator index in [1, strand_count-1]
  int sign = +1;  // +1 or -1
};

struct BraidWord {
  int strand_count = 1;
  std::vector<BraidLetter> letters;
};

// A word in the block generators that cross group j in front of group j+1.
// Each letter is a group index t in [1, group_count-1].
struct GroupBlockWord {
  int group_count = 1;
  std::vector<int> letters;
};

// image[p-1] is the bottom position reached by the strand entering at top
// position p.  Always a bijection on [1, size].
struct StrandPermutation {
  int size = 0;
  std::vector<int> image;

  bool is_identity() const;
  int operator()(int p) const { return image.at(static_cast<size_t>(p) - 1); }
};

// The nine-letter block generator on 3n strands that crosses group t in
// front of group t+1.  All letters are positive; the front strand is the
// over strand in the y-projection.
BraidWord expand_group_letter(int t, int n);

// Concatenation of expand_group_letter over the letters of w.
BraidWord expand(const GroupBlockWord& w);

// The sequence (1,...,n-1),(1,...,n-2),...,(1,2),(1); its induced group
// permutation is the order reversal (a half twist at the block level).
// Length is (n^2 - n) / 2.
GroupBlockWord half_twist_sequence(int n);

StrandPermutation identity_permutation(int size);
StrandPermutation induced_strand_permutation(const BraidWord& w);
StrandPermutation induced_group_permutation(const GroupBlockWord& w);

inline int half_twist_length(int n) { return (n * n - n) / 2; }

}  // namespace ptk::braid

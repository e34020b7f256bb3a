#include <doctest.h>

#include "braid.hpp"

using namespace ptk::braid;

namespace {

// brute-force oracle: compose adjacent transpositions one at a time
std::vector<int> compose_transpositions(int size, const std::vector<int>& swaps) {
  std::vector<int> content(static_cast<size_t>(size));
  for (int q = 1; q <= size; ++q) content[static_cast<size_t>(q) - 1] = q;
  for (int k : swaps) std::swap(content[static_cast<size_t>(k) - 1], content[static_cast<size_t>(k)]);
  std::vector<int> image(static_cast<size_t>(size));
  for (int pos = 1; pos <= size; ++pos)
    image[static_cast<size_t>(content[static_cast<size_t>(pos) - 1]) - 1] = pos;
  return image;
}

}  // namespace

TEST_CASE("block generator expands to the nine stated letters") {
  const auto w = expand_group_letter(1, 2);
  CHECK(w.strand_count == 6);
  REQUIRE(w.letters.size() == 9);
  const std::vector<int> expected{3, 2, 4, 1, 3, 5, 2, 4, 3};
  for (size_t k = 0; k < 9; ++k) {
    CHECK(w.letters[k].index == expected[k]);
    CHECK(w.letters[k].sign == +1);
  }
}

TEST_CASE("block generator index checks") {
  CHECK_THROWS_AS(expand_group_letter(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(expand_group_letter(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(expand_group_letter(1, 1), std::invalid_argument);
  for (int n = 2; n <= 12; ++n)
    for (int t = 1; t < n; ++t) CHECK(expand_group_letter(t, n).letters.size() == 9);
}

TEST_CASE("block generator swaps whole groups preserving internal order") {
  const auto w = expand_group_letter(1, 2);
  const auto p = induced_strand_permutation(w);
  // frozen from the brute-force composition of the nine transpositions
  const std::vector<int> expected{4, 5, 6, 1, 2, 3};
  CHECK(p.image == expected);
  std::vector<int> swaps;
  for (const auto& l : w.letters) swaps.push_back(l.index);
  CHECK(p.image == compose_transpositions(6, swaps));
}

TEST_CASE("half twist sequence layout and length") {
  CHECK(half_twist_sequence(2).letters == std::vector<int>{1});
  CHECK(half_twist_sequence(3).letters == std::vector<int>{1, 2, 1});
  CHECK(half_twist_sequence(4).letters == std::vector<int>{1, 2, 3, 1, 2, 1});
  CHECK(half_twist_sequence(4).letters.size() == 6);
  CHECK_THROWS_AS(half_twist_sequence(1), std::invalid_argument);
  for (int n = 2; n <= 12; ++n)
    CHECK(static_cast<int>(half_twist_sequence(n).letters.size()) == (n * n - n) / 2);
}

TEST_CASE("strand permutation basics") {
  BraidWord empty;
  empty.strand_count = 5;
  CHECK(induced_strand_permutation(empty).is_identity());

  BraidWord swap;
  swap.strand_count = 2;
  swap.letters = {{1, +1}};
  CHECK(induced_strand_permutation(swap).image == std::vector<int>{2, 1});
}

TEST_CASE("expanded half twist reverses the groups blockwise") {
  const auto w = half_twist_sequence(3);
  const auto p = induced_strand_permutation(expand(w));
  REQUIRE(p.size == 9);
  for (int g = 1; g <= 3; ++g) {
    const int h = 4 - g;
    for (int r = 0; r < 3; ++r) CHECK(p(3 * g - 2 + r) == 3 * h - 2 + r);
  }
}

TEST_CASE("group permutation of the half twist is the reversal") {
  GroupBlockWord empty;
  empty.group_count = 4;
  CHECK(induced_group_permutation(empty).is_identity());

  GroupBlockWord single;
  single.group_count = 3;
  single.letters = {1};
  CHECK(induced_group_permutation(single).image == std::vector<int>{2, 1, 3});

  for (int n = 2; n <= 12; ++n) {
    const auto p = induced_group_permutation(half_twist_sequence(n));
    for (int j = 1; j <= n; ++j) CHECK(p(j) == n + 1 - j);
  }
}

TEST_CASE("expansion respects the group permutation blockwise") {
  for (int n = 2; n <= 7; ++n) {
    const auto w = half_twist_sequence(n);
    CHECK(expand(w).letters.size() == 9u * static_cast<size_t>((n * n - n) / 2));
    const auto group_perm = induced_group_permutation(w);
    const auto strand_perm = induced_strand_permutation(expand(w));
    for (int g = 1; g <= n; ++g)
      for (int r = 0; r < 3; ++r)
        CHECK(strand_perm(3 * g - 2 + r) == 3 * group_perm(g) - 2 + r);
  }
}

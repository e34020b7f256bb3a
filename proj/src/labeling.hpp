#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ptk::label {

// ---------------------------------------------------------------------------
// Knot-space labelings: one eventually periodic bit sequence per boundary
// plane.  Two labelings produce homeomorphic attachments only when every
// slot agrees from some index on, so any slot with infinite disagreement is
// an obstruction.
// ---------------------------------------------------------------------------

struct BitSequence {
  std::vector<uint8_t> prefix;
  std::vector<uint8_t> period;  // non-empty

  // the bit at position n >= 1
  uint8_t at(long long n) const;
};

struct BinaryLabeling {
  int ends = 1;                     // mu
  std::vector<int> planes_per_end;  // nu_i
  std::vector<BitSequence> slots;   // flattened over (end, plane)

  int slot_index(int end, int plane) const;  // 1-based arguments
  bool same_shape(const BinaryLabeling& other) const;
};

void validate_labeling(const BinaryLabeling& l);

struct AgreementResult {
  bool agrees = false;
  long long agrees_from = 0;           // least index from which the slots agree
  std::vector<int> witness_residues;   // 0-based offsets in the common period window
};

// Decides eventual agreement over the prefix together with one least-common-
// multiple window of the two periods.
AgreementResult eventual_agreement(const BitSequence& a, const BitSequence& b);
AgreementResult eventual_agreement(const BinaryLabeling& a, const BinaryLabeling& b, int end,
                                   int plane);

struct ObstructionReport {
  bool obstructed = false;
  // slots (end, plane) with infinite disagreement, each certifying that the
  // two attachments are not homeomorphic
  std::vector<std::pair<int, int>> obstructions;
};

ObstructionReport homeomorphism_obstruction(const BinaryLabeling& a, const BinaryLabeling& b);

// ---------------------------------------------------------------------------
// The twist-knot catalog: a fixed bijection between label tuples (i, j, n, p)
// and twist-knot parameters.  The parameter counts the half twists; values 1
// (the trefoil) and 2 (the figure eight) are never assigned.
// ---------------------------------------------------------------------------

struct TwistKnotCatalog {
  int ends = 1;
  std::vector<int> planes_per_end;
};

long long catalog_assign(const TwistKnotCatalog& cat, int end, int plane, int level, int bit);

// r labelings over a single plane, pairwise obstructed: the k-th period has
// one set bit in k+2, so distinct members disagree with positive density.
// The seed only randomizes the finite prefixes.
std::vector<BinaryLabeling> generate_family(int r, uint64_t seed);

}  // namespace ptk::label

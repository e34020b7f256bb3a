#include "labeling.hpp"

#include <numeric>
#include <random>
#include <stdexcept>

namespace ptk::label {

uint8_t BitSequence::at(long long n) const {
  if (n < 1) throw std::invalid_argument("bit sequences are indexed from 1");
  const long long p = static_cast<long long>(prefix.size());
  if (n <= p) return prefix[static_cast<size_t>(n - 1)];
  return period[static_cast<size_t>((n - p - 1) % static_cast<long long>(period.size()))];
}

int BinaryLabeling::slot_index(int end, int plane) const {
  if (end < 1 || end > ends) throw std::invalid_argument("end index out of range");
  if (plane < 1 || plane > planes_per_end[static_cast<size_t>(end) - 1])
    throw std::invalid_argument("plane index out of range");
  int base = 0;
  for (int i = 0; i < end - 1; ++i) base += planes_per_end[static_cast<size_t>(i)];
  return base + plane - 1;
}

bool BinaryLabeling::same_shape(const BinaryLabeling& other) const {
  return ends == other.ends && planes_per_end == other.planes_per_end;
}

void validate_labeling(const BinaryLabeling& l) {
  if (l.ends < 1) throw std::invalid_argument("labeling needs at least one end");
  if (static_cast<int>(l.planes_per_end.size()) != l.ends)
    throw std::invalid_argument("labeling shape mismatch");
  int total = 0;
  for (int nu : l.planes_per_end) {
    if (nu < 1) throw std::invalid_argument("every end needs at least one plane");
    total += nu;
  }
  if (static_cast<int>(l.slots.size()) != total)
    throw std::invalid_argument("labeling slot count mismatch");
  for (const auto& seq : l.slots) {
    if (seq.period.empty()) throw std::invalid_argument("label period must be non-empty");
    for (const auto& bits : {seq.prefix, seq.period})
      for (uint8_t b : bits)
        if (b > 1) throw std::invalid_argument("labels are bit sequences");
  }
}

AgreementResult eventual_agreement(const BitSequence& a, const BitSequence& b) {
  if (a.period.empty() || b.period.empty())
    throw std::invalid_argument("label period must be non-empty");
  const long long shift =
      static_cast<long long>(std::max(a.prefix.size(), b.prefix.size()));
  const long long window = std::lcm(static_cast<long long>(a.period.size()),
                                    static_cast<long long>(b.period.size()));
  AgreementResult res;
  for (long long r = 0; r < window; ++r)
    if (a.at(shift + 1 + r) != b.at(shift + 1 + r))
      res.witness_residues.push_back(static_cast<int>(r));
  if (!res.witness_residues.empty()) {
    res.agrees = false;
    return res;
  }
  res.agrees = true;
  res.agrees_from = 1;
  for (long long n = shift; n >= 1; --n)
    if (a.at(n) != b.at(n)) {
      res.agrees_from = n + 1;
      break;
    }
  return res;
}

AgreementResult eventual_agreement(const BinaryLabeling& a, const BinaryLabeling& b, int end,
                                   int plane) {
  validate_labeling(a);
  validate_labeling(b);
  if (!a.same_shape(b)) throw std::invalid_argument("labeling shapes differ");
  const int idx = a.slot_index(end, plane);
  return eventual_agreement(a.slots[static_cast<size_t>(idx)],
                            b.slots[static_cast<size_t>(idx)]);
}

ObstructionReport homeomorphism_obstruction(const BinaryLabeling& a, const BinaryLabeling& b) {
  validate_labeling(a);
  validate_labeling(b);
  if (!a.same_shape(b)) throw std::invalid_argument("labeling shapes differ");
  ObstructionReport report;
  for (int end = 1; end <= a.ends; ++end)
    for (int plane = 1; plane <= a.planes_per_end[static_cast<size_t>(end) - 1]; ++plane) {
      const int idx = a.slot_index(end, plane);
      if (!eventual_agreement(a.slots[static_cast<size_t>(idx)],
                              b.slots[static_cast<size_t>(idx)])
               .agrees)
        report.obstructions.push_back({end, plane});
    }
  report.obstructed = !report.obstructions.empty();
  return report;
}

long long catalog_assign(const TwistKnotCatalog& cat, int end, int plane, int level, int bit) {
  if (cat.ends < 1 || static_cast<int>(cat.planes_per_end.size()) != cat.ends)
    throw std::invalid_argument("catalog shape mismatch");
  if (end < 1 || end > cat.ends) throw std::invalid_argument("end index out of range");
  if (plane < 1 || plane > cat.planes_per_end[static_cast<size_t>(end) - 1])
    throw std::invalid_argument("plane index out of range");
  if (level < 1) throw std::invalid_argument("level index starts at 1");
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  long long flat = 0;
  for (int i = 0; i < end - 1; ++i) flat += cat.planes_per_end[static_cast<size_t>(i)];
  flat += plane - 1;
  long long total = 0;
  for (int nu : cat.planes_per_end) total += nu;
  const long long rank = bit + 2 * (flat + total * static_cast<long long>(level - 1));
  return rank + 3;  // parameters 1 (trefoil) and 2 (figure eight) are skipped
}

std::vector<BinaryLabeling> generate_family(int r, uint64_t seed) {
  if (r < 2) throw std::invalid_argument("generate_family: need at least two members");
  std::mt19937_64 rng(seed);
  std::vector<BinaryLabeling> family;
  family.reserve(static_cast<size_t>(r));
  for (int k = 0; k < r; ++k) {
    BinaryLabeling l;
    l.ends = 1;
    l.planes_per_end = {1};
    BitSequence seq;
    const auto prefix_len = static_cast<size_t>(rng() % 9);
    for (size_t i = 0; i < prefix_len; ++i) seq.prefix.push_back(static_cast<uint8_t>(rng() & 1));
    seq.period.assign(static_cast<size_t>(k) + 2, 0);
    seq.period.front() = 1;  // ones at density 1/(k+2): distinct members disagree forever
    l.slots.push_back(std::move(seq));
    family.push_back(std::move(l));
  }
  return family;
}

}  // namespace ptk::label

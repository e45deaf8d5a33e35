#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qcon/errors.hpp"

namespace qcon {

// Integer partitions n = (n_1 >= n_2 >= ... >= n_K > 0) and row tabloids
// (words recording which block each of the N positions belongs to).  These
// index the permutation modules the rest of the library decomposes spectra
// over.

class Partition {
 public:
  explicit Partition(std::vector<int> parts);

  int n() const { return n_; }                 // sum of parts
  int num_parts() const { return static_cast<int>(parts_.size()); }
  int part(int i) const { return parts_[i]; }  // 0-based
  const std::vector<int>& parts() const { return parts_; }

  Partition conjugate() const;

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return !(*this == o); }

  std::string to_string() const;  // e.g. "(3,1)"

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

enum class Dominance { dominates, dominated, equal, incomparable };

// All partitions of N in reverse-lexicographic order, (N) first and
// (1,...,1) last.  max_parts == 0 means no bound on the number of parts.
std::vector<Partition> enumerate_partitions(int N, int max_parts = 0);

// Dominance order via prefix sums.  Both arguments must partition the same N.
Dominance compare_dominance(const Partition& a, const Partition& b);

// Covering pairs (a, b) of the dominance order with a covering b, i.e. a
// strictly dominates b with nothing in between.  Pairs are ordered by the
// enumeration order of their first, then second element.
std::vector<std::pair<Partition, Partition>> hasse_covers(int N);

// A tabloid is a word w_1..w_N over {1..K} where w_i = v means position i
// lies in block v; block v has size parts[v-1].
struct Tabloid {
  std::vector<int> word;

  bool operator==(const Tabloid& o) const { return word == o.word; }
  std::string to_string() const;  // digit string, valid for K <= 9
};

// All tabloids of shape p in lexicographic order of their words.
std::vector<Tabloid> enumerate_tabloids(const Partition& p);

// Number of tabloids of shape p (the multinomial coefficient).
std::int64_t tabloid_count(const Partition& p);

// Rank of a tabloid within the lexicographic enumeration, computed by
// mixed-radix counting without materialising the list.
class TabloidIndexer {
 public:
  explicit TabloidIndexer(const Partition& p);
  std::int64_t rank(const Tabloid& t) const;
  std::int64_t count() const { return count_; }

 private:
  int N_;
  int K_;
  std::vector<int> block_sizes_;
  std::int64_t count_;
};

// Swap the entries at (1-based) positions j and k.
Tabloid transpose_tabloid(const Tabloid& t, int j, int k);

// Dimension of the irreducible module labelled by p (hook length formula).
std::int64_t specht_dimension(const Partition& p);

}  // namespace qcon

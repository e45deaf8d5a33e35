#include "qcon/partitions.hpp"

#include <algorithm>
#include <numeric>

namespace qcon {

namespace {

constexpr int kMaxN = 20;  // 20! still fits in int64

void check_positions(int N, int j, int k) {
  if (j < 1 || k < 1 || j > N || k > N || j == k)
    throw invalid_argument("transpose_tabloid: positions must be distinct and in [1,N]");
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw invalid_argument("Partition: needs at least one part");
  int prev = parts_.front();
  for (int p : parts_) {
    if (p < 1) throw invalid_argument("Partition: parts must be positive");
    if (p > prev) throw invalid_argument("Partition: parts must be weakly decreasing");
    prev = p;
    n_ += p;
  }
  if (n_ > kMaxN) throw resource_error("Partition: N too large");
}

Partition Partition::conjugate() const {
  std::vector<int> c;
  for (int col = 1; col <= parts_.front(); ++col) {
    int cnt = 0;
    for (int p : parts_)
      if (p >= col) ++cnt;
    c.push_back(cnt);
  }
  return Partition(std::move(c));
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

std::vector<Partition> enumerate_partitions(int N, int max_parts) {
  if (N < 1 || N > kMaxN) throw invalid_argument("enumerate_partitions: N out of range");
  if (max_parts < 0) throw invalid_argument("enumerate_partitions: max_parts must be >= 0");
  int cap = (max_parts == 0) ? N : std::min(max_parts, N);

  std::vector<Partition> out;
  std::vector<int> cur;
  // Descend with parts bounded above by the previous part; emitting the
  // largest feasible first part first yields reverse-lexicographic order.
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == cap) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      // Prune: the rest must fit in the remaining slots.
      int slots = cap - static_cast<int>(cur.size()) - 1;
      if (static_cast<std::int64_t>(p) * slots < remaining - p) continue;
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, N, N);
  return out;
}

Dominance compare_dominance(const Partition& a, const Partition& b) {
  if (a.n() != b.n())
    throw invalid_argument("compare_dominance: partitions of different integers");
  bool a_ge = true, b_ge = true;
  int sa = 0, sb = 0;
  int K = std::max(a.num_parts(), b.num_parts());
  for (int i = 0; i < K; ++i) {
    sa += i < a.num_parts() ? a.part(i) : 0;
    sb += i < b.num_parts() ? b.part(i) : 0;
    if (sa < sb) a_ge = false;
    if (sb < sa) b_ge = false;
  }
  if (a_ge && b_ge) return Dominance::equal;
  if (a_ge) return Dominance::dominates;
  if (b_ge) return Dominance::dominated;
  return Dominance::incomparable;
}

std::vector<std::pair<Partition, Partition>> hasse_covers(int N) {
  auto all = enumerate_partitions(N);
  std::vector<std::pair<Partition, Partition>> covers;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (i == j) continue;
      if (compare_dominance(all[i], all[j]) != Dominance::dominates) continue;
      bool strictly_between = false;
      for (std::size_t k = 0; k < all.size() && !strictly_between; ++k) {
        if (k == i || k == j) continue;
        strictly_between = compare_dominance(all[i], all[k]) == Dominance::dominates &&
                           compare_dominance(all[k], all[j]) == Dominance::dominates;
      }
      if (!strictly_between) covers.emplace_back(all[i], all[j]);
    }
  }
  return covers;
}

std::string Tabloid::to_string() const {
  std::string s;
  for (int v : word) {
    if (v > 9) throw invalid_argument("Tabloid::to_string: needs K <= 9");
    s += static_cast<char>('0' + v);
  }
  return s;
}

std::int64_t tabloid_count(const Partition& p) {
  // multinomial(N; parts), kept exact in 64 bits via incremental binomials
  std::int64_t count = 1;
  int placed = 0;
  for (int i = 0; i < p.num_parts(); ++i) {
    for (int k = 1; k <= p.part(i); ++k) {
      count = count * (placed + k) / k;  // binomial build-up, exact at each step
    }
    placed += p.part(i);
  }
  return count;
}

std::vector<Tabloid> enumerate_tabloids(const Partition& p) {
  std::vector<Tabloid> out;
  std::vector<int> remaining(p.num_parts());
  for (int i = 0; i < p.num_parts(); ++i) remaining[i] = p.part(i);
  std::vector<int> word;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == p.n()) {
      out.push_back(Tabloid{word});
      return;
    }
    for (int v = 1; v <= p.num_parts(); ++v) {
      if (remaining[v - 1] == 0) continue;
      --remaining[v - 1];
      word.push_back(v);
      self(self, pos + 1);
      word.pop_back();
      ++remaining[v - 1];
    }
  };
  rec(rec, 0);
  return out;
}

TabloidIndexer::TabloidIndexer(const Partition& p)
    : N_(p.n()), K_(p.num_parts()), block_sizes_(p.parts()), count_(tabloid_count(p)) {}

std::int64_t TabloidIndexer::rank(const Tabloid& t) const {
  if (static_cast<int>(t.word.size()) != N_)
    throw invalid_argument("TabloidIndexer::rank: word length mismatch");
  int cnt[kMaxN];
  for (int v = 0; v < K_; ++v) cnt[v] = block_sizes_[v];

  // Walk the word once, counting lexicographically smaller completions with
  // a running multinomial:  M = #arrangements of the remaining multiset.
  std::int64_t r = 0;
  std::int64_t M = count_;
  int rem = N_;
  for (int pos = 0; pos < N_; ++pos) {
    int v = t.word[pos];
    if (v < 1 || v > K_ || cnt[v - 1] == 0)
      throw invalid_argument("TabloidIndexer::rank: word is not of this shape");
    for (int s = 1; s < v; ++s) {
      if (cnt[s - 1] == 0) continue;
      r += static_cast<std::int64_t>(static_cast<__int128>(M) * cnt[s - 1] / rem);
    }
    M = static_cast<std::int64_t>(static_cast<__int128>(M) * cnt[v - 1] / rem);
    --cnt[v - 1];
    --rem;
  }
  return r;
}

Tabloid transpose_tabloid(const Tabloid& t, int j, int k) {
  check_positions(static_cast<int>(t.word.size()), j, k);
  Tabloid o = t;
  std::swap(o.word[j - 1], o.word[k - 1]);
  return o;
}

std::int64_t specht_dimension(const Partition& p) {
  // N! / prod(hooks); both fit in __int128 for N <= 20
  auto conj = p.conjugate();
  __int128 hooks = 1;
  for (int i = 0; i < p.num_parts(); ++i)
    for (int j = 0; j < p.part(i); ++j)
      hooks *= (p.part(i) - j) + (conj.part(j) - i) - 1;
  __int128 fact = 1;
  for (int i = 2; i <= p.n(); ++i) fact *= i;
  return static_cast<std::int64_t>(fact / hooks);
}

}  // namespace qcon

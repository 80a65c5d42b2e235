#pragma once

// Mixed-radix arithmetic on the depth-N truncation of a bounded Vilenkin group.
//
// A point x = (x_0, x_1, ...) with x_j in Z_{m_j} is enumerated by its
// mixed-radix index sum_j x_j M_j, x_0 least significant. The same digit map
// sends a frequency n to (n_0, n_1, ...), so group index and Paley-order
// frequency index share one layout.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vilenkin {

using Index = std::int64_t;

/// Upper bound m_sup on every generator; the group is bounded.
inline constexpr int kMaxGenerator = 64;

/// The generator sequence m_0..m_{depth-1} and products M_0..M_depth.
/// Immutable and cheap to copy (shared storage).
class Base {
 public:
  static Base make(std::span<const int> generators, int depth);

  int depth() const noexcept { return static_cast<int>(data_->generators.size()); }
  int generator(int k) const { return data_->generators.at(static_cast<std::size_t>(k)); }
  Index product(int k) const { return data_->products.at(static_cast<std::size_t>(k)); }
  std::span<const int> generators() const noexcept { return data_->generators; }
  std::span<const Index> products() const noexcept { return data_->products; }
  int max_generator() const noexcept { return data_->max_generator; }

  /// Canonical "m0,m1,...[xR]" string; parse_base(spec()) reproduces this base.
  std::string spec() const;

  friend bool operator==(const Base& a, const Base& b) noexcept {
    return a.data_ == b.data_ || a.data_->generators == b.data_->generators;
  }

 private:
  struct Data {
    std::vector<int> generators;
    std::vector<Index> products;
    int max_generator = 0;
  };
  explicit Base(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

Base make_base(std::span<const int> generators, int depth);
inline Base make_base(std::initializer_list<int> generators, int depth) {
  return make_base(std::span<const int>(generators.begin(), generators.size()), depth);
}

/// Parses "m0,m1,...[xR]", where "xR" repeats the listed block R times.
/// depth defaults to the full expanded length; a smaller depth truncates.
Base parse_base(std::string_view spec, int depth = 0);

/// Unique expansion n = sum_j n_j M_j. digits is trimmed after the top nonzero
/// digit; for n = 0 it is empty and `zero` is set (order is then 0 and unused).
struct DigitExpansion {
  std::vector<int> digits;
  int order = 0;
  bool zero = true;

  int digit(int j) const {
    return j < static_cast<int>(digits.size()) ? digits[static_cast<std::size_t>(j)] : 0;
  }
  /// Membership in N_{n_0}: positive integers whose lowest digit equals 1.
  bool in_N_n0() const noexcept { return !zero && digits.front() == 1; }
};

DigitExpansion digits_of(Index n, const Base& base);
Index index_of(const DigitExpansion& d, const Base& base);

/// A point of the depth-N truncated group (equivalently an I_N-cylinder).
struct GroupPoint {
  Base base;
  int depth = 0;
  std::vector<int> digits;

  int digit(int j) const { return digits.at(static_cast<std::size_t>(j)); }
};

GroupPoint point_of(Index index, const Base& base, int depth);
Index index_of(const GroupPoint& x);
GroupPoint zero_point(const Base& base, int depth);
/// e_n: the point with x_n = 1 and every other digit 0.
GroupPoint unit_point(const Base& base, int depth, int n);

GroupPoint point_sub(const GroupPoint& x, const GroupPoint& t);
GroupPoint point_add(const GroupPoint& x, const GroupPoint& t);
GroupPoint point_neg(const GroupPoint& x);

/// x in I_n(center): the first n digits agree.
bool in_cell(const GroupPoint& x, int n, const GroupPoint& center);

/// s such that x lies in I_s \ I_{s+1}; returns the point depth when x is the
/// zero cylinder (x in I_N).
int shell_of(const GroupPoint& x);

// Index-level forms of the same operations, for inner loops.
Index index_sub(const Base& base, int depth, Index x, Index t);
Index index_add(const Base& base, int depth, Index x, Index t);
int shell_of_index(const Base& base, int depth, Index x);

/// Number of n in [lo, hi] with n_0 = 1 (members of N_{n_0}).
Index count_N_n0(const Base& base, Index lo, Index hi);

/// Cardinality of the shell I_s \ I_{s+1} at depth N: M_N/M_s - M_N/M_{s+1}.
Index shell_size(const Base& base, int depth, int s);

/// Throws unless 0 <= depth <= base.depth().
void check_depth(const Base& base, int depth);

}  // namespace vilenkin

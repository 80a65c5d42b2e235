#include "vilenkin/group.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "vilenkin/error.hpp"

namespace vilenkin {

Base Base::make(std::span<const int> generators, int depth) {
  require(depth >= 1, ErrorCode::zero_depth, "depth must be at least 1");
  require(static_cast<std::size_t>(depth) <= generators.size(), ErrorCode::depth_exceeded,
          "depth " + std::to_string(depth) + " exceeds the " + std::to_string(generators.size()) +
              " listed generators");
  auto data = std::make_shared<Data>();
  data->generators.assign(generators.begin(), generators.begin() + depth);
  data->products.reserve(static_cast<std::size_t>(depth) + 1);
  data->products.push_back(1);
  for (int k = 0; k < depth; ++k) {
    const int m = data->generators[static_cast<std::size_t>(k)];
    require(m >= 2, ErrorCode::generator_too_small,
            "generator m_" + std::to_string(k) + " = " + std::to_string(m) + " is below 2");
    require(m <= kMaxGenerator, ErrorCode::generator_too_large,
            "generator m_" + std::to_string(k) + " = " + std::to_string(m) + " exceeds " +
                std::to_string(kMaxGenerator));
    const Index previous = data->products.back();
    require(previous <= std::numeric_limits<Index>::max() / m, ErrorCode::product_overflow,
            "M_" + std::to_string(k + 1) + " overflows 64-bit integers");
    data->products.push_back(previous * m);
    data->max_generator = std::max(data->max_generator, m);
  }
  return Base(std::move(data));
}

Base make_base(std::span<const int> generators, int depth) { return Base::make(generators, depth); }

std::string Base::spec() const {
  const auto& g = data_->generators;
  const std::size_t n = g.size();
  std::size_t block = n;
  for (std::size_t len = 1; len <= n / 2; ++len) {
    if (n % len != 0) continue;
    bool periodic = true;
    for (std::size_t i = len; i < n && periodic; ++i) periodic = g[i] == g[i - len];
    if (periodic) {
      block = len;
      break;
    }
  }
  std::string out;
  for (std::size_t i = 0; i < block; ++i) {
    if (i) out += ',';
    out += std::to_string(g[i]);
  }
  if (block != n) out += "x" + std::to_string(n / block);
  return out;
}

namespace {

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  require(ec == std::errc() && ptr == end && !text.empty(), ErrorCode::parse_error,
          "bad integer '" + std::string(text) + "' in base spec '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Base parse_base(std::string_view spec, int depth) {
  std::string_view list = spec;
  int repeat = 1;
  if (const auto x = spec.find('x'); x != std::string_view::npos) {
    list = spec.substr(0, x);
    repeat = parse_int(spec.substr(x + 1), spec);
    require(repeat >= 1, ErrorCode::parse_error, "repeat count must be positive in '" + std::string(spec) + "'");
  }
  std::vector<int> block;
  require(!list.empty(), ErrorCode::parse_error, "empty base spec");
  for (;;) {
    const auto comma = list.find(',');
    block.push_back(parse_int(list.substr(0, comma), spec));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  std::vector<int> generators;
  for (int r = 0; r < repeat; ++r) generators.insert(generators.end(), block.begin(), block.end());
  if (depth == 0) depth = static_cast<int>(generators.size());
  return Base::make(generators, depth);
}

DigitExpansion digits_of(Index n, const Base& base) {
  require(n >= 0 && n < base.product(base.depth()), ErrorCode::index_out_of_range,
          "n = " + std::to_string(n) + " outside [0, M_" + std::to_string(base.depth()) + ")");
  DigitExpansion d;
  if (n == 0) return d;
  d.zero = false;
  for (int j = 0; n > 0; ++j) {
    const int m = base.generator(j);
    d.digits.push_back(static_cast<int>(n % m));
    n /= m;
  }
  while (d.digits.back() == 0) d.digits.pop_back();
  d.order = static_cast<int>(d.digits.size()) - 1;
  return d;
}

Index index_of(const DigitExpansion& d, const Base& base) {
  Index n = 0;
  for (std::size_t j = 0; j < d.digits.size(); ++j) n += d.digits[j] * base.product(static_cast<int>(j));
  return n;
}

void check_depth(const Base& base, int depth) {
  require(depth >= 0 && depth <= base.depth(), ErrorCode::depth_exceeded,
          "depth " + std::to_string(depth) + " outside [0, " + std::to_string(base.depth()) + "]");
}

GroupPoint point_of(Index index, const Base& base, int depth) {
  check_depth(base, depth);
  require(index >= 0 && index < base.product(depth), ErrorCode::index_out_of_range,
          "point index " + std::to_string(index) + " outside [0, M_" + std::to_string(depth) + ")");
  GroupPoint x{base, depth, std::vector<int>(static_cast<std::size_t>(depth))};
  for (int j = 0; j < depth; ++j) {
    x.digits[static_cast<std::size_t>(j)] = static_cast<int>(index % base.generator(j));
    index /= base.generator(j);
  }
  return x;
}

Index index_of(const GroupPoint& x) {
  Index i = 0;
  for (int j = x.depth - 1; j >= 0; --j) i = i * x.base.generator(j) + x.digit(j);
  return i;
}

GroupPoint zero_point(const Base& base, int depth) {
  check_depth(base, depth);
  return GroupPoint{base, depth, std::vector<int>(static_cast<std::size_t>(depth), 0)};
}

GroupPoint unit_point(const Base& base, int depth, int n) {
  GroupPoint e = zero_point(base, depth);
  require(n >= 0 && n < depth, ErrorCode::index_out_of_range, "unit point e_" + std::to_string(n));
  e.digits[static_cast<std::size_t>(n)] = 1;
  return e;
}

namespace {

void check_compatible(const GroupPoint& x, const GroupPoint& t) {
  require(x.base == t.base && x.depth == t.depth, ErrorCode::base_mismatch,
          "points live on different truncated groups");
}

}  // namespace

GroupPoint point_sub(const GroupPoint& x, const GroupPoint& t) {
  check_compatible(x, t);
  GroupPoint r = x;
  for (int j = 0; j < x.depth; ++j) {
    const int m = x.base.generator(j);
    r.digits[static_cast<std::size_t>(j)] = (x.digit(j) - t.digit(j) + m) % m;
  }
  return r;
}

GroupPoint point_add(const GroupPoint& x, const GroupPoint& t) {
  check_compatible(x, t);
  GroupPoint r = x;
  for (int j = 0; j < x.depth; ++j)
    r.digits[static_cast<std::size_t>(j)] = (x.digit(j) + t.digit(j)) % x.base.generator(j);
  return r;
}

GroupPoint point_neg(const GroupPoint& x) { return point_sub(zero_point(x.base, x.depth), x); }

bool in_cell(const GroupPoint& x, int n, const GroupPoint& center) {
  require(n >= 0 && n <= x.depth && n <= center.depth, ErrorCode::depth_exceeded,
          "cell depth " + std::to_string(n) + " exceeds point depth " + std::to_string(x.depth));
  for (int j = 0; j < n; ++j)
    if (x.digit(j) != center.digit(j)) return false;
  return true;
}

int shell_of(const GroupPoint& x) {
  for (int j = 0; j < x.depth; ++j)
    if (x.digit(j) != 0) return j;
  return x.depth;
}

Index index_sub(const Base& base, int depth, Index x, Index t) {
  Index r = 0;
  for (int j = 0; j < depth; ++j) {
    const int m = base.generator(j);
    const Index xd = x % m, td = t % m;
    r += ((xd - td + m) % m) * base.product(j);
    x /= m;
    t /= m;
  }
  return r;
}

Index index_add(const Base& base, int depth, Index x, Index t) {
  Index r = 0;
  for (int j = 0; j < depth; ++j) {
    const int m = base.generator(j);
    r += ((x % m + t % m) % m) * base.product(j);
    x /= m;
    t /= m;
  }
  return r;
}

int shell_of_index(const Base& base, int depth, Index x) {
  for (int j = 0; j < depth; ++j) {
    if (x % base.generator(j) != 0) return j;
    x /= base.generator(j);
  }
  return depth;
}

Index count_N_n0(const Base& base, Index lo, Index hi) {
  const Index m0 = base.generator(0);
  lo = std::max<Index>(lo, 1);
  if (hi < lo) return 0;
  // n with n mod m0 == 1
  auto upto = [m0](Index v) { return v < 1 ? Index{0} : (v - 1) / m0 + 1; };
  return upto(hi) - upto(lo - 1);
}

Index shell_size(const Base& base, int depth, int s) {
  check_depth(base, depth);
  require(s >= 0 && s < depth, ErrorCode::index_out_of_range, "shell " + std::to_string(s));
  const Index total = base.product(depth);
  return total / base.product(s) - total / base.product(s + 1);
}

}  // namespace vilenkin

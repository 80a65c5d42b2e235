#include "vilenkin/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <set>

#include "vilenkin/kernels.hpp"
#include "vilenkin/operators.hpp"

namespace vilenkin {

namespace {

void check_p(double p, bool strict_below_one) {
  const bool ok = p > 0.0 && (strict_below_one ? p < 1.0 : p <= 1.0);
  require(ok, ErrorCode::invalid_argument,
          "p = " + std::to_string(p) + (strict_below_one ? " outside (0, 1)" : " outside (0, 1]"));
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string AtomValidation::describe() const {
  std::string out;
  if (!support_ok) out += "support violated by " + number(support_violation) + "; ";
  if (!mean_ok) out += "mean " + number(mean_violation) + " is not zero; ";
  if (!sup_ok) out += "sup bound needs C = " + number(min_constant) + "; ";
  if (degenerate) out += "degenerate (zero atom); ";
  if (out.empty()) out = "valid, C = " + number(min_constant);
  else out.resize(out.size() - 2);
  return out;
}

AtomValidation validate_atom(const Atom& a) {
  const GridFunction2D& f = a.values;
  require(a.support_depth >= 0 && a.support_depth <= f.depth(), ErrorCode::depth_exceeded,
          "atom support depth " + std::to_string(a.support_depth) + " exceeds grid depth " + std::to_string(f.depth()));
  AtomValidation v;
  const Index step = f.base().product(a.support_depth);
  const Index side = f.side();
  cdouble total = 0.0;
  for (Index y = 0; y < side; ++y)
    for (Index x = 0; x < side; ++x) {
      const double m = std::abs(f(x, y));
      v.sup_value = std::max(v.sup_value, m);
      if (x % step == 0 && y % step == 0) total += f(x, y);
      else v.support_violation = std::max(v.support_violation, m);
    }
  v.mean_violation = std::abs(total) / static_cast<double>(side * side);
  v.support_ok = v.support_violation == 0.0;
  v.mean_ok = v.mean_violation <= 1e-12 * std::max(1.0, v.sup_value);
  v.degenerate = v.sup_value == 0.0;
  const double bound = std::pow(static_cast<double>(step), 2.0 / a.p);
  v.min_constant = v.sup_value / bound;
  v.sup_ok = v.min_constant <= a.quasi_constant * (1.0 + 1e-12);
  return v;
}

Atom random_atom(const Base& base, int depth, int support_depth, double p, std::uint64_t seed) {
  check_depth(base, depth);
  check_p(p, false);
  require(support_depth >= 0 && support_depth < depth, ErrorCode::depth_exceeded,
          "random atom needs N_a < depth, got N_a = " + std::to_string(support_depth));
  std::mt19937_64 rng(seed);
  // Explicit mapping keeps the stream identical across standard libraries.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  GridFunction2D f(base, depth);
  const Index step = base.product(support_depth);
  const Index side = f.side();
  double sum = 0.0;
  Index count = 0;
  for (Index y = 0; y < side; y += step)
    for (Index x = 0; x < side; x += step) {
      const double v = uniform();
      f(x, y) = v;
      sum += v;
      ++count;
    }
  const double mean = sum / static_cast<double>(count);
  double peak = 0.0;
  for (Index y = 0; y < side; y += step)
    for (Index x = 0; x < side; x += step) {
      f(x, y) -= mean;
      peak = std::max(peak, std::abs(f(x, y)));
    }
  require(peak > 0.0, ErrorCode::validation_failed, "random atom degenerated to zero");
  f.values() *= std::pow(static_cast<double>(step), 2.0 / p) / peak;
  return Atom{std::move(f), support_depth, p, 1.0};
}

PhiWeight PhiWeight::log_kind() { return PhiWeight{}; }

PhiWeight PhiWeight::power(double theta) {
  PhiWeight w;
  w.kind_ = Kind::power;
  w.theta_ = theta;
  return w;
}

PhiWeight PhiWeight::sum_power(double theta) {
  PhiWeight w;
  w.kind_ = Kind::sum_power;
  w.theta_ = theta;
  return w;
}

PhiWeight PhiWeight::table(std::vector<double> values) {
  require(!values.empty(), ErrorCode::invalid_argument, "empty Phi table");
  PhiWeight w;
  w.kind_ = Kind::table;
  w.table_ = std::move(values);
  return w;
}

PhiWeight PhiWeight::parse(std::string_view text) {
  auto theta_of = [&](std::string_view rest) {
    double theta = 0.0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), theta);
    require(ec == std::errc() && ptr == rest.data() + rest.size() && !rest.empty(), ErrorCode::parse_error,
            "bad exponent in phi spec '" + std::string(text) + "'");
    return theta;
  };
  if (text == "log") return log_kind();
  if (text.starts_with("pow:")) return power(theta_of(text.substr(4)));
  if (text.starts_with("sumpow:")) return sum_power(theta_of(text.substr(7)));
  fail(ErrorCode::parse_error, "unknown phi spec '" + std::string(text) + "' (log, pow:theta, sumpow:theta)");
}

double PhiWeight::operator()(double m, double n) const {
  const double top = std::max(m, n);
  switch (kind_) {
    case Kind::log: return 1.0 + std::log2(1.0 + top);
    case Kind::power: return std::pow(1.0 + top, theta_);
    case Kind::sum_power: return std::pow(m + n, theta_);
    case Kind::table: {
      const auto i = static_cast<std::size_t>(std::clamp(top, 0.0, static_cast<double>(table_.size() - 1)));
      return table_[i];
    }
  }
  return 1.0;
}

std::string PhiWeight::spec() const {
  switch (kind_) {
    case Kind::log: return "log";
    case Kind::power: return "pow:" + number(theta_);
    case Kind::sum_power: return "sumpow:" + number(theta_);
    case Kind::table: return "table:" + std::to_string(table_.size());
  }
  return "?";
}

void PhiWeight::check_monotone(const Base& base, int depth) const {
  check_depth(base, depth);
  std::set<Index> lattice{1, 2};
  for (int k = 0; k <= depth; ++k) {
    const Index mk = base.product(k);
    lattice.insert({mk, mk + 1});
    if (mk > 1) lattice.insert(mk - 1);
  }
  Index prev_m = -1;
  for (Index m : lattice) {
    Index prev_n = -1;
    for (Index n : lattice) {
      const double v = (*this)(static_cast<double>(m), static_cast<double>(n));
      require(std::isfinite(v) && v >= 1.0, ErrorCode::validation_failed,
              "Phi(" + std::to_string(m) + ", " + std::to_string(n) + ") = " + number(v) + " is below 1");
      if (prev_n >= 0)
        require(v >= (*this)(static_cast<double>(m), static_cast<double>(prev_n)), ErrorCode::validation_failed,
                "Phi " + spec() + " decreases in its second argument");
      if (prev_m >= 0)
        require(v >= (*this)(static_cast<double>(prev_m), static_cast<double>(n)), ErrorCode::validation_failed,
                "Phi " + spec() + " decreases in its first argument");
      prev_n = n;
    }
    prev_m = m;
  }
}

void PhiWeight::check_unbounded(const Base& base, int depth) const {
  check_monotone(base, depth);
  for (int k = 1; k <= depth; ++k) {
    const double a = static_cast<double>(base.product(k - 1)), b = static_cast<double>(base.product(k));
    require((*this)(b, b) > (*this)(a, a), ErrorCode::validation_failed,
            "Phi " + spec() + " is not unbounded: Phi(M_" + std::to_string(k) + ", M_" + std::to_string(k) +
                ") does not exceed Phi(M_" + std::to_string(k - 1) + ", M_" + std::to_string(k - 1) + ")");
  }
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::random_atom: return "random-atom";
    case Family::thm1b: return "thm1b";
    case Family::thm3b: return "thm3b";
    case Family::thm4b: return "thm4b";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  for (Family f : {Family::random_atom, Family::thm1b, Family::thm3b, Family::thm4b})
    if (to_string(f) == text) return f;
  fail(ErrorCode::parse_error, "unknown family '" + std::string(text) + "'");
}

AtomicDecomposition::AtomicDecomposition(Base base, int depth, double p) : base_(std::move(base)), depth_(depth), p_(p) {
  check_depth(base_, depth_);
  check_p(p_, false);
}

void AtomicDecomposition::add(double lambda, Atom atom, AtomOrigin origin) {
  require(atom.values.base() == base_ && atom.values.depth() == depth_, ErrorCode::base_mismatch,
          "atom lives on a different truncated group");
  const AtomValidation v = validate_atom(atom);
  require(v.valid(), ErrorCode::validation_failed, "rejected atom: " + v.describe());
  terms_.push_back({lambda, std::move(atom), origin});
}

namespace {

GridFunction1D kernel_difference(const Base& base, int depth, int lo, int hi) {
  GridFunction1D g(base, depth);
  g.values() = (dirichlet_power(base, depth, hi).values() - dirichlet_power(base, depth, lo).values()).cast<cdouble>();
  return g;
}

void check_level(const Base& base, int depth, int level, const char* what) {
  check_depth(base, depth);
  require(level >= 0 && level <= depth, ErrorCode::depth_exceeded,
          std::string(what) + " needs level " + std::to_string(level) + " <= depth " + std::to_string(depth));
}

}  // namespace

GridFunction2D thm1b_family(const Base& base, int depth, int alpha_k) {
  check_level(base, depth, alpha_k + 1, "thm1b family");
  require(alpha_k >= 0, ErrorCode::invalid_argument, "alpha_k must be nonnegative");
  GridFunction1D dm(base, depth);
  dm.values() = dirichlet_power(base, depth, alpha_k).values().cast<cdouble>();
  return tensor(kernel_difference(base, depth, alpha_k, alpha_k + 1), dm);
}

BandSum thm1b_bands(const Base& base, int depth, int alpha_k) {
  check_level(base, depth, alpha_k + 1, "thm1b family");
  BandSum b(base, depth);
  b.add(1.0, {base.product(alpha_k), base.product(alpha_k + 1)}, {0, base.product(alpha_k)});
  return b;
}

Atom kernel_difference_atom(const Base& base, int depth, double p, int alpha_k, int top, int scale_level) {
  check_level(base, depth, top, "kernel difference atom");
  require(alpha_k >= 0 && alpha_k < top && scale_level >= 0 && scale_level <= top, ErrorCode::invalid_argument,
          "kernel difference atom needs 0 <= alpha_k < top");
  check_p(p, false);
  const GridFunction1D g = kernel_difference(base, depth, alpha_k, top);
  GridFunction2D values = tensor(g, g);
  values.values() *= std::pow(static_cast<double>(base.product(scale_level)), 2.0 / p - 2.0);
  const double c = std::pow(static_cast<double>(base.product(top)) / static_cast<double>(base.product(alpha_k)), 2.0 / p);
  return Atom{std::move(values), alpha_k, p, c};
}

AtomicDecomposition thm3b_martingale(const Base& base, int depth, std::span<const int> alpha_seq, double p, int K) {
  check_p(p, true);
  require(K >= 0 && static_cast<std::size_t>(K) <= alpha_seq.size(), ErrorCode::invalid_argument,
          "thm3b needs K <= length of the alpha sequence");
  for (int k = 1; k < K; ++k)
    require(alpha_seq[static_cast<std::size_t>(k)] > alpha_seq[static_cast<std::size_t>(k - 1)],
            ErrorCode::invalid_argument, "alpha sequence must be strictly increasing");
  AtomicDecomposition d(base, depth, p);
  for (int k = 0; k < K; ++k) {
    const int a = alpha_seq[static_cast<std::size_t>(k)];
    require(a >= 0, ErrorCode::invalid_argument, "alpha_k must be nonnegative");
    check_level(base, depth, a + 1, "thm3b martingale");
    const double lambda = std::pow(static_cast<double>(base.product(a)), -(2.0 / p - 2.0));
    d.add(lambda, kernel_difference_atom(base, depth, p, a, a + 1, a), {Family::thm3b, a, a + 1, 0, a});
  }
  return d;
}

std::vector<int> thm4b_alphas(double alpha, int K) {
  require(alpha >= 0.0, ErrorCode::invalid_argument, "cone parameter alpha must be nonnegative");
  require(K >= 0, ErrorCode::invalid_argument, "K must be nonnegative");
  const int whole = static_cast<int>(std::floor(alpha));
  std::vector<int> out;
  for (int k = 0, a = 2; k < K; ++k, a += whole + 2) out.push_back(a);
  return out;
}

int thm4b_depth(double alpha, int K) {
  const auto alphas = thm4b_alphas(alpha, K);
  return alphas.empty() ? 0 : alphas.back() + static_cast<int>(std::floor(alpha)) + 1;
}

AtomicDecomposition thm4b_martingale(const Base& base, int depth, const PhiWeight& phi, double p, double alpha, int K) {
  check_p(p, true);
  const int need = thm4b_depth(alpha, K);
  require(need <= depth, ErrorCode::depth_exceeded,
          "thm4b with K = " + std::to_string(K) + " needs depth " + std::to_string(need) + ", have " +
              std::to_string(depth));
  phi.check_unbounded(base, depth);
  const int whole = static_cast<int>(std::floor(alpha));
  AtomicDecomposition d(base, depth, p);
  d.phi_spec = phi.spec();
  d.cone_alpha = alpha;
  for (int a : thm4b_alphas(alpha, K)) {
    const int top = a + whole + 1;
    const double ma = static_cast<double>(base.product(a));
    const double ratio = static_cast<double>(base.product(top)) / ma;  // m_a ... m_{a+[alpha]}
    const double lambda = std::pow(ratio, -(2.0 / p - 2.0)) * std::pow(phi(ma, ma), -0.25);
    d.add(lambda, kernel_difference_atom(base, depth, p, a, top, top), {Family::thm4b, a, top, 0, a});
  }
  return d;
}

std::vector<double> thm4b_summability(const Base& base, const PhiWeight& phi, double p, std::span<const int> alphas) {
  std::vector<double> partial;
  double sum = 0.0;
  for (int a : alphas) {
    const double ma = static_cast<double>(base.product(a));
    sum += std::pow(phi(ma, ma), -p / 4.0);
    partial.push_back(sum);
  }
  return partial;
}

GridFunction2D compose(const AtomicDecomposition& d, int n) {
  require(n >= 0 && n <= d.depth(), ErrorCode::depth_exceeded,
          "compose needs 0 <= n <= " + std::to_string(d.depth()) + ", got " + std::to_string(n));
  GridFunction2D f(d.base(), d.depth());
  for (const auto& t : d.terms()) f.values() += t.lambda * t.atom.values.values();
  return n == d.depth() ? f : cond_expectation(f, n);
}

BandSum band_form(const AtomicDecomposition& d) {
  BandSum b(d.base(), d.depth());
  for (const auto& t : d.terms()) {
    const AtomOrigin& o = t.origin;
    require(o.family == Family::thm3b || o.family == Family::thm4b, ErrorCode::invalid_argument,
            "band form needs kernel difference atoms, got " + std::string(to_string(o.family)));
    const int scale_level = o.family == Family::thm3b ? o.alpha_k : o.top;
    const double w = t.lambda * std::pow(static_cast<double>(d.base().product(scale_level)), 2.0 / d.p() - 2.0);
    const DirichletBand band{d.base().product(o.alpha_k), d.base().product(o.top)};
    b.add(w, band, band);
  }
  return b;
}

Atom regenerate_atom(const Base& base, int depth, double p, const AtomOrigin& origin) {
  switch (origin.family) {
    case Family::random_atom: return random_atom(base, depth, origin.support_depth, p, origin.seed);
    case Family::thm3b: return kernel_difference_atom(base, depth, p, origin.alpha_k, origin.top, origin.alpha_k);
    case Family::thm4b: return kernel_difference_atom(base, depth, p, origin.alpha_k, origin.top, origin.top);
    case Family::thm1b: break;
  }
  fail(ErrorCode::invalid_argument, "thm1b members are not atoms and cannot be regenerated as such");
}

}  // namespace vilenkin

#include "vilenkin/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "vilenkin/kernels.hpp"
#include "vilenkin/norms.hpp"
#include "vilenkin/operators.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

std::string_view to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::cone_power: return "cone-power";
    case WeightMode::log_weighted: return "log-weighted";
    case WeightMode::diagonal: return "diagonal";
    case WeightMode::diagonal_series: return "diagonal-series";
  }
  return "?";
}

WeightMode parse_weight_mode(std::string_view text) {
  for (WeightMode m : {WeightMode::cone_power, WeightMode::log_weighted, WeightMode::diagonal, WeightMode::diagonal_series})
    if (to_string(m) == text) return m;
  fail(ErrorCode::parse_error, "unknown weight mode '" + std::string(text) + "'");
}

bool RunResult::pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const Criterion& c) { return c.pass; });
}

std::size_t RunResult::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  require(it != columns.end(), ErrorCode::invalid_argument, "no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

namespace {

// Results land in slot i regardless of which worker ran them, so output order
// never depends on scheduling.
template <typename T, typename F>
std::vector<T> parallel_map(int count, int threads, F fn) {
  std::vector<T> out(static_cast<std::size_t>(std::max(count, 0)));
  int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::clamp(workers, 1, std::max(count, 1));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (int i; (i = next.fetch_add(1)) < count;) {
      try {
        out[static_cast<std::size_t>(i)] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

std::string run_tag(const std::string& base, int depth) { return base + ";N=" + std::to_string(depth); }

std::vector<int> depths_for(const ExperimentConfig& cfg, const std::string& spec) {
  if (!cfg.depths.empty()) return cfg.depths;
  return {parse_base(spec).depth()};
}

Criterion drift_criterion(const std::string& name, const std::vector<std::pair<int, double>>& by_depth, double drift) {
  Criterion c{name, true, ""};
  for (std::size_t i = 1; i < by_depth.size(); ++i) {
    const auto [n0, r0] = by_depth[i - 1];
    const auto [n1, r1] = by_depth[i];
    const bool ok = std::isfinite(r1) && r1 <= drift * r0;
    c.pass = c.pass && ok;
    c.detail += "N=" + std::to_string(n0) + "->" + std::to_string(n1) + " factor " +
                format_number(r0 > 0 ? r1 / r0 : (r1 > 0 ? INFINITY : 1.0)) + (ok ? " ok; " : " exceeds; ");
  }
  if (by_depth.size() < 2) c.detail = "single depth, nothing to compare";
  else c.detail.resize(c.detail.size() - 2);
  return c;
}

Criterion growth_criterion(const std::string& name, const std::vector<double>& values, double floor) {
  Criterion c{name, values.size() >= 2, ""};
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double g = values[i] / values[i - 1];
    const bool ok = values[i] > values[i - 1] && g >= floor;
    c.pass = c.pass && ok;
    c.detail += "k=" + std::to_string(i) + "->" + std::to_string(i + 1) + " x" + format_number(g) + "; ";
  }
  if (!c.detail.empty()) c.detail.resize(c.detail.size() - 2);
  return c;
}

double lp_power(const Eigen::MatrixXcd& values, double p) {
  double sum = 0.0;
  for (Index j = 0; j < values.cols(); ++j)
    for (Index i = 0; i < values.rows(); ++i) {
      const double a = std::abs(values(i, j));
      if (a > 0.0) sum += std::pow(a, p);
    }
  return sum / static_cast<double>(values.size());
}

}  // namespace

StrongSum strong_sum(const GridFunction2D& f, double p, double alpha, WeightMode mode) {
  const Index side = f.side();
  const int whole_p = static_cast<int>(std::floor(p));
  const double log_m = std::log(static_cast<double>(side));
  const Spectrum2D s = forward(f);
  StrongSum r;
  const double hardy = hardy_square_norm(f, p);
  switch (mode) {
    case WeightMode::cone_power:
    case WeightMode::log_weighted: {
      const ConeParams cone{alpha};
      sweep_partial_sums(s, side, [&](Index k) { return cone.l_range(k, side); },
                         [&](Index k, Index l, const Eigen::MatrixXcd& partial) {
                           r.lhs += lp_power(partial, p) / std::pow(static_cast<double>(k * l), 2.0 - p);
                         });
      if (mode == WeightMode::log_weighted) r.lhs *= std::pow(1.0 / (log_m * log_m), whole_p);
      r.rhs = std::pow(hardy, p);
      break;
    }
    case WeightMode::diagonal:
    case WeightMode::diagonal_series: {
      const bool series = mode == WeightMode::diagonal_series;
      sweep_partial_sums(s, side, [](Index k) { return std::pair<Index, Index>{k, k}; },
                         [&](Index k, Index, const Eigen::MatrixXcd& partial) {
                           const double kk = static_cast<double>(k);
                           if (series)
                             r.lhs += std::pow(lp_power(partial, p), 1.0 / p) /
                                      (std::pow(kk, 3.0 - 2.0 * p) * std::pow(std::log(kk + 1.0), 2 * whole_p));
                           else
                             r.lhs += lp_power(partial, p) / std::pow(kk, 4.0 - 2.0 * p);
                         });
      if (!series) r.lhs /= std::pow(log_m, 2 * whole_p);
      r.rhs = series ? hardy : std::pow(hardy, p);
      break;
    }
  }
  r.ratio = r.lhs == 0.0 ? 0.0 : r.lhs / r.rhs;
  return r;
}

RunResult run_strong_summability(const ExperimentConfig& cfg) {
  const double p = cfg.p;
  if (cfg.weight_mode == WeightMode::cone_power)
    require(p > 0.0 && p < 1.0, ErrorCode::invalid_argument, "cone-power mode needs 0 < p < 1");
  else
    require(p > 0.0 && p <= 1.0, ErrorCode::invalid_argument, "weighted sums need 0 < p <= 1");
  RunResult out;
  out.experiment = "strong-sum";
  out.columns = {"experiment", "base", "depth", "weight_mode", "input", "seed", "support_depth", "lhs", "rhs", "ratio"};
  bool finite = true;
  for (const std::string& spec : cfg.bases) {
    std::vector<std::pair<int, double>> maxima;
    for (int depth : depths_for(cfg, spec)) {
      const Base base = parse_base(spec, depth);
      struct Input {
        std::string name;
        std::int64_t seed = -1;
        int support = -1;
        StrongSum sum;
      };
      auto inputs = parallel_map<Input>(cfg.samples, cfg.threads, [&](int i) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
        const int support = i % depth;
        const Atom a = random_atom(base, depth, support, p, seed);
        return Input{"atom", static_cast<std::int64_t>(seed), support, strong_sum(a.values, p, cfg.alpha, cfg.weight_mode)};
      });
      if (cfg.family == Family::thm3b && depth >= 2 && p < 1.0) {
        std::vector<int> alphas;
        for (int k = 1; k < depth; ++k) alphas.push_back(k);
        const auto d = thm3b_martingale(base, depth, alphas, p, static_cast<int>(alphas.size()));
        inputs.push_back({"thm3b", -1, -1, strong_sum(compose(d, depth), p, cfg.alpha, cfg.weight_mode)});
      }
      double max_ratio = 0.0;
      for (const Input& in : inputs) {
        finite = finite && std::isfinite(in.sum.ratio);
        max_ratio = std::max(max_ratio, in.sum.ratio);
        out.rows.push_back({out.experiment, spec, std::int64_t{depth}, std::string(to_string(cfg.weight_mode)), in.name,
                            in.seed, std::int64_t{in.support}, in.sum.lhs, in.sum.rhs, in.sum.ratio});
      }
      out.summary.emplace_back("max_ratio[" + run_tag(spec, depth) + "]", max_ratio);
      maxima.emplace_back(depth, max_ratio);
    }
    out.criteria.push_back(drift_criterion("bounded[" + spec + "]", maxima, cfg.drift));
  }
  out.criteria.push_back({"finite", finite, finite ? "all ratios finite" : "non-finite ratio"});
  return out;
}

namespace {

int representable_k(const ExperimentConfig& cfg, int available) {
  const int k = cfg.k_max > 0 ? std::min(cfg.k_max, available) : available;
  require(k >= 3, ErrorCode::depth_exceeded,
          "depth too small: only " + std::to_string(k) + " family members representable, need 3");
  return k;
}

void sharpness_thm1b(const ExperimentConfig& cfg, const std::string& spec, int depth, RunResult& out) {
  const double p = cfg.p;
  require(p > 0.0 && p < 1.0, ErrorCode::invalid_argument, "sharpness needs 0 < p < 1");
  const Base base = parse_base(spec, depth);
  const PhiWeight phi = PhiWeight::parse(cfg.phi.empty() ? "sumpow:" + format_number(1.0 / p - 1.0) : cfg.phi);
  phi.check_monotone(base, depth);
  const int kmax = representable_k(cfg, depth - 1);
  std::vector<double> ratios, hypothesis;
  for (int k = 1; k <= kmax; ++k) {
    const int a = k;
    const int work = a + 1;
    const double ma = static_cast<double>(base.product(a));
    const GridFunction2D f = thm1b_family(base, work, a);
    const GridFunction2D s = partial_sum(forward(f), base.product(a) + 1, 1);
    const double weak = weak_lp_norm(s, p);
    const double deviation = (s.values().cwiseAbs().array() - 1.0).abs().maxCoeff();
    const double hardy = hardy_square_norm(f, p);
    const double phi_v = phi(ma + 1.0, 1.0);
    const double ratio = weak / (phi_v * hardy);
    const double h = std::pow(ma + 1.0, 2.0 / p - 2.0) / phi_v;
    ratios.push_back(ratio);
    hypothesis.push_back(h);
    out.rows.push_back({out.experiment, spec, std::int64_t{depth}, std::int64_t{k}, std::int64_t{a},
                        static_cast<std::int64_t>(ma), weak, deviation, hardy, std::log(hardy) / std::log(ma), phi_v, h,
                        ratio, ratios.size() > 1 ? ratio / ratios[ratios.size() - 2] : 0.0});
  }
  const std::string t = run_tag(spec, depth);
  const Criterion hyp = growth_criterion("hypothesis", hypothesis, cfg.growth_floor);
  Criterion growth = growth_criterion("diverges[" + t + "]", ratios, cfg.growth_floor);
  out.summary.emplace_back("phi[" + t + "]", phi.spec());
  out.summary.emplace_back("hypothesis[" + t + "]", std::string(hyp.pass ? "met" : "not met"));
  out.summary.emplace_back("last_ratio[" + t + "]", ratios.back());
  if (!hyp.pass) {
    // Without the hypothesis the ratios should stay bounded; divergence is not claimed.
    growth.name = "bounded_without_hypothesis[" + t + "]";
    growth.pass = !growth.pass;
    growth.detail = "hypothesis not met; " + growth.detail;
  }
  out.criteria.push_back(growth);
}

void sharpness_thm4b(const ExperimentConfig& cfg, const std::string& spec, int depth, RunResult& out) {
  const double p = cfg.p;
  require(p > 0.0 && p < 1.0, ErrorCode::invalid_argument, "sharpness needs 0 < p < 1");
  const Base base = parse_base(spec, depth);
  const PhiWeight phi = PhiWeight::parse(cfg.phi.empty() ? "log" : cfg.phi);
  int available = 0;
  while (thm4b_depth(cfg.alpha, available + 1) <= depth) ++available;
  const int K = representable_k(cfg, available);
  const int work_depth = thm4b_depth(cfg.alpha, K);
  const AtomicDecomposition d = thm4b_martingale(base, work_depth, phi, p, cfg.alpha, K);
  const BandSum full = band_form(d);
  const std::vector<int> alphas = thm4b_alphas(cfg.alpha, K);
  const std::vector<double> summable = thm4b_summability(base, phi, p, alphas);
  const double span = std::exp2(cfg.alpha);
  std::vector<double> functional;
  for (int k = 0; k < K; ++k) {
    const int a = alphas[static_cast<std::size_t>(k)];
    const int top = d.terms()[static_cast<std::size_t>(k)].origin.top;
    const Index ma = base.product(a);
    // S_{m,n} f for m, n <= 2^alpha M_a only sees terms up to k, all representable at depth top.
    BandSum f(base, top);
    for (int eta = 0; eta <= k; ++eta) {
      const auto& term = full.terms()[static_cast<std::size_t>(eta)];
      f.add(term.weight, term.x, term.y);
    }
    const KernelCache cache(base, top);
    const Index hi = std::min<Index>(static_cast<Index>(std::floor(span * static_cast<double>(ma))), base.product(top));
    std::vector<Index> indices;
    for (Index m = ma + 1; m <= hi; ++m)
      if (m % base.generator(0) == 1 % base.generator(0)) indices.push_back(m);
    std::vector<double> weights;
    for (const auto& t : f.terms()) weights.push_back(t.weight);
    // Truncating the x bands depends only on m and the y bands only on n.
    auto classes = parallel_map<FactorClasses>(static_cast<int>(indices.size()), cfg.threads, [&](int i) {
      std::vector<DirichletBand> bands;
      for (const auto& t : f.terms()) bands.push_back(t.x.truncated(indices[static_cast<std::size_t>(i)]));
      return compress_rows(band_factors(bands, cache));
    });
    const auto rows = parallel_map<std::pair<double, double>>(static_cast<int>(indices.size()), cfg.threads, [&](int i) {
      double sum = 0.0, min_weak = INFINITY;
      const double m = static_cast<double>(indices[static_cast<std::size_t>(i)]);
      for (std::size_t j = 0; j < indices.size(); ++j) {
        const double n = static_cast<double>(indices[j]);
        const double weak = combine(classes[static_cast<std::size_t>(i)], weights, classes[j]).weak_lp(p);
        min_weak = std::min(min_weak, weak);
        sum += std::pow(weak, p) * phi(m, n) / std::pow(m * n, 2.0 - p);
      }
      return std::pair<double, double>{sum, min_weak};
    });
    double total = 0.0, min_weak = INFINITY;
    for (const auto& [s, w] : rows) {
      total += s;
      min_weak = std::min(min_weak, w);
    }
    const double phi_a = phi(static_cast<double>(ma), static_cast<double>(ma));
    const double block = std::pow(static_cast<double>(ma), 2.0 / p - 2.0) / std::pow(phi_a, 0.25);
    functional.push_back(total);
    out.rows.push_back({out.experiment, spec, std::int64_t{depth}, std::int64_t{k + 1}, std::int64_t{a},
                        static_cast<std::int64_t>(ma), std::int64_t{top}, static_cast<std::int64_t>(indices.size() * indices.size()),
                        d.terms()[static_cast<std::size_t>(k)].lambda, block, min_weak / block, total,
                        std::pow(phi_a, 0.75), total / std::pow(phi_a, 0.75), summable[static_cast<std::size_t>(k)],
                        functional.size() > 1 ? total / functional[functional.size() - 2] : 0.0});
  }
  const std::string t = run_tag(spec, depth);
  out.summary.emplace_back("phi[" + t + "]", phi.spec());
  out.summary.emplace_back("alphas[" + t + "]", [&] {
    std::string s;
    for (int a : alphas) s += (s.empty() ? "" : " ") + std::to_string(a);
    return s;
  }());
  out.summary.emplace_back("summability[" + t + "]", summable.back());
  out.criteria.push_back(growth_criterion("diverges[" + t + "]", functional, cfg.growth_floor));
}

}  // namespace

RunResult run_sharpness(const ExperimentConfig& cfg) {
  RunResult out;
  if (cfg.family == Family::thm1b) {
    out.experiment = "sharpness-thm1b";
    out.columns = {"experiment", "base", "depth", "k", "alpha_k", "M_alpha", "weak_partial", "modulus_deviation",
                   "hardy_norm", "hardy_exponent", "phi", "hypothesis", "ratio", "growth"};
  } else if (cfg.family == Family::thm4b) {
    out.experiment = "sharpness-thm4b";
    out.columns = {"experiment", "base", "depth", "k", "alpha_k", "M_alpha", "top", "pairs", "lambda", "block_value",
                   "min_weak_over_block", "functional", "phi_34", "functional_over_phi_34", "summability", "growth"};
  } else {
    fail(ErrorCode::invalid_argument, "sharpness runs the thm1b or thm4b family");
  }
  for (const std::string& spec : cfg.bases)
    for (int depth : depths_for(cfg, spec)) {
      if (cfg.family == Family::thm1b) sharpness_thm1b(cfg, spec, depth, out);
      else sharpness_thm4b(cfg, spec, depth, out);
    }
  return out;
}

namespace {

struct Thm2Result {
  double max_ratio = 0.0;
  Index m = 0, n = 0;
  double err = 0.0;
  double bound = 0.0;
  double exact_error = 0.0;  // max error once (m, n) covers [0, s) x [0, t)
};

// ||S_{m,n} f - f||_H against M_k^{2/p-2} omega(1/M_k, f) over the cone,
// k = max{k : M_k < min(m, n)}.
// spec is the coefficient table of f, passed in so that polynomials keep exact zeros.
Thm2Result theorem2_ratio(const GridFunction2D& f, const Spectrum2D& spec, double p, double alpha, Index s_support,
                          Index t_support) {
  const Base& base = f.base();
  const int depth = f.depth();
  const Index side = f.side();
  std::vector<double> omega(static_cast<std::size_t>(depth) + 1);
  for (int k = 0; k <= depth; ++k) omega[static_cast<std::size_t>(k)] = modulus_of_continuity(f, k, p);
  const ConeParams cone{alpha};
  Thm2Result r;
  for (Index m = 2; m <= side; ++m) {
    const auto [lo, hi] = cone.l_range(m, side);
    for (Index n = std::max<Index>(lo, 2); n <= hi; ++n) {
      Spectrum2D rest = spec;
      rest.values().topLeftCorner(m, n).setZero();
      const double err = hardy_square_norm(inverse(rest), p);
      if (m >= s_support && n >= t_support) r.exact_error = std::max(r.exact_error, err);
      int k = 0;
      while (k + 1 <= depth && base.product(k + 1) < std::min(m, n)) ++k;
      const double w = omega[static_cast<std::size_t>(k)];
      if (w == 0.0) continue;
      const double bound = std::pow(static_cast<double>(base.product(k)), 2.0 / p - 2.0) * w;
      if (err / bound > r.max_ratio) r = {err / bound, m, n, err, bound, r.exact_error};
    }
  }
  return r;
}

Spectrum2D random_polynomial(const Base& base, int depth, std::uint64_t seed, Index& s, Index& t) {
  std::mt19937_64 rng(seed);
  const Index side = base.product(depth);
  s = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(side));
  t = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(side));
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  Spectrum2D c(base, depth);
  for (Index j = 0; j < t; ++j)
    for (Index i = 0; i < s; ++i) {
      const double re = uniform();
      c(i, j) = cdouble(re, uniform());
    }
  return c;
}

}  // namespace

RunResult run_convergence(const ExperimentConfig& cfg) {
  const double p = cfg.p;
  require(p > 0.0 && p < 1.0, ErrorCode::invalid_argument, "convergence needs 0 < p < 1");
  RunResult out;
  out.experiment = "convergence";
  out.columns = {"experiment", "base", "depth", "part", "index", "m", "n", "value", "bound", "ratio", "status"};
  bool finite = true, exact = true;
  constexpr double weak_floor = 0.2;
  for (const std::string& spec : cfg.bases) {
    std::vector<std::pair<int, double>> maxima;
    for (int depth : depths_for(cfg, spec)) {
      const Base base = parse_base(spec, depth);
      double max_ratio = 0.0;
      if (cfg.family == Family::random_atom) {
        const int total = cfg.polynomials + cfg.samples;
        const auto results = parallel_map<std::pair<Thm2Result, std::array<Index, 2>>>(total, cfg.threads, [&](int i) {
          if (i < cfg.polynomials) {
            Index s = 0, t = 0;
            const Spectrum2D c = random_polynomial(base, depth, cfg.seed * 7919 + static_cast<std::uint64_t>(i), s, t);
            return std::pair{theorem2_ratio(inverse(c), c, p, cfg.alpha, s, t), std::array<Index, 2>{s, t}};
          }
          const int j = i - cfg.polynomials;
          const Atom a = random_atom(base, depth, j % depth, p, cfg.seed + static_cast<std::uint64_t>(j));
          const Index side = base.product(depth);
          return std::pair{theorem2_ratio(a.values, forward(a.values), p, cfg.alpha, side + 1, side + 1), std::array<Index, 2>{0, 0}};
        });
        for (int i = 0; i < total; ++i) {
          const auto& [r, support] = results[static_cast<std::size_t>(i)];
          const bool poly = i < cfg.polynomials;
          finite = finite && std::isfinite(r.max_ratio);
          max_ratio = std::max(max_ratio, r.max_ratio);
          if (poly) {
            exact = exact && r.exact_error == 0.0;
            out.rows.push_back({out.experiment, spec, std::int64_t{depth}, std::string("polynomial"), std::int64_t{i},
                                support[0], support[1], r.exact_error, 0.0, r.max_ratio,
                                std::string(r.exact_error == 0.0 ? "exact" : "nonzero")});
          } else {
            out.rows.push_back({out.experiment, spec, std::int64_t{depth}, std::string("atom"),
                                std::int64_t{i - cfg.polynomials}, r.m, r.n, r.err, r.bound, r.max_ratio,
                                std::string(std::isfinite(r.max_ratio) ? "finite" : "infinite")});
          }
        }
        out.summary.emplace_back("max_ratio[" + run_tag(spec, depth) + "]", max_ratio);
        maxima.emplace_back(depth, max_ratio);
      } else if (cfg.family == Family::thm3b) {
        require(depth >= 2, ErrorCode::depth_exceeded, "thm3b convergence needs depth >= 2");
        std::vector<int> alphas;
        for (int k = 1; k < depth; ++k) alphas.push_back(k);
        const int K = static_cast<int>(alphas.size());
        const AtomicDecomposition d = thm3b_martingale(base, depth, alphas, p, K);
        const GridFunction2D f = compose(d, depth);
        const double e = 2.0 / p - 2.0;
        bool bounded = true, floor_ok = true;
        for (int n = 1; n <= K; ++n) {
          const double mn = static_cast<double>(base.product(n));
          const double scaled = modulus_of_continuity(f, n, p) * std::pow(mn, e);
          double tail = 0.0;
          for (int a : alphas)
            if (a >= n) tail += std::pow(mn / static_cast<double>(base.product(a)), e);
          const bool ok = scaled <= cfg.drift * tail;
          bounded = bounded && ok;
          out.rows.push_back({out.experiment, spec, std::int64_t{depth}, std::string("thm3b-omega"), std::int64_t{n},
                              base.product(n), base.product(n), scaled, tail, scaled / tail,
                              std::string(ok ? "bounded" : "exceeds")});
        }
        const Spectrum2D spectrum = forward(f);
        for (int k = 1; k <= std::min(3, K); ++k) {
          const Index m = base.product(alphas[static_cast<std::size_t>(k - 1)]) + 1;
          GridFunction2D diff = f;
          diff.values() -= partial_sum(spectrum, m, m).values();
          const double weak = weak_lp_norm(diff, p);
          const bool ok = weak >= weak_floor;
          floor_ok = floor_ok && ok;
          out.rows.push_back({out.experiment, spec, std::int64_t{depth}, std::string("thm3b-floor"), std::int64_t{k}, m,
                              m, weak, weak_floor, std::pow(weak, p), std::string(ok ? "above" : "below")});
        }
        const std::string t = run_tag(spec, depth);
        out.criteria.push_back({"tail_bound[" + t + "]", bounded, "omega M_n^{2/p-2} within drift x tail sum"});
        out.criteria.push_back({"weak_floor[" + t + "]", floor_ok, "weak norm of the remainder >= 0.2"});
      } else {
        fail(ErrorCode::invalid_argument, "convergence runs random-atom (with polynomials) or thm3b");
      }
    }
    if (cfg.family == Family::random_atom) out.criteria.push_back(drift_criterion("bounded[" + spec + "]", maxima, cfg.drift));
  }
  if (cfg.family == Family::random_atom) {
    out.criteria.push_back({"finite", finite, finite ? "all ratios finite" : "non-finite ratio"});
    out.criteria.push_back({"polynomials_exact", exact, exact ? "zero error past the support" : "nonzero error"});
  }
  return out;
}

RunResult run_lemma1(const ExperimentConfig& cfg) {
  require(!cfg.eps.empty(), ErrorCode::invalid_argument, "empty eps list: nothing to sweep");
  RunResult out;
  out.experiment = "lemma1";
  out.columns = {"experiment", "base", "row", "cell_depth", "region", "s1", "s2", "m", "n", "eps", "lhs", "rhs_scale", "ratio"};
  bool finite = true;
  for (const std::string& spec : cfg.bases) {
    for (int depth : depths_for(cfg, spec)) {
      const Base base = parse_base(spec, depth);
      std::vector<int> cells = cfg.cell_depths;
      if (cells.empty())
        for (int n = 1; n < depth; ++n) cells.push_back(n);
      const std::string t = spec + (cfg.depths.empty() ? "" : ";depth=" + std::to_string(depth));
      std::map<std::pair<RegionClass, double>, std::vector<std::pair<int, double>>> maxima;
      const auto results = parallel_map<Lemma1Result>(static_cast<int>(cells.size()), cfg.threads, [&](int i) {
        return lemma1_sweep(base, cells[static_cast<std::size_t>(i)], cfg.eps);
      });
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const int cell = cells[i];
        for (const auto& r : results[i].reports)
          out.rows.push_back({out.experiment, t, std::string("report"), std::int64_t{cell}, std::string(to_string(r.region)),
                              std::int64_t{r.s1}, std::int64_t{r.s2}, r.m, r.n, r.eps, r.lhs, r.rhs_scale, r.ratio});
        for (const auto& s : results[i].summary) {
          finite = finite && std::isfinite(s.max_ratio);
          out.rows.push_back({out.experiment, t, std::string("summary"), std::int64_t{cell},
                              std::string(to_string(s.region)), std::int64_t{-1}, std::int64_t{-1}, std::int64_t{-1},
                              std::int64_t{-1}, s.eps, 0.0, 0.0, s.max_ratio});
          maxima[{s.region, s.eps}].emplace_back(cell, s.max_ratio);
        }
      }
      for (const auto& [key, series] : maxima) {
        const std::string name = "drift[" + t + ";" + std::string(to_string(key.first)) + ";eps=" + format_number(key.second) + "]";
        out.criteria.push_back(drift_criterion(name, series, cfg.drift));
      }
    }
  }
  out.criteria.push_back({"finite", finite, finite ? "all region maxima finite" : "non-finite maximum"});
  return out;
}

RunResult run_kernel_check(const ExperimentConfig& cfg) {
  RunResult out;
  out.experiment = "kernel";
  out.columns = {"experiment", "base", "depth", "n", "kind", "max_deviation", "status"};
  for (const std::string& spec : cfg.bases)
    for (int depth : depths_for(cfg, spec)) {
      const Base base = parse_base(spec, depth);
      const Index side = base.product(depth);
      double worst = 0.0;
      bool integral = true;
      for (int k = 0; k <= depth; ++k) {
        const RealGrid1D d = dirichlet_power(base, depth, k);
        const GridFunction1D direct = dirichlet(base, depth, base.product(k), KernelMethod::direct);
        double dev = (direct.values() - d.values().cast<cdouble>()).cwiseAbs().maxCoeff();
        const bool ints = (d.values().array() == d.values().array().round()).all();
        integral = integral && ints && dev <= 1e-10;
        out.rows.push_back({out.experiment, spec, std::int64_t{depth}, base.product(k), std::string("power"), dev,
                            std::string(ints && dev <= 1e-10 ? "exact" : "mismatch")});
      }
      // Running sum D_{n+1} = D_n + psi_n keeps the direct side O(M_N^2).
      Eigen::VectorXcd running = Eigen::VectorXcd::Zero(side);
      const Eigen::MatrixXcd psi = character_matrix(base, depth);
      for (Index n = 1; n < side; ++n) {
        running += psi.col(n - 1);
        const double dev = (dirichlet(base, depth, n, KernelMethod::closed).values() - running).cwiseAbs().maxCoeff();
        worst = std::max(worst, dev);
        out.rows.push_back({out.experiment, spec, std::int64_t{depth}, n, std::string("closed"), dev,
                            std::string(dev <= 1e-10 ? "match" : "mismatch")});
      }
      const std::string t = run_tag(spec, depth);
      out.summary.emplace_back("max_deviation[" + t + "]", worst);
      out.criteria.push_back({"power_kernels[" + t + "]", integral, "D_{M_k} = M_k on I_k"});
      out.criteria.push_back({"closed_form[" + t + "]", worst <= 1e-10, "max deviation " + format_number(worst)});
    }
  return out;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "strong-sum") return run_strong_summability(cfg);
  if (cfg.experiment == "sharpness") return run_sharpness(cfg);
  if (cfg.experiment == "convergence") return run_convergence(cfg);
  if (cfg.experiment == "lemma1") return run_lemma1(cfg);
  if (cfg.experiment == "kernel") return run_kernel_check(cfg);
  fail(ErrorCode::invalid_argument, "unknown experiment '" + cfg.experiment + "'");
}

}  // namespace vilenkin

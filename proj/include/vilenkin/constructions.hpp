#pragma once

// p-atoms, atomic decompositions f_{n,n} = sum_k lambda_k S_{M_n,M_n} a_k, and
// the counterexample families built from Dirichlet kernel differences.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vilenkin/band_sum.hpp"
#include "vilenkin/grid.hpp"

namespace vilenkin {

/// A function supported on I_{N_a} x I_{N_a}, mean zero, with
/// max |a| <= C M_{N_a}^{2/p}. quasi_constant is the C the atom was built to meet.
struct Atom {
  GridFunction2D values;
  int support_depth = 0;
  double p = 1.0;
  double quasi_constant = 1.0;
};

struct AtomValidation {
  bool support_ok = false;
  bool mean_ok = false;
  bool sup_ok = false;
  bool degenerate = false;      // identically zero
  double support_violation = 0; // max |a| outside the support cube
  double mean_violation = 0;    // |integral of a|
  double sup_value = 0;         // max |a|
  double min_constant = 0;      // smallest C with max |a| <= C M_{N_a}^{2/p}

  bool valid() const noexcept { return support_ok && mean_ok && sup_ok; }
  std::string describe() const;
};

AtomValidation validate_atom(const Atom& a);

/// Seeded atom: uniform values on the support cube, mean removed, scaled to
/// max |a| = M_{N_a}^{2/p}. Requires 0 <= N_a < depth and 0 < p <= 1.
Atom random_atom(const Base& base, int depth, int support_depth, double p, std::uint64_t seed);

/// Phi(m, n) >= 1, non-decreasing in both arguments.
class PhiWeight {
 public:
  enum class Kind { log, power, sum_power, table };

  /// 1 + log2(1 + max(m, n))
  static PhiWeight log_kind();
  /// (1 + max(m, n))^theta
  static PhiWeight power(double theta);
  /// (m + n)^theta
  static PhiWeight sum_power(double theta);
  /// values[min(max(m, n), size - 1)]
  static PhiWeight table(std::vector<double> values);
  /// "log", "pow:theta" or "sumpow:theta".
  static PhiWeight parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  double theta() const noexcept { return theta_; }
  double operator()(double m, double n) const;
  std::string spec() const;

  /// Throws validation_failed unless Phi >= 1 and is monotone on a lattice of
  /// scale points up to M_depth.
  void check_monotone(const Base& base, int depth) const;
  /// Additionally requires Phi(M_k, M_k) to increase strictly for k = 0..depth,
  /// the finite stand-in for limsup Phi = infinity.
  void check_unbounded(const Base& base, int depth) const;

 private:
  Kind kind_ = Kind::log;
  double theta_ = 0.0;
  std::vector<double> table_;
};

enum class Family { random_atom, thm1b, thm3b, thm4b };

std::string_view to_string(Family family);
Family parse_family(std::string_view text);

/// Everything needed to regenerate a term's atom.
struct AtomOrigin {
  Family family = Family::random_atom;
  int alpha_k = 0;          // lower kernel level (support depth for the theorem families)
  int top = 0;              // upper kernel level
  std::uint64_t seed = 0;   // random atoms only
  int support_depth = 0;    // random atoms only
};

struct DecompositionTerm {
  double lambda = 0.0;
  Atom atom;
  AtomOrigin origin;
};

class AtomicDecomposition {
 public:
  AtomicDecomposition(Base base, int depth, double p);

  const Base& base() const noexcept { return base_; }
  int depth() const noexcept { return depth_; }
  double p() const noexcept { return p_; }
  const std::vector<DecompositionTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  /// Validates the atom first; throws validation_failed with the report otherwise.
  void add(double lambda, Atom atom, AtomOrigin origin = {});

  // Construction parameters carried into manifests.
  std::string phi_spec;
  double cone_alpha = 0.0;

 private:
  Base base_;
  int depth_;
  double p_;
  std::vector<DecompositionTerm> terms_;
};

/// f_k = (D_{M_{a+1}} - D_{M_a}) (x) D_{M_a}(y), a = alpha_k. Requires a + 1 <= depth.
GridFunction2D thm1b_family(const Base& base, int depth, int alpha_k);
BandSum thm1b_bands(const Base& base, int depth, int alpha_k);

/// M_s^{2/p-2} (D_{M_top} - D_{M_a}) (x) (D_{M_top} - D_{M_a}), supported on I_a x I_a.
Atom kernel_difference_atom(const Base& base, int depth, double p, int alpha_k, int top, int scale_level);

/// lambda_k = M_{a_k}^{-(2/p-2)}, a_k = M_{a_k}^{2/p-2} g_k (x) g_k with
/// g_k = D_{M_{a_k+1}} - D_{M_{a_k}}, for the first K entries of alpha_seq.
/// Requires alpha_seq strictly increasing, alpha_K + 1 <= depth, 0 < p < 1.
AtomicDecomposition thm3b_martingale(const Base& base, int depth, std::span<const int> alpha_seq, double p, int K);

/// alpha_0 = 2, alpha_{k+1} = alpha_k + [alpha] + 2: the smallest gaps with
/// alpha_k + [alpha] + 1 < alpha_{k+1}.
std::vector<int> thm4b_alphas(double alpha, int K);

/// Depth needed to hold K terms of the greedy sequence.
int thm4b_depth(double alpha, int K);

/// K-term martingale whose spectrum is M_{a_k}^{2/p-2} Phi^{-1/4}(M_{a_k}, M_{a_k})
/// on {M_{a_k}, ..., M_{a_k+[alpha]+1} - 1}^2 and zero elsewhere. The atoms are
/// M_{top}^{2/p-2} (D_{M_top} - D_{M_a})^{(x)2}, top = a_k + [alpha] + 1, so
/// lambda_k = (m_{a_k} ... m_{a_k+[alpha]})^{-(2/p-2)} Phi^{-1/4}(M_{a_k}, M_{a_k}).
AtomicDecomposition thm4b_martingale(const Base& base, int depth, const PhiWeight& phi, double p, double alpha, int K);

/// Partial sums of sum_k Phi^{-p/4}(M_{a_k}, M_{a_k}).
std::vector<double> thm4b_summability(const Base& base, const PhiWeight& phi, double p, std::span<const int> alphas);

/// f_{n,n} = sum_k lambda_k S_{M_n,M_n} a_k, 0 <= n <= depth.
GridFunction2D compose(const AtomicDecomposition& d, int n);

/// Separable form of a decomposition whose terms all come from the kernel
/// difference families. Throws invalid_argument for random atoms.
BandSum band_form(const AtomicDecomposition& d);

/// Regenerates the atom described by origin.
Atom regenerate_atom(const Base& base, int depth, double p, const AtomOrigin& origin);

}  // namespace vilenkin

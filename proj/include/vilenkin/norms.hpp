#pragma once

// L_p, weak-L_p and martingale Hardy quasi-norms on the truncated square.
// All integrals use the normalized Haar measure, so values do not depend on
// the depth at which a function is sampled.

#include <string_view>

#include "vilenkin/constructions.hpp"
#include "vilenkin/grid.hpp"

namespace vilenkin {

enum class NormKind { lp, weak_lp, hardy, hardy_upper };

std::string_view to_string(NormKind kind);

struct NormValue {
  double value = 0.0;
  double p = 1.0;
  NormKind kind = NormKind::lp;

  operator double() const noexcept { return value; }
};

/// ((1/M_N^2) sum |f|^p)^{1/p}. p > 0.
NormValue lp_quasinorm(const GridFunction2D& f, double p);
NormValue lp_quasinorm(const RealGrid2D& f, double p);

/// sup_lambda lambda mu(|f| > lambda)^{1/p}, exact on the grid. p > 0.
NormValue weak_lp_norm(const GridFunction2D& f, double p);

/// || max_n |E_n f| ||_p over n = 0..N. 0 < p <= 1.
NormValue hardy_square_norm(const GridFunction2D& f, double p);

/// (sum_k |lambda_k|^p)^{1/p}. 0 < p <= 1.
NormValue hardy_upper_from_atoms(const AtomicDecomposition& d, double p);

/// Hardy norm of f - S_{M_k,M_k} f. 0 <= k <= N.
NormValue modulus_of_continuity(const GridFunction2D& f, int k, double p);
NormValue modulus_of_continuity(const AtomicDecomposition& d, int k, double p);

}  // namespace vilenkin

#pragma once

// Vilenkin characters psi_n(x) = prod_k r_k(x)^{n_k}, r_k(x) = exp(2 pi i x_k / m_k),
// and the Vilenkin-Fourier transform in one and two dimensions.
//
// forward: coefficient i = (1/M_N) sum_x f(x) conj(psi_i(x))   (Haar integral)
// inverse: f(x) = sum_i c_i psi_i(x)                           (unweighted synthesis)
//
// The fast mode factors the character sum digit by digit: one m_k-point DFT
// stage per digit axis, O(M_N sum_k m_k) work instead of O(M_N^2).

#include <span>

#include "vilenkin/grid.hpp"

namespace vilenkin {

enum class Mode { naive, fast };
enum class Direction { forward, inverse };

/// exp(2 pi i r / order); quarter turns are returned exactly.
cdouble unit_root(Index r, Index order);

cdouble character(Index n, const GroupPoint& x);
/// Same, with n and x given as indices on the depth-N grid.
cdouble character(const Base& base, int depth, Index n, Index x);

/// Psi(x, i) = psi_i(x) for all x, i < M_N.
Eigen::MatrixXcd character_matrix(const Base& base, int depth);

/// The column psi_n sampled on the depth-N grid.
GridFunction1D character_grid(const Base& base, int depth, Index n);

/// In-place unnormalized stage transform of one contiguous vector of length M_N.
/// Direction::forward uses conj(psi) and does not divide by M_N.
void apply_stages(const Base& base, int depth, std::span<cdouble> data, Direction direction);

Spectrum1D forward(const GridFunction1D& f, Mode mode = Mode::fast);
GridFunction1D inverse(const Spectrum1D& s, Mode mode = Mode::fast);

Spectrum2D forward(const GridFunction2D& f, Mode mode = Mode::fast);
GridFunction2D inverse(const Spectrum2D& s, Mode mode = Mode::fast);

}  // namespace vilenkin

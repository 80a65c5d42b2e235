#pragma once

// Text format shared by grids and spectra:
//
//   vilenkin-grid v1; base=<spec>; depth=N; dims=<1|2>
//   re,im
//   ...
//
// M_N (or M_N^2) value lines in index order, 2-D row-major with the first
// coordinate major. Values are written with 17 significant digits.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "vilenkin/grid.hpp"

namespace vilenkin {

struct GridHeader {
  Base base;
  int depth = 0;
  int dims = 1;
};

/// Either dimension, as read from a file; the caller decides whether the
/// payload holds samples or coefficients.
using GridPayload = std::variant<Eigen::VectorXcd, Eigen::MatrixXcd>;

struct GridFile {
  GridHeader header;
  GridPayload values;
};

void write_grid(std::ostream& out, const GridHeader& header, const GridPayload& values);
GridFile read_grid(std::istream& in);

void save_grid(const std::filesystem::path& path, const GridHeader& header, const GridPayload& values);
GridFile load_grid(const std::filesystem::path& path);

template <typename Domain>
void save_grid(const std::filesystem::path& path, const Dense1<cdouble, Domain>& a) {
  save_grid(path, GridHeader{a.base(), a.depth(), 1}, GridPayload(std::in_place_type<Eigen::VectorXcd>, a.values()));
}
template <typename Domain>
void save_grid(const std::filesystem::path& path, const Dense2<cdouble, Domain>& a) {
  save_grid(path, GridHeader{a.base(), a.depth(), 2}, GridPayload(std::in_place_type<Eigen::MatrixXcd>, a.values()));
}

}  // namespace vilenkin

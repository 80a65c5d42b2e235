#include "vilenkin/grid_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace vilenkin {

namespace {

constexpr std::string_view kMagic = "vilenkin-grid v1";

void write_value(std::ostream& out, cdouble v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v.real(), v.imag());
  out << buf;
}

std::string field(std::string_view header, std::string_view key) {
  const std::string needle = std::string(key) + "=";
  const auto pos = header.find(needle);
  require(pos != std::string_view::npos, ErrorCode::parse_error, "grid header lacks '" + std::string(key) + "'");
  const auto start = pos + needle.size();
  const auto end = header.find(';', start);
  return std::string(header.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
}

cdouble parse_value(const std::string& line, Index lineno) {
  const char* begin = line.c_str();
  char* end = nullptr;
  const double re = std::strtod(begin, &end);
  require(end != begin && *end == ',', ErrorCode::parse_error, "bad value on data line " + std::to_string(lineno));
  const char* im_begin = end + 1;
  const double im = std::strtod(im_begin, &end);
  require(end != im_begin, ErrorCode::parse_error, "bad imaginary part on data line " + std::to_string(lineno));
  return {re, im};
}

}  // namespace

void write_grid(std::ostream& out, const GridHeader& header, const GridPayload& values) {
  out << kMagic << "; base=" << header.base.spec() << "; depth=" << header.depth << "; dims=" << header.dims << '\n';
  const Index side = header.base.product(header.depth);
  if (const auto* v = std::get_if<Eigen::VectorXcd>(&values)) {
    require(header.dims == 1 && v->size() == side, ErrorCode::invalid_argument, "1-D payload does not match header");
    for (Index i = 0; i < v->size(); ++i) write_value(out, (*v)[i]);
  } else {
    const auto& a = std::get<Eigen::MatrixXcd>(values);
    require(header.dims == 2 && a.rows() == side && a.cols() == side, ErrorCode::invalid_argument,
            "2-D payload does not match header");
    for (Index x = 0; x < side; ++x)
      for (Index y = 0; y < side; ++y) write_value(out, a(x, y));
  }
}

GridFile read_grid(std::istream& in) {
  std::string header;
  require(static_cast<bool>(std::getline(in, header)), ErrorCode::parse_error, "empty grid file");
  require(header.rfind(kMagic, 0) == 0, ErrorCode::parse_error, "not a vilenkin-grid v1 file");
  const int depth = std::stoi(field(header, "depth"));
  const int dims = std::stoi(field(header, "dims"));
  require(dims == 1 || dims == 2, ErrorCode::parse_error, "dims must be 1 or 2");
  GridHeader h{parse_base(field(header, "base")), depth, dims};
  check_depth(h.base, depth);
  const Index side = h.base.product(depth);
  const Index count = dims == 1 ? side : side * side;
  std::vector<cdouble> data;
  data.reserve(static_cast<std::size_t>(count));
  std::string line;
  while (static_cast<Index>(data.size()) < count && std::getline(in, line)) {
    if (line.empty()) continue;
    data.push_back(parse_value(line, static_cast<Index>(data.size()) + 2));
  }
  require(static_cast<Index>(data.size()) == count, ErrorCode::parse_error,
          "expected " + std::to_string(count) + " values, found " + std::to_string(data.size()));
  if (dims == 1) return {h, GridPayload(std::in_place_type<Eigen::VectorXcd>, Eigen::Map<Eigen::VectorXcd>(data.data(), side))};
  Eigen::MatrixXcd a(side, side);
  for (Index x = 0; x < side; ++x)
    for (Index y = 0; y < side; ++y) a(x, y) = data[static_cast<std::size_t>(x * side + y)];
  return {h, GridPayload(std::in_place_type<Eigen::MatrixXcd>, std::move(a))};
}

void save_grid(const std::filesystem::path& path, const GridHeader& header, const GridPayload& values) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::io_failure, "cannot open '" + path.string() + "' for writing");
  write_grid(out, header, values);
  require(static_cast<bool>(out), ErrorCode::io_failure, "write failed for '" + path.string() + "'");
}

GridFile load_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::io_failure, "cannot open '" + path.string() + "' for reading");
  return read_grid(in);
}

}  // namespace vilenkin

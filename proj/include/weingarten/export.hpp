#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace weingarten::io {

/// Formats with 17 significant digits so that every double round-trips.
std::string format_double(double x);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string> header);
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

struct Mesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<std::uint32_t, 4>> quads;  // zero-based vertex indices
};

/// Grid mesh of rows x cols vertices; `wrap_cols` closes the grid in the
/// column direction (a full turn of a rotation angle, say).
template <class Fn>
Mesh grid_mesh(std::size_t rows, std::size_t cols, bool wrap_cols, Fn&& vertex_at) {
  Mesh m;
  m.vertices.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.vertices.push_back(vertex_at(i, j));
  const std::size_t jmax = wrap_cols ? cols : cols - 1;
  for (std::size_t i = 0; i + 1 < rows; ++i) {
    for (std::size_t j = 0; j < jmax; ++j) {
      const auto jn = (j + 1) % cols;
      m.quads.push_back({static_cast<std::uint32_t>(i * cols + j), static_cast<std::uint32_t>((i + 1) * cols + j),
                         static_cast<std::uint32_t>((i + 1) * cols + jn), static_cast<std::uint32_t>(i * cols + jn)});
    }
  }
  return m;
}

void write_obj(std::ostream& out, const Mesh& mesh, const std::string& comment = {});

/// Serializes like json::dump(2) but prints every floating-point number with
/// 17 significant digits; non-finite values become null.
std::string dump_json(const nlohmann::json& j);

}  // namespace weingarten::io

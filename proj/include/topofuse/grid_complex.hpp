#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "topofuse/image.hpp"

namespace topofuse {

using VertexIndex = std::uint32_t;

/// An edge of the 8-connected pixel graph. Endpoints are row-major linear
/// indices with u < v; filt_value is the larger of the two pixel values.
struct GridEdge {
  VertexIndex u;
  VertexIndex v;
  double filt_value;

  friend bool operator==(const GridEdge&, const GridEdge&) = default;
};

/// Lower-star filtration of the pixel graph in implicit form.
///
/// The nested subcomplexes are the prefixes of vertex_order: admitting a
/// vertex also admits every edge to an already admitted neighbour. Ties in
/// value are broken by ascending linear index, so the order is total.
struct LowerStarFiltration {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<VertexIndex> vertex_order;
  std::vector<double> vertex_values;
  std::vector<GridEdge> edges;

  /// rank[v] is the position of vertex v in vertex_order.
  std::vector<VertexIndex> ranks() const;
};

/// Number of 8-neighbour pairs in an H x W grid.
constexpr std::size_t grid_edge_count(std::size_t height, std::size_t width) {
  if (height == 0 || width == 0) return 0;
  return height * (width - 1) + width * (height - 1) + 2 * (height - 1) * (width - 1);
}

std::vector<GridEdge> build_grid_edges(const ImageTensor& image);

/// max(f(u), f(v)); throws IndexError when either index is out of range.
double edge_filtration_value(const ImageTensor& image, std::size_t u, std::size_t v);

/// Vertex indices sorted by (value, index).
std::vector<VertexIndex> lower_star_order(const ImageTensor& image);

LowerStarFiltration build_lower_star_filtration(const ImageTensor& image);

}  // namespace topofuse

#include "topofuse/grid_complex.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "topofuse/errors.hpp"

namespace topofuse {

std::vector<VertexIndex> LowerStarFiltration::ranks() const {
  std::vector<VertexIndex> rank(vertex_order.size());
  for (std::size_t i = 0; i < vertex_order.size(); ++i) {
    rank[vertex_order[i]] = static_cast<VertexIndex>(i);
  }
  return rank;
}

std::vector<GridEdge> build_grid_edges(const ImageTensor& image) {
  const std::size_t h = image.height();
  const std::size_t w = image.width();
  const auto f = image.values();
  std::vector<GridEdge> edges;
  edges.reserve(grid_edge_count(h, w));

  auto emit = [&](std::size_t a, std::size_t b) {
    // Callers always pass a < b.
    edges.push_back({static_cast<VertexIndex>(a), static_cast<VertexIndex>(b), std::max(f[a], f[b])});
  };

  // Forward half-neighbourhood: east, south-west, south, south-east.
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const std::size_t p = r * w + c;
      if (c + 1 < w) emit(p, p + 1);
      if (r + 1 < h) {
        const std::size_t below = p + w;
        if (c > 0) emit(p, below - 1);
        emit(p, below);
        if (c + 1 < w) emit(p, below + 1);
      }
    }
  }
  return edges;
}

double edge_filtration_value(const ImageTensor& image, std::size_t u, std::size_t v) {
  return std::max(image.at(u), image.at(v));
}

std::vector<VertexIndex> lower_star_order(const ImageTensor& image) {
  if (image.size() > std::numeric_limits<VertexIndex>::max()) {
    throw ArgumentError("image too large for 32-bit vertex indices");
  }
  const auto f = image.values();
  std::vector<VertexIndex> order(image.size());
  std::iota(order.begin(), order.end(), VertexIndex{0});
  std::sort(order.begin(), order.end(), [&](VertexIndex a, VertexIndex b) {
    return f[a] < f[b] || (f[a] == f[b] && a < b);
  });
  return order;
}

LowerStarFiltration build_lower_star_filtration(const ImageTensor& image) {
  LowerStarFiltration filtration;
  filtration.height = image.height();
  filtration.width = image.width();
  filtration.vertex_order = lower_star_order(image);
  filtration.vertex_values.assign(image.values().begin(), image.values().end());
  filtration.edges = build_grid_edges(image);
  return filtration;
}

}  // namespace topofuse

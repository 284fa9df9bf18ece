#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "topofuse/grid_complex.hpp"

namespace topofuse {

/// One 0-dimensional class: born when birth_vertex enters the filtration,
/// dead when its component is absorbed by an older one. Values are pixel
/// values, not filtration indices.
struct PersistentBar {
  double birth = 0.0;
  double death = 0.0;
  bool essential = false;
  VertexIndex birth_vertex = 0;

  double persistence() const noexcept { return death - birth; }

  friend bool operator==(const PersistentBar&, const PersistentBar&) = default;
};

/// PD_0 of a lower-star filtration. The single essential bar dies at
/// global_max by convention.
struct PersistenceDiagram {
  std::vector<PersistentBar> bars;
  double global_min = 0.0;
  double global_max = 0.0;

  std::size_t essential_count() const;
  const PersistentBar& essential_bar() const;
};

/// Elder-rule union-find over the filtration. Zero-persistence bars are kept,
/// so the result has exactly one bar per pixel.
PersistenceDiagram compute_pd0(const LowerStarFiltration& filtration);

/// Shorthand for compute_pd0(build_lower_star_filtration(image)).
PersistenceDiagram compute_pd0(const ImageTensor& image);

/// Number of components of the sublevel set {f <= t}. Non-essential bars are
/// alive on [birth, death); the essential bar on [birth, +inf).
std::size_t betti0_at(const PersistenceDiagram& pd, double t);

/// Keeps bars with persistence strictly above min_persistence plus the
/// essential bar. Throws ArgumentError for negative thresholds.
PersistenceDiagram filter_bars(const PersistenceDiagram& pd, double min_persistence);

/// (birth, death) pairs sorted lexicographically; the comparison key for
/// diagrams that should agree as multisets.
std::vector<std::pair<double, double>> sorted_pairs(const PersistenceDiagram& pd);

/// Text export, one `birth,death,essential_flag` line per bar, sorted by
/// (birth, death). Numbers use the shortest round-trip representation.
void write_diagram(std::ostream& out, const PersistenceDiagram& pd);
std::string format_diagram(const PersistenceDiagram& pd);

}  // namespace topofuse

#include "topofuse/persistence.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "topofuse/errors.hpp"
#include "topofuse/format.hpp"
#include "topofuse/union_find.hpp"

namespace topofuse {

std::size_t PersistenceDiagram::essential_count() const {
  return static_cast<std::size_t>(
      std::count_if(bars.begin(), bars.end(), [](const PersistentBar& b) { return b.essential; }));
}

const PersistentBar& PersistenceDiagram::essential_bar() const {
  const auto it = std::find_if(bars.begin(), bars.end(), [](const PersistentBar& b) { return b.essential; });
  if (it == bars.end()) throw ArgumentError("diagram has no essential bar");
  return *it;
}

PersistenceDiagram compute_pd0(const LowerStarFiltration& filtration) {
  const std::size_t h = filtration.height;
  const std::size_t w = filtration.width;
  const std::size_t n = filtration.vertex_order.size();
  const auto& f = filtration.vertex_values;
  if (n == 0 || n != h * w || f.size() != n) {
    throw ArgumentError("filtration is inconsistent with its grid extent");
  }

  const std::vector<VertexIndex> rank = filtration.ranks();
  UnionFind sets(static_cast<std::uint32_t>(n));

  PersistenceDiagram pd;
  pd.bars.reserve(n);
  pd.global_min = f[filtration.vertex_order.front()];
  pd.global_max = f[filtration.vertex_order.back()];

  for (const VertexIndex v : filtration.vertex_order) {
    const std::size_t r = v / w;
    const std::size_t c = v % w;
    const VertexIndex rv = rank[v];
    const double fv = f[v];

    const std::size_t r0 = r > 0 ? r - 1 : r;
    const std::size_t r1 = r + 1 < h ? r + 1 : r;
    const std::size_t c0 = c > 0 ? c - 1 : c;
    const std::size_t c1 = c + 1 < w ? c + 1 : c;
    for (std::size_t nr = r0; nr <= r1; ++nr) {
      for (std::size_t nc = c0; nc <= c1; ++nc) {
        const auto u = static_cast<VertexIndex>(nr * w + nc);
        // Lower star of v: neighbours admitted earlier in the order.
        if (rank[u] >= rv) continue;
        const std::uint32_t ru = sets.find(u);
        const std::uint32_t rself = sets.find(v);
        if (ru == rself) continue;
        const VertexIndex elder_u = sets.elder(ru);
        const VertexIndex elder_v = sets.elder(rself);
        // The later-ranked birth is the younger component; it dies here.
        const bool u_older = rank[elder_u] < rank[elder_v];
        const VertexIndex older = u_older ? elder_u : elder_v;
        const VertexIndex younger = u_older ? elder_v : elder_u;
        pd.bars.push_back({f[younger], fv, false, younger});
        sets.link(ru, rself, older);
      }
    }
  }

  const VertexIndex survivor = sets.elder(sets.find(filtration.vertex_order.front()));
  pd.bars.push_back({f[survivor], pd.global_max, true, survivor});

  // Every vertex must have been absorbed: the 8-connected grid is connected.
  if (pd.bars.size() != n) {
    throw ArgumentError("pixel graph is not connected");
  }
  return pd;
}

PersistenceDiagram compute_pd0(const ImageTensor& image) {
  return compute_pd0(build_lower_star_filtration(image));
}

std::size_t betti0_at(const PersistenceDiagram& pd, double t) {
  std::size_t alive = 0;
  for (const PersistentBar& bar : pd.bars) {
    if (bar.birth > t) continue;
    if (bar.essential || t < bar.death) ++alive;
  }
  return alive;
}

PersistenceDiagram filter_bars(const PersistenceDiagram& pd, double min_persistence) {
  if (!(min_persistence >= 0.0)) {
    throw ArgumentError("min_persistence must be non-negative");
  }
  PersistenceDiagram out;
  out.global_min = pd.global_min;
  out.global_max = pd.global_max;
  for (const PersistentBar& bar : pd.bars) {
    if (bar.essential || bar.persistence() > min_persistence) out.bars.push_back(bar);
  }
  return out;
}

std::vector<std::pair<double, double>> sorted_pairs(const PersistenceDiagram& pd) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(pd.bars.size());
  for (const PersistentBar& bar : pd.bars) pairs.emplace_back(bar.birth, bar.death);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

void write_diagram(std::ostream& out, const PersistenceDiagram& pd) {
  std::vector<PersistentBar> bars = pd.bars;
  std::stable_sort(bars.begin(), bars.end(), [](const PersistentBar& a, const PersistentBar& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.death != b.death) return a.death < b.death;
    return a.essential && !b.essential;
  });
  for (const PersistentBar& bar : bars) {
    out << format_real(bar.birth) << ',' << format_real(bar.death) << ',' << (bar.essential ? 1 : 0) << '\n';
  }
}

std::string format_diagram(const PersistenceDiagram& pd) {
  std::ostringstream out;
  write_diagram(out, pd);
  return out.str();
}

}  // namespace topofuse

#include "sfid/random_pattern.hpp"

#include "sfid/error.hpp"

namespace sfid {

SparsityPattern random_pattern(int m, int r, double density, std::mt19937_64& rng) {
  if (density < 0.0 || density > 1.0) throw InvalidArgument("density must lie in [0, 1]");
  SparsityPattern p(m, r);
  // Compare raw 53-bit draws so the stream does not depend on the standard
  // library's distribution implementation.
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < r; ++j) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < density) p.set(i, j, true);
    }
  }
  return p;
}

}  // namespace sfid

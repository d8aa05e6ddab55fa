#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ym/strata.hpp"

namespace ym {

struct CatalogCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CatalogRecord {
  std::string name;
  std::string params;
  std::uint64_t seed = 0;
  std::vector<CatalogCheck> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Genus-1 commuting pairs: torus model (T x T)/W. Generic pairs carry the
// torus label, Weyl-fixed pairs a strictly larger one, and no irreducible
// point exists over the flat bundle type.
CatalogRecord genus1_torus_model(Family family, int n_samples,
                                 std::uint64_t seed);

// The three SU2 strata at genus >= 2: labels, dimensions (0, 2l, 6l-6),
// the 2^{2l} central points, and the Weyl action on torus tuples.
CatalogRecord su2_strata(int genus, std::uint64_t seed);

// The 2^{2l}-sheeted covering of SO3 representation spaces by SU2 tuples and
// the induced label correspondence.
CatalogRecord so3_covering(int genus, std::uint64_t seed);

// U2 moduli by parity of the topological type: even types fiber over the
// flat SO3 variety with (S^1)^{2l} twists; odd types form a single stratum.
CatalogRecord u2_parity(int genus, bool odd, std::uint64_t seed);

// O2 with a prescribed non-trivial component map: h0 = 0, h1 = 2l-2 and
// finite stabilizers at every sampled point.
CatalogRecord o2_variety(int genus, const std::vector<int>& phi,
                         std::uint64_t seed);

// O3 = SO3 x Z/2: representation spaces split as direct products and strata
// match the SO3 strata crossed with the fixed component map.
CatalogRecord o3_splitting(int genus, const std::vector<int>& phi,
                           std::uint64_t seed);

// The Klein-four representation (half-turns about two axes): representation
// irreducible yet singular, because the component group acts non-trivially
// on H^1.
CatalogRecord ramanathan_example(std::uint64_t seed);

}  // namespace ym

// Minimal library walkthrough: build a few states and print D, G and
// negativity side by side.

#include <cstdio>

#include "qcorr/qcorr.hpp"

int main() {
  using namespace qcorr;

  std::printf("%-24s %10s %10s %10s\n", "state", "D", "G", "negativity");
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto rho = bell_mixture(p);
    const auto d = estimate_D(rho, DOptions{4000, 0});
    const auto g = compute_G(rho);
    char label[32];
    std::snprintf(label, sizeof label, "bell_mixture(p = %.2f)", p);
    std::printf("%-24s %10.6f %10.6f %10.6f\n", label, d.value, g.value, negativity(rho));
  }

  const auto ghz = pseudo_ghz(0.6, 3);
  const auto ext = negativity_extremes(ghz);
  std::printf("\npseudo_ghz(p = 0.6): G = %.6f, negativity over splits in [%.6f, %.6f]\n",
              compute_G(ghz).value, ext.min, ext.max);
  return 0;
}

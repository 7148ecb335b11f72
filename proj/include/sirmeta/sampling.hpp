#pragma once

#include <cstdint>
#include <vector>

#include "sirmeta/common.hpp"
#include "sirmeta/process.hpp"
#include "sirmeta/rng.hpp"

namespace sirmeta {

struct PointSet {
    std::vector<Vec2> points;
    int tier = 0;
};

// Samplers produce one realization per call.  Edge handling: models whose
// points are derived from latent objects (lattice sites, cluster parents)
// generate those objects in the window enlarged by the maximum displacement
// (eta + r_pert for lattices, u for Gauss-Poisson pairs, r_c for Matern
// clusters) and retain every generated point, so the law near the origin is
// the stationary one and interference from just outside the window is not
// clipped.  The plain PPP needs no enlargement.
//
// Given the same rng state, a PerturbedTriangularLattice with r_pert = 0
// consumes no draws in the perturbation step and reproduces the unperturbed
// lattice exactly; a GaussPoisson with p = 1 reproduces its parent PPP.

PointSet sample_ppp(double lambda, const Window& window, std::mt19937_64& rng);
PointSet sample_lattice(const TriangularLattice& k, const Window& window, std::mt19937_64& rng);
PointSet sample_lattice(const PerturbedTriangularLattice& k, const Window& window,
                        std::mt19937_64& rng);
PointSet sample_gauss_poisson(const GaussPoisson& k, const Window& window, std::mt19937_64& rng);
PointSet sample_matern_cluster(const MaternCluster& k, const Window& window, std::mt19937_64& rng);

// Dispatch on the tagged kind.  `lambda` is used by the Poisson branch only;
// every other model derives its density from its own parameters.
PointSet sample_process(const ProcessKind& kind, double lambda, const Window& window,
                        std::mt19937_64& rng);

// Seeded convenience wrappers (stream index 0 of the given master seed).
PointSet sample_process(const ProcessKind& kind, double lambda, const Window& window,
                        std::uint64_t seed);

} // namespace sirmeta

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sirmeta {

// Point-process models.  Density conventions:
//   Poisson              density is free (comes from the tier)
//   TriangularLattice    2 / (sqrt(3) eta^2)
//   PerturbedTriangularLattice  same as the unperturbed lattice
//   GaussPoisson         lambda_p * (2 - p)
//   MaternCluster        lambda_p * cbar
struct Poisson {
    bool operator==(const Poisson&) const = default;
};

struct TriangularLattice {
    double eta = 1.0;
    bool operator==(const TriangularLattice&) const = default;
};

struct PerturbedTriangularLattice {
    double eta = 1.0;
    double r_pert = 0.0; // radius of the uniform-disk perturbation
    bool operator==(const PerturbedTriangularLattice&) const = default;
};

struct GaussPoisson {
    double lambda_p = 1.0; // parent density
    double p = 0.5;        // probability the cluster has one point (else two)
    double u = 1.0;        // exact separation of the two-point cluster
    bool operator==(const GaussPoisson&) const = default;
};

struct MaternCluster {
    double lambda_p = 1.0; // parent density
    double cbar = 1.0;     // mean daughters per cluster
    double r_c = 1.0;      // cluster disk radius
    bool operator==(const MaternCluster&) const = default;
};

using ProcessKind = std::variant<Poisson, TriangularLattice, PerturbedTriangularLattice,
                                 GaussPoisson, MaternCluster>;

inline std::string kind_name(const ProcessKind& k) {
    struct V {
        std::string operator()(const Poisson&) const { return "ppp"; }
        std::string operator()(const TriangularLattice&) const { return "triangular-lattice"; }
        std::string operator()(const PerturbedTriangularLattice&) const {
            return "perturbed-triangular-lattice";
        }
        std::string operator()(const GaussPoisson&) const { return "gauss-poisson"; }
        std::string operator()(const MaternCluster&) const { return "matern-cluster"; }
    };
    return std::visit(V{}, k);
}

void validate_kind(const ProcessKind& k); // throws std::invalid_argument on bad parameters

// Density implied by the model parameters; empty for Poisson.
std::optional<double> intrinsic_density(const ProcessKind& k);

// Lattice constant giving the requested density.
inline double eta_for_density(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("eta_for_density: lambda must be > 0");
    return std::sqrt(2.0 / (std::sqrt(3.0) * lambda));
}

// One network tier: a point process plus transmit power and path-loss
// exponent.  The gain field is filled in by calibration (or by hand) before
// analytic per-tier approximations are evaluated.
struct TierSpec {
    ProcessKind kind = Poisson{};
    double density = 1.0;
    double power = 1.0;
    double alpha = 4.0;
    std::optional<double> gain; // linear MISR-based gain G_k

    double delta() const { return 2.0 / alpha; }
    bool operator==(const TierSpec&) const = default;
};

// Validates parameters and checks the declared density against the density
// implied by the process parameters (1e-9 relative tolerance).  When no
// density is given it is taken from the process; a Poisson tier (whose
// density is free) then rejects the call.
TierSpec make_tier(ProcessKind kind, std::optional<double> density, double power, double alpha,
                   std::optional<double> gain = std::nullopt);

void validate_tier(const TierSpec& t);

void validate_tiers(const std::vector<TierSpec>& tiers);

} // namespace sirmeta

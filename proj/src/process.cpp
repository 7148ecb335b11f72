#include "sirmeta/process.hpp"

#include <cmath>

namespace sirmeta {

namespace {

struct ValidateVisitor {
    void operator()(const Poisson&) const {}
    void operator()(const TriangularLattice& l) const {
        if (!(l.eta > 0.0)) throw std::invalid_argument("triangular-lattice: eta must be > 0");
    }
    void operator()(const PerturbedTriangularLattice& l) const {
        if (!(l.eta > 0.0))
            throw std::invalid_argument("perturbed-triangular-lattice: eta must be > 0");
        if (!(l.r_pert >= 0.0))
            throw std::invalid_argument("perturbed-triangular-lattice: r_pert must be >= 0");
    }
    void operator()(const GaussPoisson& g) const {
        if (!(g.lambda_p > 0.0)) throw std::invalid_argument("gauss-poisson: lambda_p must be > 0");
        if (!(g.p >= 0.0 && g.p <= 1.0))
            throw std::invalid_argument("gauss-poisson: p must be in [0, 1]");
        if (!(g.u > 0.0)) throw std::invalid_argument("gauss-poisson: u must be > 0");
    }
    void operator()(const MaternCluster& m) const {
        if (!(m.lambda_p > 0.0)) throw std::invalid_argument("matern-cluster: lambda_p must be > 0");
        if (!(m.cbar > 0.0)) throw std::invalid_argument("matern-cluster: cbar must be > 0");
        if (!(m.r_c > 0.0)) throw std::invalid_argument("matern-cluster: r_c must be > 0");
    }
};

struct DensityVisitor {
    std::optional<double> operator()(const Poisson&) const { return std::nullopt; }
    std::optional<double> operator()(const TriangularLattice& l) const {
        return 2.0 / (std::sqrt(3.0) * l.eta * l.eta);
    }
    std::optional<double> operator()(const PerturbedTriangularLattice& l) const {
        return 2.0 / (std::sqrt(3.0) * l.eta * l.eta);
    }
    std::optional<double> operator()(const GaussPoisson& g) const {
        return g.lambda_p * (2.0 - g.p);
    }
    std::optional<double> operator()(const MaternCluster& m) const { return m.lambda_p * m.cbar; }
};

} // namespace

void validate_kind(const ProcessKind& k) { std::visit(ValidateVisitor{}, k); }

std::optional<double> intrinsic_density(const ProcessKind& k) {
    return std::visit(DensityVisitor{}, k);
}

void validate_tier(const TierSpec& t) {
    validate_kind(t.kind);
    if (!(t.density > 0.0)) throw std::invalid_argument("tier: density must be > 0");
    if (!(t.power > 0.0)) throw std::invalid_argument("tier: power must be > 0");
    if (!(t.alpha > 2.0)) throw std::invalid_argument("tier: alpha must be > 2");
    if (t.gain && !(*t.gain > 0.0)) throw std::invalid_argument("tier: gain must be > 0");
    if (auto d = intrinsic_density(t.kind)) {
        if (std::abs(t.density - *d) > 1e-9 * *d)
            throw std::invalid_argument("tier (" + kind_name(t.kind) +
                                        "): declared density " + std::to_string(t.density) +
                                        " contradicts process parameters (implied " +
                                        std::to_string(*d) + ")");
    }
}

TierSpec make_tier(ProcessKind kind, std::optional<double> density, double power, double alpha,
                   std::optional<double> gain) {
    if (!density) {
        density = intrinsic_density(kind);
        if (!density)
            throw std::invalid_argument("make_tier (" + kind_name(kind) +
                                        "): density required (not implied by the process)");
    }
    TierSpec t{std::move(kind), *density, power, alpha, gain};
    validate_tier(t);
    return t;
}

void validate_tiers(const std::vector<TierSpec>& tiers) {
    if (tiers.empty()) throw std::invalid_argument("network: at least one tier required");
    for (const auto& t : tiers) validate_tier(t);
}

} // namespace sirmeta

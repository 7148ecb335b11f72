#include "sirmeta/sampling.hpp"

#include <cmath>

namespace sirmeta {

namespace {

// Homogeneous PPP on the square [-extent, extent]^2.
void ppp_region(std::vector<Vec2>& out, double lambda, double extent, std::mt19937_64& rng) {
    const double area = 4.0 * extent * extent;
    std::poisson_distribution<long> count(lambda * area);
    const long n = count(rng);
    out.reserve(out.size() + static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double x = uniform(rng, -extent, extent);
        const double y = uniform(rng, -extent, extent);
        out.push_back({x, y});
    }
}

// Uniform draw from the disk of radius r (rejection from the bounding square).
Vec2 disk_offset(double r, std::mt19937_64& rng) {
    for (;;) {
        const double dx = uniform(rng, -1.0, 1.0);
        const double dy = uniform(rng, -1.0, 1.0);
        if (dx * dx + dy * dy <= 1.0) return {r * dx, r * dy};
    }
}

// Triangular lattice with generator columns eta*(1, 0) and eta*(1/2, sqrt(3)/2),
// stationarized by a uniform shift over the fundamental cell.  Enumerates every
// site inside [-extent, extent]^2 and hands it to `emit`.
template <typename Emit>
void lattice_sites(double eta, double extent, std::mt19937_64& rng, Emit&& emit) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double row_h = eta * std::sqrt(3.0) / 2.0;
    const double b2 = extent / row_h;
    const long v2_lo = static_cast<long>(std::ceil(-b2 - u2));
    const long v2_hi = static_cast<long>(std::floor(b2 - u2));
    for (long v2 = v2_lo; v2 <= v2_hi; ++v2) {
        const double t2 = static_cast<double>(v2) + u2;
        const double y = row_h * t2;
        if (std::abs(y) > extent) continue;
        const double shift = u1 + 0.5 * t2;
        const double b1 = extent / eta;
        const long v1_lo = static_cast<long>(std::ceil(-b1 - shift));
        const long v1_hi = static_cast<long>(std::floor(b1 - shift));
        for (long v1 = v1_lo; v1 <= v1_hi; ++v1) {
            const double x = eta * (static_cast<double>(v1) + shift);
            if (std::abs(x) > extent) continue;
            emit(Vec2{x, y});
        }
    }
}

} // namespace

PointSet sample_ppp(double lambda, const Window& window, std::mt19937_64& rng) {
    if (!(lambda > 0.0)) throw std::invalid_argument("sample_ppp: lambda must be > 0");
    PointSet ps;
    ppp_region(ps.points, lambda, window.half_extent, rng);
    return ps;
}

PointSet sample_lattice(const TriangularLattice& k, const Window& window, std::mt19937_64& rng) {
    validate_kind(ProcessKind{k});
    PointSet ps;
    lattice_sites(k.eta, window.half_extent + k.eta, rng,
                  [&](Vec2 p) { ps.points.push_back(p); });
    return ps;
}

PointSet sample_lattice(const PerturbedTriangularLattice& k, const Window& window,
                        std::mt19937_64& rng) {
    validate_kind(ProcessKind{k});
    PointSet ps;
    lattice_sites(k.eta, window.half_extent + k.eta + k.r_pert, rng, [&](Vec2 p) {
        if (k.r_pert > 0.0) {
            const Vec2 d = disk_offset(k.r_pert, rng);
            p.x += d.x;
            p.y += d.y;
        }
        ps.points.push_back(p);
    });
    return ps;
}

PointSet sample_gauss_poisson(const GaussPoisson& k, const Window& window, std::mt19937_64& rng) {
    validate_kind(ProcessKind{k});
    PointSet ps;
    std::vector<Vec2> parents;
    ppp_region(parents, k.lambda_p, window.half_extent + k.u, rng);
    ps.points.reserve(parents.size() * 2);
    for (const Vec2& parent : parents) {
        ps.points.push_back(parent);
        if (uniform01(rng) >= k.p) {
            const double phi = uniform(rng, 0.0, 2.0 * pi);
            ps.points.push_back({parent.x + k.u * std::cos(phi), parent.y + k.u * std::sin(phi)});
        }
    }
    return ps;
}

PointSet sample_matern_cluster(const MaternCluster& k, const Window& window, std::mt19937_64& rng) {
    validate_kind(ProcessKind{k});
    PointSet ps;
    std::vector<Vec2> parents;
    ppp_region(parents, k.lambda_p, window.half_extent + k.r_c, rng);
    std::poisson_distribution<int> count(k.cbar);
    for (const Vec2& parent : parents) {
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            const Vec2 d = disk_offset(k.r_c, rng);
            ps.points.push_back({parent.x + d.x, parent.y + d.y});
        }
    }
    return ps;
}

PointSet sample_process(const ProcessKind& kind, double lambda, const Window& window,
                        std::mt19937_64& rng) {
    struct V {
        double lambda;
        const Window& window;
        std::mt19937_64& rng;
        PointSet operator()(const Poisson&) { return sample_ppp(lambda, window, rng); }
        PointSet operator()(const TriangularLattice& k) { return sample_lattice(k, window, rng); }
        PointSet operator()(const PerturbedTriangularLattice& k) {
            return sample_lattice(k, window, rng);
        }
        PointSet operator()(const GaussPoisson& k) { return sample_gauss_poisson(k, window, rng); }
        PointSet operator()(const MaternCluster& k) {
            return sample_matern_cluster(k, window, rng);
        }
    };
    return std::visit(V{lambda, window, rng}, kind);
}

PointSet sample_process(const ProcessKind& kind, double lambda, const Window& window,
                        std::uint64_t seed) {
    auto rng = make_stream(seed, 0);
    return sample_process(kind, lambda, window, rng);
}

} // namespace sirmeta

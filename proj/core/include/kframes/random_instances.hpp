#pragma once

#include "kframes/disk_geometry.hpp"
#include "kframes/hermitian.hpp"
#include "kframes/inner_function.hpp"

#include <random>
#include <string_view>

namespace kframes {

using Rng = std::mt19937_64;

enum class PointFamily { uniform_disk, radial_geometric, carleson_separated, clustered };

std::string_view to_string(PointFamily f) noexcept;
PointFamily point_family_from_string(std::string_view name);

/// Uniform (area measure) in |z| <= r_max.
DiskPoint uniform_disk_point(Rng& rng, double r_max);

/// `count` points drawn from the family, all with |z| <= r_max.
///  - uniform_disk: area-uniform, rejection sampled.
///  - radial_geometric: r_k = 1 - gamma^k with random angles, gamma drawn
///    from [0.5, 0.8]; radii past r_max restart at k = 1.
///  - carleson_separated: rejection on pairwise pseudo-hyperbolic distance
///    >= separation.
///  - clustered: pseudo-hyperbolic ball of radius 0.2 around a random centre.
PointSequence sample_points(Rng& rng, PointFamily family, int count, double r_max, double separation = 0.3);

/// Radial family r_k = 1 - gamma^k, k = 1..count, angles uniform.
PointSequence radial_geometric(Rng& rng, int count, double gamma);

/// Greedy rejection sampling of up to `count` points with |z| in
/// [r_min, r_max] whose condition-(C) infimum stays >= delta.
PointSequence carleson_sequence(Rng& rng, int count, double r_min, double r_max, double delta);

/// Finite Blaschke product with `zeros` zeros, |a| <= r_max.
InnerFunction random_blaschke(Rng& rng, int zeros, double r_max);

/// B B* / n + shift I with Gaussian complex B.
HermitianMatrix random_psd(Rng& rng, int n, double shift);

/// Hermitian with Gaussian entries.
HermitianMatrix random_hermitian(Rng& rng, int n);

}  // namespace kframes

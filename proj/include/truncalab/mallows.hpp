#pragma once

// Mallows-phi profile sampling via the repeated insertion model (RIM), plus
// the deterministic seeding utilities used by the experiment sweep.
//
// RIM builds a ranking by taking the reference items in order and inserting
// item i (1-indexed) at position j from the top of the partial list with
// probability phi^(i-j) / (1 + phi + ... + phi^(i-1)). The result is exactly
// Mallows-distributed: P(r) proportional to phi^kendall_tau(r, reference),
// at O(m^2) per ballot. Orientation check at m = 2: P(reference) = 1/(1+phi).

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "truncalab/ballots.hpp"

namespace truncalab {

struct Seed {
    std::uint64_t value = 0;
};

/// splitmix64 finalizer (Steele, Lea & Flood 2014). Bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Stream seed for one (cell, trial) pair. Distinct pairs map to independent
/// streams, so results never depend on worker count or scheduling.
constexpr Seed derive_seed(Seed master, std::uint64_t cell_index, std::uint64_t trial_index) {
    const std::uint64_t cell_key = mix64(master.value ^ (cell_index * 0x9e3779b97f4a7c15ull));
    return Seed{mix64(cell_key ^ (trial_index * 0xc2b2ae3d27d4eb4full))};
}

/// Deterministic uniform source. Wraps std::mt19937_64 (period 2^19937-1) but
/// derives unit doubles and bounded integers itself, so the value stream is
/// fully specified by this header rather than by library internals.
class Rng {
public:
    explicit Rng(Seed seed) : engine_(seed.value) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, bound), unbiased via modulo rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t x, r;
        do {
            x = next_u64();
            r = x % bound;
        } while (x - r > ~std::uint64_t{0} - (bound - 1));
        return r;
    }

private:
    std::mt19937_64 engine_;
};

/// Dispersion parameter and reference ranking of a Mallows distribution.
struct MallowsParams {
    MallowsParams(Ranking reference_ranking, double dispersion)
        : reference(std::move(reference_ranking)), phi(dispersion) {
        detail::require(reference.complete(), "MallowsParams: reference ranking must be complete");
        detail::require(phi >= 0.0 && phi <= 1.0, "MallowsParams: phi must lie in [0, 1]");
    }

    Ranking reference;
    double phi;
};

/// Unnormalized insertion weights for RIM step `step` (1-indexed): entry j-1
/// carries phi^(step-j), the weight of inserting at position j from the top.
inline std::vector<double> rim_insertion_weights(int step, double phi) {
    detail::require(step >= 1, "rim_insertion_weights: step must be at least 1");
    std::vector<double> weights(static_cast<std::size_t>(step));
    double w = 1.0;
    for (int j = step; j >= 1; --j) {
        weights[static_cast<std::size_t>(j - 1)] = w;
        w *= phi;
    }
    return weights;
}

/// One complete ranking with P(r) proportional to phi^kendall_tau(r, reference).
inline Ranking sample_ranking_rim(const MallowsParams& params, Rng& rng) {
    const auto reference = params.reference.ordered();
    const int m = params.reference.num_candidates();
    const double phi = params.phi;

    Ranking::Storage partial;
    partial.reserve(static_cast<std::size_t>(m));
    double normalizer = 0.0;  // 1 + phi + ... + phi^(i-1), updated per step
    for (int i = 1; i <= m; ++i) {
        normalizer = normalizer * phi + 1.0;
        const double target = rng.next_unit() * normalizer;
        int j = i;
        double cumulative = 0.0;
        double w = 1.0;
        for (; j >= 1; --j) {
            cumulative += w;
            if (target < cumulative) break;
            w *= phi;
        }
        if (j < 1) j = 1;  // guard against accumulated rounding
        partial.insert(partial.begin() + (j - 1), reference[static_cast<std::size_t>(i - 1)]);
    }
    return Ranking(Ranking::unchecked, std::move(partial), m);
}

/// Uniformly random complete ranking (Fisher-Yates).
inline Ranking random_reference(int num_candidates, Rng& rng) {
    detail::require(num_candidates >= 1, "random_reference: candidate count must be positive");
    Ranking::Storage order(static_cast<std::size_t>(num_candidates));
    for (int i = 0; i < num_candidates; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = num_candidates - 1; i > 0; --i) {
        const auto j = rng.next_below(static_cast<std::uint64_t>(i) + 1);
        std::swap(order[static_cast<std::size_t>(i)], order[j]);
    }
    return Ranking(Ranking::unchecked, std::move(order), num_candidates);
}

/// Draws a fresh uniformly random reference ranking, then num_voters complete
/// rankings from Mallows(reference, phi). The returned profile is in canonical
/// (sorted, merged) form; the params are returned for diagnostics.
inline std::pair<Profile, MallowsParams> sample_profile(int num_candidates,
                                                        std::int64_t num_voters,
                                                        double phi,
                                                        Rng& rng) {
    detail::require(num_voters >= 1, "sample_profile: voter count must be positive");
    MallowsParams params(random_reference(num_candidates, rng), phi);

    std::vector<Ranking> samples;
    samples.reserve(static_cast<std::size_t>(num_voters));
    for (std::int64_t v = 0; v < num_voters; ++v) {
        samples.push_back(sample_ranking_rim(params, rng));
    }
    std::sort(samples.begin(), samples.end());

    std::vector<WeightedBallot> grouped;
    for (Ranking& r : samples) {
        if (!grouped.empty() && grouped.back().ranking == r) {
            grouped.back().multiplicity += 1;
        } else {
            grouped.push_back({std::move(r), 1});
        }
    }
    return {Profile(num_candidates, std::move(grouped)), std::move(params)};
}

}  // namespace truncalab

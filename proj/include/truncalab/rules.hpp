#pragma once

// Winning-set voting rules over (possibly truncated) profiles: adapted
// Bucklin, adapted Coombs, plurality with runoff, and Schulze beat-path,
// plus the pairwise tallies they share and a Condorcet-winner oracle.
//
// Conventions used throughout:
//   - "strict majority" always means more than half of ALL n voters,
//     including any ballots that abstain from a restricted tally.
//   - a ballot supports every candidate it ranks over every candidate it
//     omits; omitted candidates are mutually incomparable.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "truncalab/ballots.hpp"

namespace truncalab {

/// The full set of co-winners a rule outputs. Nonempty, stored sorted.
class WinningSet {
public:
    using Storage = boost::container::small_vector<Candidate, 8>;

    explicit WinningSet(Storage winners) : winners_(std::move(winners)) {
        detail::require(!winners_.empty(), "WinningSet: must contain at least one candidate");
        std::sort(winners_.begin(), winners_.end());
        winners_.erase(std::unique(winners_.begin(), winners_.end()), winners_.end());
    }

    WinningSet(std::initializer_list<Candidate> winners)
        : WinningSet(Storage(winners.begin(), winners.end())) {}

    explicit WinningSet(std::span<const Candidate> winners)
        : WinningSet(Storage(winners.begin(), winners.end())) {}

    int size() const { return static_cast<int>(winners_.size()); }
    bool contains(Candidate c) const {
        return std::binary_search(winners_.begin(), winners_.end(), c);
    }
    std::span<const Candidate> candidates() const { return {winners_.data(), winners_.size()}; }
    auto begin() const { return winners_.begin(); }
    auto end() const { return winners_.end(); }

    friend bool operator==(const WinningSet&, const WinningSet&) = default;

private:
    Storage winners_;
};

/// Per-candidate counts together with the context that produced them.
struct Tally {
    enum class Kind { FirstPlace, LastPlace, BucklinLevel };

    Kind kind;
    int level;  // Bucklin level k; 0 otherwise
    std::vector<std::int64_t> counts;  // indexed by candidate; zero outside the tallied set
};

namespace detail {

using CandidateList = boost::container::small_vector<Candidate, 8>;

inline std::vector<char> member_mask(int num_candidates, std::span<const Candidate> candidates,
                                     const char* who) {
    require(!candidates.empty(), who);
    std::vector<char> mask(static_cast<std::size_t>(num_candidates), 0);
    for (Candidate c : candidates) {
        require(c >= 0 && c < num_candidates, "candidate set: index out of range");
        require(!mask[static_cast<std::size_t>(c)], "candidate set: duplicate candidate");
        mask[static_cast<std::size_t>(c)] = 1;
    }
    return mask;
}

inline WinningSet argmax_set(std::span<const std::int64_t> counts,
                             std::span<const char> eligible) {
    std::int64_t best = 0;
    bool found = false;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (!eligible[c]) continue;
        if (!found || counts[c] > best) {
            best = counts[c];
            found = true;
        }
    }
    WinningSet::Storage winners;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (eligible[c] && counts[c] == best) winners.push_back(static_cast<Candidate>(c));
    }
    return WinningSet(std::move(winners));
}

}  // namespace detail

/// Each ballot's vote goes to its highest-ranked candidate among `remaining`;
/// ballots ranking no remaining candidate abstain.
inline Tally first_place_tally(const Profile& profile, std::span<const Candidate> remaining) {
    const int m = profile.num_candidates();
    const auto in_remaining =
        detail::member_mask(m, remaining, "first_place_tally: remaining set must be nonempty");
    Tally tally{Tally::Kind::FirstPlace, 0,
                std::vector<std::int64_t>(static_cast<std::size_t>(m), 0)};
    for (const WeightedBallot& b : profile.ballots()) {
        for (Candidate c : b.ranking.ordered()) {
            if (in_remaining[static_cast<std::size_t>(c)]) {
                tally.counts[static_cast<std::size_t>(c)] += b.multiplicity;
                break;
            }
        }
    }
    return tally;
}

/// Last-place votes among `remaining`. A ballot ranking all remaining
/// candidates votes against its lowest-ranked one; otherwise every remaining
/// candidate the ballot omits receives a full last-place vote.
inline Tally last_place_tally(const Profile& profile, std::span<const Candidate> remaining) {
    const int m = profile.num_candidates();
    const auto in_remaining =
        detail::member_mask(m, remaining, "last_place_tally: remaining set must be nonempty");
    Tally tally{Tally::Kind::LastPlace, 0,
                std::vector<std::int64_t>(static_cast<std::size_t>(m), 0)};
    std::vector<char> ranked(static_cast<std::size_t>(m));
    for (const WeightedBallot& b : profile.ballots()) {
        const auto seq = b.ranking.ordered();
        std::fill(ranked.begin(), ranked.end(), 0);
        std::size_t ranked_remaining = 0;
        for (Candidate c : seq) {
            ranked[static_cast<std::size_t>(c)] = 1;
            if (in_remaining[static_cast<std::size_t>(c)]) ++ranked_remaining;
        }
        if (ranked_remaining == remaining.size()) {
            for (std::size_t i = seq.size(); i-- > 0;) {
                if (in_remaining[static_cast<std::size_t>(seq[i])]) {
                    tally.counts[static_cast<std::size_t>(seq[i])] += b.multiplicity;
                    break;
                }
            }
        } else {
            for (Candidate c : remaining) {
                if (!ranked[static_cast<std::size_t>(c)]) {
                    tally.counts[static_cast<std::size_t>(c)] += b.multiplicity;
                }
            }
        }
    }
    return tally;
}

/// Number of ballots ranking each candidate within their top `level` entries.
inline Tally bucklin_score_tally(const Profile& profile, int level) {
    const int m = profile.num_candidates();
    detail::require(level >= 1 && level <= m, "bucklin_score_tally: level out of range");
    Tally tally{Tally::Kind::BucklinLevel, level,
                std::vector<std::int64_t>(static_cast<std::size_t>(m), 0)};
    for (const WeightedBallot& b : profile.ballots()) {
        const auto seq = b.ranking.ordered();
        const std::size_t depth = std::min<std::size_t>(seq.size(), static_cast<std::size_t>(level));
        for (std::size_t i = 0; i < depth; ++i) {
            tally.counts[static_cast<std::size_t>(seq[i])] += b.multiplicity;
        }
    }
    return tally;
}

/// Adapted Bucklin. Preference levels are accumulated one at a time; at the
/// first level where some candidate exceeds a strict majority of all voters,
/// the highest-scoring candidates win. If no level produces a strict
/// majority (possible once ballots are truncated), the highest final scores
/// win.
inline WinningSet bucklin_adapted(const Profile& profile) {
    const int m = profile.num_candidates();
    const std::int64_t n = profile.voter_count();
    std::vector<std::int64_t> score(static_cast<std::size_t>(m), 0);
    const std::vector<char> all(static_cast<std::size_t>(m), 1);
    for (int level = 1; level <= m; ++level) {
        for (const WeightedBallot& b : profile.ballots()) {
            if (b.ranking.size() >= level) {
                score[static_cast<std::size_t>(b.ranking.at(level - 1))] += b.multiplicity;
            }
        }
        const std::int64_t best = *std::max_element(score.begin(), score.end());
        if (2 * best > n) return detail::argmax_set(score, all);
    }
    return detail::argmax_set(score, all);
}

/// Plurality with runoff. A candidate ranked first by a strict majority wins
/// outright. Otherwise every candidate whose first-place count reaches the
/// second-largest distinct count advances, and the remaining preferences
/// decide between the finalists; ballots ranking no finalist abstain.
inline WinningSet plurality_with_runoff(const Profile& profile) {
    const int m = profile.num_candidates();
    const std::int64_t n = profile.voter_count();
    const std::vector<char> all(static_cast<std::size_t>(m), 1);

    std::vector<std::int64_t> first(static_cast<std::size_t>(m), 0);
    for (const WeightedBallot& b : profile.ballots()) {
        first[static_cast<std::size_t>(b.ranking.top())] += b.multiplicity;
    }
    const std::int64_t best = *std::max_element(first.begin(), first.end());
    if (2 * best > n) return detail::argmax_set(first, all);

    std::vector<std::int64_t> distinct(first.begin(), first.end());
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const std::int64_t cutoff = distinct.size() >= 2 ? distinct[1] : distinct[0];

    std::vector<char> finalist(static_cast<std::size_t>(m), 0);
    for (int c = 0; c < m; ++c) {
        finalist[static_cast<std::size_t>(c)] = first[static_cast<std::size_t>(c)] >= cutoff;
    }

    std::vector<std::int64_t> runoff(static_cast<std::size_t>(m), 0);
    for (const WeightedBallot& b : profile.ballots()) {
        for (Candidate c : b.ranking.ordered()) {
            if (finalist[static_cast<std::size_t>(c)]) {
                runoff[static_cast<std::size_t>(c)] += b.multiplicity;
                break;
            }
        }
    }
    return detail::argmax_set(runoff, finalist);
}

/// Adapted Coombs. Repeatedly eliminates the candidate(s) with the most
/// last-place votes until some candidate holds a strict first-place majority
/// of all voters; if an elimination round would remove every remaining
/// candidate, those eliminated last are the winning set.
inline WinningSet coombs_adapted(const Profile& profile) {
    const int m = profile.num_candidates();
    const std::int64_t n = profile.voter_count();
    detail::CandidateList remaining;
    for (int c = 0; c < m; ++c) remaining.push_back(c);

    for (;;) {
        const Tally first = first_place_tally(profile, {remaining.data(), remaining.size()});
        Candidate leader = remaining.front();
        for (Candidate c : remaining) {
            if (first.counts[static_cast<std::size_t>(c)] >
                first.counts[static_cast<std::size_t>(leader)]) {
                leader = c;
            }
        }
        if (2 * first.counts[static_cast<std::size_t>(leader)] > n) return WinningSet{leader};
        if (remaining.size() == 1) return WinningSet{remaining.front()};

        const Tally last = last_place_tally(profile, {remaining.data(), remaining.size()});
        std::int64_t worst = 0;
        for (Candidate c : remaining) {
            worst = std::max(worst, last.counts[static_cast<std::size_t>(c)]);
        }
        detail::CandidateList eliminated, kept;
        for (Candidate c : remaining) {
            (last.counts[static_cast<std::size_t>(c)] == worst ? eliminated : kept).push_back(c);
        }
        if (kept.empty()) {
            return WinningSet(std::span<const Candidate>{remaining.data(), remaining.size()});
        }
        remaining = kept;
    }
}

namespace detail {

/// Widest-path strengths over the pairwise margin graph: strength(a, b) is
/// the maximum over paths a -> ... -> b of the minimum link margin.
inline std::vector<std::int64_t> beat_path_strengths(const SupportMatrix& support) {
    const int m = support.num_candidates();
    std::vector<std::int64_t> strength(static_cast<std::size_t>(m) * m, 0);
    auto at = [&](int i, int j) -> std::int64_t& {
        return strength[static_cast<std::size_t>(i) * m + j];
    };
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i != j) at(i, j) = support.margin(i, j);
        }
    }
    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < m; ++i) {
            if (i == k) continue;
            for (int j = 0; j < m; ++j) {
                if (j == i || j == k) continue;
                at(i, j) = std::max(at(i, j), std::min(at(i, k), at(k, j)));
            }
        }
    }
    return strength;
}

}  // namespace detail

/// Schulze beat-path over margins: a wins when its strongest path to every
/// rival is at least as strong as the rival's strongest path back.
inline WinningSet schulze_beat_path(const Profile& profile) {
    const int m = profile.num_candidates();
    const auto strength = detail::beat_path_strengths(support_matrix(profile));
    auto at = [&](int i, int j) {
        return strength[static_cast<std::size_t>(i) * m + j];
    };
    WinningSet::Storage winners;
    for (int a = 0; a < m; ++a) {
        bool unbeaten = true;
        for (int b = 0; b < m && unbeaten; ++b) {
            if (b != a && at(a, b) < at(b, a)) unbeaten = false;
        }
        if (unbeaten) winners.push_back(a);
    }
    return WinningSet(std::move(winners));
}

/// The candidate beating every other candidate head-to-head, when one exists.
inline std::optional<Candidate> condorcet_winner(const Profile& profile) {
    const int m = profile.num_candidates();
    const SupportMatrix s = support_matrix(profile);
    for (int a = 0; a < m; ++a) {
        bool wins_all = true;
        for (int b = 0; b < m && wins_all; ++b) {
            if (b != a && s(a, b) <= s(b, a)) wins_all = false;
        }
        if (wins_all) return a;
    }
    return std::nullopt;
}

}  // namespace truncalab

#pragma once

// Ranked-ballot primitives: candidates, strict (possibly truncated) rankings,
// weighted preference profiles, truncation, and pairwise support counts.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace truncalab {

/// Candidates are dense integer indices in [0, m) for an election with m
/// candidates. Display names, when present, live only in the file formats.
using Candidate = int;

namespace detail {

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace detail

/// One voter's strict order over a subset of the candidates, most-preferred
/// first. Candidates not listed are unranked: strictly below every listed
/// candidate and mutually incomparable.
class Ranking {
public:
    using Storage = boost::container::small_vector<Candidate, 8>;

    /// Tag for construction paths that already guarantee the invariants
    /// (samplers, truncation). Skips validation.
    struct unchecked_t {};
    static constexpr unchecked_t unchecked{};

    Ranking(Storage ordered, int num_candidates)
        : ordered_(std::move(ordered)), num_candidates_(num_candidates) {
        detail::require(num_candidates_ > 0, "Ranking: candidate count must be positive");
        detail::require(!ordered_.empty(), "Ranking: empty candidate sequence");
        for (Candidate c : ordered_) {
            detail::require(c >= 0 && c < num_candidates_,
                            "Ranking: candidate index out of range");
        }
        for (std::size_t i = 0; i < ordered_.size(); ++i) {
            for (std::size_t j = i + 1; j < ordered_.size(); ++j) {
                detail::require(ordered_[i] != ordered_[j], "Ranking: duplicate candidate");
            }
        }
    }

    Ranking(std::initializer_list<Candidate> ordered, int num_candidates)
        : Ranking(Storage(ordered.begin(), ordered.end()), num_candidates) {}

    Ranking(std::span<const Candidate> ordered, int num_candidates)
        : Ranking(Storage(ordered.begin(), ordered.end()), num_candidates) {}

    Ranking(unchecked_t, Storage ordered, int num_candidates)
        : ordered_(std::move(ordered)), num_candidates_(num_candidates) {}

    int num_candidates() const { return num_candidates_; }
    int size() const { return static_cast<int>(ordered_.size()); }
    bool complete() const { return size() == num_candidates_; }

    Candidate top() const { return ordered_.front(); }
    Candidate at(int position) const { return ordered_[static_cast<std::size_t>(position)]; }
    std::span<const Candidate> ordered() const { return {ordered_.data(), ordered_.size()}; }

    bool ranks(Candidate c) const {
        return std::find(ordered_.begin(), ordered_.end(), c) != ordered_.end();
    }

    /// Zero-based position of c, or -1 when unranked.
    int position_of(Candidate c) const {
        auto it = std::find(ordered_.begin(), ordered_.end(), c);
        return it == ordered_.end() ? -1 : static_cast<int>(it - ordered_.begin());
    }

    /// Prefix of at most max_length entries; identity when max_length >= size.
    Ranking truncated(int max_length) const {
        detail::require(max_length >= 1, "Ranking: truncation length must be at least 1");
        if (max_length >= size()) return *this;
        return Ranking(unchecked,
                       Storage(ordered_.begin(), ordered_.begin() + max_length),
                       num_candidates_);
    }

    friend bool operator==(const Ranking& a, const Ranking& b) {
        return a.num_candidates_ == b.num_candidates_ && a.ordered_ == b.ordered_;
    }

    friend std::strong_ordering operator<=>(const Ranking& a, const Ranking& b) {
        if (auto c = a.num_candidates_ <=> b.num_candidates_; c != 0) return c;
        return std::lexicographical_compare_three_way(a.ordered_.begin(), a.ordered_.end(),
                                                      b.ordered_.begin(), b.ordered_.end());
    }

private:
    Storage ordered_;
    int num_candidates_;
};

/// A ranking class: identical ballots grouped under one positive multiplicity.
struct WeightedBallot {
    Ranking ranking;
    std::int64_t multiplicity;

    friend bool operator==(const WeightedBallot&, const WeightedBallot&) = default;
};

/// A preference profile: the multiset of all voters' rankings over a fixed
/// candidate set. Immutable after construction.
class Profile {
public:
    Profile(int num_candidates, std::vector<WeightedBallot> ballots)
        : num_candidates_(num_candidates), ballots_(std::move(ballots)) {
        detail::require(num_candidates_ > 0, "Profile: candidate count must be positive");
        detail::require(!ballots_.empty(), "Profile: at least one ballot required");
        voter_count_ = 0;
        for (const WeightedBallot& b : ballots_) {
            detail::require(b.ranking.num_candidates() == num_candidates_,
                            "Profile: ranking candidate count mismatch");
            detail::require(b.multiplicity > 0, "Profile: multiplicity must be positive");
            voter_count_ += b.multiplicity;
        }
    }

    int num_candidates() const { return num_candidates_; }
    std::int64_t voter_count() const { return voter_count_; }
    std::span<const WeightedBallot> ballots() const { return ballots_; }

    /// Every ballot cut to its first min(max_length, length) entries.
    /// Multiplicities, ballot order, and the candidate set are unchanged.
    Profile truncated(int max_length) const {
        detail::require(max_length >= 1, "Profile: truncation length must be at least 1");
        std::vector<WeightedBallot> cut;
        cut.reserve(ballots_.size());
        for (const WeightedBallot& b : ballots_) {
            cut.push_back({b.ranking.truncated(max_length), b.multiplicity});
        }
        return Profile(num_candidates_, std::move(cut));
    }

    /// Canonical form: ballot classes sorted lexicographically with identical
    /// rankings merged. Voting rules are multiset functions, so this never
    /// changes any winning set; it keeps repeated evaluation cheap.
    Profile compacted() const {
        std::vector<WeightedBallot> sorted(ballots_.begin(), ballots_.end());
        std::sort(sorted.begin(), sorted.end(),
                  [](const WeightedBallot& a, const WeightedBallot& b) {
                      return a.ranking < b.ranking;
                  });
        std::vector<WeightedBallot> merged;
        merged.reserve(sorted.size());
        for (WeightedBallot& b : sorted) {
            if (!merged.empty() && merged.back().ranking == b.ranking) {
                merged.back().multiplicity += b.multiplicity;
            } else {
                merged.push_back(std::move(b));
            }
        }
        return Profile(num_candidates_, std::move(merged));
    }

    friend bool operator==(const Profile&, const Profile&) = default;

private:
    int num_candidates_;
    std::int64_t voter_count_;
    std::vector<WeightedBallot> ballots_;
};

/// Pairwise support counts: entry (a, b) is the number of voters strictly
/// preferring a to b. A ranked candidate is preferred to every unranked one;
/// two unranked candidates support neither entry.
class SupportMatrix {
public:
    explicit SupportMatrix(int num_candidates)
        : num_candidates_(num_candidates),
          cells_(static_cast<std::size_t>(num_candidates) * num_candidates, 0) {
        detail::require(num_candidates_ > 0, "SupportMatrix: candidate count must be positive");
    }

    int num_candidates() const { return num_candidates_; }

    std::int64_t operator()(Candidate a, Candidate b) const {
        return cells_[index(a, b)];
    }

    std::int64_t& at(Candidate a, Candidate b) { return cells_[index(a, b)]; }

    /// support(a, b) - support(b, a).
    std::int64_t margin(Candidate a, Candidate b) const {
        return (*this)(a, b) - (*this)(b, a);
    }

    friend bool operator==(const SupportMatrix&, const SupportMatrix&) = default;

private:
    std::size_t index(Candidate a, Candidate b) const {
        return static_cast<std::size_t>(a) * num_candidates_ + static_cast<std::size_t>(b);
    }

    int num_candidates_;
    std::vector<std::int64_t> cells_;
};

inline SupportMatrix support_matrix(const Profile& profile) {
    const int m = profile.num_candidates();
    SupportMatrix s(m);
    std::vector<char> ranked(static_cast<std::size_t>(m));
    for (const WeightedBallot& b : profile.ballots()) {
        const auto seq = b.ranking.ordered();
        const std::int64_t w = b.multiplicity;
        std::fill(ranked.begin(), ranked.end(), 0);
        for (Candidate c : seq) ranked[static_cast<std::size_t>(c)] = 1;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            for (std::size_t j = i + 1; j < seq.size(); ++j) {
                s.at(seq[i], seq[j]) += w;
            }
        }
        for (Candidate r : seq) {
            for (Candidate u = 0; u < m; ++u) {
                if (!ranked[static_cast<std::size_t>(u)]) s.at(r, u) += w;
            }
        }
    }
    return s;
}

/// Number of candidate pairs ordered oppositely by two complete rankings.
/// Range [0, m(m-1)/2].
inline int kendall_tau(const Ranking& a, const Ranking& b) {
    detail::require(a.complete() && b.complete(), "kendall_tau: rankings must be complete");
    detail::require(a.num_candidates() == b.num_candidates(),
                    "kendall_tau: candidate count mismatch");
    const int m = a.num_candidates();
    std::vector<int> pos_b(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pos_b[static_cast<std::size_t>(b.at(i))] = i;
    int disagreements = 0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (pos_b[static_cast<std::size_t>(a.at(i))] >
                pos_b[static_cast<std::size_t>(a.at(j))]) {
                ++disagreements;
            }
        }
    }
    return disagreements;
}

}  // namespace truncalab
